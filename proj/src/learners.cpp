#include "rankvote/learners.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace rankvote::learn {

std::string to_string(LearnerKind kind) {
    switch (kind) {
        case LearnerKind::decision_tree: return "decision-tree";
        case LearnerKind::naive_bayes: return "naive-bayes";
        case LearnerKind::knn: return "knn";
    }
    return "?";
}

LearnerKind learner_kind_from_string(const std::string& name) {
    if (name == "decision-tree") return LearnerKind::decision_tree;
    if (name == "naive-bayes") return LearnerKind::naive_bayes;
    if (name == "knn") return LearnerKind::knn;
    throw std::invalid_argument("unknown learner kind '" + name + "'");
}

void LearnerConfig::validate() const {
    if (kind == LearnerKind::decision_tree && (dt_max_depth < 5 || dt_max_depth > 25)) {
        throw std::invalid_argument("decision tree depth must lie in [5,25]");
    }
    if (kind == LearnerKind::knn && knn_k < 1) {
        throw std::invalid_argument("knn needs k >= 1");
    }
}

int sample_geometric(int lo, int hi, Pcg32& rng) {
    if (lo < 1 || lo > hi) throw std::invalid_argument("sample_geometric: need 1 <= lo <= hi");
    if (lo == hi) return lo;
    const double x = rng.uniform(std::log(static_cast<double>(lo)), std::log(static_cast<double>(hi)));
    const double v = std::floor(std::exp(x));
    return static_cast<int>(std::clamp(v, static_cast<double>(lo), static_cast<double>(hi)));
}

LearnerConfig sample_learner_config(Pcg32& rng) {
    LearnerConfig config;
    switch (rng.uniform_int(0, 2)) {
        case 0: config.kind = LearnerKind::decision_tree; break;
        case 1: config.kind = LearnerKind::naive_bayes; break;
        default: config.kind = LearnerKind::knn; break;
    }
    config.dt_criterion = rng.uniform_int(0, 1) == 0 ? SplitCriterion::gini : SplitCriterion::entropy;
    config.dt_max_depth = static_cast<int>(rng.uniform_int(5, 25));
    config.knn_k = sample_geometric(1, 32, rng);
    config.seed = rng.next_u64();
    return config;
}

namespace {

void check_sample(std::span<const double> sample, int expected) {
    if (static_cast<int>(sample.size()) != expected) {
        throw std::invalid_argument("sample has " + std::to_string(sample.size()) +
                                    " features, expected " + std::to_string(expected));
    }
}

ScoreVector frequency_probs(const std::vector<int>& counts, int total) {
    ScoreVector probs(counts.size(), 0.0);
    for (size_t c = 0; c < counts.size(); ++c) {
        probs[c] = static_cast<double>(counts[c]) / static_cast<double>(total);
    }
    return probs;
}

// ------------------------------------------------------------------ trees

class DecisionTree final : public Classifier {
  public:
    struct Node {
        int feature = -1;  // -1 marks a leaf
        double threshold = 0.0;
        int left = -1;
        int right = -1;
        ScoreVector probs;  // leaf only
    };

    DecisionTree(std::vector<Node> nodes, int features, int m)
        : nodes_(std::move(nodes)), features_(features), m_(m) {}

    static std::shared_ptr<DecisionTree> fit(const data::Dataset& train, SplitCriterion criterion,
                                             int max_depth);

    ScoreVector predict_proba(std::span<const double> sample) const override {
        check_sample(sample, features_);
        int at = 0;
        while (nodes_[static_cast<size_t>(at)].feature >= 0) {
            const Node& node = nodes_[static_cast<size_t>(at)];
            at = sample[static_cast<size_t>(node.feature)] <= node.threshold ? node.left
                                                                             : node.right;
        }
        return nodes_[static_cast<size_t>(at)].probs;
    }

    nlohmann::json to_json() const override;
    static std::shared_ptr<DecisionTree> from_json(const nlohmann::json& j);

  private:
    std::vector<Node> nodes_;
    int features_ = 0;
    int m_ = 0;
};

double impurity(const std::vector<int>& counts, int total, SplitCriterion criterion) {
    double value = criterion == SplitCriterion::gini ? 1.0 : 0.0;
    for (int c : counts) {
        if (c == 0) continue;
        const double f = static_cast<double>(c) / static_cast<double>(total);
        if (criterion == SplitCriterion::gini) {
            value -= f * f;
        } else {
            value -= f * std::log2(f);
        }
    }
    return value;
}

std::shared_ptr<DecisionTree> DecisionTree::fit(const data::Dataset& train,
                                                SplitCriterion criterion, int max_depth) {
    const int m = train.m;
    const int features = train.num_features();
    std::vector<Node> nodes;

    struct Frame {
        std::vector<int> rows;
        int depth;
        int slot;
    };

    auto make_leaf = [&](const std::vector<int>& rows) {
        std::vector<int> counts(static_cast<size_t>(m), 0);
        for (int r : rows) counts[static_cast<size_t>(train.labels[static_cast<size_t>(r)])] += 1;
        Node leaf;
        leaf.probs = frequency_probs(counts, static_cast<int>(rows.size()));
        return leaf;
    };

    std::vector<Frame> stack;
    std::vector<int> all(static_cast<size_t>(train.num_rows()));
    std::iota(all.begin(), all.end(), 0);
    nodes.emplace_back();
    stack.push_back({std::move(all), 0, 0});

    while (!stack.empty()) {
        Frame frame = std::move(stack.back());
        stack.pop_back();
        const auto& rows = frame.rows;
        const int total = static_cast<int>(rows.size());

        std::vector<int> counts(static_cast<size_t>(m), 0);
        for (int r : rows) counts[static_cast<size_t>(train.labels[static_cast<size_t>(r)])] += 1;
        const bool pure = std::count(counts.begin(), counts.end(), 0) == m - 1;

        if (pure || frame.depth >= max_depth || total < 2) {
            nodes[static_cast<size_t>(frame.slot)] = make_leaf(rows);
            continue;
        }

        const double parent_impurity = impurity(counts, total, criterion);
        double best_gain = 0.0;
        int best_feature = -1;
        double best_threshold = 0.0;

        std::vector<std::pair<double, int>> ordered(rows.size());
        for (int f = 0; f < features; ++f) {
            for (size_t i = 0; i < rows.size(); ++i) {
                ordered[i] = {train.rows[static_cast<size_t>(rows[i])][static_cast<size_t>(f)],
                              train.labels[static_cast<size_t>(rows[i])]};
            }
            std::sort(ordered.begin(), ordered.end());
            std::vector<int> left_counts(static_cast<size_t>(m), 0);
            for (int i = 0; i + 1 < total; ++i) {
                left_counts[static_cast<size_t>(ordered[static_cast<size_t>(i)].second)] += 1;
                if (ordered[static_cast<size_t>(i)].first ==
                    ordered[static_cast<size_t>(i + 1)].first) {
                    continue;  // cannot split between equal values
                }
                std::vector<int> right_counts(static_cast<size_t>(m), 0);
                for (int c = 0; c < m; ++c) {
                    right_counts[static_cast<size_t>(c)] =
                        counts[static_cast<size_t>(c)] - left_counts[static_cast<size_t>(c)];
                }
                const int nl = i + 1;
                const int nr = total - nl;
                const double child =
                    (static_cast<double>(nl) * impurity(left_counts, nl, criterion) +
                     static_cast<double>(nr) * impurity(right_counts, nr, criterion)) /
                    static_cast<double>(total);
                const double gain = parent_impurity - child;
                if (gain > best_gain + 1e-12) {
                    best_gain = gain;
                    best_feature = f;
                    best_threshold = 0.5 * (ordered[static_cast<size_t>(i)].first +
                                            ordered[static_cast<size_t>(i + 1)].first);
                }
            }
        }

        if (best_feature < 0) {
            nodes[static_cast<size_t>(frame.slot)] = make_leaf(rows);
            continue;
        }

        std::vector<int> left, right;
        for (int r : rows) {
            if (train.rows[static_cast<size_t>(r)][static_cast<size_t>(best_feature)] <=
                best_threshold) {
                left.push_back(r);
            } else {
                right.push_back(r);
            }
        }

        Node split;
        split.feature = best_feature;
        split.threshold = best_threshold;
        split.left = static_cast<int>(nodes.size());
        nodes.emplace_back();
        split.right = static_cast<int>(nodes.size());
        nodes.emplace_back();
        nodes[static_cast<size_t>(frame.slot)] = split;
        stack.push_back({std::move(right), frame.depth + 1, split.right});
        stack.push_back({std::move(left), frame.depth + 1, split.left});
    }

    return std::make_shared<DecisionTree>(std::move(nodes), features, m);
}

nlohmann::json DecisionTree::to_json() const {
    nlohmann::json j;
    j["type"] = "decision-tree";
    j["features"] = features_;
    j["m"] = m_;
    auto nodes = nlohmann::json::array();
    for (const Node& n : nodes_) {
        nodes.push_back({{"feature", n.feature},
                         {"threshold", n.threshold},
                         {"left", n.left},
                         {"right", n.right},
                         {"probs", n.probs}});
    }
    j["nodes"] = nodes;
    return j;
}

std::shared_ptr<DecisionTree> DecisionTree::from_json(const nlohmann::json& j) {
    std::vector<Node> nodes;
    for (const auto& item : j.at("nodes")) {
        Node n;
        n.feature = item.at("feature").get<int>();
        n.threshold = item.at("threshold").get<double>();
        n.left = item.at("left").get<int>();
        n.right = item.at("right").get<int>();
        n.probs = item.at("probs").get<ScoreVector>();
        nodes.push_back(std::move(n));
    }
    return std::make_shared<DecisionTree>(std::move(nodes), j.at("features").get<int>(),
                                          j.at("m").get<int>());
}

// ------------------------------------------------------------ naive bayes

class NaiveBayes final : public Classifier {
  public:
    struct Column {
        bool categorical = false;
        std::vector<std::vector<double>> table;  // [class][category], Laplace-smoothed
        std::vector<double> mean;                // [class]
        std::vector<double> var;                 // [class]
    };

    NaiveBayes(std::vector<double> priors, std::vector<Column> columns, int m)
        : priors_(std::move(priors)), columns_(std::move(columns)), m_(m) {}

    static std::shared_ptr<NaiveBayes> fit(const data::Dataset& train);

    ScoreVector predict_proba(std::span<const double> sample) const override;

    nlohmann::json to_json() const override;
    static std::shared_ptr<NaiveBayes> from_json(const nlohmann::json& j);

  private:
    std::vector<double> priors_;
    std::vector<Column> columns_;
    int m_ = 0;
};

constexpr double kVarianceFloor = 1e-9;

std::shared_ptr<NaiveBayes> NaiveBayes::fit(const data::Dataset& train) {
    const int m = train.m;
    const int n = train.num_rows();
    std::vector<int> class_counts(static_cast<size_t>(m), 0);
    for (int label : train.labels) class_counts[static_cast<size_t>(label)] += 1;

    std::vector<double> priors(static_cast<size_t>(m), 0.0);
    for (int c = 0; c < m; ++c) {
        priors[static_cast<size_t>(c)] =
            static_cast<double>(class_counts[static_cast<size_t>(c)]) / static_cast<double>(n);
    }

    std::vector<Column> columns;
    for (int f = 0; f < train.num_features(); ++f) {
        Column col;
        col.categorical = train.schema.columns[static_cast<size_t>(f)].type ==
                          data::ColumnType::categorical;
        if (col.categorical) {
            const int ncats =
                static_cast<int>(train.feature_categories[static_cast<size_t>(f)].size());
            std::vector<std::vector<int>> counts(
                static_cast<size_t>(m), std::vector<int>(static_cast<size_t>(ncats), 0));
            for (int r = 0; r < n; ++r) {
                const int code = static_cast<int>(
                    std::llround(train.rows[static_cast<size_t>(r)][static_cast<size_t>(f)]));
                counts[static_cast<size_t>(train.labels[static_cast<size_t>(r)])]
                      [static_cast<size_t>(code)] += 1;
            }
            col.table.assign(static_cast<size_t>(m),
                             std::vector<double>(static_cast<size_t>(ncats), 0.0));
            for (int c = 0; c < m; ++c) {
                for (int v = 0; v < ncats; ++v) {
                    // Laplace smoothing with constant 1.
                    col.table[static_cast<size_t>(c)][static_cast<size_t>(v)] =
                        (static_cast<double>(counts[static_cast<size_t>(c)][static_cast<size_t>(v)]) + 1.0) /
                        (static_cast<double>(class_counts[static_cast<size_t>(c)]) +
                         static_cast<double>(ncats));
                }
            }
        } else {
            col.mean.assign(static_cast<size_t>(m), 0.0);
            col.var.assign(static_cast<size_t>(m), 0.0);
            for (int r = 0; r < n; ++r) {
                col.mean[static_cast<size_t>(train.labels[static_cast<size_t>(r)])] +=
                    train.rows[static_cast<size_t>(r)][static_cast<size_t>(f)];
            }
            for (int c = 0; c < m; ++c) {
                if (class_counts[static_cast<size_t>(c)] > 0) {
                    col.mean[static_cast<size_t>(c)] /=
                        static_cast<double>(class_counts[static_cast<size_t>(c)]);
                }
            }
            for (int r = 0; r < n; ++r) {
                const int c = train.labels[static_cast<size_t>(r)];
                const double d = train.rows[static_cast<size_t>(r)][static_cast<size_t>(f)] -
                                 col.mean[static_cast<size_t>(c)];
                col.var[static_cast<size_t>(c)] += d * d;
            }
            for (int c = 0; c < m; ++c) {
                if (class_counts[static_cast<size_t>(c)] > 0) {
                    col.var[static_cast<size_t>(c)] /=
                        static_cast<double>(class_counts[static_cast<size_t>(c)]);
                }
                col.var[static_cast<size_t>(c)] =
                    std::max(col.var[static_cast<size_t>(c)], kVarianceFloor);
            }
        }
        columns.push_back(std::move(col));
    }
    return std::make_shared<NaiveBayes>(std::move(priors), std::move(columns), m);
}

ScoreVector NaiveBayes::predict_proba(std::span<const double> sample) const {
    check_sample(sample, static_cast<int>(columns_.size()));
    std::vector<double> log_post(static_cast<size_t>(m_), 0.0);
    for (int c = 0; c < m_; ++c) {
        double lp = std::log(priors_[static_cast<size_t>(c)]);
        for (size_t f = 0; f < columns_.size(); ++f) {
            const Column& col = columns_[f];
            if (col.categorical) {
                const auto code = static_cast<size_t>(std::llround(sample[f]));
                const auto& row = col.table[static_cast<size_t>(c)];
                // Unseen categories fall back to the uniform smoothing mass.
                const double like = code < row.size() ? row[code] : 1.0 / static_cast<double>(row.size());
                lp += std::log(like);
            } else {
                const double var = col.var[static_cast<size_t>(c)];
                const double d = sample[f] - col.mean[static_cast<size_t>(c)];
                lp += -0.5 * std::log(2.0 * M_PI * var) - d * d / (2.0 * var);
            }
        }
        log_post[static_cast<size_t>(c)] = lp;
    }
    const double peak = *std::max_element(log_post.begin(), log_post.end());
    ScoreVector probs(static_cast<size_t>(m_), 0.0);
    double total = 0.0;
    for (int c = 0; c < m_; ++c) {
        probs[static_cast<size_t>(c)] = std::exp(log_post[static_cast<size_t>(c)] - peak);
        total += probs[static_cast<size_t>(c)];
    }
    for (double& v : probs) v /= total;
    return probs;
}

nlohmann::json NaiveBayes::to_json() const {
    nlohmann::json j;
    j["type"] = "naive-bayes";
    j["m"] = m_;
    j["priors"] = priors_;
    auto cols = nlohmann::json::array();
    for (const Column& col : columns_) {
        if (col.categorical) {
            cols.push_back({{"kind", "categorical"}, {"table", col.table}});
        } else {
            cols.push_back({{"kind", "numerical"}, {"mean", col.mean}, {"var", col.var}});
        }
    }
    j["columns"] = cols;
    return j;
}

std::shared_ptr<NaiveBayes> NaiveBayes::from_json(const nlohmann::json& j) {
    std::vector<Column> columns;
    for (const auto& item : j.at("columns")) {
        Column col;
        col.categorical = item.at("kind").get<std::string>() == "categorical";
        if (col.categorical) {
            col.table = item.at("table").get<std::vector<std::vector<double>>>();
        } else {
            col.mean = item.at("mean").get<std::vector<double>>();
            col.var = item.at("var").get<std::vector<double>>();
        }
        columns.push_back(std::move(col));
    }
    return std::make_shared<NaiveBayes>(j.at("priors").get<std::vector<double>>(),
                                        std::move(columns), j.at("m").get<int>());
}

// -------------------------------------------------------------------- knn

class Knn final : public Classifier {
  public:
    Knn(std::vector<std::vector<double>> rows, std::vector<int> labels, int k, int m)
        : rows_(std::move(rows)), labels_(std::move(labels)), k_(k), m_(m) {}

    ScoreVector predict_proba(std::span<const double> sample) const override {
        check_sample(sample, static_cast<int>(rows_.front().size()));
        std::vector<std::pair<double, int>> dist(rows_.size());
        for (size_t r = 0; r < rows_.size(); ++r) {
            double d = 0.0;
            for (size_t f = 0; f < rows_[r].size(); ++f) {
                const double diff = rows_[r][f] - sample[f];
                d += diff * diff;
            }
            dist[r] = {d, static_cast<int>(r)};
        }
        const int k = std::min<int>(k_, static_cast<int>(rows_.size()));
        std::partial_sort(dist.begin(), dist.begin() + k, dist.end());
        std::vector<int> counts(static_cast<size_t>(m_), 0);
        for (int i = 0; i < k; ++i) {
            counts[static_cast<size_t>(labels_[static_cast<size_t>(dist[static_cast<size_t>(i)].second)])] += 1;
        }
        return frequency_probs(counts, k);
    }

    nlohmann::json to_json() const override {
        return {{"type", "knn"}, {"m", m_}, {"k", k_}, {"rows", rows_}, {"labels", labels_}};
    }

    static std::shared_ptr<Knn> from_json(const nlohmann::json& j) {
        return std::make_shared<Knn>(j.at("rows").get<std::vector<std::vector<double>>>(),
                                     j.at("labels").get<std::vector<int>>(), j.at("k").get<int>(),
                                     j.at("m").get<int>());
    }

  private:
    std::vector<std::vector<double>> rows_;
    std::vector<int> labels_;
    int k_ = 1;
    int m_ = 0;
};

}  // namespace

ScoreVector TrainedClassifier::predict_proba(std::span<const double> sample) const {
    ScoreVector probs = model->predict_proba(sample);
    // Contract: a probability vector over the m classes.
    if (static_cast<int>(probs.size()) != m) {
        throw std::logic_error("classifier produced the wrong number of class probabilities");
    }
    double total = 0.0;
    for (double p : probs) {
        if (!std::isfinite(p) || p < 0.0) {
            throw std::logic_error("classifier produced an invalid probability");
        }
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-6) {
        throw std::logic_error("classifier probabilities do not sum to 1");
    }
    return probs;
}

int TrainedClassifier::predict(std::span<const double> sample) const {
    const ScoreVector probs = predict_proba(sample);
    return ranking_from_scores(probs).top();
}

TrainedClassifier train(const LearnerConfig& config, const data::Dataset& train_set,
                        const data::Dataset& validation) {
    config.validate();
    if (train_set.num_rows() == 0) throw std::invalid_argument("train: empty training set");

    TrainedClassifier out;
    out.config = config;
    out.m = train_set.m;
    switch (config.kind) {
        case LearnerKind::decision_tree:
            out.model = DecisionTree::fit(train_set, config.dt_criterion, config.dt_max_depth);
            break;
        case LearnerKind::naive_bayes:
            out.model = NaiveBayes::fit(train_set);
            break;
        case LearnerKind::knn:
            out.model = std::make_shared<Knn>(train_set.rows, train_set.labels, config.knn_k,
                                              train_set.m);
            break;
    }
    out.validation_accuracy =
        accuracy_on(out, validation.num_rows() > 0 ? validation : train_set);
    return out;
}

double accuracy_on(const TrainedClassifier& classifier, const data::Dataset& dataset) {
    if (dataset.num_rows() == 0) throw std::invalid_argument("accuracy_on: empty dataset");
    int hits = 0;
    for (int r = 0; r < dataset.num_rows(); ++r) {
        if (classifier.predict(dataset.rows[static_cast<size_t>(r)]) ==
            dataset.labels[static_cast<size_t>(r)]) {
            ++hits;
        }
    }
    return static_cast<double>(hits) / static_cast<double>(dataset.num_rows());
}

nlohmann::json TrainedClassifier::to_json() const {
    nlohmann::json j;
    j["config"] = {{"kind", learn::to_string(config.kind)},
                   {"dt_criterion", config.dt_criterion == SplitCriterion::gini ? "gini" : "entropy"},
                   {"dt_max_depth", config.dt_max_depth},
                   {"knn_k", config.knn_k},
                   {"seed", config.seed}};
    j["validation_accuracy"] = validation_accuracy;
    j["m"] = m;
    j["model"] = model->to_json();
    return j;
}

TrainedClassifier TrainedClassifier::from_json(const nlohmann::json& j) {
    TrainedClassifier out;
    const auto& cfg = j.at("config");
    out.config.kind = learner_kind_from_string(cfg.at("kind").get<std::string>());
    out.config.dt_criterion = cfg.at("dt_criterion").get<std::string>() == "gini"
                                  ? SplitCriterion::gini
                                  : SplitCriterion::entropy;
    out.config.dt_max_depth = cfg.at("dt_max_depth").get<int>();
    out.config.knn_k = cfg.at("knn_k").get<int>();
    out.config.seed = cfg.at("seed").get<std::uint64_t>();
    out.validation_accuracy = j.at("validation_accuracy").get<double>();
    out.m = j.at("m").get<int>();
    const std::string type = j.at("model").at("type").get<std::string>();
    if (type == "decision-tree") {
        out.model = DecisionTree::from_json(j.at("model"));
    } else if (type == "naive-bayes") {
        out.model = NaiveBayes::from_json(j.at("model"));
    } else if (type == "knn") {
        out.model = Knn::from_json(j.at("model"));
    } else {
        throw std::invalid_argument("unknown model type '" + type + "'");
    }
    return out;
}

}  // namespace rankvote::learn
