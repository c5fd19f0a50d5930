#include "rankvote/ensemble.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rankvote::ens {

namespace {

constexpr double kValidationFraction = 0.10;

data::F1Mode f1_mode_for(const data::Dataset& dataset) {
    return dataset.m == 2 ? data::F1Mode::binary : data::F1Mode::macro;
}

}  // namespace

void EnsembleConfig::validate() const {
    if (n < 1) throw std::invalid_argument("ensemble: need at least one classifier");
    if (kemeny_exact_threshold < 2 || kemeny_exact_threshold > 8) {
        throw std::invalid_argument("ensemble: kemeny threshold must be in [2,8]");
    }
}

std::vector<learn::TrainedClassifier> build_profile(const data::Dataset& train,
                                                    const data::Dataset& validation,
                                                    const EnsembleConfig& config) {
    config.validate();
    std::vector<learn::TrainedClassifier> profile;
    profile.reserve(static_cast<size_t>(config.n));
    for (int i = 0; i < config.n; ++i) {
        Pcg32 rng(substream_seed(config.seed, static_cast<std::uint64_t>(i)));
        const learn::LearnerConfig learner = learn::sample_learner_config(rng);
        profile.push_back(learn::train(learner, train, validation));
    }
    return profile;
}

int ensemble_predict(const std::vector<learn::TrainedClassifier>& profile,
                     std::span<const double> sample, const EnsembleConfig& config) {
    if (profile.empty()) throw std::invalid_argument("ensemble_predict: empty profile");

    std::vector<ScoreVector> predictions;
    std::vector<double> accuracies;
    predictions.reserve(profile.size());
    accuracies.reserve(profile.size());
    for (const auto& classifier : profile) {
        predictions.push_back(classifier.predict_proba(sample));
        accuracies.push_back(classifier.validation_accuracy);
    }

    if (config.rule == VotingRule::sum) {
        return sum_aggregate(predictions, config.tie, accuracies).winner;
    }

    Profile ballots;
    ballots.m = profile.front().m;
    ballots.rankings.reserve(predictions.size());
    for (const ScoreVector& scores : predictions) {
        ballots.rankings.push_back(ranking_from_scores(scores));
    }
    ballots.validation_accuracy = std::move(accuracies);
    return apply_rule(config.rule, ballots, config.tie, config.kemeny_exact_threshold).winner;
}

EvalReport evaluate(const data::Dataset& dataset, const EnsembleConfig& config, int folds,
                    int repeats) {
    config.validate();
    if (folds < 1) throw std::invalid_argument("evaluate: need folds >= 1");
    if (repeats < 1) throw std::invalid_argument("evaluate: need repeats >= 1");

    const data::F1Mode mode = f1_mode_for(dataset);
    EvalReport report;
    double individual_sum = 0.0;
    double best_sum = 0.0;
    int fold_count = 0;

    for (int rep = 0; rep < repeats; ++rep) {
        const std::uint64_t rep_seed = substream_seed(config.seed, 1000 + static_cast<std::uint64_t>(rep));

        std::vector<std::vector<int>> test_folds;
        std::vector<std::vector<int>> train_parts;
        if (folds == 1) {
            std::vector<int> all(static_cast<size_t>(dataset.num_rows()));
            std::iota(all.begin(), all.end(), 0);
            test_folds.push_back(all);
            train_parts.push_back(all);
        } else {
            const data::FoldPlan plan = data::stratified_kfold(dataset, folds, rep_seed);
            for (int f = 0; f < folds; ++f) {
                test_folds.push_back(plan.folds[static_cast<size_t>(f)]);
                std::vector<int> rest;
                for (int g = 0; g < folds; ++g) {
                    if (g == f) continue;
                    rest.insert(rest.end(), plan.folds[static_cast<size_t>(g)].begin(),
                                plan.folds[static_cast<size_t>(g)].end());
                }
                train_parts.push_back(std::move(rest));
            }
        }

        for (int f = 0; f < folds; ++f) {
            const auto [valid_idx, train_idx] = data::stratified_split(
                dataset, train_parts[static_cast<size_t>(f)], kValidationFraction,
                substream_seed(rep_seed, static_cast<std::uint64_t>(f)));
            const data::Dataset train_set = dataset.subset(train_idx);
            const data::Dataset valid_set = dataset.subset(valid_idx);
            const data::Dataset test_set = dataset.subset(test_folds[static_cast<size_t>(f)]);

            EnsembleConfig fold_config = config;
            fold_config.seed = substream_seed(rep_seed, 5000 + static_cast<std::uint64_t>(f));
            const auto profile = build_profile(train_set, valid_set, fold_config);

            std::vector<int> predicted;
            predicted.reserve(static_cast<size_t>(test_set.num_rows()));
            std::vector<std::vector<int>> individual(
                profile.size(), std::vector<int>());
            for (int r = 0; r < test_set.num_rows(); ++r) {
                predicted.push_back(
                    ensemble_predict(profile, test_set.rows[static_cast<size_t>(r)], fold_config));
                for (size_t c = 0; c < profile.size(); ++c) {
                    individual[c].push_back(
                        profile[c].predict(test_set.rows[static_cast<size_t>(r)]));
                }
            }

            report.fold_f1.push_back(data::f1_score(test_set.labels, predicted, mode));

            double fold_individual = 0.0;
            double fold_best = 0.0;
            for (size_t c = 0; c < profile.size(); ++c) {
                const double f1 = data::f1_score(test_set.labels, individual[c], mode);
                fold_individual += f1;
                fold_best = std::max(fold_best, f1);
            }
            individual_sum += fold_individual / static_cast<double>(profile.size());
            best_sum += fold_best;
            ++fold_count;
        }
    }

    const double count = static_cast<double>(fold_count);
    report.mean_f1 = std::accumulate(report.fold_f1.begin(), report.fold_f1.end(), 0.0) / count;
    double var = 0.0;
    for (double f1 : report.fold_f1) var += (f1 - report.mean_f1) * (f1 - report.mean_f1);
    report.std_f1 = std::sqrt(var / count);
    report.mean_individual_f1 = individual_sum / count;
    report.best_individual_f1 = best_sum / count;
    return report;
}

}  // namespace rankvote::ens
