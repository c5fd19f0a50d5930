#include "rankvote/data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "rankvote/rng.hpp"

namespace rankvote::data {

namespace {

bool is_missing(const std::string& token) { return token.empty() || token == "?"; }

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

std::string strip(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& token, int row, const std::string& column) {
    try {
        size_t used = 0;
        double v = std::stod(token, &used);
        if (used != token.size() || !std::isfinite(v)) throw std::invalid_argument(token);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("row " + std::to_string(row) + ": cannot parse '" + token +
                                    "' as a number for column '" + column + "'");
    }
}

double median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace

SchemaSpec SchemaSpec::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open schema file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("malformed schema JSON in " + path + ": " + e.what());
    }
    SchemaSpec spec;
    try {
        spec.label_column = j.at("label").get<std::string>();
        for (const auto& col : j.at("columns")) {
            ColumnSpec c;
            c.name = col.at("name").get<std::string>();
            const std::string type = col.at("type").get<std::string>();
            if (type == "categorical") {
                c.type = ColumnType::categorical;
            } else if (type == "numerical") {
                c.type = ColumnType::numerical;
            } else {
                throw std::invalid_argument("column '" + c.name + "' has unknown type '" + type +
                                            "'");
            }
            if (col.contains("missing")) c.missing_allowed = col["missing"].get<bool>();
            spec.columns.push_back(std::move(c));
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("malformed schema JSON in " + path + ": " + e.what());
    }
    if (spec.columns.empty()) throw std::invalid_argument("schema declares no feature columns");
    return spec;
}

std::string Dataset::decode_feature(int column, double encoded) const {
    const auto& cats = feature_categories[static_cast<size_t>(column)];
    if (cats.empty()) {
        throw std::invalid_argument("column " + std::to_string(column) + " is not categorical");
    }
    const auto code = static_cast<size_t>(std::llround(encoded));
    if (code >= cats.size()) throw std::invalid_argument("category code out of range");
    return cats[code];
}

Dataset Dataset::subset(const std::vector<int>& indices) const {
    Dataset out;
    out.schema = schema;
    out.m = m;
    out.class_names = class_names;
    out.feature_categories = feature_categories;
    out.numeric_range = numeric_range;
    out.rows.reserve(indices.size());
    out.labels.reserve(indices.size());
    for (int idx : indices) {
        out.rows.push_back(rows[static_cast<size_t>(idx)]);
        out.labels.push_back(labels[static_cast<size_t>(idx)]);
    }
    return out;
}

std::vector<int> Dataset::class_histogram() const {
    std::vector<int> counts(static_cast<size_t>(m), 0);
    for (int label : labels) counts[static_cast<size_t>(label)] += 1;
    return counts;
}

Dataset load_csv(const std::string& path, const SchemaSpec& schema) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open dataset file: " + path);

    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument(path + ": empty file");
    const auto header = split_csv_line(strip(line));

    std::map<std::string, int> header_pos;
    for (int i = 0; i < static_cast<int>(header.size()); ++i) header_pos[strip(header[static_cast<size_t>(i)])] = i;

    const auto label_it = header_pos.find(schema.label_column);
    if (label_it == header_pos.end()) {
        throw std::invalid_argument(path + ": label column '" + schema.label_column +
                                    "' not found in header");
    }
    const int label_pos = label_it->second;

    std::vector<int> feature_pos;
    for (const ColumnSpec& col : schema.columns) {
        const auto it = header_pos.find(col.name);
        if (it == header_pos.end()) {
            throw std::invalid_argument(path + ": column '" + col.name + "' not found in header");
        }
        feature_pos.push_back(it->second);
    }

    // Pass 1: collect raw tokens.
    std::vector<std::vector<std::string>> raw;   // per row: feature tokens
    std::vector<std::string> raw_labels;
    int row_number = 1;  // header was row 1
    while (std::getline(in, line)) {
        ++row_number;
        const std::string stripped = strip(line);
        if (stripped.empty()) continue;
        const auto fields = split_csv_line(stripped);
        if (fields.size() != header.size()) {
            throw std::invalid_argument(path + ": row " + std::to_string(row_number) + " has " +
                                        std::to_string(fields.size()) + " fields, expected " +
                                        std::to_string(header.size()));
        }
        const std::string label = strip(fields[static_cast<size_t>(label_pos)]);
        if (is_missing(label)) {
            throw std::invalid_argument(path + ": row " + std::to_string(row_number) +
                                        " has a missing label");
        }
        std::vector<std::string> tokens;
        tokens.reserve(feature_pos.size());
        for (size_t c = 0; c < feature_pos.size(); ++c) {
            std::string token = strip(fields[static_cast<size_t>(feature_pos[c])]);
            if (is_missing(token) && !schema.columns[c].missing_allowed) {
                throw std::invalid_argument(path + ": row " + std::to_string(row_number) +
                                            " has a missing value in column '" +
                                            schema.columns[c].name + "'");
            }
            tokens.push_back(std::move(token));
        }
        raw.push_back(std::move(tokens));
        raw_labels.push_back(label);
    }
    if (raw.empty()) throw std::invalid_argument(path + ": no data rows");

    Dataset ds;
    ds.schema = schema;

    // Labels: sorted distinct tokens -> class indices.
    {
        std::set<std::string> distinct(raw_labels.begin(), raw_labels.end());
        ds.class_names.assign(distinct.begin(), distinct.end());
        ds.m = static_cast<int>(ds.class_names.size());
        if (ds.m < 2) throw std::invalid_argument(path + ": need at least two classes");
        std::map<std::string, int> index;
        for (int i = 0; i < ds.m; ++i) index[ds.class_names[static_cast<size_t>(i)]] = i;
        ds.labels.reserve(raw_labels.size());
        for (const auto& token : raw_labels) ds.labels.push_back(index.at(token));
    }

    const size_t ncols = schema.columns.size();
    ds.feature_categories.resize(ncols);
    ds.numeric_range.assign(ncols, {0.0, 0.0});
    ds.rows.assign(raw.size(), std::vector<double>(ncols, 0.0));

    for (size_t c = 0; c < ncols; ++c) {
        if (schema.columns[c].type == ColumnType::categorical) {
            std::set<std::string> distinct;
            std::map<std::string, int> freq;
            for (const auto& row : raw) {
                if (!is_missing(row[c])) {
                    distinct.insert(row[c]);
                    freq[row[c]] += 1;
                }
            }
            if (distinct.empty()) {
                throw std::invalid_argument(path + ": column '" + schema.columns[c].name +
                                            "' has no observed values");
            }
            auto& cats = ds.feature_categories[c];
            cats.assign(distinct.begin(), distinct.end());
            std::map<std::string, int> code;
            for (int i = 0; i < static_cast<int>(cats.size()); ++i) code[cats[static_cast<size_t>(i)]] = i;
            // Mode imputation; frequency ties go to the smallest token.
            std::string mode = cats.front();
            for (const auto& token : cats) {
                if (freq[token] > freq[mode]) mode = token;
            }
            for (size_t r = 0; r < raw.size(); ++r) {
                const std::string& token = is_missing(raw[r][c]) ? mode : raw[r][c];
                ds.rows[r][c] = static_cast<double>(code.at(token));
            }
        } else {
            std::vector<double> present;
            for (size_t r = 0; r < raw.size(); ++r) {
                if (!is_missing(raw[r][c])) {
                    present.push_back(parse_number(raw[r][c], static_cast<int>(r) + 2,
                                                   schema.columns[c].name));
                }
            }
            if (present.empty()) {
                throw std::invalid_argument(path + ": column '" + schema.columns[c].name +
                                            "' has no observed values");
            }
            const double fill = median(present);
            double lo = present.front(), hi = present.front();
            for (double v : present) {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            ds.numeric_range[c] = {lo, hi};
            const double span = hi - lo;
            for (size_t r = 0; r < raw.size(); ++r) {
                double v = is_missing(raw[r][c])
                               ? fill
                               : parse_number(raw[r][c], static_cast<int>(r) + 2,
                                              schema.columns[c].name);
                ds.rows[r][c] = span > 0 ? (v - lo) / span : 0.0;
            }
        }
    }
    return ds;
}

FoldPlan stratified_kfold(const Dataset& dataset, int k, std::uint64_t seed) {
    if (k < 1) throw std::invalid_argument("stratified_kfold: need k >= 1");
    const auto counts = dataset.class_histogram();
    const int min_count = *std::min_element(counts.begin(), counts.end());
    if (k > min_count) {
        throw std::invalid_argument("stratified_kfold: k = " + std::to_string(k) +
                                    " exceeds the smallest class count of " +
                                    std::to_string(min_count));
    }

    std::vector<std::vector<int>> by_class(static_cast<size_t>(dataset.m));
    for (int i = 0; i < dataset.num_rows(); ++i) {
        by_class[static_cast<size_t>(dataset.labels[static_cast<size_t>(i)])].push_back(i);
    }

    FoldPlan plan;
    plan.seed = seed;
    plan.folds.assign(static_cast<size_t>(k), {});
    int start = 0;  // rotates across classes so fold sizes stay balanced
    for (int c = 0; c < dataset.m; ++c) {
        auto& members = by_class[static_cast<size_t>(c)];
        Pcg32 rng(substream_seed(seed, static_cast<std::uint64_t>(c)));
        rng.shuffle(members.begin(), members.end());
        for (size_t j = 0; j < members.size(); ++j) {
            plan.folds[static_cast<size_t>((start + static_cast<int>(j)) % k)].push_back(members[j]);
        }
        start = (start + static_cast<int>(members.size())) % k;
    }
    for (auto& fold : plan.folds) std::sort(fold.begin(), fold.end());
    return plan;
}

std::pair<std::vector<int>, std::vector<int>> stratified_split(const Dataset& dataset,
                                                               const std::vector<int>& indices,
                                                               double fraction,
                                                               std::uint64_t seed) {
    if (!(fraction > 0.0 && fraction < 1.0)) {
        throw std::invalid_argument("stratified_split: fraction must lie in (0,1)");
    }
    std::vector<std::vector<int>> by_class(static_cast<size_t>(dataset.m));
    for (int idx : indices) {
        by_class[static_cast<size_t>(dataset.labels[static_cast<size_t>(idx)])].push_back(idx);
    }
    std::vector<int> taken, rest;
    for (int c = 0; c < dataset.m; ++c) {
        auto& members = by_class[static_cast<size_t>(c)];
        if (members.empty()) continue;
        Pcg32 rng(substream_seed(seed, static_cast<std::uint64_t>(c)));
        rng.shuffle(members.begin(), members.end());
        // Keep at least one sample on each side when the class has >= 2.
        long want = std::lround(fraction * static_cast<double>(members.size()));
        want = std::clamp<long>(want, members.size() >= 2 ? 1 : 0,
                                static_cast<long>(members.size()) - 1);
        for (size_t j = 0; j < members.size(); ++j) {
            (static_cast<long>(j) < want ? taken : rest).push_back(members[j]);
        }
    }
    std::sort(taken.begin(), taken.end());
    std::sort(rest.begin(), rest.end());
    return {taken, rest};
}

F1Mode f1_mode_from_string(const std::string& name) {
    if (name == "binary") return F1Mode::binary;
    if (name == "macro") return F1Mode::macro;
    throw std::invalid_argument("unknown F1 mode '" + name + "' (expected binary|macro)");
}

namespace {

double f1_of_class(const std::vector<int>& y_true, const std::vector<int>& y_pred, int cls) {
    long tp = 0, fp = 0, fn = 0;
    for (size_t i = 0; i < y_true.size(); ++i) {
        const bool t = y_true[i] == cls;
        const bool p = y_pred[i] == cls;
        tp += t && p;
        fp += !t && p;
        fn += t && !p;
    }
    if (tp == 0) return 0.0;
    const double precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
    const double recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
    return 2.0 * precision * recall / (precision + recall);
}

}  // namespace

double f1_score(const std::vector<int>& y_true, const std::vector<int>& y_pred, F1Mode mode) {
    if (y_true.size() != y_pred.size()) {
        throw std::invalid_argument("f1_score: prediction count does not match truth count");
    }
    if (y_true.empty()) throw std::invalid_argument("f1_score: empty input");

    if (mode == F1Mode::binary) return f1_of_class(y_true, y_pred, 1);

    // Macro over the classes present in y_true (classes never seen in the
    // truth are excluded rather than dragged in as zeros).
    std::set<int> present(y_true.begin(), y_true.end());
    double total = 0.0;
    for (int cls : present) total += f1_of_class(y_true, y_pred, cls);
    return total / static_cast<double>(present.size());
}

}  // namespace rankvote::data
