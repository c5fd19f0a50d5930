// Dataset ingestion and the evaluation plumbing around it: CSV loading
// with encoding/imputation/scaling, stratified folds, and F1 scores.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rankvote/types.hpp"

namespace rankvote::data {

enum class ColumnType { categorical, numerical };

struct ColumnSpec {
    std::string name;
    ColumnType type = ColumnType::numerical;
    bool missing_allowed = true;
};

// Declares the feature columns (with types) and the label column of a CSV
// file. JSON form:
//   {"label": "species", "columns": [{"name": ..., "type":
//    "categorical"|"numerical", "missing": bool?}, ...]}
struct SchemaSpec {
    std::vector<ColumnSpec> columns;
    std::string label_column;

    static SchemaSpec from_json_file(const std::string& path);
};

struct Dataset {
    SchemaSpec schema;
    std::vector<std::vector<double>> rows;  // encoded features, one row per sample
    std::vector<int> labels;                // class index per sample
    int m = 0;
    std::vector<std::string> class_names;   // class index -> label token
    // Per feature column: category code -> token (empty for numerical).
    std::vector<std::vector<std::string>> feature_categories;
    // Per feature column: pre-scaling (min, max) for numerical columns.
    std::vector<std::pair<double, double>> numeric_range;

    int num_rows() const { return static_cast<int>(rows.size()); }
    int num_features() const { return static_cast<int>(schema.columns.size()); }

    std::string decode_feature(int column, double encoded) const;
    const std::string& class_name(int label) const { return class_names[static_cast<size_t>(label)]; }
    ClassLabel class_label(int label) const { return {label, class_name(label)}; }

    // Rows at `indices`, sharing this dataset's encoding and scaling.
    Dataset subset(const std::vector<int>& indices) const;

    // Per-class sample counts.
    std::vector<int> class_histogram() const;
};

// Loads a CSV with a header row. Categorical values are label-encoded
// (codes in sorted token order), missing cells ("" or "?") are imputed
// with the column mode (categorical) or median (numerical), and numerical
// columns are min-max scaled to [0,1] (constant columns map to 0).
// Malformed rows and missing labels raise errors citing the row number.
Dataset load_csv(const std::string& path, const SchemaSpec& schema);

struct FoldPlan {
    std::vector<std::vector<int>> folds;
    std::uint64_t seed = 0;

    int k() const { return static_cast<int>(folds.size()); }
};

// Stratified partition into k folds, deterministic given the seed.
// Requires 1 <= k <= (smallest class count); per-fold class counts deviate
// from proportional by at most one sample.
FoldPlan stratified_kfold(const Dataset& dataset, int k, std::uint64_t seed);

// Stratified split of `indices`: roughly `fraction` of each class goes to
// the first output (at least one sample per class stays in the second).
std::pair<std::vector<int>, std::vector<int>> stratified_split(const Dataset& dataset,
                                                               const std::vector<int>& indices,
                                                               double fraction,
                                                               std::uint64_t seed);

enum class F1Mode { binary, macro };

F1Mode f1_mode_from_string(const std::string& name);

// binary: F1 of class 1. macro: unweighted mean of per-class F1 over the
// classes present in y_true.
double f1_score(const std::vector<int>& y_true, const std::vector<int>& y_pred, F1Mode mode);

}  // namespace rankvote::data
