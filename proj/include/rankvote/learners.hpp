// Desk-scale base classifiers with randomized hyperparameters: decision
// trees (gini/entropy, capped depth), categorical+Gaussian naive Bayes,
// and k-nearest-neighbours. Each predictor returns a probability vector
// over the classes.
#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "rankvote/data.hpp"
#include "rankvote/rng.hpp"
#include "rankvote/types.hpp"

namespace rankvote::learn {

enum class LearnerKind { decision_tree, naive_bayes, knn };

std::string to_string(LearnerKind kind);
LearnerKind learner_kind_from_string(const std::string& name);

enum class SplitCriterion { gini, entropy };

struct LearnerConfig {
    LearnerKind kind = LearnerKind::decision_tree;
    SplitCriterion dt_criterion = SplitCriterion::gini;
    int dt_max_depth = 5;   // in [5, 25]
    int knn_k = 1;          // >= 1
    std::uint64_t seed = 0;

    void validate() const;
};

// floor(e^x) with x uniform in [ln lo, ln hi]; the result lies in [lo, hi].
int sample_geometric(int lo, int hi, Pcg32& rng);

// Kind uniform over the three learners; tree criterion uniform, tree depth
// uniform in [5,25]; knn k sampled geometrically in [1,32].
LearnerConfig sample_learner_config(Pcg32& rng);

class Classifier {
  public:
    virtual ~Classifier() = default;
    virtual ScoreVector predict_proba(std::span<const double> sample) const = 0;
    virtual nlohmann::json to_json() const = 0;
};

struct TrainedClassifier {
    LearnerConfig config;
    std::shared_ptr<const Classifier> model;
    double validation_accuracy = 0.0;
    int m = 0;

    // Length-m, nonnegative, sums to 1 within 1e-6.
    ScoreVector predict_proba(std::span<const double> sample) const;
    int predict(std::span<const double> sample) const;

    nlohmann::json to_json() const;
    static TrainedClassifier from_json(const nlohmann::json& j);
};

// Trains on `train`, records accuracy on `validation` (falls back to the
// training set when the validation set is empty). Single-class training
// data produces a constant one-hot predictor.
TrainedClassifier train(const LearnerConfig& config, const data::Dataset& train,
                        const data::Dataset& validation);

// Fraction of samples whose argmax prediction matches the label.
double accuracy_on(const TrainedClassifier& classifier, const data::Dataset& dataset);

}  // namespace rankvote::learn
