// The random-classifier voting pipeline: build a profile of randomly
// configured learners, aggregate their per-sample rankings with a voting
// rule, and evaluate with repeated stratified cross-validation.
#pragma once

#include <cstdint>

#include "rankvote/learners.hpp"
#include "rankvote/voting.hpp"

namespace rankvote::ens {

struct EnsembleConfig {
    int n = 50;  // profile size
    VotingRule rule = VotingRule::plurality;
    TiePolicy tie = TiePolicy::best_classifier;
    std::uint64_t seed = 0;
    int kemeny_exact_threshold = 5;

    void validate() const;
};

struct EvalReport {
    std::vector<double> fold_f1;
    double mean_f1 = 0.0;
    double std_f1 = 0.0;
    double mean_individual_f1 = 0.0;  // profile average, over folds
    double best_individual_f1 = 0.0;  // per-fold best classifier, over folds
};

// n classifiers with independently sampled configurations (substream i of
// the master seed drives classifier i), all trained on the same data.
std::vector<learn::TrainedClassifier> build_profile(const data::Dataset& train,
                                                    const data::Dataset& validation,
                                                    const EnsembleConfig& config);

// One ensemble prediction: every classifier's probability vector becomes a
// ballot, the configured rule elects the class. Kemeny switches to the
// heuristic above the exact-search threshold.
int ensemble_predict(const std::vector<learn::TrainedClassifier>& profile,
                     std::span<const double> sample, const EnsembleConfig& config);

// repeats x stratified k-fold cross-validation. Within each fold a
// stratified 10% slice of the training portion is held out to measure the
// validation accuracies used by the best-classifier tie policy. folds = 1
// degenerates to train = test = the full dataset.
EvalReport evaluate(const data::Dataset& dataset, const EnsembleConfig& config, int folds,
                    int repeats);

}  // namespace rankvote::ens
