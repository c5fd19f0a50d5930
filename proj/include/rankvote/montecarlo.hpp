// Monte Carlo simulation of the voter/classifier models: samples ballot
// profiles, elects a winner with a configurable voting rule, and estimates
// the probability that the designated correct class wins.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rankvote/voting.hpp"

namespace rankvote::mc {

enum class Model {
    iid,      // every voter correct with the same probability p
    hetero,   // voter i correct with probability p_i
    overlap,  // a rho fraction of trials is easy (all voters correct),
              // the rest run i.i.d. at the residual accuracy (p-rho)/(1-rho)
};

Model model_from_string(const std::string& name);
std::string to_string(Model model);

// What counts as a win for the correct class (index 0).
enum class WinCriterion {
    strict,           // sole argmax of the rule scores, no tie-break needed
    lexicographic,    // elected after lexicographic tie-breaking
    best_classifier,  // elected after best-classifier tie-breaking
};

WinCriterion win_criterion_from_string(const std::string& name);
std::string to_string(WinCriterion crit);

struct SimConfig {
    long n = 1;
    long m = 2;
    long trials = 10000;
    std::uint64_t seed = 0;
    Model model = Model::iid;
    double p = 0.5;                   // iid and overlap
    std::vector<double> accuracies;   // hetero
    double rho = 0.0;                 // overlap
    VotingRule rule = VotingRule::plurality;
    WinCriterion win = WinCriterion::strict;
    int kemeny_exact_threshold = 5;
    int threads = 1;  // trials fan out over substreams, so results match serial runs

    void validate() const;
};

struct SimResult {
    long wins = 0;
    long trials = 0;
    double rate = 0.0;
    double stderr_estimate = 0.0;  // sqrt(rate (1-rate) / trials)
    // Diagnostics: per-ballot top-choice correctness across all trials.
    long correct_ballots = 0;
    long total_ballots = 0;
};

// Deterministic given the seed: each trial draws from its own substream,
// so results do not depend on evaluation order.
SimResult simulate(const SimConfig& config);

}  // namespace rankvote::mc
