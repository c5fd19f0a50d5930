// Shared domain types: class labels, score vectors, ballots (rankings)
// and profiles, plus the score -> ranking conversion.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace rankvote {

struct ClassLabel {
    int index = 0;
    std::string name;  // optional display string
};

// Per-class nonnegative scores. Classifier probability outputs additionally
// sum to 1 (checked at the learner boundary, not here: rule scores in
// general are unnormalized).
using ScoreVector = std::vector<double>;

// Throws std::invalid_argument on empty/non-finite/negative entries.
void validate_score_vector(const ScoreVector& scores);

// A strict total order over the m class indices, best first.
struct Ranking {
    std::vector<int> order;

    int size() const { return static_cast<int>(order.size()); }
    int top() const { return order.front(); }

    // positions()[c] = rank position of class c (0 = best).
    std::vector<int> positions() const;

    bool is_permutation() const;
};

// Classes sorted by descending score; equal scores break toward the lower
// class index, so the result is deterministic.
Ranking ranking_from_scores(const ScoreVector& scores);

// One ballot per classifier, with optional validation accuracies (used by
// the best-classifier tie policy) and optional voter weights.
struct Profile {
    int m = 0;
    std::vector<Ranking> rankings;
    std::optional<std::vector<double>> validation_accuracy;
    std::optional<std::vector<double>> weights;

    int num_voters() const { return static_cast<int>(rankings.size()); }
    double weight(int voter) const { return weights ? (*weights)[voter] : 1.0; }

    // Throws std::invalid_argument when any invariant is broken.
    void validate() const;
};

// JSON form: {"m": int, "rankings": [[int,...],...],
//             "validation_accuracy": [float,...], "weights": [...]|null}.
// An empty/null validation_accuracy means "not available".
nlohmann::json profile_to_json(const Profile& profile);
Profile profile_from_json(const nlohmann::json& j);

Profile load_profile(const std::string& path);

}  // namespace rankvote
