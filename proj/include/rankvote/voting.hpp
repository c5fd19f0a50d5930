// Voting rules over ballot profiles: Plurality, Borda, Copeland, Kemeny
// (exact and local-search) and the Sum baseline over raw score vectors.
#pragma once

#include <set>
#include <string>

#include "rankvote/types.hpp"

namespace rankvote {

enum class TiePolicy {
    lexicographic,    // smallest class index wins
    best_classifier,  // class preferred by the most accurate classifier
};

TiePolicy tie_policy_from_string(const std::string& name);
std::string to_string(TiePolicy tie);

// best-classifier when the profile carries accuracies, else lexicographic.
TiePolicy default_tie_policy(const Profile& profile);

struct RuleResult {
    ScoreVector rule_scores;  // one score per class
    int winner = -1;
    std::set<int> tied_set;   // argmax classes before tie-breaking
};

// Resolves a tie among `tied` classes. Lexicographic picks the smallest
// index. Best-classifier picks the tied class ranked highest by the voter
// with maximum validation accuracy (accuracy ties -> lower voter index);
// it throws std::invalid_argument when the profile has no accuracies.
int break_tie(const std::set<int>& tied, const Profile& profile, TiePolicy tie);

// First-place counts (weighted when the profile has weights).
RuleResult plurality(const Profile& profile, TiePolicy tie);

// Positional scores m-1, m-2, ..., 0.
RuleResult borda(const Profile& profile, TiePolicy tie);

// One point per pairwise majority win, half a point per pairwise tie.
RuleResult copeland(const Profile& profile, TiePolicy tie);

// Exhaustive consensus search. rule_scores[c] is the best total pairwise
// agreement achievable by any ranking with c on top; the tied set is
// exactly the set of top classes of optimal consensus rankings. Refuses
// profiles with m > exact_threshold (default 5, configurable up to 8).
RuleResult kemeny_exact(const Profile& profile, TiePolicy tie, int exact_threshold = 5);

// Hill climbing on the agreement objective: start from the Borda ranking,
// apply adjacent swaps until none improves. Deterministic given the
// profile; works for any m.
RuleResult kemeny_heuristic(const Profile& profile, TiePolicy tie);

// Element-wise sum of score vectors. Accuracies are only needed for the
// best-classifier tie policy (the tie is then broken by the ranking implied
// by the most accurate classifier's own scores).
RuleResult sum_aggregate(const std::vector<ScoreVector>& predictions, TiePolicy tie,
                         const std::optional<std::vector<double>>& accuracies = std::nullopt);

// Total pairwise agreement of `ranking` with every ballot (weighted).
double kemeny_agreement(const Profile& profile, const Ranking& ranking);

enum class VotingRule { plurality, borda, copeland, kemeny, sum };

VotingRule voting_rule_from_string(const std::string& name);
std::string to_string(VotingRule rule);

// Dispatches ranking-based rules; Kemeny switches between the exact search
// (m <= kemeny_exact_threshold) and the heuristic. `sum` is not valid here
// because it needs raw scores, not ballots.
RuleResult apply_rule(VotingRule rule, const Profile& profile, TiePolicy tie,
                      int kemeny_exact_threshold = 5);

}  // namespace rankvote
