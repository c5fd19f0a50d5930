#include "rankvote/voting.hpp"

#include <algorithm>
#include <stdexcept>

namespace rankvote {

TiePolicy tie_policy_from_string(const std::string& name) {
    if (name == "lexicographic" || name == "lex") return TiePolicy::lexicographic;
    if (name == "best-classifier" || name == "best") return TiePolicy::best_classifier;
    throw std::invalid_argument("unknown tie policy '" + name +
                                "' (expected lexicographic|best-classifier)");
}

std::string to_string(TiePolicy tie) {
    return tie == TiePolicy::lexicographic ? "lexicographic" : "best-classifier";
}

TiePolicy default_tie_policy(const Profile& profile) {
    return profile.validation_accuracy ? TiePolicy::best_classifier : TiePolicy::lexicographic;
}

int break_tie(const std::set<int>& tied, const Profile& profile, TiePolicy tie) {
    if (tied.empty()) throw std::invalid_argument("break_tie: empty tie set");
    if (tied.size() == 1) return *tied.begin();
    if (tie == TiePolicy::lexicographic) return *tied.begin();

    if (!profile.validation_accuracy) {
        throw std::invalid_argument(
            "best-classifier tie policy needs validation accuracies in the profile");
    }
    const auto& acc = *profile.validation_accuracy;
    int best_voter = 0;
    for (int v = 1; v < profile.num_voters(); ++v) {
        if (acc[static_cast<size_t>(v)] > acc[static_cast<size_t>(best_voter)]) best_voter = v;
    }
    const auto pos = profile.rankings[static_cast<size_t>(best_voter)].positions();
    int winner = *tied.begin();
    for (int c : tied) {
        if (pos[static_cast<size_t>(c)] < pos[static_cast<size_t>(winner)]) winner = c;
    }
    return winner;
}

namespace {

std::set<int> argmax_set(const ScoreVector& scores) {
    double best = scores[0];
    for (double s : scores) best = std::max(best, s);
    std::set<int> tied;
    for (int c = 0; c < static_cast<int>(scores.size()); ++c) {
        if (scores[static_cast<size_t>(c)] == best) tied.insert(c);
    }
    return tied;
}

RuleResult finish(ScoreVector scores, const Profile& profile, TiePolicy tie) {
    RuleResult result;
    result.tied_set = argmax_set(scores);
    result.winner = break_tie(result.tied_set, profile, tie);
    result.rule_scores = std::move(scores);
    return result;
}

// pairwise[a][b] = total weight of voters preferring a over b
std::vector<std::vector<double>> pairwise_matrix(const Profile& profile) {
    const size_t m = static_cast<size_t>(profile.m);
    std::vector<std::vector<double>> wins(m, std::vector<double>(m, 0.0));
    for (int v = 0; v < profile.num_voters(); ++v) {
        const auto& order = profile.rankings[static_cast<size_t>(v)].order;
        const double w = profile.weight(v);
        for (size_t i = 0; i + 1 < m; ++i) {
            for (size_t j = i + 1; j < m; ++j) {
                wins[static_cast<size_t>(order[i])][static_cast<size_t>(order[j])] += w;
            }
        }
    }
    return wins;
}

double agreement_from_pairwise(const std::vector<std::vector<double>>& wins,
                               const std::vector<int>& order) {
    double total = 0.0;
    for (size_t i = 0; i + 1 < order.size(); ++i) {
        for (size_t j = i + 1; j < order.size(); ++j) {
            total += wins[static_cast<size_t>(order[i])][static_cast<size_t>(order[j])];
        }
    }
    return total;
}

}  // namespace

RuleResult plurality(const Profile& profile, TiePolicy tie) {
    profile.validate();
    ScoreVector scores(static_cast<size_t>(profile.m), 0.0);
    for (int v = 0; v < profile.num_voters(); ++v) {
        scores[static_cast<size_t>(profile.rankings[static_cast<size_t>(v)].top())] +=
            profile.weight(v);
    }
    return finish(std::move(scores), profile, tie);
}

RuleResult borda(const Profile& profile, TiePolicy tie) {
    profile.validate();
    ScoreVector scores(static_cast<size_t>(profile.m), 0.0);
    for (int v = 0; v < profile.num_voters(); ++v) {
        const auto& order = profile.rankings[static_cast<size_t>(v)].order;
        const double w = profile.weight(v);
        for (int i = 0; i < profile.m; ++i) {
            scores[static_cast<size_t>(order[static_cast<size_t>(i)])] +=
                w * static_cast<double>(profile.m - 1 - i);
        }
    }
    return finish(std::move(scores), profile, tie);
}

RuleResult copeland(const Profile& profile, TiePolicy tie) {
    profile.validate();
    const auto wins = pairwise_matrix(profile);
    ScoreVector scores(static_cast<size_t>(profile.m), 0.0);
    for (int a = 0; a < profile.m; ++a) {
        for (int b = 0; b < profile.m; ++b) {
            if (a == b) continue;
            const double ab = wins[static_cast<size_t>(a)][static_cast<size_t>(b)];
            const double ba = wins[static_cast<size_t>(b)][static_cast<size_t>(a)];
            if (ab > ba) {
                scores[static_cast<size_t>(a)] += 1.0;
            } else if (ab == ba) {
                scores[static_cast<size_t>(a)] += 0.5;
            }
        }
    }
    return finish(std::move(scores), profile, tie);
}

double kemeny_agreement(const Profile& profile, const Ranking& ranking) {
    profile.validate();
    if (ranking.size() != profile.m || !ranking.is_permutation()) {
        throw std::invalid_argument("kemeny_agreement: invalid ranking");
    }
    return agreement_from_pairwise(pairwise_matrix(profile), ranking.order);
}

RuleResult kemeny_exact(const Profile& profile, TiePolicy tie, int exact_threshold) {
    profile.validate();
    if (exact_threshold < 2 || exact_threshold > 8) {
        throw std::invalid_argument("kemeny_exact: threshold must be in [2,8]");
    }
    if (profile.m > exact_threshold) {
        throw std::invalid_argument(
            "kemeny_exact: profile has " + std::to_string(profile.m) +
            " classes, above the exact-search threshold of " + std::to_string(exact_threshold) +
            "; use kemeny_heuristic instead");
    }
    const auto wins = pairwise_matrix(profile);

    // Scan all m! orders, keeping the best agreement per top class.
    std::vector<int> order(static_cast<size_t>(profile.m));
    for (int i = 0; i < profile.m; ++i) order[static_cast<size_t>(i)] = i;
    ScoreVector best_by_top(static_cast<size_t>(profile.m), -1.0);
    do {
        const double agreement = agreement_from_pairwise(wins, order);
        double& best = best_by_top[static_cast<size_t>(order[0])];
        best = std::max(best, agreement);
    } while (std::next_permutation(order.begin(), order.end()));

    return finish(std::move(best_by_top), profile, tie);
}

RuleResult kemeny_heuristic(const Profile& profile, TiePolicy tie) {
    profile.validate();
    const auto wins = pairwise_matrix(profile);

    std::vector<int> order = [&] {
        ScoreVector borda_scores = borda(profile, TiePolicy::lexicographic).rule_scores;
        return ranking_from_scores(borda_scores).order;
    }();

    // Adjacent-swap hill climbing; left-to-right passes until stable.
    bool improved = true;
    while (improved) {
        improved = false;
        for (size_t k = 0; k + 1 < order.size(); ++k) {
            const double gain = wins[static_cast<size_t>(order[k + 1])][static_cast<size_t>(order[k])] -
                                wins[static_cast<size_t>(order[k])][static_cast<size_t>(order[k + 1])];
            if (gain > 0) {
                std::swap(order[k], order[k + 1]);
                improved = true;
            }
        }
    }

    // Score each class by the agreement of the converged order with that
    // class promoted to the top.
    ScoreVector scores(static_cast<size_t>(profile.m), 0.0);
    for (int c = 0; c < profile.m; ++c) {
        std::vector<int> promoted;
        promoted.reserve(order.size());
        promoted.push_back(c);
        for (int x : order) {
            if (x != c) promoted.push_back(x);
        }
        scores[static_cast<size_t>(c)] = agreement_from_pairwise(wins, promoted);
    }
    return finish(std::move(scores), profile, tie);
}

RuleResult sum_aggregate(const std::vector<ScoreVector>& predictions, TiePolicy tie,
                         const std::optional<std::vector<double>>& accuracies) {
    if (predictions.empty()) throw std::invalid_argument("sum_aggregate: no predictions");
    const size_t m = predictions.front().size();
    ScoreVector scores(m, 0.0);
    for (const ScoreVector& pred : predictions) {
        validate_score_vector(pred);
        if (pred.size() != m) {
            throw std::invalid_argument("sum_aggregate: score vectors have mismatched lengths");
        }
        for (size_t c = 0; c < m; ++c) scores[c] += pred[c];
    }
    if (m < 2) throw std::invalid_argument("sum_aggregate: need at least two classes");

    // Reuse the profile-based tie machinery by converting each prediction
    // to its implied ranking.
    Profile profile;
    profile.m = static_cast<int>(m);
    for (const ScoreVector& pred : predictions) profile.rankings.push_back(ranking_from_scores(pred));
    if (accuracies) {
        if (accuracies->size() != predictions.size()) {
            throw std::invalid_argument("sum_aggregate: accuracies do not match prediction count");
        }
        profile.validation_accuracy = accuracies;
    }
    return finish(std::move(scores), profile, tie);
}

VotingRule voting_rule_from_string(const std::string& name) {
    if (name == "plurality") return VotingRule::plurality;
    if (name == "borda") return VotingRule::borda;
    if (name == "copeland") return VotingRule::copeland;
    if (name == "kemeny") return VotingRule::kemeny;
    if (name == "sum") return VotingRule::sum;
    throw std::invalid_argument("unknown voting rule '" + name +
                                "' (expected plurality|borda|copeland|kemeny|sum)");
}

std::string to_string(VotingRule rule) {
    switch (rule) {
        case VotingRule::plurality: return "plurality";
        case VotingRule::borda: return "borda";
        case VotingRule::copeland: return "copeland";
        case VotingRule::kemeny: return "kemeny";
        case VotingRule::sum: return "sum";
    }
    return "?";
}

RuleResult apply_rule(VotingRule rule, const Profile& profile, TiePolicy tie,
                      int kemeny_exact_threshold) {
    switch (rule) {
        case VotingRule::plurality: return plurality(profile, tie);
        case VotingRule::borda: return borda(profile, tie);
        case VotingRule::copeland: return copeland(profile, tie);
        case VotingRule::kemeny:
            return profile.m <= kemeny_exact_threshold
                       ? kemeny_exact(profile, tie, kemeny_exact_threshold)
                       : kemeny_heuristic(profile, tie);
        case VotingRule::sum:
            throw std::invalid_argument("sum aggregation needs score vectors, not ballots");
    }
    throw std::invalid_argument("unknown voting rule");
}

}  // namespace rankvote
