#include "rankvote/montecarlo.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "rankvote/rng.hpp"

namespace rankvote::mc {

Model model_from_string(const std::string& name) {
    if (name == "iid") return Model::iid;
    if (name == "hetero") return Model::hetero;
    if (name == "overlap") return Model::overlap;
    throw std::invalid_argument("unknown model '" + name + "' (expected iid|hetero|overlap)");
}

std::string to_string(Model model) {
    switch (model) {
        case Model::iid: return "iid";
        case Model::hetero: return "hetero";
        case Model::overlap: return "overlap";
    }
    return "?";
}

WinCriterion win_criterion_from_string(const std::string& name) {
    if (name == "strict") return WinCriterion::strict;
    if (name == "lexicographic" || name == "lex") return WinCriterion::lexicographic;
    if (name == "best-classifier" || name == "best") return WinCriterion::best_classifier;
    throw std::invalid_argument("unknown win criterion '" + name +
                                "' (expected strict|lexicographic|best-classifier)");
}

std::string to_string(WinCriterion crit) {
    switch (crit) {
        case WinCriterion::strict: return "strict";
        case WinCriterion::lexicographic: return "lexicographic";
        case WinCriterion::best_classifier: return "best-classifier";
    }
    return "?";
}

void SimConfig::validate() const {
    if (n < 1) throw std::invalid_argument("simulate: need at least one voter");
    if (m < 2) throw std::invalid_argument("simulate: need at least two classes");
    if (trials < 1) throw std::invalid_argument("simulate: need at least one trial");
    if (rule == VotingRule::sum) {
        throw std::invalid_argument("simulate: the sum rule is not defined over sampled ballots");
    }
    auto check_p = [](double v, const char* what) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw std::invalid_argument(std::string("simulate: ") + what + " must lie in [0,1]");
        }
    };
    switch (model) {
        case Model::iid:
            check_p(p, "accuracy p");
            break;
        case Model::hetero:
            if (static_cast<long>(accuracies.size()) != n) {
                throw std::invalid_argument("simulate: hetero model needs one accuracy per voter");
            }
            for (double a : accuracies) check_p(a, "accuracy p_i");
            break;
        case Model::overlap:
            check_p(p, "accuracy p");
            check_p(rho, "overlap rho");
            if (rho > p) throw std::invalid_argument("simulate: rho cannot exceed p");
            break;
    }
}

namespace {

// Ballot with the given top class; the remaining classes follow in
// uniform random order (the model only constrains the top choice).
Ranking sample_ballot(long m, int top, Pcg32& rng) {
    Ranking r;
    r.order.reserve(static_cast<size_t>(m));
    r.order.push_back(top);
    for (int c = 0; c < m; ++c) {
        if (c != top) r.order.push_back(c);
    }
    rng.shuffle(r.order.begin() + 1, r.order.end());
    return r;
}

int sample_top(long m, double accuracy, Pcg32& rng) {
    if (rng.bernoulli(accuracy)) return 0;
    return 1 + static_cast<int>(rng.uniform_int(0, m - 2));
}

}  // namespace

namespace {

struct TrialCounts {
    long wins = 0;
    long correct_ballots = 0;
};

TrialCounts run_trials(const SimConfig& config, long first, long last) {
    const double residual =
        config.rho < 1.0 ? (config.p - config.rho) / (1.0 - config.rho) : 1.0;

    Profile profile;
    profile.m = static_cast<int>(config.m);
    profile.rankings.resize(static_cast<size_t>(config.n));
    if (config.win == WinCriterion::best_classifier) {
        if (config.model == Model::hetero) {
            profile.validation_accuracy = config.accuracies;
        } else {
            profile.validation_accuracy =
                std::vector<double>(static_cast<size_t>(config.n), config.p);
        }
    }
    const TiePolicy tie = config.win == WinCriterion::best_classifier
                              ? TiePolicy::best_classifier
                              : TiePolicy::lexicographic;

    TrialCounts counts;
    for (long trial = first; trial < last; ++trial) {
        Pcg32 rng(substream_seed(config.seed, static_cast<std::uint64_t>(trial)));

        bool easy = false;
        if (config.model == Model::overlap) easy = rng.bernoulli(config.rho);

        for (long v = 0; v < config.n; ++v) {
            int top;
            switch (config.model) {
                case Model::iid:
                    top = sample_top(config.m, config.p, rng);
                    break;
                case Model::hetero:
                    top = sample_top(config.m, config.accuracies[static_cast<size_t>(v)], rng);
                    break;
                case Model::overlap:
                    top = easy ? 0 : sample_top(config.m, residual, rng);
                    break;
                default:
                    top = 0;
            }
            profile.rankings[static_cast<size_t>(v)] = sample_ballot(config.m, top, rng);
            if (top == 0) counts.correct_ballots += 1;
        }

        const RuleResult elected =
            apply_rule(config.rule, profile, tie, config.kemeny_exact_threshold);

        bool won = false;
        switch (config.win) {
            case WinCriterion::strict:
                won = elected.tied_set.size() == 1 && *elected.tied_set.begin() == 0;
                break;
            case WinCriterion::lexicographic:
            case WinCriterion::best_classifier:
                won = elected.winner == 0;
                break;
        }
        if (won) counts.wins += 1;
    }
    return counts;
}

}  // namespace

SimResult simulate(const SimConfig& config) {
    config.validate();
    if (config.threads < 1) throw std::invalid_argument("simulate: need threads >= 1");

    // Every trial draws from its own substream, so any partition of the
    // trial range yields the same counts as a serial run.
    std::vector<TrialCounts> partial(static_cast<size_t>(config.threads));
    if (config.threads == 1 || config.trials < 2 * config.threads) {
        partial[0] = run_trials(config, 0, config.trials);
    } else {
        std::vector<std::thread> workers;
        const long chunk = (config.trials + config.threads - 1) / config.threads;
        for (int t = 0; t < config.threads; ++t) {
            const long first = static_cast<long>(t) * chunk;
            const long last = std::min(config.trials, first + chunk);
            if (first >= last) break;
            workers.emplace_back(
                [&, t, first, last] { partial[static_cast<size_t>(t)] = run_trials(config, first, last); });
        }
        for (auto& worker : workers) worker.join();
    }

    SimResult result;
    result.trials = config.trials;
    result.total_ballots = config.trials * config.n;
    for (const TrialCounts& counts : partial) {
        result.wins += counts.wins;
        result.correct_ballots += counts.correct_ballots;
    }
    result.rate = static_cast<double>(result.wins) / static_cast<double>(result.trials);
    result.stderr_estimate =
        std::sqrt(result.rate * (1.0 - result.rate) / static_cast<double>(result.trials));
    return result;
}

}  // namespace rankvote::mc
