#include <doctest.h>

#include "rankvote/montecarlo.hpp"
#include "rankvote/theory.hpp"
#include "test_util.hpp"

using namespace rankvote;
using namespace rankvote::mc;

namespace {

SimConfig base_config() {
    SimConfig config;
    config.n = 3;
    config.m = 4;
    config.trials = 2000;
    config.seed = 42;
    config.p = 0.8;
    return config;
}

}  // namespace

TEST_CASE("identical seeds reproduce identical results") {
    const SimConfig config = base_config();
    const SimResult a = simulate(config);
    const SimResult b = simulate(config);
    CHECK(a.wins == b.wins);
    CHECK(a.correct_ballots == b.correct_ballots);

    SimConfig reseeded = config;
    reseeded.seed = 43;
    CHECK(simulate(reseeded).wins != a.wins);
}

TEST_CASE("thread fan-out does not change the counts") {
    SimConfig config = base_config();
    config.trials = 5000;
    const SimResult serial = simulate(config);
    config.threads = 4;
    const SimResult parallel = simulate(config);
    CHECK(serial.wins == parallel.wins);
    CHECK(serial.correct_ballots == parallel.correct_ballots);
}

TEST_CASE("degenerate accuracies") {
    SimConfig config = base_config();
    config.p = 1.0;
    CHECK(simulate(config).rate == 1.0);
    config.p = 0.0;
    CHECK(simulate(config).wins == 0);
}

TEST_CASE("iid rate agrees with the exact enumeration") {
    SimConfig config = base_config();
    config.trials = 200000;
    const SimResult result = simulate(config);
    const double expected =
        to_double(theory::enumerated_accuracy(theory::TheoryParams{3, 4, Rat(4, 5)},
                                              theory::OracleTie::strict));  // 0.896
    CHECK(std::abs(result.rate - expected) < 3.0 * result.stderr_estimate + 1e-12);
}

TEST_CASE("two-class profiles: every rule produces the same win count") {
    SimConfig config;
    config.n = 9;
    config.m = 2;
    config.trials = 4000;
    config.seed = 7;
    config.p = 0.6;
    config.win = WinCriterion::lexicographic;

    config.rule = VotingRule::plurality;
    const long plurality_wins = simulate(config).wins;
    for (const VotingRule rule : {VotingRule::borda, VotingRule::copeland, VotingRule::kemeny}) {
        config.rule = rule;
        CHECK(simulate(config).wins == plurality_wins);
    }
}

TEST_CASE("overlap model keeps the marginal ballot accuracy at p") {
    SimConfig config;
    config.n = 10;
    config.m = 2;
    config.trials = 200000;
    config.seed = 11;
    config.model = Model::overlap;
    config.p = 0.7;
    config.rho = 0.4;
    const SimResult result = simulate(config);
    const double per_ballot =
        static_cast<double>(result.correct_ballots) / static_cast<double>(result.total_ballots);
    const double se = std::sqrt(0.7 * 0.3 / static_cast<double>(result.total_ballots));
    CHECK(std::abs(per_ballot - 0.7) < 3.0 * se + 1e-12);
}

TEST_CASE("overlap extremes") {
    SimConfig config;
    config.n = 10;
    config.m = 2;
    config.trials = 20000;
    config.seed = 3;
    config.model = Model::overlap;

    // Full overlap with p = rho: hard trials always miss, easy always hit.
    config.p = 0.7;
    config.rho = 0.7;
    const SimResult result = simulate(config);
    CHECK(std::abs(result.rate - 0.7) < 3.0 * result.stderr_estimate + 1e-12);
}

TEST_CASE("heterogeneous model validates and runs") {
    SimConfig config;
    config.n = 3;
    config.m = 3;
    config.trials = 50000;
    config.seed = 19;
    config.model = Model::hetero;
    config.accuracies = {0.9, 0.6, 0.5};
    const SimResult result = simulate(config);
    const double expected = to_double(theory::enumerated_accuracy(
        theory::HeteroParams{{Rat(9, 10), Rat(3, 5), Rat(1, 2)}, 3}, theory::OracleTie::strict));
    CHECK(std::abs(result.rate - expected) < 3.0 * result.stderr_estimate + 1e-12);

    config.accuracies = {0.9, 0.6};
    CHECK_THROWS_AS(simulate(config), std::invalid_argument);
}

TEST_CASE("config validation") {
    SimConfig config = base_config();
    config.trials = 0;
    CHECK_THROWS_AS(simulate(config), std::invalid_argument);
    config = base_config();
    config.p = 1.5;
    CHECK_THROWS_AS(simulate(config), std::invalid_argument);
    config = base_config();
    config.model = Model::overlap;
    config.rho = 0.9;
    config.p = 0.5;
    CHECK_THROWS_AS(simulate(config), std::invalid_argument);
    config = base_config();
    config.rule = VotingRule::sum;
    CHECK_THROWS_AS(simulate(config), std::invalid_argument);
}
