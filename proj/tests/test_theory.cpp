#include <doctest.h>

#include <cmath>

#include "rankvote/theory.hpp"
#include "test_util.hpp"

using namespace rankvote;
using namespace rankvote::theory;

TEST_CASE("generating-function coefficients for n=3, m=4") {
    CHECK(gen_fun_coeff(4, 1, 3) == 0);
    CHECK(gen_fun_coeff(4, 2, 3) == 3);
    CHECK(gen_fun_coeff(4, 3, 3) == 1);
}

TEST_CASE("coefficients are nonnegative and vanish exactly when they must") {
    // The n-i losing votes cannot all stay below i once n-i > (i-1)(m-1).
    for (long m = 2; m <= 5; ++m) {
        for (long n = 1; n <= 10; ++n) {
            for (long i = 1; i <= n; ++i) {
                const Rat phi = gen_fun_coeff(m, i, n);
                CHECK(phi >= 0);
                if (n - i > (i - 1) * (m - 1)) {
                    CHECK(phi == 0);
                } else {
                    CHECK(phi > 0);
                }
            }
        }
    }
}

TEST_CASE("closed form on the three-classifier four-class instance") {
    const TheoryParams params{3, 4, Rat(4, 5)};

    CHECK(normalization_constant(params, KVariant::m1) == Rat(343, 125));  // 2.744
    CHECK(normalization_constant(params, KVariant::m2) == Rat(216, 125));  // 1.728
    CHECK(closed_form_accuracy(params, KVariant::m2) == Rat(26, 27));      // ~0.963
    CHECK(to_double(closed_form_accuracy(params, KVariant::m2)) ==
          doctest::Approx(0.963).epsilon(5e-4));
    CHECK(closed_form_accuracy(params, KVariant::model) == Rat(112, 125));  // 0.896
}

TEST_CASE("perfect and hopeless classifiers are exact endpoints") {
    for (const KVariant variant : {KVariant::m1, KVariant::m2, KVariant::model}) {
        for (long n : {1L, 3L, 7L}) {
            for (long m : {2L, 4L}) {
                CHECK(closed_form_accuracy({n, m, Rat(1)}, variant) == 1);
                CHECK(closed_form_accuracy({n, m, Rat(0)}, variant) == 0);
            }
        }
    }
    CHECK(identification_rate(5, 3, Rat(1)) == 1);
    CHECK(identification_rate(5, 3, Rat(0)) == 0);
    CHECK(majority_accuracy(9, Rat(1), BinaryTail::strict) == 1);
}

TEST_CASE("enumeration oracle basics") {
    CHECK(enumerated_accuracy(TheoryParams{1, 2, Rat(3, 10)}, OracleTie::strict) == Rat(3, 10));
    CHECK(enumerated_accuracy(TheoryParams{1, 4, Rat(3, 10)}, OracleTie::strict) == Rat(3, 10));
    CHECK(enumerated_accuracy(TheoryParams{3, 4, Rat(4, 5)}, OracleTie::strict) == Rat(112, 125));
    CHECK_THROWS_AS(enumerated_accuracy(TheoryParams{25, 3, Rat(1, 2)}, OracleTie::strict),
                    std::invalid_argument);
    CHECK_THROWS_AS(enumerated_accuracy(TheoryParams{5, 7, Rat(1, 2)}, OracleTie::strict),
                    std::invalid_argument);
}

TEST_CASE("oracle tie handling on a two-voter tie") {
    // n=2, m=2, p=1/2: 1-1 splits happen with probability 1/2.
    const TheoryParams params{2, 2, Rat(1, 2)};
    CHECK(enumerated_accuracy(params, OracleTie::strict) == Rat(1, 4));
    CHECK(enumerated_accuracy(params, OracleTie::uniform) == Rat(1, 2));
    CHECK(enumerated_accuracy(params, OracleTie::lexicographic) == Rat(3, 4));
}

TEST_CASE("the model-weighted closed form equals the enumeration oracle") {
    Pcg32 rng(5);
    for (int it = 0; it < 40; ++it) {
        const long n = rng.uniform_int(1, 7);
        const long m = rng.uniform_int(2, 5);
        const Rat p(rng.uniform_int(0, 10), 10);
        const TheoryParams params{n, m, p};
        CHECK(closed_form_accuracy(params, KVariant::model) ==
              enumerated_accuracy(params, OracleTie::strict));
    }
}

TEST_CASE("two-class tails") {
    CHECK(majority_accuracy(10, Rat(1, 2), BinaryTail::strict) == Rat(386, 1024));
    CHECK(majority_accuracy(10, Rat(1, 2), BinaryTail::inclusive) == Rat(638, 1024));
    CHECK(majority_accuracy(10, Rat(3, 5), BinaryTail::strict) == Rat(6182649, 9765625));
    CHECK(to_double(majority_accuracy(10, Rat(3, 5), BinaryTail::strict)) ==
          doctest::Approx(0.633103).epsilon(1e-5));

    // Odd n: both tails agree and T(1/2) is exactly 1/2.
    for (long n : {1L, 3L, 11L, 101L}) {
        CHECK(majority_accuracy(n, Rat(1, 2), BinaryTail::strict) == Rat(1, 2));
        CHECK(majority_accuracy(n, Rat(1, 2), BinaryTail::inclusive) == Rat(1, 2));
    }
}

TEST_CASE("for m=2 the model closed form is the strict tail") {
    for (long n = 1; n <= 12; ++n) {
        for (long tenths = 1; tenths <= 9; ++tenths) {
            const Rat p(tenths, 10);
            CHECK(closed_form_accuracy({n, 2, p}, KVariant::model) ==
                  majority_accuracy(n, p, BinaryTail::strict));
        }
    }
}

TEST_CASE("for m=2 the lexicographic oracle is the inclusive tail") {
    for (long n = 1; n <= 8; ++n) {
        for (long tenths = 1; tenths <= 9; tenths += 2) {
            const Rat p(tenths, 10);
            CHECK(enumerated_accuracy(TheoryParams{n, 2, p}, OracleTie::lexicographic) ==
                  majority_accuracy(n, p, BinaryTail::inclusive));
        }
    }
}

TEST_CASE("closed-form derivative of the inclusive tail") {
    CHECK(majority_accuracy_derivative(1, Rat(3, 10)) == 1);
    CHECK(majority_accuracy_derivative(3, Rat(1, 2)) == Rat(3, 2));

    SUBCASE("matches the exact central finite difference") {
        const Rat h(1, 100000);
        const Rat tolerance(1, 100000000);  // 1e-8
        for (long n : {1L, 2L, 3L, 5L, 8L, 13L, 21L}) {
            for (long tenths = 1; tenths <= 9; ++tenths) {
                const Rat p(tenths, 10);
                const Rat fd = (majority_accuracy(n, p + h, BinaryTail::inclusive) -
                                majority_accuracy(n, p - h, BinaryTail::inclusive)) /
                               (2 * h);
                Rat err = majority_accuracy_derivative(n, p) - fd;
                if (err < 0) err = -err;
                CHECK(err < tolerance);
            }
        }
    }
    SUBCASE("never negative") {
        for (long n : {1L, 4L, 9L, 16L}) {
            for (long k = 0; k <= 10; ++k) {
                CHECK(majority_accuracy_derivative(n, Rat(k, 10)) >= 0);
            }
        }
    }
}

TEST_CASE("heterogeneous accuracies") {
    SUBCASE("three binary voters, worked out by enumerating all outcomes") {
        const HeteroParams params{{Rat(9, 10), Rat(3, 5), Rat(1, 2)}, 2};
        CHECK(hetero_accuracy(params) == Rat(3, 4));
    }
    SUBCASE("single voter") {
        CHECK(hetero_accuracy({{Rat(7, 10)}, 2}) == Rat(7, 10));
        CHECK(hetero_accuracy({{Rat(7, 10)}, 5}) == Rat(7, 10));
    }
    SUBCASE("equal accuracies reduce to the homogeneous model") {
        Pcg32 rng(17);
        for (int it = 0; it < 20; ++it) {
            const long n = rng.uniform_int(1, 7);
            const long m = rng.uniform_int(2, 5);
            const Rat p(rng.uniform_int(1, 9), 10);
            const HeteroParams params{std::vector<Rat>(static_cast<size_t>(n), p), m};
            CHECK(hetero_accuracy(params) ==
                  enumerated_accuracy(TheoryParams{n, m, p}, OracleTie::strict));
        }
    }
    SUBCASE("matches the subset-enumeration oracle on mixed accuracies") {
        Pcg32 rng(23);
        for (int it = 0; it < 20; ++it) {
            const long n = rng.uniform_int(1, 6);
            const long m = rng.uniform_int(2, 4);
            std::vector<Rat> acc;
            for (long v = 0; v < n; ++v) acc.emplace_back(rng.uniform_int(0, 10), 10);
            const HeteroParams params{acc, m};
            CHECK(hetero_accuracy(params) == enumerated_accuracy(params, OracleTie::strict));
        }
    }
    SUBCASE("the unnormalized partition sum dominates the model reading") {
        const HeteroParams params{{Rat(1, 2), Rat(3, 5), Rat(7, 10)}, 3};
        CHECK(hetero_partition_sum(params) >= hetero_accuracy(params));
        // For m=2 there is nothing to normalize: both readings coincide.
        const HeteroParams binary{{Rat(1, 2), Rat(3, 5), Rat(7, 10)}, 2};
        CHECK(hetero_partition_sum(binary) == hetero_accuracy(binary));
    }
    SUBCASE("size guard") {
        CHECK_THROWS_AS(hetero_accuracy({std::vector<Rat>(21, Rat(1, 2)), 2}),
                        std::invalid_argument);
    }
}

TEST_CASE("residual accuracy after removing the easy fraction") {
    CHECK(residual_accuracy(Rat(7, 10), Rat(7, 10)) == 0);
    CHECK(residual_accuracy(Rat(7, 10), Rat(0)) == Rat(7, 10));
    CHECK(residual_accuracy(Rat(7, 10), Rat(2, 5)) == Rat(1, 2));
    CHECK_THROWS_AS(residual_accuracy(Rat(1, 2), Rat(3, 5)), std::invalid_argument);
    CHECK_THROWS_AS(residual_accuracy(Rat(1), Rat(1)), std::invalid_argument);
}

TEST_CASE("overlap lower bound") {
    CHECK(overlap_lower_bound({10, 2, Rat(7, 10), Rat(7, 10)}) == Rat(7, 10));
    CHECK(to_double(overlap_lower_bound({10, 2, Rat(7, 10), Rat(0)})) ==
          doctest::Approx(0.849732).epsilon(1e-5));

    SUBCASE("zero overlap reduces to the plain formula") {
        CHECK(overlap_lower_bound({10, 2, Rat(3, 5), Rat(0)}) ==
              majority_accuracy(10, Rat(3, 5), BinaryTail::strict));
        CHECK(overlap_lower_bound({4, 3, Rat(1, 2), Rat(0)}) ==
              closed_form_accuracy({4, 3, Rat(1, 2)}, KVariant::model));
    }
    SUBCASE("full overlap pins the bound at p") {
        for (long n : {3L, 10L}) {
            for (long m : {2L, 4L}) {
                CHECK(overlap_lower_bound({n, m, Rat(13, 20), Rat(13, 20)}) == Rat(13, 20));
            }
        }
    }
    SUBCASE("bound stays within [rho, 1]") {
        Pcg32 rng(31);
        for (int it = 0; it < 30; ++it) {
            const long n = rng.uniform_int(1, 12);
            const long m = rng.uniform_int(2, 4);
            const Rat p(rng.uniform_int(1, 20), 20);
            const Rat rho = p * Rat(rng.uniform_int(0, 4), 5);
            const Rat bound = overlap_lower_bound({n, m, p, rho});
            CHECK(bound >= rho);
            CHECK(bound <= 1);
        }
    }
}

TEST_CASE("identification rate reproduces the known single-classifier flaw") {
    for (long quarters = 1; quarters <= 3; ++quarters) {
        const Rat p(quarters, 4);
        CHECK(identification_rate(1, 2, p) == p * p);
        // The voting model has no such loss for a single classifier.
        CHECK(enumerated_accuracy(TheoryParams{1, 2, p}, OracleTie::strict) == p);
    }
    // Hand-derived three-class case: p * (1 - (1-p)/2)^2 at n = 1.
    CHECK(identification_rate(1, 3, Rat(1, 2)) == Rat(9, 32));
}

TEST_CASE("identification rate matches the n=10 reference curve") {
    CHECK(to_double(identification_rate(10, 2, Rat(1, 2))) ==
          doctest::Approx(0.41190147399902344).epsilon(1e-12));
    CHECK(to_double(identification_rate(10, 2, Rat(7, 10))) ==
          doctest::Approx(0.9520381026686567).epsilon(1e-9));
}

TEST_CASE("instance audit reports every reading side by side") {
    const InstanceAudit audit = audit_instance({3, 4, Rat(4, 5)});
    CHECK(audit.phi == std::vector<Rat>{0, 3, 1});
    CHECK(audit.k_m1 == Rat(343, 125));
    CHECK(audit.k_m2 == Rat(216, 125));
    CHECK(audit.normalization_constants_differ);
    CHECK(audit.closed_form_variants_disagree);
    REQUIRE(audit.value_enumerated.has_value());
    CHECK(*audit.value_enumerated == Rat(112, 125));
    CHECK(audit.model_matches_enumeration);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(closed_form_accuracy({0, 2, Rat(1, 2)}, KVariant::m1), std::invalid_argument);
    CHECK_THROWS_AS(closed_form_accuracy({3, 1, Rat(1, 2)}, KVariant::m1), std::invalid_argument);
    CHECK_THROWS_AS(closed_form_accuracy({3, 2, Rat(3, 2)}, KVariant::m1), std::invalid_argument);
    CHECK_THROWS_AS(gen_fun_coeff(1, 1, 3), std::invalid_argument);
    CHECK_THROWS_AS(gen_fun_coeff(3, 0, 3), std::invalid_argument);
    CHECK_THROWS_AS(gen_fun_coeff(3, 4, 3), std::invalid_argument);
    CHECK_THROWS_AS(k_variant_from_string("k3"), std::invalid_argument);
    CHECK(to_string(k_variant_from_string("m1")) == "m1");
    CHECK(to_string(oracle_tie_from_string("uniform")) == "uniform");
    CHECK(to_string(binary_tail_from_string("inclusive")) == "inclusive");
}
