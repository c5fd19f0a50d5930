#include <doctest.h>

#include "rankvote/rational.hpp"

using namespace rankvote;

TEST_CASE("decimal strings parse to exact rationals") {
    CHECK(rat_from_string("0.8") == Rat(4, 5));
    CHECK(rat_from_string("0.05") == Rat(1, 20));
    CHECK(rat_from_string("1") == Rat(1));
    CHECK(rat_from_string("1.0") == Rat(1));
    CHECK(rat_from_string("-1.25") == Rat(-5, 4));
    CHECK(rat_from_string("7/25") == Rat(7, 25));
    CHECK(rat_from_string(".5") == Rat(1, 2));
    CHECK(to_string(rat_from_string("0.896")) == "112/125");
}

TEST_CASE("malformed rational strings are rejected") {
    CHECK_THROWS_AS(rat_from_string(""), std::invalid_argument);
    CHECK_THROWS_AS(rat_from_string("abc"), std::invalid_argument);
    CHECK_THROWS_AS(rat_from_string("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(rat_from_string("1.2.3"), std::invalid_argument);
    CHECK_THROWS_AS(probability_from_string("1.5"), std::invalid_argument);
    CHECK_THROWS_AS(probability_from_string("-0.1"), std::invalid_argument);
}

TEST_CASE("binomials and factorials") {
    CHECK(binomial(10, 5) == 252);
    CHECK(binomial(0, 0) == 1);
    CHECK(binomial(5, 7) == 0);
    CHECK(factorial(6) == 720);
    const auto row = binomial_row(10);
    for (long k = 0; k <= 10; ++k) CHECK(row[static_cast<size_t>(k)] == binomial(10, k));
}

TEST_CASE("integer powers use the 0^0 = 1 convention") {
    CHECK(pow_int(BigInt(0), 0) == 1);
    CHECK(pow_int(BigInt(0), 3) == 0);
    CHECK(pow_int(BigInt(3), 4) == 81);
    CHECK(pow_rat(Rat(0), 0) == 1);
    CHECK(pow_rat(Rat(2, 3), 3) == Rat(8, 27));
}

TEST_CASE("double conversion") {
    CHECK(to_double(Rat(1, 2)) == 0.5);
    CHECK(to_double(rat_from_string("0.633103")) == doctest::Approx(0.633103).epsilon(1e-12));
}
