#include <doctest.h>

#include "rankvote/polynomial.hpp"

using namespace rankvote;

TEST_CASE("exp series truncation") {
    const auto p = RationalPolynomial::exp_series(4);  // 1 + x + x^2/2 + x^3/6
    CHECK(p.coeff(0) == 1);
    CHECK(p.coeff(1) == 1);
    CHECK(p.coeff(2) == Rat(1, 2));
    CHECK(p.coeff(3) == Rat(1, 6));
    CHECK(p.coeff(4) == 0);
    CHECK(p.degree() == 3);
}

TEST_CASE("binomial expansion via pow") {
    // (1 + x)^3
    const auto p = RationalPolynomial::exp_series(2).pow(3);
    CHECK(p.coeff(0) == 1);
    CHECK(p.coeff(1) == 3);
    CHECK(p.coeff(2) == 3);
    CHECK(p.coeff(3) == 1);
    CHECK(p.degree() == 3);
}

TEST_CASE("cube of a three-term series, expanded by hand") {
    // (1 + x + x^2/2)^3 = 1 + 3x + 9/2 x^2 + 4x^3 + 9/4 x^4 + 3/4 x^5 + 1/8 x^6
    const auto p = RationalPolynomial::exp_series(3).pow(3);
    CHECK(p.coeff(0) == 1);
    CHECK(p.coeff(1) == 3);
    CHECK(p.coeff(2) == Rat(9, 2));
    CHECK(p.coeff(3) == 4);
    CHECK(p.coeff(4) == Rat(9, 4));
    CHECK(p.coeff(5) == Rat(3, 4));
    CHECK(p.coeff(6) == Rat(1, 8));
}

TEST_CASE("truncated multiplication matches full expansion on low terms") {
    const auto base = RationalPolynomial::exp_series(5);
    const auto full = base.pow(4);
    const auto cut = base.pow(4, 3);
    for (long e = 0; e <= 3; ++e) CHECK(cut.coeff(e) == full.coeff(e));
    CHECK(cut.degree() <= 3);
}

TEST_CASE("zero coefficients are never stored") {
    RationalPolynomial a;
    a.set_coeff(2, Rat(1));
    a.set_coeff(2, Rat(0));
    CHECK(a.degree() == -1);

    // (1 + x)(1 - x) = 1 - x^2: the x coefficient cancels exactly.
    RationalPolynomial up, down;
    up.set_coeff(0, Rat(1));
    up.set_coeff(1, Rat(1));
    down.set_coeff(0, Rat(1));
    down.set_coeff(1, Rat(-1));
    const auto prod = up.multiply(down);
    CHECK(prod.coefficients().size() == 2);
    CHECK(prod.coeff(0) == 1);
    CHECK(prod.coeff(2) == -1);
}
