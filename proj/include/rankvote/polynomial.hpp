// Sparse polynomial over exact rationals, used to expand the generating
// functions behind the closed-form ensemble accuracy.
#pragma once

#include <map>

#include "rankvote/rational.hpp"

namespace rankvote {

// Coefficients keyed by exponent; zero coefficients are never stored.
class RationalPolynomial {
  public:
    RationalPolynomial() = default;

    static RationalPolynomial constant(const Rat& c);

    // sum_{j=0}^{terms-1} x^j / j!
    static RationalPolynomial exp_series(long terms);

    // Coefficient of x^e (0 when absent).
    Rat coeff(long e) const;

    void set_coeff(long e, const Rat& c);

    long degree() const;  // -1 for the zero polynomial

    // Product, dropping every exponent above max_degree (use a negative
    // max_degree for no truncation).
    RationalPolynomial multiply(const RationalPolynomial& other, long max_degree = -1) const;

    RationalPolynomial pow(long exponent, long max_degree = -1) const;

    const std::map<long, Rat>& coefficients() const { return coeffs_; }

  private:
    std::map<long, Rat> coeffs_;
};

}  // namespace rankvote
