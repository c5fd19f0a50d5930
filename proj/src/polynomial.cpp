#include "rankvote/polynomial.hpp"

namespace rankvote {

RationalPolynomial RationalPolynomial::constant(const Rat& c) {
    RationalPolynomial p;
    p.set_coeff(0, c);
    return p;
}

RationalPolynomial RationalPolynomial::exp_series(long terms) {
    if (terms < 1) throw std::invalid_argument("exp_series: need at least one term");
    RationalPolynomial p;
    BigInt fact = 1;
    for (long j = 0; j < terms; ++j) {
        if (j > 0) fact *= j;
        p.coeffs_.emplace(j, Rat(BigInt(1), fact));
    }
    return p;
}

Rat RationalPolynomial::coeff(long e) const {
    auto it = coeffs_.find(e);
    return it == coeffs_.end() ? Rat(0) : it->second;
}

void RationalPolynomial::set_coeff(long e, const Rat& c) {
    if (e < 0) throw std::invalid_argument("polynomial: negative exponent");
    if (c == 0) {
        coeffs_.erase(e);
    } else {
        coeffs_[e] = c;
    }
}

long RationalPolynomial::degree() const {
    return coeffs_.empty() ? -1 : coeffs_.rbegin()->first;
}

RationalPolynomial RationalPolynomial::multiply(const RationalPolynomial& other,
                                                long max_degree) const {
    RationalPolynomial out;
    for (const auto& [ea, ca] : coeffs_) {
        for (const auto& [eb, cb] : other.coeffs_) {
            long e = ea + eb;
            if (max_degree >= 0 && e > max_degree) break;  // exponents ascend
            const Rat prod = ca * cb;
            auto [it, inserted] = out.coeffs_.try_emplace(e, prod);
            if (!inserted) it->second += prod;
        }
    }
    for (auto it = out.coeffs_.begin(); it != out.coeffs_.end();) {
        it = it->second == 0 ? out.coeffs_.erase(it) : std::next(it);
    }
    return out;
}

RationalPolynomial RationalPolynomial::pow(long exponent, long max_degree) const {
    if (exponent < 0) throw std::invalid_argument("polynomial: negative power");
    RationalPolynomial acc = constant(1);
    RationalPolynomial base = *this;
    long e = exponent;
    while (e > 0) {
        if (e & 1) acc = acc.multiply(base, max_degree);
        e >>= 1;
        if (e) base = base.multiply(base, max_degree);
    }
    return acc;
}

}  // namespace rankvote
