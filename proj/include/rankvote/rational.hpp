// Exact rational arithmetic helpers shared by the theory code paths.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rankvote {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

// Canonical "num/den" (or plain "num" for integers) form.
inline std::string to_string(const Rat& r) { return r.str(); }

BigInt factorial(long n);
BigInt binomial(long n, long k);

// Row [C(n,0), ..., C(n,n)].
std::vector<BigInt> binomial_row(long n);

// Integer power with the 0^0 = 1 convention used throughout the
// probability formulas (discrete exponents).
BigInt pow_int(const BigInt& base, long exp);
Rat pow_rat(const Rat& base, long exp);

// Parses "0.8", "-1.25", "3", "7/25" into an exact rational.
// Decimal strings map to the exact decimal value (0.8 -> 4/5), not to a
// binary double.
Rat rat_from_string(std::string_view text);

// Probability in [0,1] or throws std::invalid_argument.
Rat probability_from_string(std::string_view text);

inline bool is_probability(const Rat& r) { return r >= 0 && r <= 1; }

}  // namespace rankvote
