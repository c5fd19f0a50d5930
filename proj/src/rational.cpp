#include "rankvote/rational.hpp"

#include <cctype>

namespace rankvote {

BigInt factorial(long n) {
    if (n < 0) throw std::invalid_argument("factorial: negative argument");
    BigInt out = 1;
    for (long i = 2; i <= n; ++i) out *= i;
    return out;
}

BigInt binomial(long n, long k) {
    if (n < 0) throw std::invalid_argument("binomial: negative n");
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt out = 1;
    for (long i = 1; i <= k; ++i) {
        out *= (n - k + i);
        out /= i;  // exact at every step
    }
    return out;
}

std::vector<BigInt> binomial_row(long n) {
    std::vector<BigInt> row(static_cast<size_t>(n) + 1);
    row[0] = 1;
    for (long i = 1; i <= n; ++i) {
        row[static_cast<size_t>(i)] = row[static_cast<size_t>(i - 1)] * (n - i + 1) / i;
    }
    return row;
}

BigInt pow_int(const BigInt& base, long exp) {
    if (exp < 0) throw std::invalid_argument("pow_int: negative exponent");
    if (exp == 0) return 1;  // including 0^0
    BigInt acc = 1;
    BigInt b = base;
    long e = exp;
    while (e > 0) {
        if (e & 1) acc *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return acc;
}

Rat pow_rat(const Rat& base, long exp) {
    if (exp < 0) throw std::invalid_argument("pow_rat: negative exponent");
    if (exp == 0) return 1;
    return Rat(pow_int(numerator(base), exp), pow_int(denominator(base), exp));
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

}  // namespace

Rat rat_from_string(std::string_view text) {
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty()) throw std::invalid_argument("rational: empty string");

    Rat value;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        std::string_view num = s.substr(0, slash);
        std::string_view den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) {
            throw std::invalid_argument("rational: malformed fraction '" + std::string(text) + "'");
        }
        const BigInt d{std::string(den)};
        if (d == 0) throw std::invalid_argument("rational: zero denominator");
        const BigInt top{std::string(num)};
        value = Rat(top, d);
    } else {
        std::string_view whole = s;
        std::string_view frac;
        if (auto dot = s.find('.'); dot != std::string_view::npos) {
            whole = s.substr(0, dot);
            frac = s.substr(dot + 1);
            if (whole.empty() && frac.empty()) {
                throw std::invalid_argument("rational: malformed number '" + std::string(text) + "'");
            }
            if (!whole.empty() && !all_digits(whole)) {
                throw std::invalid_argument("rational: malformed number '" + std::string(text) + "'");
            }
            if (!frac.empty() && !all_digits(frac)) {
                throw std::invalid_argument("rational: malformed number '" + std::string(text) + "'");
            }
        } else if (!all_digits(whole)) {
            throw std::invalid_argument("rational: malformed number '" + std::string(text) + "'");
        }
        BigInt num = whole.empty() ? BigInt(0) : BigInt(std::string(whole));
        BigInt den = 1;
        for (char c : frac) {
            num = num * 10 + (c - '0');
            den *= 10;
        }
        value = Rat(num, den);
    }
    return negative ? -value : value;
}

Rat probability_from_string(std::string_view text) {
    Rat p = rat_from_string(text);
    if (!is_probability(p)) {
        throw std::invalid_argument("probability out of [0,1]: '" + std::string(text) + "'");
    }
    return p;
}

}  // namespace rankvote
