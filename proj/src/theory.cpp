#include "rankvote/theory.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "rankvote/polynomial.hpp"

namespace rankvote::theory {

namespace {

constexpr long kOracleMaxVoters = 20;
constexpr long kOracleMaxClasses = 6;
constexpr long kHeteroOracleMaxVoters = 16;
constexpr long kHeteroMaxVoters = 20;

long ceil_div(long a, long b) { return (a + b - 1) / b; }

void check_probability(const Rat& p, const char* what) {
    if (!is_probability(p)) {
        throw std::invalid_argument(std::string(what) + " must lie in [0,1]");
    }
}

}  // namespace

void TheoryParams::validate() const {
    if (n < 1) throw std::invalid_argument("need at least one classifier");
    if (m < 2) throw std::invalid_argument("need at least two classes");
    check_probability(p, "accuracy p");
}

void HeteroParams::validate() const {
    if (accuracies.empty()) throw std::invalid_argument("need at least one classifier");
    if (m < 2) throw std::invalid_argument("need at least two classes");
    for (const Rat& p : accuracies) check_probability(p, "accuracy p_i");
}

void OverlapParams::validate() const {
    if (n < 1) throw std::invalid_argument("need at least one classifier");
    if (m < 2) throw std::invalid_argument("need at least two classes");
    check_probability(p, "accuracy p");
    check_probability(rho, "overlap rho");
    if (rho > p) throw std::invalid_argument("overlap rho cannot exceed the accuracy p");
}

KVariant k_variant_from_string(const std::string& name) {
    if (name == "m1") return KVariant::m1;
    if (name == "m2") return KVariant::m2;
    if (name == "model") return KVariant::model;
    throw std::invalid_argument("unknown K variant '" + name + "' (expected m1|m2|model)");
}

std::string to_string(KVariant variant) {
    switch (variant) {
        case KVariant::m1: return "m1";
        case KVariant::m2: return "m2";
        case KVariant::model: return "model";
    }
    return "?";
}

OracleTie oracle_tie_from_string(const std::string& name) {
    if (name == "strict") return OracleTie::strict;
    if (name == "uniform") return OracleTie::uniform;
    if (name == "lexicographic" || name == "lex") return OracleTie::lexicographic;
    throw std::invalid_argument("unknown oracle tie mode '" + name +
                                "' (expected strict|uniform|lexicographic)");
}

std::string to_string(OracleTie tie) {
    switch (tie) {
        case OracleTie::strict: return "strict";
        case OracleTie::uniform: return "uniform";
        case OracleTie::lexicographic: return "lexicographic";
    }
    return "?";
}

BinaryTail binary_tail_from_string(const std::string& name) {
    if (name == "strict") return BinaryTail::strict;
    if (name == "inclusive") return BinaryTail::inclusive;
    throw std::invalid_argument("unknown tail mode '" + name + "' (expected strict|inclusive)");
}

std::string to_string(BinaryTail tail) {
    return tail == BinaryTail::strict ? "strict" : "inclusive";
}

Rat gen_fun_coeff(long m, long i, long n) {
    if (m < 2) throw std::invalid_argument("gen_fun_coeff: need m >= 2");
    if (i < 1 || i > n) throw std::invalid_argument("gen_fun_coeff: need 1 <= i <= n");
    const long target = n - i;
    return RationalPolynomial::exp_series(i).pow(m - 1, target).coeff(target);
}

Rat normalization_constant(const TheoryParams& params, KVariant variant) {
    params.validate();
    if (variant == KVariant::model) return 1;
    const BigInt wrong_classes = variant == KVariant::m1 ? params.m - 1 : params.m - 2;
    const Rat q = 1 - params.p;
    Rat k = 0;
    const auto binom = binomial_row(params.n);
    for (long j = 0; j <= params.n; ++j) {
        k += Rat(binom[static_cast<size_t>(j)]) * pow_rat(params.p, j) *
             Rat(pow_int(wrong_classes, params.n - j)) * pow_rat(q, params.n - j);
    }
    return k;
}

Rat closed_form_accuracy(const TheoryParams& params, KVariant variant) {
    params.validate();
    const long n = params.n;
    const long m = params.m;
    const Rat& p = params.p;
    const Rat q = 1 - p;

    const auto binom = binomial_row(n);
    Rat sum = 0;
    for (long i = ceil_div(n, m); i <= n; ++i) {
        const Rat phi = gen_fun_coeff(m, i, n);
        if (phi == 0) continue;
        Rat term = Rat(binom[static_cast<size_t>(i)]) * pow_rat(p, i) * phi *
                   Rat(factorial(n - i));
        if (variant == KVariant::model) {
            term *= pow_rat(q / (m - 1), n - i);
        } else {
            term *= pow_rat(q, n - i);
        }
        sum += term;
    }
    if (variant == KVariant::model) return sum;
    if (sum == 0) return 0;
    return sum / normalization_constant(params, variant);
}

namespace {

// Walks every composition of `remaining` losing votes over `parts` wrong
// classes, calling visit(max_count, count_hitting_cap, arrangements) where
// arrangements = (n-i)! / prod k_j! for the composition.
void for_each_composition(long remaining, long parts, long cap_value, long max_so_far,
                          long at_cap, const Rat& arrangements,
                          const std::function<void(long, long, const Rat&)>& visit) {
    if (parts == 1) {
        const Rat arr = arrangements / Rat(factorial(remaining));
        const long mx = std::max(max_so_far, remaining);
        const long hits = at_cap + (remaining == cap_value ? 1 : 0);
        visit(mx, hits, arr);
        return;
    }
    for (long k = 0; k <= remaining; ++k) {
        for_each_composition(remaining - k, parts - 1, cap_value, std::max(max_so_far, k),
                             at_cap + (k == cap_value ? 1 : 0),
                             arrangements / Rat(factorial(k)), visit);
    }
}

// Probability that the correct class wins given i correct votes, with the
// n-i losing votes landing uniformly on the m-1 wrong classes.
Rat conditional_win_given_correct(long n, long m, long i, OracleTie tie) {
    const long wrong_votes = n - i;
    Rat win = 0;
    for_each_composition(wrong_votes, m - 1, i, 0, 0, Rat(factorial(wrong_votes)),
                         [&](long max_count, long at_cap, const Rat& arrangements) {
                             Rat weight;
                             if (max_count < i) {
                                 weight = 1;
                             } else if (max_count == i) {
                                 switch (tie) {
                                     case OracleTie::strict: weight = 0; break;
                                     case OracleTie::uniform: weight = Rat(1, 1 + at_cap); break;
                                     case OracleTie::lexicographic: weight = 1; break;
                                 }
                             } else {
                                 weight = 0;
                             }
                             if (weight != 0) win += arrangements * weight;
                         });
    return win / pow_rat(Rat(m - 1), wrong_votes);
}

}  // namespace

Rat enumerated_accuracy(const TheoryParams& params, OracleTie tie) {
    params.validate();
    if (params.n > kOracleMaxVoters || params.m > kOracleMaxClasses) {
        throw std::invalid_argument("enumeration oracle limited to n <= " +
                                    std::to_string(kOracleMaxVoters) + " and m <= " +
                                    std::to_string(kOracleMaxClasses));
    }
    const Rat q = 1 - params.p;
    const auto binom = binomial_row(params.n);
    Rat total = 0;
    for (long i = 0; i <= params.n; ++i) {
        const Rat cond = conditional_win_given_correct(params.n, params.m, i, tie);
        if (cond == 0) continue;
        total += Rat(binom[static_cast<size_t>(i)]) * pow_rat(params.p, i) *
                 pow_rat(q, params.n - i) * cond;
    }
    return total;
}

Rat enumerated_accuracy(const HeteroParams& params, OracleTie tie) {
    params.validate();
    const long n = params.n();
    if (n > kHeteroOracleMaxVoters || params.m > kOracleMaxClasses) {
        throw std::invalid_argument("heterogeneous enumeration oracle limited to n <= " +
                                    std::to_string(kHeteroOracleMaxVoters) + " and m <= " +
                                    std::to_string(kOracleMaxClasses));
    }
    std::vector<Rat> cond(static_cast<size_t>(n) + 1);
    for (long i = 0; i <= n; ++i) {
        cond[static_cast<size_t>(i)] = conditional_win_given_correct(n, params.m, i, tie);
    }

    Rat total = 0;
    // DFS over which voters are correct, with the running probability.
    std::function<void(long, long, Rat)> walk = [&](long voter, long correct, Rat prob) {
        if (prob == 0) return;
        if (voter == n) {
            total += prob * cond[static_cast<size_t>(correct)];
            return;
        }
        const Rat& p = params.accuracies[static_cast<size_t>(voter)];
        walk(voter + 1, correct + 1, prob * p);
        walk(voter + 1, correct, prob * (1 - p));
    };
    walk(0, 0, Rat(1));
    return total;
}

Rat majority_accuracy(long n, const Rat& p, BinaryTail tail) {
    if (n < 1) throw std::invalid_argument("need at least one classifier");
    check_probability(p, "accuracy p");
    const long lo = tail == BinaryTail::strict ? n / 2 + 1 : ceil_div(n, 2);
    const BigInt a = numerator(p);
    const BigInt b = denominator(p);
    const BigInt c = b - a;  // numerator of 1-p over the same denominator
    BigInt tail_sum = 0;
    const auto binom = binomial_row(n);
    for (long i = lo; i <= n; ++i) {
        tail_sum += binom[static_cast<size_t>(i)] * pow_int(a, i) * pow_int(c, n - i);
    }
    return Rat(tail_sum, pow_int(b, n));
}

Rat majority_accuracy_derivative(long n, const Rat& p) {
    if (n < 1) throw std::invalid_argument("need at least one classifier");
    check_probability(p, "accuracy p");
    const long h = ceil_div(n, 2);
    return Rat(h * binomial(n, h)) * pow_rat(p, h - 1) * pow_rat(1 - p, n - h);
}

namespace {

// correct_set_weight[s] = sum over voter subsets of size s of
// prod_{in} p_i * prod_{out} (1-p_i); computed as the coefficients of
// prod_i ((1-p_i) + p_i x).
std::vector<Rat> correct_set_weights(const HeteroParams& params) {
    std::vector<Rat> coeff{Rat(1)};
    for (const Rat& p : params.accuracies) {
        std::vector<Rat> next(coeff.size() + 1, Rat(0));
        for (size_t s = 0; s < coeff.size(); ++s) {
            next[s] += coeff[s] * (1 - p);
            next[s + 1] += coeff[s] * p;
        }
        coeff = std::move(next);
    }
    return coeff;
}

void check_hetero_size(const HeteroParams& params) {
    if (params.n() > kHeteroMaxVoters) {
        throw std::invalid_argument("heterogeneous closed form limited to n <= " +
                                    std::to_string(kHeteroMaxVoters));
    }
}

}  // namespace

Rat hetero_accuracy(const HeteroParams& params) {
    params.validate();
    check_hetero_size(params);
    const long n = params.n();
    const auto weights = correct_set_weights(params);
    Rat total = 0;
    for (long s = 1; s <= n; ++s) {
        if (weights[static_cast<size_t>(s)] == 0) continue;
        const Rat phi = gen_fun_coeff(params.m, s, n);
        if (phi == 0) continue;
        total += weights[static_cast<size_t>(s)] * phi * Rat(factorial(n - s)) /
                 pow_rat(Rat(params.m - 1), n - s);
    }
    return total;
}

Rat hetero_partition_sum(const HeteroParams& params) {
    params.validate();
    check_hetero_size(params);
    const long n = params.n();
    const auto weights = correct_set_weights(params);
    Rat total = 0;
    for (long s = 1; s <= n; ++s) {
        if (weights[static_cast<size_t>(s)] == 0) continue;
        const Rat phi = gen_fun_coeff(params.m, s, n);
        if (phi == 0) continue;
        total += weights[static_cast<size_t>(s)] * phi * Rat(factorial(n - s));
    }
    return total;
}

Rat residual_accuracy(const Rat& p, const Rat& rho) {
    check_probability(p, "accuracy p");
    check_probability(rho, "overlap rho");
    if (rho > p) throw std::invalid_argument("overlap rho cannot exceed the accuracy p");
    if (rho == 1) throw std::invalid_argument("overlap rho must be < 1");
    return (p - rho) / (1 - rho);
}

Rat overlap_lower_bound(const OverlapParams& params) {
    params.validate();
    const Rat residual = residual_accuracy(params.p, params.rho);
    const Rat t = params.m == 2
                      ? majority_accuracy(params.n, residual, BinaryTail::strict)
                      : closed_form_accuracy({params.n, params.m, residual}, KVariant::model);
    return (1 - params.rho) * t + params.rho;
}

Rat identification_rate(long n, long m, const Rat& p) {
    if (n < 1) throw std::invalid_argument("need at least one classifier");
    if (m < 2) throw std::invalid_argument("need at least two classes");
    check_probability(p, "accuracy p");

    const Rat e = (1 - p) / (m - 1);  // per-wrong-class vote rate
    const auto binom = binomial_row(n);
    auto binomial_pmf = [&](const Rat& r, long k) {
        return Rat(binom[static_cast<size_t>(k)]) * pow_rat(r, k) * pow_rat(1 - r, n - k);
    };

    // P(max of m-1 i.i.d. wrong-class counts == k), decomposed over how
    // many of them attain the max.
    std::vector<Rat> max_pmf(static_cast<size_t>(n) + 1, Rat(0));
    Rat below = 0;  // P(N_s < k)
    for (long k = 0; k <= n; ++k) {
        const Rat at = binomial_pmf(e, k);
        Rat total = 0;
        for (long h = 1; h <= m - 1; ++h) {
            total += Rat(binomial(m - 1, h)) * pow_rat(at, h) * pow_rat(below, m - 1 - h);
        }
        max_pmf[static_cast<size_t>(k)] = total;
        below += at;
    }

    Rat pid = 0;
    Rat max_below = 0;  // P(max < j), accumulated as j grows
    for (long j = 1; j <= n; ++j) {
        max_below += max_pmf[static_cast<size_t>(j - 1)];
        pid += binomial_pmf(p, j) * max_below;
    }
    return pid;
}

InstanceAudit audit_instance(const TheoryParams& params) {
    params.validate();
    InstanceAudit audit;
    audit.params = params;
    for (long i = 1; i <= params.n; ++i) {
        audit.phi.push_back(gen_fun_coeff(params.m, i, params.n));
    }
    audit.k_m1 = normalization_constant(params, KVariant::m1);
    audit.k_m2 = normalization_constant(params, KVariant::m2);
    audit.value_m1 = closed_form_accuracy(params, KVariant::m1);
    audit.value_m2 = closed_form_accuracy(params, KVariant::m2);
    audit.value_model = closed_form_accuracy(params, KVariant::model);
    if (params.n <= kOracleMaxVoters && params.m <= kOracleMaxClasses) {
        audit.value_enumerated = enumerated_accuracy(params, OracleTie::strict);
    }
    audit.normalization_constants_differ = audit.k_m1 != audit.k_m2;
    audit.closed_form_variants_disagree =
        audit.value_m1 != audit.value_m2 || audit.value_m1 != audit.value_model;
    audit.model_matches_enumeration =
        audit.value_enumerated && *audit.value_enumerated == audit.value_model;
    return audit;
}

}  // namespace rankvote::theory
