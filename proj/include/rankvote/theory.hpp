// Exact closed-form accuracy of a plurality ensemble of independent
// classifiers, the enumeration oracle that audits it, the two-class
// special cases, and the heterogeneous / overlapping-classifier
// extensions. Everything here computes with exact rationals; floating
// point appears only when callers convert for presentation.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rankvote/rational.hpp"

namespace rankvote::theory {

struct TheoryParams {
    long n = 1;  // ensemble size
    long m = 2;  // class count
    Rat p;       // per-classifier accuracy

    void validate() const;
};

struct HeteroParams {
    std::vector<Rat> accuracies;  // one per classifier
    long m = 2;

    long n() const { return static_cast<long>(accuracies.size()); }
    void validate() const;
};

struct OverlapParams {
    long n = 1;
    long m = 2;
    Rat p;
    Rat rho;  // easy-to-classify ratio, 0 <= rho <= p

    void validate() const;
};

// The closed form carries a normalization constant that is printed two
// different ways in the literature we reproduce; they disagree with each
// other and neither matches the i.i.d. voting model. All three readings
// are first class so they can be compared side by side (see audit_instance).
enum class KVariant {
    m1,     // K with an (m-1)^(n-j) factor
    m2,     // K with an (m-2)^(n-j) factor
    model,  // no K: wrong votes weighted by ((1-p)/(m-1))^(n-i)
};

KVariant k_variant_from_string(const std::string& name);
std::string to_string(KVariant variant);

// How the designated correct class has to fare for a trial to count as won.
enum class OracleTie {
    strict,         // strictly more votes than every other class
    uniform,        // ties resolved uniformly at random
    lexicographic,  // correct class sits at index 0 and wins any tie it is in
};

OracleTie oracle_tie_from_string(const std::string& name);
std::string to_string(OracleTie tie);

// Lower summation bound of the two-class vote tail.
enum class BinaryTail {
    strict,     // from floor(n/2)+1: ties count as losses
    inclusive,  // from ceil(n/2): for even n the tied count is included
};

BinaryTail binary_tail_from_string(const std::string& name);
std::string to_string(BinaryTail tail);

// Coefficient of x^(n-i) in (sum_{j=0}^{i-1} x^j/j!)^(m-1): the weight of
// the ways to spread n-i losing votes over m-1 classes with every class
// kept below i votes.
Rat gen_fun_coeff(long m, long i, long n);

// Closed-form win probability under the chosen normalization:
//   (1/K) * sum_i C(n,i) p^i phi_i (n-i)! (1-p)^(n-i)
// with K per variant, or the unnormalized model weighting for
// KVariant::model. Uses the 0^0 = 1 convention so p = 1 yields exactly 1.
Rat closed_form_accuracy(const TheoryParams& params, KVariant variant);

// K as defined by the m1/m2 variants (1 for the model variant).
Rat normalization_constant(const TheoryParams& params, KVariant variant);

// Independent audit: exact win probability of the designated correct
// class under the explicit voting model (each voter correct with
// probability p, otherwise one of the m-1 wrong classes uniformly),
// obtained by enumerating vote-count compositions. Refuses instances
// with n > 20 or m > 6.
Rat enumerated_accuracy(const TheoryParams& params, OracleTie tie);

// Heterogeneous-accuracy oracle: full subset enumeration over which
// voters are correct (n <= 16, m <= 6).
Rat enumerated_accuracy(const HeteroParams& params, OracleTie tie);

// Two-class tail: sum_{i=lo}^{n} C(n,i) p^i (1-p)^(n-i).
Rat majority_accuracy(long n, const Rat& p, BinaryTail tail);

// Closed form of d/dp of the inclusive two-class tail:
//   ceil(n/2) C(n, ceil(n/2)) p^(ceil(n/2)-1) (1-p)^(n-ceil(n/2)).
Rat majority_accuracy_derivative(long n, const Rat& p);

// Different per-classifier accuracies, independent voters: sums the
// correct-voter-set weights with the model-normalized count of losing-vote
// assignments (reduces to the homogeneous model when all p_i are equal).
Rat hetero_accuracy(const HeteroParams& params);

// The literal partition-sum numerator (no normalization), exposed so it
// can be compared against the probability-normalized reading above.
Rat hetero_partition_sum(const HeteroParams& params);

// Accuracy left on the hard examples once the easy fraction rho is
// removed: (p - rho) / (1 - rho). Throws when rho > p or rho >= 1.
Rat residual_accuracy(const Rat& p, const Rat& rho);

// (1 - rho) * T(residual) + rho, with T the strict two-class tail for
// m = 2 and the model-variant closed form otherwise.
Rat overlap_lower_bound(const OverlapParams& params);

// The prior literature's identification-rate estimate, reconstructed:
//   P_id = sum_j P(N_t = j) P(N_max < j)
// with N_t ~ Bin(n, p), per-wrong-class counts ~ Bin(n, (1-p)/(m-1))
// treated as independent of N_t, and the max distributed as the maximum
// of m-1 i.i.d. binomials. The independence assumption is the known flaw
// (n = 1, m = 2 yields p^2 instead of p); we reproduce it faithfully.
Rat identification_rate(long n, long m, const Rat& p);

// Side-by-side evaluation of every reading of the closed form on one
// instance, plus the enumeration oracle when feasible. The disagreement
// flags are the point: they document which readings conflict.
struct InstanceAudit {
    TheoryParams params;
    std::vector<Rat> phi;  // phi_1 .. phi_n
    Rat k_m1;
    Rat k_m2;
    Rat value_m1;
    Rat value_m2;
    Rat value_model;
    std::optional<Rat> value_enumerated;  // strict-win oracle
    bool normalization_constants_differ = false;
    bool closed_form_variants_disagree = false;
    bool model_matches_enumeration = false;
};

InstanceAudit audit_instance(const TheoryParams& params);

}  // namespace rankvote::theory
