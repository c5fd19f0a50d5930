"""Voting-based ensemble toolkit: rank aggregation rules, exact accuracy
formulas for plurality ensembles, Monte Carlo simulation, and a small
cross-validated ensemble pipeline backed by the C++ core."""

from ._core import (
    Dataset,
    Rational,
    RuleResult,
    SimResult,
    aggregate,
    audit_instance,
    borda,
    closed_form_accuracy,
    copeland,
    enumerated_accuracy,
    evaluate,
    f1_score,
    gen_fun_coeff,
    hetero_accuracy,
    identification_rate,
    kemeny_exact,
    kemeny_heuristic,
    load_csv,
    majority_accuracy,
    majority_accuracy_derivative,
    overlap_lower_bound,
    plurality,
    ranking_from_scores,
    residual_accuracy,
    simulate,
    stratified_kfold,
    sum_aggregate,
)

__all__ = [
    "Dataset",
    "Rational",
    "RuleResult",
    "SimResult",
    "aggregate",
    "audit_instance",
    "borda",
    "closed_form_accuracy",
    "copeland",
    "enumerated_accuracy",
    "evaluate",
    "f1_score",
    "gen_fun_coeff",
    "hetero_accuracy",
    "identification_rate",
    "kemeny_exact",
    "kemeny_heuristic",
    "load_csv",
    "majority_accuracy",
    "majority_accuracy_derivative",
    "overlap_lower_bound",
    "plurality",
    "ranking_from_scores",
    "residual_accuracy",
    "simulate",
    "stratified_kfold",
    "sum_aggregate",
]
