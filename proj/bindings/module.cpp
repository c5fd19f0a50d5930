// pybind11 surface over the C++ core. Probabilities cross the boundary as
// strings ("0.8", "7/25") so the exact-arithmetic guarantees survive the
// trip; results come back as Rational handles convertible to float.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rankvote/ensemble.hpp"
#include "rankvote/montecarlo.hpp"
#include "rankvote/theory.hpp"

namespace py = pybind11;
using namespace rankvote;

namespace {

Rat parse_p(const std::string& text) { return probability_from_string(text); }

std::vector<Rat> parse_p_list(const std::vector<std::string>& items) {
    std::vector<Rat> out;
    out.reserve(items.size());
    for (const auto& item : items) out.push_back(parse_p(item));
    return out;
}

Profile make_profile(const std::vector<std::vector<int>>& rankings,
                     const std::optional<std::vector<double>>& validation_accuracy,
                     const std::optional<std::vector<double>>& weights) {
    Profile profile;
    if (rankings.empty()) throw std::invalid_argument("profile: need at least one ranking");
    profile.m = static_cast<int>(rankings.front().size());
    for (const auto& order : rankings) profile.rankings.push_back(Ranking{order});
    profile.validation_accuracy = validation_accuracy;
    profile.weights = weights;
    profile.validate();
    return profile;
}

TiePolicy parse_tie(const std::string& tie, const Profile& profile) {
    return tie.empty() ? default_tie_policy(profile) : tie_policy_from_string(tie);
}

py::dict report_to_dict(const ens::EvalReport& report) {
    py::dict out;
    out["fold_f1"] = report.fold_f1;
    out["mean_f1"] = report.mean_f1;
    out["std_f1"] = report.std_f1;
    out["mean_individual_f1"] = report.mean_individual_f1;
    out["best_individual_f1"] = report.best_individual_f1;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "voting-based ensemble toolkit (C++ core)";

    py::class_<Rat>(m, "Rational")
        .def(py::init([](const std::string& text) { return rat_from_string(text); }))
        .def_property_readonly("numerator",
                               [](const Rat& r) { return numerator(r).str(); })
        .def_property_readonly("denominator",
                               [](const Rat& r) { return denominator(r).str(); })
        .def("__float__", [](const Rat& r) { return to_double(r); })
        .def("__str__", [](const Rat& r) { return to_string(r); })
        .def("__repr__", [](const Rat& r) { return "Rational(" + to_string(r) + ")"; })
        .def("__eq__", [](const Rat& a, const Rat& b) { return a == b; });

    py::class_<RuleResult>(m, "RuleResult")
        .def_readonly("scores", &RuleResult::rule_scores)
        .def_property_readonly("winner", [](const RuleResult& r) { return r.winner; })
        .def_property_readonly("tied", [](const RuleResult& r) {
            return std::vector<int>(r.tied_set.begin(), r.tied_set.end());
        })
        .def("__repr__", [](const RuleResult& r) {
            return "RuleResult(winner=" + std::to_string(r.winner) + ")";
        });

    m.def("ranking_from_scores", [](const ScoreVector& scores) {
        return ranking_from_scores(scores).order;
    });

    auto bind_rule = [&m](const char* name, auto fn) {
        m.def(name,
              [fn](const std::vector<std::vector<int>>& rankings, const std::string& tie,
                   const std::optional<std::vector<double>>& validation_accuracy,
                   const std::optional<std::vector<double>>& weights) {
                  const Profile profile = make_profile(rankings, validation_accuracy, weights);
                  return fn(profile, parse_tie(tie, profile));
              },
              py::arg("rankings"), py::arg("tie") = "", py::arg("validation_accuracy") = py::none(),
              py::arg("weights") = py::none());
    };
    bind_rule("plurality", [](const Profile& p, TiePolicy t) { return plurality(p, t); });
    bind_rule("borda", [](const Profile& p, TiePolicy t) { return borda(p, t); });
    bind_rule("copeland", [](const Profile& p, TiePolicy t) { return copeland(p, t); });
    bind_rule("kemeny_heuristic",
              [](const Profile& p, TiePolicy t) { return kemeny_heuristic(p, t); });

    m.def(
        "kemeny_exact",
        [](const std::vector<std::vector<int>>& rankings, const std::string& tie,
           const std::optional<std::vector<double>>& validation_accuracy,
           const std::optional<std::vector<double>>& weights, int threshold) {
            const Profile profile = make_profile(rankings, validation_accuracy, weights);
            return kemeny_exact(profile, parse_tie(tie, profile), threshold);
        },
        py::arg("rankings"), py::arg("tie") = "", py::arg("validation_accuracy") = py::none(),
        py::arg("weights") = py::none(), py::arg("threshold") = 5);

    m.def(
        "aggregate",
        [](const std::vector<std::vector<int>>& rankings, const std::string& rule,
           const std::string& tie, const std::optional<std::vector<double>>& validation_accuracy,
           const std::optional<std::vector<double>>& weights, int kemeny_threshold) {
            const Profile profile = make_profile(rankings, validation_accuracy, weights);
            return apply_rule(voting_rule_from_string(rule), profile, parse_tie(tie, profile),
                              kemeny_threshold);
        },
        py::arg("rankings"), py::arg("rule"), py::arg("tie") = "",
        py::arg("validation_accuracy") = py::none(), py::arg("weights") = py::none(),
        py::arg("kemeny_threshold") = 5);

    m.def(
        "sum_aggregate",
        [](const std::vector<ScoreVector>& predictions, const std::string& tie,
           const std::optional<std::vector<double>>& accuracies) {
            const TiePolicy policy = tie.empty()
                                         ? (accuracies ? TiePolicy::best_classifier
                                                       : TiePolicy::lexicographic)
                                         : tie_policy_from_string(tie);
            return sum_aggregate(predictions, policy, accuracies);
        },
        py::arg("predictions"), py::arg("tie") = "", py::arg("accuracies") = py::none());

    // ----- theory -----
    m.def("gen_fun_coeff", &theory::gen_fun_coeff, py::arg("m"), py::arg("i"), py::arg("n"));
    m.def(
        "closed_form_accuracy",
        [](long n, long m, const std::string& p, const std::string& variant) {
            return theory::closed_form_accuracy({n, m, parse_p(p)},
                                                theory::k_variant_from_string(variant));
        },
        py::arg("n"), py::arg("m"), py::arg("p"), py::arg("variant") = "model");
    m.def(
        "enumerated_accuracy",
        [](long n, long m, const std::string& p, const std::string& tie) {
            return theory::enumerated_accuracy(theory::TheoryParams{n, m, parse_p(p)},
                                               theory::oracle_tie_from_string(tie));
        },
        py::arg("n"), py::arg("m"), py::arg("p"), py::arg("tie") = "strict");
    m.def(
        "enumerated_accuracy",
        [](const std::vector<std::string>& accuracies, long m, const std::string& tie) {
            return theory::enumerated_accuracy(theory::HeteroParams{parse_p_list(accuracies), m},
                                               theory::oracle_tie_from_string(tie));
        },
        py::arg("accuracies"), py::arg("m"), py::arg("tie") = "strict");
    m.def(
        "majority_accuracy",
        [](long n, const std::string& p, const std::string& tail) {
            return theory::majority_accuracy(n, parse_p(p),
                                             theory::binary_tail_from_string(tail));
        },
        py::arg("n"), py::arg("p"), py::arg("tail") = "strict");
    m.def(
        "majority_accuracy_derivative",
        [](long n, const std::string& p) {
            return theory::majority_accuracy_derivative(n, parse_p(p));
        },
        py::arg("n"), py::arg("p"));
    m.def(
        "hetero_accuracy",
        [](const std::vector<std::string>& accuracies, long m) {
            return theory::hetero_accuracy({parse_p_list(accuracies), m});
        },
        py::arg("accuracies"), py::arg("m"));
    m.def(
        "residual_accuracy",
        [](const std::string& p, const std::string& rho) {
            return theory::residual_accuracy(parse_p(p), parse_p(rho));
        },
        py::arg("p"), py::arg("rho"));
    m.def(
        "overlap_lower_bound",
        [](long n, long m, const std::string& p, const std::string& rho) {
            return theory::overlap_lower_bound({n, m, parse_p(p), parse_p(rho)});
        },
        py::arg("n"), py::arg("m"), py::arg("p"), py::arg("rho"));
    m.def(
        "identification_rate",
        [](long n, long m, const std::string& p) {
            return theory::identification_rate(n, m, parse_p(p));
        },
        py::arg("n"), py::arg("m"), py::arg("p"));
    m.def(
        "audit_instance",
        [](long n, long m, const std::string& p) {
            const theory::InstanceAudit audit = theory::audit_instance({n, m, parse_p(p)});
            py::dict out;
            out["phi"] = audit.phi;
            out["k_m1"] = audit.k_m1;
            out["k_m2"] = audit.k_m2;
            out["value_m1"] = audit.value_m1;
            out["value_m2"] = audit.value_m2;
            out["value_model"] = audit.value_model;
            out["value_enumerated"] =
                audit.value_enumerated ? py::cast(*audit.value_enumerated) : py::none();
            out["normalization_constants_differ"] = audit.normalization_constants_differ;
            out["closed_form_variants_disagree"] = audit.closed_form_variants_disagree;
            out["model_matches_enumeration"] = audit.model_matches_enumeration;
            return out;
        },
        py::arg("n"), py::arg("m"), py::arg("p"));

    // ----- simulation -----
    py::class_<mc::SimResult>(m, "SimResult")
        .def_readonly("wins", &mc::SimResult::wins)
        .def_readonly("trials", &mc::SimResult::trials)
        .def_readonly("rate", &mc::SimResult::rate)
        .def_readonly("stderr", &mc::SimResult::stderr_estimate)
        .def_readonly("correct_ballots", &mc::SimResult::correct_ballots)
        .def_readonly("total_ballots", &mc::SimResult::total_ballots)
        .def("__repr__", [](const mc::SimResult& r) {
            return "SimResult(wins=" + std::to_string(r.wins) + ", trials=" +
                   std::to_string(r.trials) + ")";
        });

    m.def(
        "simulate",
        [](long n, long m, long trials, std::uint64_t seed, const std::string& model, double p,
           const std::vector<double>& accuracies, double rho, const std::string& rule,
           const std::string& win, int kemeny_threshold, int threads) {
            mc::SimConfig config;
            config.n = n;
            config.m = m;
            config.trials = trials;
            config.seed = seed;
            config.model = mc::model_from_string(model);
            config.p = p;
            config.accuracies = accuracies;
            config.rho = rho;
            config.rule = voting_rule_from_string(rule);
            config.win = mc::win_criterion_from_string(win);
            config.kemeny_exact_threshold = kemeny_threshold;
            config.threads = threads;
            return mc::simulate(config);
        },
        py::arg("n"), py::arg("m"), py::arg("trials"), py::arg("seed") = 0,
        py::arg("model") = "iid", py::arg("p") = 0.5,
        py::arg("accuracies") = std::vector<double>{}, py::arg("rho") = 0.0,
        py::arg("rule") = "plurality", py::arg("win") = "strict",
        py::arg("kemeny_threshold") = 5, py::arg("threads") = 1);

    // ----- data / ensemble -----
    py::class_<data::Dataset>(m, "Dataset")
        .def_property_readonly("num_rows", &data::Dataset::num_rows)
        .def_property_readonly("num_features", &data::Dataset::num_features)
        .def_readonly("m", &data::Dataset::m)
        .def_readonly("class_names", &data::Dataset::class_names)
        .def_readonly("rows", &data::Dataset::rows)
        .def_readonly("labels", &data::Dataset::labels)
        .def("__repr__", [](const data::Dataset& d) {
            return "Dataset(rows=" + std::to_string(d.num_rows()) + ", features=" +
                   std::to_string(d.num_features()) + ", m=" + std::to_string(d.m) + ")";
        });

    m.def("load_csv", [](const std::string& csv_path, const std::string& schema_path) {
        return data::load_csv(csv_path, data::SchemaSpec::from_json_file(schema_path));
    });
    m.def(
        "stratified_kfold",
        [](const data::Dataset& dataset, int k, std::uint64_t seed) {
            return data::stratified_kfold(dataset, k, seed).folds;
        },
        py::arg("dataset"), py::arg("k"), py::arg("seed") = 0);
    m.def(
        "f1_score",
        [](const std::vector<int>& y_true, const std::vector<int>& y_pred,
           const std::string& mode) {
            return data::f1_score(y_true, y_pred, data::f1_mode_from_string(mode));
        },
        py::arg("y_true"), py::arg("y_pred"), py::arg("mode") = "macro");
    m.def(
        "evaluate",
        [](const data::Dataset& dataset, int n, const std::string& rule, const std::string& tie,
           std::uint64_t seed, int folds, int repeats, int kemeny_threshold) {
            ens::EnsembleConfig config;
            config.n = n;
            config.rule = voting_rule_from_string(rule);
            config.tie = tie_policy_from_string(tie);
            config.seed = seed;
            config.kemeny_exact_threshold = kemeny_threshold;
            return report_to_dict(ens::evaluate(dataset, config, folds, repeats));
        },
        py::arg("dataset"), py::arg("n") = 50, py::arg("rule") = "plurality",
        py::arg("tie") = "best-classifier", py::arg("seed") = 0, py::arg("folds") = 10,
        py::arg("repeats") = 1, py::arg("kemeny_threshold") = 5);
}
