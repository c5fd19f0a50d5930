// Command-line front end: exact theory tables and audits, Monte Carlo
// simulation, cross-validated ensemble runs, and one-shot profile
// aggregation. Results go to stdout as JSON (or CSV where supported),
// diagnostics to stderr. Exit codes: 0 success, 2 usage error, 1 failure.
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rankvote/ensemble.hpp"
#include "rankvote/montecarlo.hpp"
#include "rankvote/theory.hpp"

namespace {

using nlohmann::json;
using namespace rankvote;

json rational_json(const Rat& value) {
    return {{"exact", to_string(value)}, {"float", to_double(value)}};
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> parts;
    std::string item;
    std::stringstream ss(text);
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) parts.push_back(item);
    }
    return parts;
}

std::vector<long> parse_long_list(const std::string& text) {
    std::vector<long> out;
    for (const auto& item : split_list(text)) out.push_back(std::stol(item));
    if (out.empty()) throw std::invalid_argument("empty integer list");
    return out;
}

// Either a comma list of probabilities or an inclusive start:stop:step grid,
// all parsed as exact decimals.
std::vector<Rat> parse_p_grid(const std::string& text) {
    std::vector<Rat> out;
    if (std::count(text.begin(), text.end(), ':') == 2) {
        const auto first = text.find(':');
        const auto second = text.find(':', first + 1);
        const Rat start = probability_from_string(text.substr(0, first));
        const Rat stop = probability_from_string(text.substr(first + 1, second - first - 1));
        const Rat step = rat_from_string(text.substr(second + 1));
        if (step <= 0) throw std::invalid_argument("p grid step must be positive");
        for (Rat p = start; p <= stop; p += step) out.push_back(p);
    } else {
        for (const auto& item : split_list(text)) out.push_back(probability_from_string(item));
    }
    if (out.empty()) throw std::invalid_argument("empty p grid");
    return out;
}

int env_thread_count() {
    const char* raw = std::getenv("RANKVOTE_THREADS");
    if (!raw) return 1;
    const int threads = std::atoi(raw);
    if (threads < 1) throw std::invalid_argument("RANKVOTE_THREADS must be a positive integer");
    return threads;
}

// JSON config files replacing flags: an object per subcommand, e.g.
//   {"simulate": {"p": "0.8", "trials": 100000, "seed": 1}}
class JsonConfig : public CLI::Config {
  public:
    std::string to_config(const CLI::App*, bool, bool, std::string) const override {
        return "{}\n";
    }

    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        json j;
        try {
            input >> j;
        } catch (const json::exception& e) {
            throw CLI::FileError(std::string("config: ") + e.what());
        }
        if (!j.is_object()) throw CLI::FileError("config: expected a JSON object");
        std::vector<CLI::ConfigItem> items;
        collect(j, {}, items);
        return items;
    }

  private:
    static std::string scalar(const json& value) {
        return value.is_string() ? value.get<std::string>() : value.dump();
    }

    static void collect(const json& node, const std::vector<std::string>& parents,
                        std::vector<CLI::ConfigItem>& items) {
        for (const auto& [key, value] : node.items()) {
            if (value.is_object()) {
                auto down = parents;
                down.push_back(key);
                collect(value, down, items);
            } else {
                CLI::ConfigItem item;
                item.parents = parents;
                item.name = key;
                if (value.is_array()) {
                    for (const auto& entry : value) item.inputs.push_back(scalar(entry));
                } else {
                    item.inputs.push_back(scalar(value));
                }
                items.push_back(std::move(item));
            }
        }
    }
};

// ----------------------------------------------------------------- theory

struct TheoryArgs {
    std::string n_list = "10";
    long m = 2;
    std::string p_grid = "0:1:0.05";
    std::string methods = "model";
    std::string variant = "m1";
    std::string tie = "strict";
    std::string tail = "strict";
    std::string format = "json";
    bool audit = false;
};

json theory_row(long n, long m, const Rat& p, const std::string& method, const TheoryArgs& args) {
    json row;
    row["n"] = n;
    row["m"] = m;
    row["p"] = to_string(p);
    std::string variant_label = method;
    try {
        Rat value;
        if (method == "closed") {
            value = theory::closed_form_accuracy({n, m, p},
                                                 theory::k_variant_from_string(args.variant));
            variant_label += "-" + args.variant;
        } else if (method == "model") {
            value = theory::closed_form_accuracy({n, m, p}, theory::KVariant::model);
        } else if (method == "oracle") {
            variant_label += "-" + args.tie;
            value = theory::enumerated_accuracy(theory::TheoryParams{n, m, p},
                                                theory::oracle_tie_from_string(args.tie));
        } else if (method == "majority") {
            variant_label += "-" + args.tail;
            if (m != 2) throw std::invalid_argument("majority tail is defined for m = 2");
            value = theory::majority_accuracy(n, p, theory::binary_tail_from_string(args.tail));
        } else if (method == "mu") {
            value = theory::identification_rate(n, m, p);
        } else {
            throw std::invalid_argument("unknown method '" + method +
                                        "' (expected closed|model|oracle|majority|mu)");
        }
        row["variant"] = variant_label;
        row["value_exact"] = to_string(value);
        row["value_float"] = to_double(value);
    } catch (const std::invalid_argument& e) {
        if (method != "oracle" && method != "majority") throw;
        row["variant"] = variant_label;
        row["error"] = e.what();  // infeasible rows are reported, not fatal
    }
    return row;
}

int run_theory(const TheoryArgs& args) {
    if (args.audit) {
        const auto ns = parse_long_list(args.n_list);
        const auto ps = parse_p_grid(args.p_grid);
        if (ns.size() != 1 || ps.size() != 1) {
            throw std::invalid_argument("--audit expects a single n and a single p");
        }
        const theory::InstanceAudit audit =
            theory::audit_instance({ns[0], args.m, ps[0]});
        json out;
        out["n"] = audit.params.n;
        out["m"] = audit.params.m;
        out["p"] = to_string(audit.params.p);
        json phi = json::array();
        for (const Rat& v : audit.phi) phi.push_back(to_string(v));
        out["phi"] = phi;
        out["k_m1"] = rational_json(audit.k_m1);
        out["k_m2"] = rational_json(audit.k_m2);
        out["value_m1"] = rational_json(audit.value_m1);
        out["value_m2"] = rational_json(audit.value_m2);
        out["value_model"] = rational_json(audit.value_model);
        out["value_enumerated"] =
            audit.value_enumerated ? rational_json(*audit.value_enumerated) : json();
        out["normalization_constants_differ"] = audit.normalization_constants_differ;
        out["closed_form_variants_disagree"] = audit.closed_form_variants_disagree;
        out["model_matches_enumeration"] = audit.model_matches_enumeration;
        std::cout << out.dump(2) << "\n";
        return 0;
    }

    const auto ns = parse_long_list(args.n_list);
    const auto ps = parse_p_grid(args.p_grid);
    const auto methods = split_list(args.methods);
    if (methods.empty()) throw std::invalid_argument("no methods selected");

    json rows = json::array();
    for (long n : ns) {
        for (const Rat& p : ps) {
            for (const auto& method : methods) {
                rows.push_back(theory_row(n, args.m, p, method, args));
            }
        }
    }

    if (args.format == "json") {
        std::cout << rows.dump(2) << "\n";
    } else if (args.format == "csv") {
        std::cout << "n,m,p,variant,value_exact,value_float\n";
        for (const auto& row : rows) {
            std::cout << row["n"].get<long>() << "," << row["m"].get<long>() << ","
                      << row["p"].get<std::string>() << "," << row["variant"].get<std::string>()
                      << ",";
            if (row.contains("error")) {
                std::cout << "error,error\n";
            } else {
                std::cout << row["value_exact"].get<std::string>() << ","
                          << json(row["value_float"]).dump() << "\n";
            }
        }
    } else {
        throw std::invalid_argument("unknown format '" + args.format + "' (expected json|csv)");
    }
    return 0;
}

// --------------------------------------------------------------- simulate

struct SimulateArgs {
    long n = 10;
    long m = 2;
    long trials = 10000;
    std::uint64_t seed = 0;
    std::string model = "iid";
    std::string p = "0.5";
    std::string accuracies;
    std::string rho = "0";
    std::string rule = "plurality";
    std::string win = "strict";
    int kemeny_threshold = 5;
};

int run_simulate(const SimulateArgs& args) {
    mc::SimConfig config;
    config.n = args.n;
    config.m = args.m;
    config.trials = args.trials;
    config.seed = args.seed;
    config.model = mc::model_from_string(args.model);
    config.p = to_double(probability_from_string(args.p));
    config.rho = to_double(probability_from_string(args.rho));
    if (!args.accuracies.empty()) {
        for (const auto& item : split_list(args.accuracies)) {
            config.accuracies.push_back(to_double(probability_from_string(item)));
        }
    }
    config.rule = voting_rule_from_string(args.rule);
    config.win = mc::win_criterion_from_string(args.win);
    config.kemeny_exact_threshold = args.kemeny_threshold;
    config.threads = env_thread_count();

    const mc::SimResult result = mc::simulate(config);

    json out;
    out["config"] = {{"n", config.n},
                     {"m", config.m},
                     {"trials", config.trials},
                     {"seed", config.seed},
                     {"model", mc::to_string(config.model)},
                     {"p", config.p},
                     {"accuracies", config.accuracies},
                     {"rho", config.rho},
                     {"rule", to_string(config.rule)},
                     {"win", mc::to_string(config.win)},
                     {"kemeny_exact_threshold", config.kemeny_exact_threshold}};
    out["wins"] = result.wins;
    out["trials"] = result.trials;
    out["rate"] = result.rate;
    out["stderr"] = result.stderr_estimate;
    out["correct_ballots"] = result.correct_ballots;
    out["total_ballots"] = result.total_ballots;
    std::cout << out.dump(2) << "\n";
    return 0;
}

// -------------------------------------------------------------------- run

struct RunArgs {
    std::string data_path;
    std::string schema_path;
    int n = 50;
    std::string rule = "plurality";
    std::string tie = "best-classifier";
    int folds = 10;
    int repeats = 1;
    std::uint64_t seed = 0;
    int kemeny_threshold = 5;
    std::string format = "json";
};

int run_run(const RunArgs& args) {
    const auto schema = data::SchemaSpec::from_json_file(args.schema_path);
    const data::Dataset dataset = data::load_csv(args.data_path, schema);

    ens::EnsembleConfig config;
    config.n = args.n;
    config.rule = voting_rule_from_string(args.rule);
    config.tie = tie_policy_from_string(args.tie);
    config.seed = args.seed;
    config.kemeny_exact_threshold = args.kemeny_threshold;

    const ens::EvalReport report = ens::evaluate(dataset, config, args.folds, args.repeats);

    if (args.format == "csv") {
        std::cout << "dataset,n,rule,tie,folds,repeats,seed,mean_f1,std_f1,"
                     "mean_individual_f1,best_individual_f1\n"
                  << args.data_path << "," << args.n << "," << args.rule << "," << args.tie << ","
                  << args.folds << "," << args.repeats << "," << args.seed << ","
                  << json(report.mean_f1).dump() << "," << json(report.std_f1).dump() << ","
                  << json(report.mean_individual_f1).dump() << ","
                  << json(report.best_individual_f1).dump() << "\n";
        return 0;
    }
    if (args.format != "json") {
        throw std::invalid_argument("unknown format '" + args.format + "' (expected json|csv)");
    }
    json out;
    out["dataset"] = args.data_path;
    out["classes"] = dataset.class_names;
    out["n"] = args.n;
    out["rule"] = args.rule;
    out["tie"] = args.tie;
    out["folds"] = args.folds;
    out["repeats"] = args.repeats;
    out["seed"] = args.seed;
    out["fold_f1"] = report.fold_f1;
    out["mean_f1"] = report.mean_f1;
    out["std_f1"] = report.std_f1;
    out["mean_individual_f1"] = report.mean_individual_f1;
    out["best_individual_f1"] = report.best_individual_f1;
    std::cout << out.dump(2) << "\n";
    return 0;
}

// -------------------------------------------------------------- aggregate

struct AggregateArgs {
    std::string profile_path;
    std::string rule = "plurality";
    std::string tie;  // default: best-classifier when accuracies exist
    int kemeny_threshold = 5;
};

int run_aggregate(const AggregateArgs& args) {
    const Profile profile = load_profile(args.profile_path);
    const VotingRule rule = voting_rule_from_string(args.rule);
    if (rule == VotingRule::sum) {
        throw std::invalid_argument("the sum rule aggregates score vectors, not ballot profiles");
    }
    const TiePolicy tie =
        args.tie.empty() ? default_tie_policy(profile) : tie_policy_from_string(args.tie);
    const RuleResult result = apply_rule(rule, profile, tie, args.kemeny_threshold);

    json out;
    out["rule"] = to_string(rule);
    out["tie"] = to_string(tie);
    out["m"] = profile.m;
    out["voters"] = profile.num_voters();
    out["scores"] = result.rule_scores;
    out["winner"] = result.winner;
    out["tied"] = std::vector<int>(result.tied_set.begin(), result.tied_set.end());
    std::cout << out.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"voting-based ensemble toolkit"};
    app.require_subcommand(1);
    app.config_formatter(std::make_shared<JsonConfig>());
    app.set_config("--config", "", "JSON config file replacing command-line flags");

    TheoryArgs theory_args;
    auto* theory_cmd =
        app.add_subcommand("theory", "exact accuracy tables for the plurality ensemble model");
    theory_cmd->add_option("--n", theory_args.n_list, "ensemble sizes (comma list)");
    theory_cmd->add_option("--m", theory_args.m, "class count");
    theory_cmd->add_option("--p", theory_args.p_grid,
                           "accuracy grid: comma list or start:stop:step (exact decimals)");
    theory_cmd->add_option("--method", theory_args.methods,
                           "comma list of closed|model|oracle|majority|mu");
    theory_cmd->add_option("--variant", theory_args.variant,
                           "normalization for the closed method: m1|m2");
    theory_cmd->add_option("--tie", theory_args.tie,
                           "oracle win condition: strict|uniform|lexicographic");
    theory_cmd->add_option("--tail", theory_args.tail, "majority tail: strict|inclusive");
    theory_cmd->add_option("--format", theory_args.format, "json|csv");
    theory_cmd->add_flag("--audit", theory_args.audit,
                         "emit the side-by-side normalization audit for one (n, m, p)");

    SimulateArgs sim_args;
    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo simulation of the voter models");
    sim_cmd->add_option("--n", sim_args.n, "number of voters");
    sim_cmd->add_option("--m", sim_args.m, "number of classes");
    sim_cmd->add_option("--trials", sim_args.trials, "number of trials");
    sim_cmd->add_option("--seed", sim_args.seed, "RNG seed (default 0)");
    sim_cmd->add_option("--model", sim_args.model, "iid|hetero|overlap");
    sim_cmd->add_option("--p", sim_args.p, "voter accuracy (iid/overlap)");
    sim_cmd->add_option("--accuracies", sim_args.accuracies, "per-voter accuracies (hetero)");
    sim_cmd->add_option("--rho", sim_args.rho, "easy-example ratio (overlap)");
    sim_cmd->add_option("--rule", sim_args.rule, "plurality|borda|copeland|kemeny");
    sim_cmd->add_option("--win,--tie", sim_args.win,
                        "win condition for the correct class: strict|lexicographic|best-classifier");
    sim_cmd->add_option("--kemeny-threshold", sim_args.kemeny_threshold,
                        "exact Kemeny search up to this many classes");

    RunArgs run_args;
    auto* run_cmd =
        app.add_subcommand("run", "cross-validated ensemble evaluation on a CSV dataset");
    run_cmd->add_option("--data", run_args.data_path, "dataset CSV path")->required();
    run_cmd->add_option("--schema", run_args.schema_path, "schema JSON path")->required();
    run_cmd->add_option("--n", run_args.n, "profile size");
    run_cmd->add_option("--rule", run_args.rule, "plurality|borda|copeland|kemeny|sum");
    run_cmd->add_option("--tie", run_args.tie, "lexicographic|best-classifier");
    run_cmd->add_option("--folds", run_args.folds, "cross-validation folds");
    run_cmd->add_option("--repeats", run_args.repeats, "cross-validation repetitions");
    run_cmd->add_option("--seed", run_args.seed, "RNG seed (default 0)");
    run_cmd->add_option("--kemeny-threshold", run_args.kemeny_threshold,
                        "exact Kemeny search up to this many classes");
    run_cmd->add_option("--format", run_args.format, "json|csv");

    AggregateArgs agg_args;
    auto* agg_cmd = app.add_subcommand("aggregate", "elect a winner from a ballot profile file");
    agg_cmd->add_option("--profile", agg_args.profile_path, "profile JSON path")->required();
    agg_cmd->add_option("--rule", agg_args.rule, "plurality|borda|copeland|kemeny");
    agg_cmd->add_option("--tie", agg_args.tie, "lexicographic|best-classifier");
    agg_cmd->add_option("--kemeny-threshold", agg_args.kemeny_threshold,
                        "exact Kemeny search up to this many classes");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (theory_cmd->parsed()) return run_theory(theory_args);
        if (sim_cmd->parsed()) return run_simulate(sim_args);
        if (run_cmd->parsed()) return run_run(run_args);
        if (agg_cmd->parsed()) return run_aggregate(agg_args);
        std::cerr << "no subcommand selected\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return 1;
    }
}
