// Copyright 2026 The Typlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "typlab/cli.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "typlab/concentration_bounds.h"
#include "typlab/experiments.h"
#include "typlab/haar_sampling.h"
#include "typlab/io.h"
#include "typlab/spin_chain.h"

namespace typlab::cli {

namespace {

using nlohmann::json;

class IoError : public Error {
    using Error::Error;
};

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError(fmt::format("cannot open '{}'", path));
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        throw IoError(fmt::format("error reading '{}'", path));
    }
    return buf.str();
}

void write_file(const std::string &path, const std::string &content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw IoError(fmt::format("cannot open '{}' for writing", path));
    }
    f << content;
    f.close();
    if (!f) {
        throw IoError(fmt::format("error writing '{}'", path));
    }
}

std::vector<std::string> config_values(const json &v, const std::string &key) {
    auto scalar = [&](const json &x) -> std::string {
        if (x.is_string()) {
            return x.get<std::string>();
        }
        if (x.is_number() || x.is_boolean()) {
            return x.dump();
        }
        throw ParseError(fmt::format("config key '{}': unsupported value {}", key, x.dump()));
    };
    std::vector<std::string> out;
    if (v.is_array()) {
        for (const json &x : v) {
            out.push_back(scalar(x));
        }
    } else {
        out.push_back(scalar(v));
    }
    return out;
}

// Fills options not given on the command line from a JSON object whose keys
// mirror the long flag names (dashes or underscores).
void apply_config(CLI::App &cmd, const std::string &path) {
    json cfg = parse_json_text(read_file(path), path);
    if (!cfg.is_object()) {
        throw ParseError(fmt::format("{}: config must be a JSON object", path));
    }
    for (const auto &[key, value] : cfg.items()) {
        std::string flag = key;
        std::replace(flag.begin(), flag.end(), '_', '-');
        if (flag == "config") {
            throw ParseError(fmt::format("{}: nested 'config' key not allowed", path));
        }
        CLI::Option *opt = nullptr;
        try {
            opt = cmd.get_option("--" + flag);
        } catch (const CLI::OptionNotFound &) {
            throw ParseError(fmt::format("{}: unknown config key '{}'", path, key));
        }
        if (opt->count() > 0) {
            continue;
        }
        for (const std::string &s : config_values(value, key)) {
            opt->add_result(s);
        }
        try {
            opt->run_callback();
        } catch (const CLI::Error &e) {
            throw ParseError(fmt::format("{}: config key '{}': {}", path, key, e.what()));
        }
    }
}

struct SubspaceArgs {
    std::vector<std::size_t> spin_chain;
    std::vector<std::size_t> full_space;
    std::string subspace_file;

    void attach(CLI::App &cmd) {
        auto *sc = cmd.add_option("--spin-chain", spin_chain, "Spin chain: n k np")->expected(3);
        auto *fs = cmd.add_option("--full-space", full_space, "Unconstrained space: d_S d_E")->expected(2);
        auto *sf = cmd.add_option("--subspace-file", subspace_file, "Subspace JSON {dimS, dimE, basis}");
        sc->excludes(fs)->excludes(sf);
        fs->excludes(sf);
    }

    std::size_t given() const {
        return (spin_chain.empty() ? 0 : 1) + (full_space.empty() ? 0 : 1) + (subspace_file.empty() ? 0 : 1);
    }
};

struct ResolvedSubspace {
    std::optional<SpinChainModel> chain;
    std::optional<ConstraintSubspace> sub;  // absent when a spin chain exceeds the dense cap
    json echo;
};

ResolvedSubspace resolve_subspace(const SubspaceArgs &a) {
    if (a.given() != 1) {
        throw DomainError("exactly one of --spin-chain, --full-space, --subspace-file is required");
    }
    ResolvedSubspace r;
    if (!a.spin_chain.empty()) {
        SpinChainModel m{a.spin_chain[0], a.spin_chain[1], a.spin_chain[2]};
        m.validate();
        r.chain = m;
        r.echo = json{{"spin_chain", a.spin_chain}};
        if (m.n < 63 && (std::size_t{1} << m.n) <= kDefaultDimensionCap) {
            r.sub = build_subspace(m);
        }
    } else if (!a.full_space.empty()) {
        r.sub = ConstraintSubspace::full_space(BipartiteShape(a.full_space[0], a.full_space[1]));
        r.echo = json{{"full_space", a.full_space}};
    } else {
        std::string text = read_file(a.subspace_file);
        r.sub = subspace_from_json(parse_json_text(text, a.subspace_file));
        r.echo = json{{"subspace_file", a.subspace_file}, {"subspace_hash", hex64(config_hash(json(text)))}};
    }
    return r;
}

const ConstraintSubspace &require_dense(const ResolvedSubspace &r) {
    if (!r.sub) {
        throw DimensionCapError(fmt::format("spin chain with n = {} exceeds the dense cap of {} amplitudes",
                                            r.chain->n, kDefaultDimensionCap));
    }
    return *r.sub;
}

void print_fields(std::ostream &out, const json &obj, const std::string &format) {
    if (format == "json") {
        out << obj.dump(2) << '\n';
        return;
    }
    for (const auto &[k, v] : obj.items()) {
        out << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    }
}

// ---- subspace-info

int cmd_subspace_info(const SubspaceArgs &sa, const std::string &format, std::ostream &out) {
    ResolvedSubspace r = resolve_subspace(sa);
    json info;
    if (r.sub) {
        CanonicalEnsemble e = canonical_ensemble(*r.sub);
        info = json{{"d_S", r.sub->shape().dim_s()}, {"d_E", r.sub->shape().dim_e()}, {"d_R", r.sub->dim()},
                    {"d_E_eff", e.d_eff},           {"purity_S", e.purity_s},       {"purity_E", e.purity_e},
                    {"route", "dense"}};
    } else {
        CombinatorialEnsemble e = combinatorial_canonical(*r.chain);
        info = json{{"d_S", r.chain->dim_s()}, {"d_E", r.chain->dim_e()}, {"d_R", e.dim_r},
                    {"d_E_eff", e.d_eff},     {"purity_S", e.purity_s}, {"purity_E", e.purity_e},
                    {"route", "combinatorial"}};
    }
    print_fields(out, info, format);
    return kExitOk;
}

// ---- bounds

struct BoundsArgs {
    std::size_t ds = 0;
    std::size_t dr = 0;
    std::optional<double> deff;
    std::vector<double> epsilon;
    std::optional<double> delta;
    std::optional<std::size_t> ds_tilde;
    std::optional<double> deff_tilde;
    std::string format = "csv";
};

int cmd_bounds(const BoundsArgs &a, std::ostream &out) {
    if (a.ds == 0 || a.dr == 0) {
        throw DomainError("--ds and --dr are required and must be positive");
    }
    auto ds = static_cast<double>(a.ds);
    // without d_E^eff use the dimensional fallback d_R / d_S
    double deff = a.deff.value_or(static_cast<double>(a.dr) / ds);
    std::vector<double> grid = a.epsilon.empty() ? std::vector<double>{suggested_epsilon(a.dr)} : a.epsilon;
    const double nan = std::numeric_limits<double>::quiet_NaN();

    struct Row {
        double epsilon, eta, eta_prime;
        std::string source;
    };
    std::vector<Row> rows;
    AverageDistanceBound avg = average_distance_bound(a.ds, a.dr, deff);
    rows.push_back({nan, avg.effective, nan, "average_distance"});
    rows.push_back({nan, avg.dimensional, nan, "average_distance_dimensional"});
    Method2Bound m2 = method2_bound(a.ds, a.dr);
    rows.push_back({nan, m2.threshold, m2.tail, "method2"});
    for (double eps : grid) {
        Theorem1Bound t1 = theorem1(a.ds, a.dr, deff, eps);
        rows.push_back({eps, t1.eta, t1.eta_prime, "theorem1"});
        double levy = levy_tail(LevyParams{state_sphere_dim(a.dr), 2.0, eps});
        rows.push_back({eps, eps, levy, "levy"});
        rows.push_back({eps, eps, expectation_tail(1.0, a.dr, eps), "expectation"});
        rows.push_back({eps, eps, family_tail(a.ds, a.dr, eps), "weyl_family"});
        if (a.delta || a.ds_tilde || a.deff_tilde) {
            if (!(a.delta && a.ds_tilde && a.deff_tilde)) {
                throw DomainError("theorem2 rows need --delta, --ds-tilde and --deff-tilde together");
            }
            Theorem2Bound t2 = theorem2(*a.ds_tilde, *a.deff_tilde, a.dr, *a.delta, eps);
            rows.push_back({eps, t2.eta_tilde, t2.eta_tilde_prime, "theorem2"});
        }
    }

    if (a.format == "json") {
        json arr = json::array();
        for (const Row &r : rows) {
            auto num = [](double v) { return std::isnan(v) ? json(nullptr) : json(v); };
            arr.push_back(json{{"d_S", a.ds},
                               {"d_R", a.dr},
                               {"d_E_eff", deff},
                               {"epsilon", num(r.epsilon)},
                               {"eta", num(r.eta)},
                               {"eta_prime", num(r.eta_prime)},
                               {"source_formula", r.source}});
        }
        out << arr.dump(2) << '\n';
    } else {
        out << "d_S,d_R,d_E_eff,epsilon,eta,eta_prime,source_formula\n";
        for (const Row &r : rows) {
            out << a.ds << ',' << a.dr << ',' << format_real(deff) << ',' << format_real(r.epsilon) << ','
                << format_real(r.eta) << ',' << format_real(r.eta_prime) << ',' << r.source << '\n';
        }
    }
    return kExitOk;
}

// ---- experiment

struct ExperimentArgs {
    SubspaceArgs subspace;
    std::optional<std::uint64_t> seed;
    std::size_t trials = 1000;
    std::optional<double> epsilon;
    std::optional<double> xi;
    std::string filter_file;
    std::size_t workers = 1;
    std::string output;
    std::string format = "json";
    std::vector<double> thresholds;
};

int cmd_experiment(const ExperimentArgs &a, std::ostream &out) {
    if (!a.seed) {
        throw DomainError("--seed is required for sampling commands");
    }
    if (a.workers == 0) {
        throw DomainError("--workers must be at least 1");
    }
    ResolvedSubspace r = resolve_subspace(a.subspace);
    const ConstraintSubspace &sub = require_dense(r);

    json config = r.echo;
    config["command"] = "experiment";
    config["seed"] = *a.seed;
    config["trials"] = a.trials;
    config["epsilon"] = a.epsilon ? json(*a.epsilon) : json(nullptr);
    config["thresholds"] = a.thresholds;

    std::optional<MeasurementFilter> filter;
    if (a.xi) {
        if (!r.chain) {
            throw DomainError("--xi selects the typical-window filter and needs --spin-chain");
        }
        if (!a.filter_file.empty()) {
            throw DomainError("--xi and --filter-file are mutually exclusive");
        }
        filter = typical_projector(*r.chain, typical_window(r.chain->k, r.chain->p(), *a.xi));
        config["xi"] = *a.xi;
    } else if (!a.filter_file.empty()) {
        std::string text = read_file(a.filter_file);
        filter = filter_from_json(parse_json_text(text, a.filter_file), sub);
        config["filter_file"] = a.filter_file;
        config["filter_hash"] = hex64(config_hash(json(text)));
    }
    std::uint64_t hash = config_hash(config);

    ExperimentConfig cfg;
    cfg.trials = a.trials;
    cfg.seed = *a.seed;
    cfg.epsilon = a.epsilon;
    cfg.workers = a.workers;
    cfg.tail_thresholds = a.thresholds;
    DistanceExperiment exp = run_distance_experiment(sub, cfg, filter ? &*filter : nullptr);
    std::vector<BoundRow> rows = bound_confrontation_report(exp);
    bool ok = std::all_of(rows.begin(), rows.end(), [](const BoundRow &b) { return b.satisfied; });

    std::ostringstream csv;
    write_trial_csv(csv, exp.records, *a.seed, hash);

    json stats{{"trace_distance", summary_to_json(exp.distance)}, {"purity", summary_to_json(exp.purity)}};
    if (exp.coeff_deviation) {
        stats["max_coeff_dev"] = summary_to_json(*exp.coeff_deviation);
    }
    json summary{{"schema_version", kSchemaVersion},
                 {"seed", *a.seed},
                 {"config_hash", hex64(hash)},
                 {"config", config},
                 {"runtime", {{"workers", a.workers}}},
                 {"ensemble",
                  {{"d_S", exp.ensemble.dim_s},
                   {"d_E", exp.ensemble.dim_e},
                   {"d_R", exp.ensemble.dim_r},
                   {"d_E_eff", exp.ensemble.d_eff},
                   {"purity_S", exp.ensemble.purity_s},
                   {"purity_E", exp.ensemble.purity_e}}},
                 {"epsilon", exp.epsilon},
                 {"stats", stats},
                 {"mean_state_distance", exp.mean_state_distance},
                 {"exact_average_purity", exp.exact_purity ? json(*exp.exact_purity) : json(nullptr)},
                 {"bounds", bound_rows_to_json(rows)},
                 {"all_satisfied", ok}};
    if (exp.filter) {
        summary["filter"] = json{{"delta", exp.filter->delta},
                                 {"d_S_tilde", exp.filter->dim_s_tilde},
                                 {"d_E_eff_tilde", exp.filter->d_eff_tilde}};
    }

    if (!a.output.empty()) {
        write_file(a.output + ".csv", csv.str());
        write_file(a.output + ".json", summary.dump(2) + "\n");
        out << fmt::format("wrote {}.csv and {}.json\n", a.output, a.output);
        out << fmt::format("mean trace distance {:.6g}; bounds {}\n", exp.distance.mean,
                           ok ? "satisfied" : "VIOLATED");
    } else if (a.format == "csv") {
        out << csv.str();
    } else {
        out << summary.dump(2) << '\n';
    }
    return ok ? kExitOk : kExitBoundViolated;
}

// ---- spin-chain

struct SpinChainArgs {
    std::optional<std::size_t> n, k, np;
    std::optional<double> xi;
    std::optional<double> epsilon;
    double field = 1.0;
    std::string mode = "combinatorial";
    std::string format = "text";
};

json temperature_json(const Temperature &t) {
    switch (t.regime) {
        case Temperature::Regime::Infinite:
            return "infinite";
        case Temperature::Regime::Zero:
            return "zero";
        case Temperature::Regime::Finite:
            break;
    }
    return t.kt;
}

int cmd_spin_chain(const SpinChainArgs &a, std::ostream &out) {
    if (!a.n || !a.k || !a.np) {
        throw DomainError("--n, --k and --np are required");
    }
    SpinChainModel m{*a.n, *a.k, *a.np, a.field};
    m.validate();
    Section7Report rep = section7_report(m, a.xi, a.epsilon);
    json obj{{"n", m.n},
             {"k", m.k},
             {"np", m.num_excited},
             {"p", rep.p},
             {"d_S", rep.dim_s},
             {"d_R", rep.dim_r},
             {"temperature_kT", temperature_json(rep.temperature)},
             {"product_distance", product_approximation_distance(m)},
             {"xi", rep.xi},
             {"epsilon", rep.epsilon},
             {"window", json::array({rep.window.lo, rep.window.hi})},
             {"delta_exact", rep.delta_exact},
             {"delta_bound", rep.delta_formula},
             {"d_S_tilde", rep.dim_s_tilde},
             {"d_S_tilde_bound", rep.dim_s_tilde_bound},
             {"d_E_eff", rep.d_eff_exact},
             {"d_E_eff_tilde", rep.d_eff_tilde_exact},
             {"d_E_eff_tilde_lower", rep.d_eff_tilde_lower},
             {"eta_tilde", rep.eta_tilde},
             {"eta_tilde_with_delta_bound", rep.eta_tilde_formula},
             {"eta_tilde_closed_form", rep.eta_tilde_closed},
             {"eta_tilde_prime", rep.eta_tilde_prime},
             {"eta_theorem1", rep.eta_theorem1},
             {"sqrt_dS2_over_dR", rep.sqrt_ds2_over_dr},
             {"dimensional_bound", rep.dimensional_bound},
             {"mode", a.mode}};
    if (a.mode == "dense") {
        ConstraintSubspace sub = build_subspace(m);
        CanonicalEnsemble ens = canonical_ensemble(sub);
        DensityMatrix exact = exact_canonical_state(m);
        FilteredEnsemble fe = apply_filter(sub, typical_projector(m, rep.window));
        obj["omega_max_entry_error"] = (ens.omega_s.matrix() - exact.matrix()).cwiseAbs().maxCoeff();
        obj["dense_delta"] = fe.delta;
        obj["dense_delta_from_basis"] = fe.delta_from_basis;
        obj["dense_d_E_eff_tilde"] = fe.d_eff_tilde;
        obj["dense_omega_distance"] = fe.omega_distance;
    } else if (a.mode == "combinatorial") {
        CombinatorialFilter cf = combinatorial_filter(m, rep.window);
        obj["delta_enumerated"] = cf.delta_enumerated ? json(*cf.delta_enumerated) : json(nullptr);
        obj["reachable_d_S_tilde"] = cf.reachable_dim_s_tilde;
    } else {
        throw DomainError(fmt::format("--mode must be dense or combinatorial, got '{}'", a.mode));
    }
    print_fields(out, obj, a.format);
    return kExitOk;
}

// ---- purity-oracle

struct PurityArgs {
    SubspaceArgs subspace;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> trials;
    std::size_t workers = 1;
    std::string format = "text";
};

int cmd_purity_oracle(const PurityArgs &a, std::ostream &out) {
    ResolvedSubspace r = resolve_subspace(a.subspace);
    const ConstraintSubspace &sub = require_dense(r);
    ExactPurity terms = exact_average_purity_terms(sub);
    PurityInequality ineq = purity_inequality_check(sub);
    json obj{{"d_R", sub.dim()},           {"T1", terms.t1},  {"T2", terms.t2},
             {"exact_average_purity", terms.value}, {"rhs", ineq.rhs}, {"inequality_holds", ineq.satisfied}};
    if (a.trials) {
        if (!a.seed) {
            throw DomainError("--seed is required when --trials requests sampling");
        }
        ExperimentConfig cfg;
        cfg.trials = *a.trials;
        cfg.seed = *a.seed;
        cfg.workers = a.workers;
        cfg.keep_records = false;
        cfg.coefficient_deviation = false;
        DistanceExperiment exp = run_distance_experiment(sub, cfg);
        obj["monte_carlo_mean"] = exp.purity.mean;
        obj["monte_carlo_standard_error"] = exp.purity.standard_error;
        obj["z_score"] = exp.purity.standard_error > 0.0
                             ? (exp.purity.mean - terms.value) / exp.purity.standard_error
                             : 0.0;
    }
    print_fields(out, obj, a.format);
    return ineq.satisfied ? kExitOk : kExitBoundViolated;
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"typlab: canonical typicality experiments and bounds", "typlab"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Print help for all subcommands and exit");

    auto *info = app.add_subcommand("subspace-info", "Canonical ensemble summary of a constraint subspace");
    SubspaceArgs info_args;
    std::string info_format = "text";
    info_args.attach(*info);
    info->add_option("--format", info_format)->check(CLI::IsMember({"text", "json"}));

    auto *bounds = app.add_subcommand("bounds", "Deterministic bound table");
    BoundsArgs bounds_args;
    bounds->add_option("--ds", bounds_args.ds, "System dimension");
    bounds->add_option("--dr", bounds_args.dr, "Constraint subspace dimension");
    bounds->add_option("--deff", bounds_args.deff, "Effective environment dimension (default d_R/d_S)");
    bounds->add_option("--epsilon", bounds_args.epsilon, "One or more epsilon values");
    bounds->add_option("--delta", bounds_args.delta, "Filter failure probability");
    bounds->add_option("--ds-tilde", bounds_args.ds_tilde, "Filtered system support dimension");
    bounds->add_option("--deff-tilde", bounds_args.deff_tilde, "Filtered effective environment dimension");
    bounds->add_option("--format", bounds_args.format)->check(CLI::IsMember({"csv", "json"}));

    auto *experiment = app.add_subcommand("experiment", "Monte Carlo distance experiment with bound rows");
    ExperimentArgs exp_args;
    std::string exp_config;
    exp_args.subspace.attach(*experiment);
    experiment->add_option("--seed", exp_args.seed, "64-bit seed (required)");
    experiment->add_option("--trials", exp_args.trials, "Number of sampled states")->check(CLI::PositiveNumber);
    experiment->add_option("--epsilon", exp_args.epsilon, "Default d_R^(-1/3)");
    experiment->add_option("--xi", exp_args.xi, "Typical-window half width (spin chain filter)");
    experiment->add_option("--filter-file", exp_args.filter_file, "Filter JSON {coordinates, matrix}");
    experiment->add_option("--workers", exp_args.workers, "Worker threads; output does not depend on it");
    experiment->add_option("--output", exp_args.output, "Prefix for <prefix>.csv and <prefix>.json");
    experiment->add_option("--format", exp_args.format, "stdout format without --output")
        ->check(CLI::IsMember({"csv", "json"}));
    experiment->add_option("--thresholds", exp_args.thresholds, "Extra tail thresholds");
    experiment->add_option("--config", exp_config, "JSON config; flags take precedence");

    auto *chain = app.add_subcommand("spin-chain", "Fixed-excitation spin chain report");
    SpinChainArgs chain_args;
    std::string chain_config;
    chain->add_option("--n", chain_args.n);
    chain->add_option("--k", chain_args.k);
    chain->add_option("--np", chain_args.np);
    chain->add_option("--xi", chain_args.xi, "Default k^(2/3)");
    chain->add_option("--epsilon", chain_args.epsilon, "Default d_R^(-1/3)");
    chain->add_option("--field", chain_args.field, "Field energy B");
    chain->add_option("--mode", chain_args.mode)->check(CLI::IsMember({"dense", "combinatorial"}));
    chain->add_option("--format", chain_args.format)->check(CLI::IsMember({"text", "json"}));
    chain->add_option("--config", chain_config, "JSON config; flags take precedence");

    auto *purity = app.add_subcommand("purity-oracle", "Exact average purity and the purity inequality");
    PurityArgs purity_args;
    purity_args.subspace.attach(*purity);
    purity->add_option("--seed", purity_args.seed);
    purity->add_option("--trials", purity_args.trials, "Optional Monte Carlo cross-check")
        ->check(CLI::PositiveNumber);
    purity->add_option("--workers", purity_args.workers, "Worker threads");
    purity->add_option("--format", purity_args.format)->check(CLI::IsMember({"text", "json"}));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (info->parsed()) {
            return cmd_subspace_info(info_args, info_format, out);
        }
        if (bounds->parsed()) {
            return cmd_bounds(bounds_args, out);
        }
        if (experiment->parsed()) {
            if (!exp_config.empty()) {
                apply_config(*experiment, exp_config);
            }
            return cmd_experiment(exp_args, out);
        }
        if (chain->parsed()) {
            if (!chain_config.empty()) {
                apply_config(*chain, chain_config);
            }
            return cmd_spin_chain(chain_args, out);
        }
        if (purity->parsed()) {
            return cmd_purity_oracle(purity_args, out);
        }
    } catch (const IoError &e) {
        err << "io error: " << e.what() << '\n';
        return kExitIo;
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitUsage;
}

}  // namespace typlab::cli
