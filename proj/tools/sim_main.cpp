// Scenario runner: every analysis of the library exposed as a subcommand
// with JSON config in and CSV/JSON artifacts out. Flags override config
// fields; all outputs are deterministic.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cqed/scenario.hpp"

namespace {

using nlohmann::json;

struct SubState {
    std::string config;
    std::string out;
    std::optional<std::string> format;
    bool dump_hamiltonian = false;
    std::optional<std::uint64_t> seed;

    std::optional<long> n_atoms, points, cutoff, photon_number;
    std::optional<double> omega_sigma, gate_time, theta_max, shift1, omega_s_cross;
    std::optional<double> g1, g2, g, delta, t_max;
    std::vector<double> q, ratios, values;
    std::vector<long> photon_numbers;
    std::vector<std::string> grid;
    std::string param;
    bool full_check = false;
};

// "0,1" or "0..2" or a mix "0,2..4" -> expanded integer list.
std::vector<long> parse_grid_spec(const std::string& spec) {
    std::vector<long> out;
    std::size_t pos = 0;
    while (pos <= spec.size()) {
        const std::size_t comma = std::min(spec.find(',', pos), spec.size());
        const std::string item = spec.substr(pos, comma - pos);
        const std::size_t dots = item.find("..");
        if (dots == std::string::npos) {
            out.push_back(std::stol(item));
        } else {
            const long lo = std::stol(item.substr(0, dots));
            const long hi = std::stol(item.substr(dots + 2));
            for (long v = lo; v <= hi; ++v) out.push_back(v);
        }
        pos = comma + 1;
    }
    return out;
}

int load_scenario(const SubState& st, cqed::ScenarioKind kind, cqed::Scenario& s) {
    if (!st.config.empty()) {
        std::ifstream is(st.config);
        if (!is) {
            std::cerr << "config: cannot read " << st.config << "\n";
            return 2;
        }
        json j;
        try {
            is >> j;
            s = cqed::scenario_from_json(j);
        } catch (const std::exception& e) {
            std::cerr << "config: " << e.what() << "\n";
            return 2;
        }
        if (s.kind != kind) {
            std::cerr << "config: kind '" << cqed::kind_name(s.kind)
                      << "' does not match the '" << cqed::kind_name(kind)
                      << "' subcommand\n";
            return 2;
        }
    } else {
        s.kind = kind;
    }
    return 0;
}

void apply_common(const SubState& st, cqed::Scenario& s) {
    if (!st.out.empty()) s.out_dir = st.out;
    if (st.format) s.format = *st.format;
    if (st.dump_hamiltonian) s.dump_hamiltonian = true;
    if (st.seed) s.seed = *st.seed;
}

int apply_flags(const SubState& st, cqed::Scenario& s) {
    json& p = s.params;
    if (st.n_atoms) p["n_atoms"] = *st.n_atoms;
    if (st.points) p["points"] = *st.points;
    if (st.cutoff) p["cutoff"] = *st.cutoff;
    if (st.photon_number) p["photon_number"] = *st.photon_number;
    if (st.omega_sigma) p["omega_sigma"] = *st.omega_sigma;
    if (st.gate_time) p["gate_time"] = *st.gate_time;
    if (st.theta_max) p["theta_max"] = *st.theta_max;
    if (st.shift1) p["shift1"] = *st.shift1;
    if (st.omega_s_cross) p["omega_s_cross"] = *st.omega_s_cross;
    if (st.g1) p["g1"] = *st.g1;
    if (st.g2) p["g2"] = *st.g2;
    if (st.g) p["g"] = *st.g;
    if (st.delta) p["delta"] = *st.delta;
    if (st.t_max) p["t_max"] = *st.t_max;
    if (!st.q.empty()) p["q"] = st.q;
    if (!st.ratios.empty()) p["ratios"] = st.ratios;
    if (!st.values.empty()) p["values"] = st.values;
    if (!st.photon_numbers.empty()) p["photon_numbers"] = st.photon_numbers;
    if (!st.param.empty()) p["param"] = st.param;
    if (st.full_check) p["full_check"] = true;
    for (const std::string& spec : st.grid) {
        const std::size_t eq = spec.find('=');
        if (eq == std::string::npos) {
            std::cerr << "grid: expected name=values, got '" << spec << "'\n";
            return 2;
        }
        const std::string name = spec.substr(0, eq);
        if (name != "mu" && name != "n" && name != "k") {
            std::cerr << "grid: unknown axis '" << name << "' (use mu, n, k)\n";
            return 2;
        }
        try {
            p[name] = parse_grid_spec(spec.substr(eq + 1));
        } catch (const std::exception&) {
            std::cerr << "grid: cannot parse '" << spec << "'\n";
            return 2;
        }
    }
    return 0;
}

int run_subcommand(const SubState& st, cqed::ScenarioKind kind) {
    cqed::Scenario s;
    if (int rc = load_scenario(st, kind, s)) return rc;
    if (int rc = apply_flags(st, s)) return rc;
    apply_common(st, s);

    const cqed::RunResult result = cqed::run_scenario(s);
    if (result.exit_code == 2) {
        for (const json& viol : result.report.at("violations")) {
            std::cerr << viol.at("path").get<std::string>() << ": "
                      << viol.at("message").get<std::string>() << "\n";
        }
    }
    std::cout << result.report.dump(2) << "\n";
    if (result.exit_code == 3) {
        std::cerr << "all grid points infeasible\n";
    } else if (result.exit_code == 4) {
        std::cerr << result.report.at("error").get<std::string>() << "\n";
    }
    return result.exit_code;
}

int run_validate(const SubState& st) {
    std::ifstream is(st.config);
    if (!is) {
        std::cerr << "config: cannot read " << st.config << "\n";
        return 2;
    }
    cqed::Scenario s;
    json j;
    try {
        is >> j;
        s = cqed::scenario_from_json(j);
    } catch (const std::exception& e) {
        std::cout << "scenario: " << e.what() << "\n";
        return 2;
    }
    if (st.format) s.format = *st.format;
    const std::vector<cqed::Violation> violations = cqed::validate(s);
    for (const cqed::Violation& v : violations) {
        std::cout << v.path << ": " << v.message << "\n";
    }
    return violations.empty() ? 0 : 2;
}

void add_common_flags(CLI::App* cmd, SubState& st, bool config_required = false) {
    auto* opt = cmd->add_option("--config", st.config,
                                "scenario JSON file {kind, params, seed}");
    if (config_required) opt->required();
    cmd->add_option("--out", st.out, "directory for artifact files");
    cmd->add_option("--format", st.format, "tabular artifact format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_flag("--dump-hamiltonian", st.dump_hamiltonian,
                  "also write the effective Hamiltonian as JSON");
    cmd->add_option("--seed", st.seed,
                    "echoed into reports; all computations are deterministic");
}

void add_q_flag(CLI::App* cmd, SubState& st) {
    cmd->add_option("--q", st.q,
                    "product-state amplitudes a1 b1 a2 b2 (normalized per pair)")
        ->expected(4)
        ->delimiter(',');
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cavity-mediated multi-atomic ensemble gate simulator"};
    app.require_subcommand(1);
    int rc = 0;

    SubState iswap_st;
    auto* iswap = app.add_subcommand("iswap", "excitation-swap gate report");
    add_common_flags(iswap, iswap_st);
    iswap->add_option("--n-atoms", iswap_st.n_atoms, "atoms per node");
    iswap->add_option("--omega-sigma", iswap_st.omega_sigma, "exchange rate");
    iswap->add_option("--gate-time", iswap_st.gate_time,
                      "override the automatic pi/(2 omega_sigma N)");
    iswap->add_option("--points", iswap_st.points, "trajectory sample count");
    add_q_flag(iswap, iswap_st);
    iswap->callback([&] { rc = run_subcommand(iswap_st, cqed::ScenarioKind::Iswap); });

    SubState cde_st;
    auto* cde = app.add_subcommand(
        "cde-solve", "solve the doubly-excited-state elimination conditions");
    add_common_flags(cde, cde_st);
    cde->add_option("--n-atoms", cde_st.n_atoms, "atoms per node");
    cde->add_option("--omega-sigma", cde_st.omega_sigma, "exchange rate");
    cde->add_option("--grid", cde_st.grid,
                    "axes as name=values, e.g. mu=0,1 n=0..2 k=1..4");
    add_q_flag(cde, cde_st);
    cde->callback([&] { rc = run_subcommand(cde_st, cqed::ScenarioKind::CdeSolve); });

    SubState blockade_st;
    auto* blockade = app.add_subcommand(
        "blockade", "strong-local-shift suppression of the doubly excited state");
    add_common_flags(blockade, blockade_st);
    blockade->add_option("--n-atoms", blockade_st.n_atoms, "atoms per node");
    blockade->add_option("--omega-sigma", blockade_st.omega_sigma, "exchange rate");
    blockade->add_option("--ratios", blockade_st.ratios,
                         "local-shift to collective-exchange ratios")
        ->delimiter(',');
    blockade->add_option("--theta-max", blockade_st.theta_max,
                         "window end in omega_sigma*N*t");
    blockade->add_option("--points", blockade_st.points, "grid sample count");
    add_q_flag(blockade, blockade_st);
    blockade->callback(
        [&] { rc = run_subcommand(blockade_st, cqed::ScenarioKind::Blockade); });

    SubState cswap_st;
    auto* cswap = app.add_subcommand(
        "cswap", "photon-number-controlled swap probabilities");
    add_common_flags(cswap, cswap_st);
    cswap->add_option("--n-atoms", cswap_st.n_atoms, "atoms per node");
    cswap->add_option("--shift1", cswap_st.shift1, "node-1 light-shift rate");
    cswap->add_option("--omega-s-cross", cswap_st.omega_s_cross,
                      "cross exchange rate");
    cswap->add_option("--g1", cswap_st.g1, "node-1 coupling (with --g2 --delta)");
    cswap->add_option("--g2", cswap_st.g2, "node-2 coupling");
    cswap->add_option("--delta", cswap_st.delta, "detuning from the common mode");
    cswap->add_option("--photon-numbers", cswap_st.photon_numbers,
                      "control photon numbers to analyze")
        ->delimiter(',');
    cswap->add_option("--cutoff", cswap_st.cutoff, "photon cutoff for --full-check");
    cswap->add_flag("--full-check", cswap_st.full_check,
                    "cross-check each swap probability against the microscopic model");
    cswap->callback([&] { rc = run_subcommand(cswap_st, cqed::ScenarioKind::Cswap); });

    SubState oracle_st;
    auto* oracle = app.add_subcommand(
        "oracle-compare", "effective model vs microscopic model trajectory error");
    add_common_flags(oracle, oracle_st);
    oracle->add_option("--n-atoms", oracle_st.n_atoms, "atoms per node");
    oracle->add_option("--g", oracle_st.g, "atom-cavity coupling");
    oracle->add_option("--delta", oracle_st.delta, "detuning from the common mode");
    oracle->add_option("--cutoff", oracle_st.cutoff, "photon cutoff");
    oracle->add_option("--points", oracle_st.points, "time grid sample count");
    oracle->add_option("--t-max", oracle_st.t_max,
                       "window end (default: one swap gate time)");
    oracle->add_option("--photon-number", oracle_st.photon_number,
                       "real photons in the common mode");
    add_q_flag(oracle, oracle_st);
    oracle->callback(
        [&] { rc = run_subcommand(oracle_st, cqed::ScenarioKind::OracleCompare); });

    SubState sweep_st;
    auto* sweep = app.add_subcommand("sweep", "run a base scenario over a value grid");
    add_common_flags(sweep, sweep_st);
    sweep->add_option("--param", sweep_st.param, "parameter name to sweep");
    sweep->add_option("--values", sweep_st.values, "values to substitute")
        ->delimiter(',');
    sweep->callback([&] { rc = run_subcommand(sweep_st, cqed::ScenarioKind::Sweep); });

    SubState validate_st;
    auto* validate = app.add_subcommand("validate", "check a scenario config");
    add_common_flags(validate, validate_st, /*config_required=*/true);
    validate->callback([&] { rc = run_validate(validate_st); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return rc;
}
