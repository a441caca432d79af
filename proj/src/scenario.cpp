#include "cqed/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "cqed/dynamics.hpp"
#include "cqed/effective.hpp"
#include "cqed/gates.hpp"
#include "cqed/model.hpp"
#include "cqed/oracle.hpp"

namespace cqed {

namespace {

using nlohmann::json;

const double kPi = std::acos(-1.0);
const double kInvRt2 = 1.0 / std::sqrt(2.0);
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_label(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> xs(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        xs[static_cast<std::size_t>(i)] =
            a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return xs;
}

// ---- validation helpers ------------------------------------------------

void check_unknown(const json& p, const std::vector<std::string>& allowed,
                   std::vector<Violation>& v) {
    for (auto it = p.begin(); it != p.end(); ++it) {
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end()) {
            v.push_back({"params." + it.key(), "unknown parameter"});
        }
    }
}

bool is_integral(const json& x) {
    if (x.is_number_integer()) return true;
    if (!x.is_number()) return false;
    const double d = x.get<double>();
    return std::isfinite(d) && d == std::floor(d);
}

// Present-and-valid check for a single integer; records a violation when
// required-but-missing or malformed.
bool check_int(const json& p, const std::string& name, bool required, long minv,
               std::vector<Violation>& v) {
    if (!p.contains(name)) {
        if (required) v.push_back({"params." + name, "required"});
        return false;
    }
    const json& x = p.at(name);
    if (!is_integral(x) || x.get<double>() < static_cast<double>(minv)) {
        v.push_back({"params." + name,
                     "integer >= " + std::to_string(minv) + " required"});
        return false;
    }
    return true;
}

bool check_num(const json& p, const std::string& name, bool required,
               std::vector<Violation>& v) {
    if (!p.contains(name)) {
        if (required) v.push_back({"params." + name, "required"});
        return false;
    }
    const json& x = p.at(name);
    if (!x.is_number() || !std::isfinite(x.get<double>())) {
        v.push_back({"params." + name, "finite number required"});
        return false;
    }
    return true;
}

bool check_num_positive(const json& p, const std::string& name, bool required,
                        std::vector<Violation>& v) {
    if (!check_num(p, name, required, v)) return false;
    if (p.at(name).get<double>() <= 0.0) {
        v.push_back({"params." + name, "positive number required"});
        return false;
    }
    return true;
}

bool check_num_nonzero(const json& p, const std::string& name, bool required,
                       std::vector<Violation>& v) {
    if (!check_num(p, name, required, v)) return false;
    if (p.at(name).get<double>() == 0.0) {
        v.push_back({"params." + name, "nonzero number required"});
        return false;
    }
    return true;
}

bool check_qubit_array(const json& p, const std::string& name,
                       std::vector<Violation>& v) {
    if (!p.contains(name)) return false;
    const json& x = p.at(name);
    const char* msg = "array of 4 finite amplitudes with nonzero pairs required";
    if (!x.is_array() || x.size() != 4) {
        v.push_back({"params." + name, msg});
        return false;
    }
    double n1 = 0.0, n2 = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        if (!x[i].is_number() || !std::isfinite(x[i].get<double>())) {
            v.push_back({"params." + name, msg});
            return false;
        }
        const double a = x[i].get<double>();
        (i < 2 ? n1 : n2) += a * a;
    }
    if (n1 == 0.0 || n2 == 0.0) {
        v.push_back({"params." + name, msg});
        return false;
    }
    return true;
}

bool check_int_list(const json& p, const std::string& name, long minv, long maxv,
                    std::vector<Violation>& v) {
    if (!p.contains(name)) return false;
    const json& x = p.at(name);
    const std::string msg = "non-empty integer array with entries in [" +
                            std::to_string(minv) + ", " + std::to_string(maxv) +
                            "] required";
    if (!x.is_array() || x.empty()) {
        v.push_back({"params." + name, msg});
        return false;
    }
    for (const json& e : x) {
        if (!is_integral(e) || e.get<double>() < static_cast<double>(minv) ||
            e.get<double>() > static_cast<double>(maxv)) {
            v.push_back({"params." + name, msg});
            return false;
        }
    }
    return true;
}

bool check_num_list_positive(const json& p, const std::string& name,
                             std::vector<Violation>& v) {
    if (!p.contains(name)) return false;
    const json& x = p.at(name);
    const char* msg = "non-empty array of positive numbers required";
    if (!x.is_array() || x.empty()) {
        v.push_back({"params." + name, msg});
        return false;
    }
    for (const json& e : x) {
        if (!e.is_number() || !std::isfinite(e.get<double>()) ||
            e.get<double>() <= 0.0) {
            v.push_back({"params." + name, msg});
            return false;
        }
    }
    return true;
}

bool check_bool(const json& p, const std::string& name, std::vector<Violation>& v) {
    if (!p.contains(name)) return false;
    if (!p.at(name).is_boolean()) {
        v.push_back({"params." + name, "boolean required"});
        return false;
    }
    return true;
}

// ---- typed parameter access (run path; validation has already passed) --

long get_int(const json& p, const std::string& name, long def) {
    return p.contains(name) ? static_cast<long>(p.at(name).get<double>()) : def;
}

double get_num(const json& p, const std::string& name, double def) {
    return p.contains(name) ? p.at(name).get<double>() : def;
}

std::vector<double> get_num_list(const json& p, const std::string& name,
                                 std::vector<double> def) {
    if (!p.contains(name)) return def;
    std::vector<double> out;
    for (const json& e : p.at(name)) out.push_back(e.get<double>());
    return out;
}

std::vector<long> get_int_list(const json& p, const std::string& name,
                               std::vector<long> def) {
    if (!p.contains(name)) return def;
    std::vector<long> out;
    for (const json& e : p.at(name)) {
        out.push_back(static_cast<long>(e.get<double>()));
    }
    return out;
}

QubitAmplitudes get_qubits(const json& p, const std::string& name,
                           const std::array<double, 4>& def) {
    std::array<double, 4> a = def;
    if (p.contains(name)) {
        for (std::size_t i = 0; i < 4; ++i) a[i] = p.at(name)[i].get<double>();
    }
    return QubitAmplitudes::normalized(a[0], a[1], a[2], a[3]);
}

json qubits_to_json(const QubitAmplitudes& q) {
    return json::array({q.alpha1.real(), q.beta1.real(), q.alpha2.real(),
                        q.beta2.real()});
}

// ---- artifact plumbing -------------------------------------------------

class ArtifactWriter {
  public:
    ArtifactWriter(const Scenario& s, RunResult& r) : s_(s), r_(r) {
        if (active()) std::filesystem::create_directories(s_.out_dir);
    }
    bool active() const { return !s_.out_dir.empty(); }
    bool csv() const { return s_.format == "csv"; }
    bool dump_hamiltonian() const { return s_.dump_hamiltonian; }

    void write_json(const std::string& name, const json& j) {
        open(name) << j.dump(2) << "\n";
    }
    std::ofstream open(const std::string& name) {
        r_.artifacts.push_back(name);
        std::ofstream os(std::filesystem::path(s_.out_dir) / name,
                         std::ios::binary);
        if (!os) {
            throw std::runtime_error("cannot open artifact file " + name +
                                     " under " + s_.out_dir);
        }
        return os;
    }

  private:
    const Scenario& s_;
    RunResult& r_;
};

void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        os << (i ? "," : "") << header[i];
    }
    os << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            os << (i ? "," : "") << row[i];
        }
        os << "\n";
    }
}

json base_report(const Scenario& s, json resolved_params) {
    return json{{"kind", kind_name(s.kind)},
                {"seed", s.seed},
                {"params", std::move(resolved_params)}};
}

json matrix_real_part(const Eigen::MatrixXcd& m, bool imag) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(imag ? m(i, j).imag() : m(i, j).real());
        }
        rows.push_back(row);
    }
    return rows;
}

// ---- per-kind validation ----------------------------------------------

void validate_iswap(const json& p, std::vector<Violation>& v) {
    check_unknown(p, {"n_atoms", "omega_sigma", "gate_time", "q", "points"}, v);
    check_int(p, "n_atoms", true, 2, v);
    check_num_positive(p, "omega_sigma", false, v);
    check_num_positive(p, "gate_time", false, v);
    check_qubit_array(p, "q", v);
    check_int(p, "points", false, 2, v);
}

void validate_cde(const json& p, std::vector<Violation>& v) {
    check_unknown(p, {"n_atoms", "omega_sigma", "mu", "n", "k", "q"}, v);
    check_int(p, "n_atoms", true, 2, v);
    check_num_positive(p, "omega_sigma", false, v);
    check_int_list(p, "mu", 0, 1, v);
    check_int_list(p, "n", 0, 1000, v);
    check_int_list(p, "k", 1, 1000, v);
    check_qubit_array(p, "q", v);
}

void validate_blockade(const json& p, std::vector<Violation>& v) {
    check_unknown(p, {"n_atoms", "omega_sigma", "ratios", "theta_max", "points", "q"},
                  v);
    check_int(p, "n_atoms", false, 2, v);
    check_num_positive(p, "omega_sigma", false, v);
    check_num_list_positive(p, "ratios", v);
    check_num_positive(p, "theta_max", false, v);
    check_int(p, "points", false, 2, v);
    check_qubit_array(p, "q", v);
}

void validate_cswap(const json& p, std::vector<Violation>& v) {
    check_unknown(p,
                  {"n_atoms", "shift1", "omega_s_cross", "g1", "g2", "delta",
                   "photon_numbers", "cutoff", "full_check"},
                  v);
    check_int(p, "n_atoms", true, 2, v);
    const bool rate_mode = p.contains("shift1") || p.contains("omega_s_cross");
    const bool g_mode = p.contains("g1") || p.contains("g2") || p.contains("delta");
    if (rate_mode && g_mode) {
        v.push_back({"params", "give either {shift1, omega_s_cross} or {g1, g2, delta}, "
                               "not both"});
    } else if (g_mode) {
        check_num_nonzero(p, "g1", true, v);
        check_num_nonzero(p, "g2", true, v);
        if (check_num(p, "delta", true, v) && p.at("delta").get<double>() == 0.0) {
            v.push_back({"params.delta", "dispersive reduction invalid"});
        }
    } else {
        check_num(p, "shift1", true, v);
        check_num_nonzero(p, "omega_s_cross", true, v);
    }
    long max_photon = 1;
    if (check_int_list(p, "photon_numbers", 0, 1000, v)) {
        max_photon = 0;
        for (const json& e : p.at("photon_numbers")) {
            max_photon = std::max(max_photon, static_cast<long>(e.get<double>()));
        }
    }
    long cutoff = 3;
    bool cutoff_ok = true;
    if (p.contains("cutoff")) {
        cutoff_ok = check_int(p, "cutoff", false, 0, v);
        if (cutoff_ok) cutoff = static_cast<long>(p.at("cutoff").get<double>());
    }
    if (cutoff_ok) {
        if (cutoff < 2) {
            v.push_back({"params.cutoff", ">= 2 required for two-excitation states"});
        } else if (cutoff < max_photon) {
            v.push_back({"params.cutoff", "must cover the largest photon number"});
        }
    }
    if (check_bool(p, "full_check", v) && p.at("full_check").get<bool>() && !g_mode) {
        v.push_back({"params.full_check",
                     "requires the {g1, g2, delta} parameterization"});
    }
}

void validate_oracle_compare(const json& p, std::vector<Violation>& v) {
    check_unknown(p,
                  {"n_atoms", "g", "delta", "cutoff", "points", "t_max", "q",
                   "photon_number"},
                  v);
    check_int(p, "n_atoms", false, 1, v);
    check_num(p, "g", false, v);
    if (check_num(p, "delta", false, v) && p.at("delta").get<double>() == 0.0) {
        v.push_back({"params.delta", "dispersive reduction invalid"});
    }
    if (check_int(p, "cutoff", false, 0, v) &&
        p.at("cutoff").get<double>() < 2.0) {
        v.push_back({"params.cutoff", ">= 2 required for two-excitation states"});
    }
    check_int(p, "points", false, 2, v);
    check_num_positive(p, "t_max", false, v);
    check_qubit_array(p, "q", v);
    if (check_int(p, "photon_number", false, 0, v)) {
        const double cutoff = p.contains("cutoff") ? p.at("cutoff").get<double>() : 3.0;
        if (p.at("photon_number").get<double>() > cutoff) {
            v.push_back({"params.photon_number", "must not exceed the cutoff"});
        }
    }
}

void validate_sweep(const json& p, std::vector<Violation>& v) {
    check_unknown(p, {"param", "values", "base"}, v);
    if (!p.contains("param") || !p.at("param").is_string() ||
        p.at("param").get<std::string>().empty()) {
        v.push_back({"params.param", "non-empty string required"});
    }
    if (!p.contains("values") || !p.at("values").is_array() ||
        p.at("values").empty()) {
        v.push_back({"params.values", "non-empty numeric array required"});
    } else {
        for (const json& e : p.at("values")) {
            if (!e.is_number() || !std::isfinite(e.get<double>())) {
                v.push_back({"params.values", "non-empty numeric array required"});
                break;
            }
        }
    }
    if (!p.contains("base") || !p.at("base").is_object()) {
        v.push_back({"params.base", "scenario object {kind, params} required"});
        return;
    }
    if (!v.empty()) return;

    Scenario base;
    try {
        base = scenario_from_json(p.at("base"));
    } catch (const std::exception& e) {
        v.push_back({"params.base", e.what()});
        return;
    }
    if (base.kind == ScenarioKind::Sweep) {
        v.push_back({"params.base.kind", "nested sweeps are not supported"});
        return;
    }
    // Validate the base with the first sweep value substituted.
    base.params[p.at("param").get<std::string>()] = p.at("values")[0];
    for (const Violation& bv : validate(base)) {
        v.push_back({"params.base." + bv.path, bv.message});
    }
}

// ---- per-kind runners --------------------------------------------------

void run_iswap(const Scenario& s, RunResult& r) {
    const json& p = s.params;
    const int n_atoms = static_cast<int>(get_int(p, "n_atoms", 2));
    const double omega_sigma = get_num(p, "omega_sigma", 1.0);
    const double gate_time = p.contains("gate_time")
                                 ? p.at("gate_time").get<double>()
                                 : iswap_time(n_atoms, omega_sigma);
    const int points = static_cast<int>(get_int(p, "points", 201));
    const QubitAmplitudes q =
        get_qubits(p, "q", {kInvRt2, kInvRt2, kInvRt2, kInvRt2});

    const EffectiveHamiltonian h = build_h5_common(n_atoms, omega_sigma);
    const GateReport gate = extract_gate(h, gate_time, target_iswap());

    json report = base_report(s, {{"n_atoms", n_atoms},
                                  {"omega_sigma", omega_sigma},
                                  {"gate_time", gate_time},
                                  {"points", points},
                                  {"q", qubits_to_json(q)}});
    report["gate"] = "iswap";
    report["N"] = n_atoms;
    report["gate_time"] = gate.gate_time;
    report["fidelity"] = gate.fidelity;
    report["fidelity_phase_insensitive"] = gate.fidelity_phase_insensitive;
    report["leakage"] = gate.leakage;
    report["unitary_re"] = matrix_real_part(gate.unitary, false);
    report["unitary_im"] = matrix_real_part(gate.unitary, true);
    report["notes"] =
        "computational-space map psi2 -> -psi3, psi3 -> -psi2 "
        "(excitation swap with local phases); leakage is the "
        "doubly-excited-state population at gate time";
    r.report = report;

    ArtifactWriter w(s, r);
    if (w.active()) {
        const Trajectory traj =
            propagate_trajectory(h, product_state(q), linspace(0.0, gate_time, points));
        auto os = w.open("trajectory.csv");
        write_trajectory_csv(os, traj);
        if (w.dump_hamiltonian()) {
            w.write_json("hamiltonian.json", hamiltonian_to_json(h));
        }
        w.write_json("report.json", report);
    }
}

void run_cde(const Scenario& s, RunResult& r) {
    const json& p = s.params;
    const int n_atoms = static_cast<int>(get_int(p, "n_atoms", 2));
    const double omega_sigma = get_num(p, "omega_sigma", 1.0);
    const std::vector<long> mus = get_int_list(p, "mu", {0, 1});
    const std::vector<long> ns = get_int_list(p, "n", {0, 1, 2});
    const std::vector<long> ks = get_int_list(p, "k", {1, 2, 3, 4});
    const QubitAmplitudes q =
        get_qubits(p, "q", {kInvRt2, kInvRt2, kInvRt2, kInvRt2});

    json rows = json::array();
    std::vector<std::vector<std::string>> csv_rows;
    int n_feasible = 0;
    double max_residual = 0.0;
    double max_pattern_error = 0.0;
    std::vector<std::pair<CdeSolution, std::string>> dumps;

    for (long mu : mus) {
        for (long n : ns) {
            for (long k : ks) {
                const CdeSolution sol = solve_cde(static_cast<int>(mu),
                                                  static_cast<int>(n),
                                                  static_cast<int>(k), n_atoms);
                json residual;  // null for infeasible branches
                json pattern_error;
                if (sol.feasible) {
                    ++n_feasible;
                    const EliminationCheck check =
                        verify_elimination(sol, n_atoms, q, omega_sigma);
                    residual = check.residual;
                    pattern_error = check.pattern_error;
                    max_residual = std::max(max_residual, check.residual);
                    max_pattern_error = std::max(max_pattern_error, check.pattern_error);
                    dumps.emplace_back(sol, "hamiltonian_mu" + std::to_string(mu) +
                                                "_n" + std::to_string(n) + "_k" +
                                                std::to_string(k) + ".json");
                }
                const double limit =
                    cde_omega_s_t_limit(static_cast<int>(mu), static_cast<int>(n),
                                        static_cast<int>(k));
                rows.push_back({{"mu", mu},
                                {"n", n},
                                {"k", k},
                                {"feasible", sol.feasible},
                                {"theta", sol.theta},
                                {"st", sol.st},
                                {"omega_s_t", sol.omega_s_t},
                                {"omega_s_t_limit", limit},
                                {"ratio", sol.ratio},
                                {"residual", residual},
                                {"pattern_error", pattern_error}});
                csv_rows.push_back(
                    {std::to_string(mu), std::to_string(n), std::to_string(k),
                     sol.feasible ? "1" : "0", fmt17(sol.theta), fmt17(sol.st),
                     fmt17(sol.omega_s_t), fmt17(limit), fmt17(sol.ratio),
                     residual.is_null() ? "" : fmt17(residual.get<double>()),
                     pattern_error.is_null() ? "" : fmt17(pattern_error.get<double>())});
            }
        }
    }

    json report = base_report(s, {{"n_atoms", n_atoms},
                                  {"omega_sigma", omega_sigma},
                                  {"mu", mus},
                                  {"n", ns},
                                  {"k", ks},
                                  {"q", qubits_to_json(q)}});
    report["N"] = n_atoms;
    report["rows"] = rows;
    report["n_feasible"] = n_feasible;
    report["max_residual"] = n_feasible ? json(max_residual) : json();
    report["max_pattern_error"] = n_feasible ? json(max_pattern_error) : json();
    r.report = report;
    if (n_feasible == 0) r.exit_code = 3;

    ArtifactWriter w(s, r);
    if (w.active()) {
        if (w.csv()) {
            auto os = w.open("solutions.csv");
            write_csv(os,
                      {"mu", "n", "k", "feasible", "theta", "st", "omega_s_t",
                       "omega_s_t_limit", "ratio", "residual", "pattern_error"},
                      csv_rows);
        }
        if (w.dump_hamiltonian()) {
            for (const auto& [sol, name] : dumps) {
                const double t = sol.theta / (omega_sigma * n_atoms);
                const double omega_s = -sol.omega_s_t / t;
                w.write_json(name, hamiltonian_to_json(
                                       build_h5_cde(n_atoms, omega_sigma, omega_s)));
            }
        }
        w.write_json("report.json", report);
    }
}

void run_blockade(const Scenario& s, RunResult& r) {
    const json& p = s.params;
    const int n_atoms = static_cast<int>(get_int(p, "n_atoms", 10));
    const double omega_sigma = get_num(p, "omega_sigma", 1.0);
    const std::vector<double> ratios = get_num_list(p, "ratios", {10.0, 30.0, 100.0});
    const double theta_max = get_num(p, "theta_max", kPi / 2.0);
    const int points = static_cast<int>(get_int(p, "points", 801));
    const QubitAmplitudes q = get_qubits(p, "q", {0.0, 1.0, 0.0, 1.0});

    const double nd = n_atoms;
    const std::vector<double> thetas = linspace(0.0, theta_max, points);

    json rows = json::array();
    std::vector<std::vector<std::string>> csv_rows;
    std::vector<double> maxima;
    json report = base_report(s, {{"n_atoms", n_atoms},
                                  {"omega_sigma", omega_sigma},
                                  {"ratios", ratios},
                                  {"theta_max", theta_max},
                                  {"points", points},
                                  {"q", qubits_to_json(q)}});

    ArtifactWriter w(s, r);
    for (double ratio : ratios) {
        const double omega_pi = -ratio * nd * omega_sigma;
        const double omega_s = omega_sigma + omega_pi;
        const EffectiveHamiltonian h = build_h5_cde(n_atoms, omega_sigma, omega_s);
        const double big_s =
            std::sqrt(4.0 * omega_sigma * omega_sigma * nd * (nd - 1.0) +
                      omega_s * omega_s);
        const double bound = 2.0 * omega_sigma * std::sqrt(nd * (nd - 1.0)) / big_s;

        HermitianPropagator prop(h.matrix);
        const CollectiveState psi0 = product_state(q);
        Trajectory traj;
        traj.basis = CollectiveBasis::Five;
        double max_psi5 = 0.0;
        double max_deviation = 0.0;
        for (double theta : thetas) {
            const double t = theta / (omega_sigma * nd);
            const Eigen::VectorXcd psi = prop.apply(psi0.amplitudes, t);
            max_psi5 = std::max(max_psi5, std::abs(psi(4)));
            const CollectiveState ideal =
                analytic_blockade(q, n_atoms, omega_sigma, omega_s, t);
            for (int i = 0; i < 4; ++i) {
                max_deviation =
                    std::max(max_deviation, std::abs(psi(i) - ideal.amplitudes(i)));
            }
            traj.times.push_back(t);
            traj.states.push_back(psi);
        }
        maxima.push_back(max_psi5);
        rows.push_back({{"ratio", ratio},
                        {"omega_pi", omega_pi},
                        {"omega_s", omega_s},
                        {"bound", bound},
                        {"max_psi5", max_psi5},
                        {"max_deviation", max_deviation}});
        csv_rows.push_back({fmt17(ratio), fmt17(omega_pi), fmt17(omega_s),
                            fmt17(bound), fmt17(max_psi5), fmt17(max_deviation)});
        if (w.active()) {
            auto os = w.open("trajectory_ratio" + fmt_label(ratio) + ".csv");
            write_trajectory_csv(os, traj);
            if (w.dump_hamiltonian()) {
                w.write_json("hamiltonian_ratio" + fmt_label(ratio) + ".json",
                             hamiltonian_to_json(h));
            }
        }
    }

    bool monotone = true;
    for (std::size_t i = 1; i < maxima.size(); ++i) {
        if (ratios[i] > ratios[i - 1] && maxima[i] >= maxima[i - 1]) {
            monotone = false;
        }
    }

    report["rows"] = rows;
    report["suppression_monotone"] = monotone;
    report["max_psi5_overall"] =
        maxima.empty() ? 0.0 : *std::max_element(maxima.begin(), maxima.end());
    r.report = report;
    if (w.active()) {
        if (w.csv()) {
            auto os = w.open("blockade.csv");
            write_csv(os,
                      {"ratio", "omega_pi", "omega_s", "bound", "max_psi5",
                       "max_deviation"},
                      csv_rows);
        }
        w.write_json("report.json", report);
    }
}

void run_cswap(const Scenario& s, RunResult& r) {
    const json& p = s.params;
    const int n_atoms = static_cast<int>(get_int(p, "n_atoms", 2));
    const std::vector<long> photon_numbers = get_int_list(p, "photon_numbers", {0, 1});
    const int cutoff = static_cast<int>(get_int(p, "cutoff", 3));
    const bool full_check =
        p.contains("full_check") && p.at("full_check").get<bool>();
    const bool g_mode = p.contains("g1");

    double shift1 = 0.0, shift2 = 0.0, omega_s_cross = 0.0;
    double g1 = 0.0, g2 = 0.0, delta = 0.0;
    if (g_mode) {
        g1 = p.at("g1").get<double>();
        g2 = p.at("g2").get<double>();
        delta = p.at("delta").get<double>();
        shift1 = g1 * g1 / delta;
        shift2 = g2 * g2 / delta;
        omega_s_cross = g1 * g2 / delta;
    } else {
        shift1 = p.at("shift1").get<double>();
        omega_s_cross = p.at("omega_s_cross").get<double>();
    }

    std::vector<int> photon_ints(photon_numbers.begin(), photon_numbers.end());
    const CswapReport analysis =
        cswap_analysis(n_atoms, shift1, omega_s_cross, photon_ints);

    json params = {{"n_atoms", n_atoms},
                   {"photon_numbers", photon_numbers},
                   {"cutoff", cutoff},
                   {"full_check", full_check},
                   {"shift1", shift1},
                   {"omega_s_cross", omega_s_cross}};
    if (g_mode) {
        params["g1"] = g1;
        params["g2"] = g2;
        params["delta"] = delta;
        params["shift2"] = shift2;
    }

    json rows = json::array();
    std::vector<std::vector<std::string>> csv_rows;
    for (std::size_t i = 0; i < analysis.entries.size(); ++i) {
        const CswapEntry& e = analysis.entries[i];
        json row = {{"photon_number", e.photon_number},
                    {"c1", e.c1},
                    {"c1_normalized", e.c1_normalized},
                    {"max_swap_probability", e.max_swap_probability},
                    {"full_swap_time", e.full_swap_time}};
        double measured = kNaN;
        if (full_check) {
            const double d2 = n_atoms * (shift1 - shift2);
            NodeConfig node1{n_atoms, 0.0, g1, 0.0};
            NodeConfig node2{n_atoms, d2, g2, 0.0};
            CavityConfig cavity{-delta, delta, e.photon_number};
            const FullModel fm = build_full(node1, node2, cavity, cutoff, 1);
            const Eigen::VectorXcd psi0 =
                basis_ket(fm, 1, 0, {e.photon_number, 0, 0});
            const int target = fm.index_of(0, 1, {e.photon_number, 0, 0});
            const double gap = e.photon_number * (shift1 - shift2);
            const double w_pair = std::sqrt(
                gap * gap + n_atoms * n_atoms * omega_s_cross * omega_s_cross);
            measured = 0.0;
            for (double t : linspace(0.0, 2.2 * kPi / (2.0 * w_pair), 1201)) {
                measured = std::max(measured,
                                    std::norm(evolve_full(fm, psi0, t)(target)));
            }
            row["measured_max_swap"] = measured;
            row["measured_over_predicted"] = measured / e.max_swap_probability;
        }
        rows.push_back(row);
        std::vector<std::string> cells = {
            std::to_string(e.photon_number), fmt17(e.c1), fmt17(e.c1_normalized),
            fmt17(e.max_swap_probability), fmt17(e.full_swap_time)};
        if (full_check) cells.push_back(fmt17(measured));
        csv_rows.push_back(cells);
    }

    json report = base_report(s, params);
    report["N"] = n_atoms;
    report["rows"] = rows;
    report["contrast"] = analysis.contrast;
    report["notes"] =
        "swap probabilities at the built-in resonance (node frequency "
        "difference equal to N times the node-1 light shift)";
    r.report = report;

    ArtifactWriter w(s, r);
    if (w.active()) {
        if (w.csv()) {
            std::vector<std::string> header = {"photon_number", "c1", "c1_normalized",
                                               "max_swap_probability",
                                               "full_swap_time"};
            if (full_check) header.push_back("measured_max_swap");
            auto os = w.open("cswap.csv");
            write_csv(os, header, csv_rows);
        }
        if (w.dump_hamiltonian()) {
            for (int n : photon_ints) {
                Couplings c;
                c.omega_1 = shift1;
                c.omega_2 = g_mode ? shift2 : 0.0;
                c.omega_s_cross = omega_s_cross;
                const EffectiveHamiltonian h6 = build_h6_cswap(
                    n_atoms, n, 0.0, n_atoms * shift1, c);
                w.write_json("hamiltonian_n" + std::to_string(n) + ".json",
                             hamiltonian_to_json(h6));
            }
        }
        w.write_json("report.json", report);
    }
}

void run_oracle_compare(const Scenario& s, RunResult& r) {
    const json& p = s.params;
    const int n_atoms = static_cast<int>(get_int(p, "n_atoms", 4));
    const double g = get_num(p, "g", 0.05);
    const double delta = get_num(p, "delta", 1.0);
    const int cutoff = static_cast<int>(get_int(p, "cutoff", 3));
    const int points = static_cast<int>(get_int(p, "points", 201));
    const int photon_number = static_cast<int>(get_int(p, "photon_number", 0));
    const QubitAmplitudes q = get_qubits(p, "q", {0.8, 0.6, 0.8, 0.6});

    NodeConfig node{n_atoms, 0.0, g, 0.0};
    CavityConfig cavity{-delta, delta, photon_number};
    const Couplings couplings = derive_couplings(node, node, cavity);
    const double t_max = p.contains("t_max")
                             ? p.at("t_max").get<double>()
                             : iswap_time(n_atoms, couplings.omega_sigma);

    const FullModel fm = build_full(node, node, cavity, cutoff, 1);
    const EffectiveHamiltonian h = build_h5_common(n_atoms, couplings.omega_sigma);
    const CollectiveState psi0 = product_state(q);
    const std::vector<double> t_grid = linspace(0.0, t_max, points);
    const CompareReport cmp = compare_models(fm, h, psi0, t_grid);

    json report = base_report(s, {{"n_atoms", n_atoms},
                                  {"g", g},
                                  {"delta", delta},
                                  {"cutoff", cutoff},
                                  {"points", points},
                                  {"photon_number", photon_number},
                                  {"t_max", t_max},
                                  {"q", qubits_to_json(q)}});
    report["N"] = n_atoms;
    report["omega_sigma"] = couplings.omega_sigma;
    report["dispersive_quality"] = dispersive_quality(node, cavity);
    report["dimension"] = fm.dim();
    report["max_state_error"] = cmp.max_state_error;
    report["max_real_photon_population"] = cmp.max_real_photon_population;
    r.report = report;

    ArtifactWriter w(s, r);
    if (w.active()) {
        {
            std::vector<std::vector<std::string>> csv_rows;
            for (std::size_t i = 0; i < cmp.times.size(); ++i) {
                csv_rows.push_back({fmt17(cmp.times[i]), fmt17(cmp.errors[i]),
                                    fmt17(cmp.photon_populations[i])});
            }
            auto os = w.open("comparison.csv");
            write_csv(os, {"t", "state_error", "photon_population"}, csv_rows);
        }
        {
            // Projected full-model trajectory in the five-state basis.
            const Eigen::VectorXcd full0 = embed_collective(fm, psi0);
            Trajectory traj;
            traj.basis = CollectiveBasis::Five;
            for (double t : t_grid) {
                const Projection pr =
                    project_effective(fm, evolve_full(fm, full0, t), h.basis);
                traj.times.push_back(t);
                traj.states.push_back(pr.state.amplitudes);
            }
            auto os = w.open("trajectory.csv");
            write_trajectory_csv(os, traj);
        }
        if (w.dump_hamiltonian()) {
            w.write_json("hamiltonian.json", hamiltonian_to_json(h));
        }
        w.write_json("report.json", report);
    }
}

void run_sweep(const Scenario& s, RunResult& r) {
    const json& p = s.params;
    const std::string param = p.at("param").get<std::string>();
    const json& values = p.at("values");
    const Scenario base = scenario_from_json(p.at("base"));

    json rows = json::array();
    std::vector<std::vector<std::string>> csv_rows;
    std::vector<std::string> header;

    for (const json& value : values) {
        Scenario sub = base;
        sub.params[param] = value;
        sub.seed = s.seed;
        sub.out_dir.clear();
        sub.format = "json";
        sub.dump_hamiltonian = false;
        const RunResult point = run_scenario(sub);
        if (point.exit_code != 0 && point.exit_code != 3) {
            r.exit_code = point.exit_code;
            r.report = base_report(s, {{"param", param},
                                       {"values", values},
                                       {"base", p.at("base")}});
            r.report["error"] = "sweep point failed";
            r.report["failed_value"] = value;
            r.report["point_report"] = point.report;
            return;
        }
        json row;
        row[param] = value;
        for (auto it = point.report.begin(); it != point.report.end(); ++it) {
            if (it.key() == "seed" || it.key() == param) continue;
            if (it.value().is_number()) row[it.key()] = it.value();
        }
        if (header.empty()) {
            header.push_back(param);
            for (auto it = row.begin(); it != row.end(); ++it) {
                if (it.key() != param) header.push_back(it.key());
            }
        }
        std::vector<std::string> cells;
        for (const std::string& col : header) {
            if (!row.contains(col)) {
                cells.push_back("");
            } else if (row.at(col).is_number_integer()) {
                cells.push_back(std::to_string(row.at(col).get<long>()));
            } else {
                cells.push_back(fmt17(row.at(col).get<double>()));
            }
        }
        rows.push_back(row);
        csv_rows.push_back(cells);
    }

    json report = base_report(s, {{"param", param},
                                  {"values", values},
                                  {"base", p.at("base")}});
    report["rows"] = rows;
    r.report = report;

    ArtifactWriter w(s, r);
    if (w.active()) {
        if (w.csv()) {
            auto os = w.open("sweep.csv");
            write_csv(os, header, csv_rows);
        }
        w.write_json("report.json", report);
    }
}

}  // namespace

std::string kind_name(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::Iswap: return "iswap";
        case ScenarioKind::CdeSolve: return "cde-solve";
        case ScenarioKind::Blockade: return "blockade";
        case ScenarioKind::Cswap: return "cswap";
        case ScenarioKind::OracleCompare: return "oracle-compare";
        case ScenarioKind::Sweep: return "sweep";
    }
    throw std::logic_error("unhandled scenario kind");
}

ScenarioKind kind_from_name(const std::string& name) {
    if (name == "iswap") return ScenarioKind::Iswap;
    if (name == "cde-solve" || name == "sqrt_iswap_cde") return ScenarioKind::CdeSolve;
    if (name == "blockade") return ScenarioKind::Blockade;
    if (name == "cswap") return ScenarioKind::Cswap;
    if (name == "oracle-compare" || name == "oracle_compare") {
        return ScenarioKind::OracleCompare;
    }
    if (name == "sweep") return ScenarioKind::Sweep;
    throw std::invalid_argument("unknown scenario kind '" + name + "'");
}

Scenario scenario_from_json(const nlohmann::json& j) {
    if (!j.is_object()) {
        throw std::invalid_argument("scenario: JSON object required");
    }
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (it.key() != "kind" && it.key() != "params" && it.key() != "seed") {
            throw std::invalid_argument("scenario: unknown key '" + it.key() + "'");
        }
    }
    if (!j.contains("kind") || !j.at("kind").is_string()) {
        throw std::invalid_argument("scenario: string field 'kind' required");
    }
    Scenario s;
    s.kind = kind_from_name(j.at("kind").get<std::string>());
    if (j.contains("params")) {
        if (!j.at("params").is_object()) {
            throw std::invalid_argument("scenario: 'params' must be an object");
        }
        s.params = j.at("params");
    }
    if (j.contains("seed")) {
        if (!is_integral(j.at("seed")) || j.at("seed").get<double>() < 0.0) {
            throw std::invalid_argument("scenario: 'seed' must be a non-negative integer");
        }
        s.seed = j.at("seed").get<std::uint64_t>();
    }
    return s;
}

std::vector<Violation> validate(const Scenario& s) {
    std::vector<Violation> v;
    if (!s.params.is_object()) {
        v.push_back({"params", "object required"});
        return v;
    }
    if (s.format != "csv" && s.format != "json") {
        v.push_back({"format", "must be csv or json"});
    }
    switch (s.kind) {
        case ScenarioKind::Iswap: validate_iswap(s.params, v); break;
        case ScenarioKind::CdeSolve: validate_cde(s.params, v); break;
        case ScenarioKind::Blockade: validate_blockade(s.params, v); break;
        case ScenarioKind::Cswap: validate_cswap(s.params, v); break;
        case ScenarioKind::OracleCompare: validate_oracle_compare(s.params, v); break;
        case ScenarioKind::Sweep: validate_sweep(s.params, v); break;
    }
    return v;
}

RunResult run_scenario(const Scenario& s) {
    RunResult r;
    const std::vector<Violation> violations = validate(s);
    if (!violations.empty()) {
        r.exit_code = 2;
        json jv = json::array();
        for (const Violation& x : violations) {
            jv.push_back({{"path", x.path}, {"message", x.message}});
        }
        r.report = {{"kind", kind_name(s.kind)}, {"violations", jv}};
        return r;
    }
    try {
        switch (s.kind) {
            case ScenarioKind::Iswap: run_iswap(s, r); break;
            case ScenarioKind::CdeSolve: run_cde(s, r); break;
            case ScenarioKind::Blockade: run_blockade(s, r); break;
            case ScenarioKind::Cswap: run_cswap(s, r); break;
            case ScenarioKind::OracleCompare: run_oracle_compare(s, r); break;
            case ScenarioKind::Sweep: run_sweep(s, r); break;
        }
    } catch (const DimensionCapError& e) {
        r.exit_code = 4;
        r.report = {{"kind", kind_name(s.kind)}, {"error", e.what()}};
        r.artifacts.clear();
    }
    return r;
}

}  // namespace cqed
