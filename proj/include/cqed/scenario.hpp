#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace cqed {

enum class ScenarioKind { Iswap, CdeSolve, Blockade, Cswap, OracleCompare, Sweep };

std::string kind_name(ScenarioKind kind);
ScenarioKind kind_from_name(const std::string& name);  // throws on unknown kind

struct Violation {
    std::string path;     // e.g. "params.n_atoms"
    std::string message;
};

struct Scenario {
    ScenarioKind kind = ScenarioKind::Iswap;
    nlohmann::json params = nlohmann::json::object();
    std::string out_dir;           // empty: no artifacts, report to stdout only
    std::string format = "json";   // "json" or "csv" for tabular artifacts
    bool dump_hamiltonian = false;
    std::uint64_t seed = 0;        // accepted and echoed; no RNG is used
};

// Accepts {"kind": ..., "params": {...}, "seed": ...}; unknown keys rejected.
Scenario scenario_from_json(const nlohmann::json& j);

std::vector<Violation> validate(const Scenario& s);

struct RunResult {
    int exit_code = 0;  // 0 ok, 2 validation, 3 all-infeasible grid, 4 dimension cap
    nlohmann::json report;
    std::vector<std::string> artifacts;  // file names written under out_dir
};

// Validates, runs, writes artifacts (when out_dir is set) and returns the
// report. Deterministic: identical scenarios produce byte-identical artifacts.
RunResult run_scenario(const Scenario& s);

}  // namespace cqed
