#pragma once

#include "fracdiff/convergence.hpp"
#include "fracdiff/grid.hpp"
#include "fracdiff/problem.hpp"

#include <json.hpp>

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

namespace fracdiff {

/// Bad config content. `path()` names the offending field, e.g. "problem.bc.mu1".
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string path, const std::string& message);
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

struct GridRequest {
    std::size_t N = 0;
    std::optional<double> tau;          ///< eval_time / tau must be an integer
    std::optional<std::size_t> steps;   ///< steps up to eval_time
};

struct RunConfig {
    ProblemSpec problem;
    std::string problem_source;  ///< built-in name, or "inline"
    std::optional<GridRequest> grid;
    double eval_time = 1.0;
    std::size_t quad_nodes = 64;
    unsigned workers = 1;
    bool ledger = false;
    std::optional<RefinementPlan> plan;
};

/// Parses a run configuration:
///   {"problem": "test1" | {inline spec}, "grid": {"N": n, "tau": t | "steps": s},
///    "eval_time": t, "quad_nodes": P, "parallel": n, "ledger": bool, "plan": ...}
/// Inline specs use expression strings; see README for the field list.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::filesystem::path& file);

/// Inline problem from its JSON object. `path` prefixes error locations.
ProblemSpec parse_problem(const nlohmann::json& spec, const std::string& path = "problem");

/// Refinement plan from JSON, either a preset name or
///   {"axis": "time", "N": n, "steps": [...] | "tau": [...]}
///   {"axis": "space", "N": [...], "steps": s}
///   {"axis": "coupled", "N": [...], "exponent": e}   (default exponent 2/(2 - theta_max))
RefinementPlan parse_plan(const nlohmann::json& plan, const ProblemSpec& problem,
                          double eval_time, const std::string& path = "plan");

/// Grid that ends at eval_time. Throws ConfigError("eval_time") when eval_time is not a level.
Grid resolve_grid(const RunConfig& config);

}  // namespace fracdiff
