#pragma once

#include "fracdiff/problem.hpp"
#include "fracdiff/solver.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace fracdiff {

enum class RefinementAxis { time, space, coupled };

const char* to_string(RefinementAxis axis);

struct RefinementCase {
    std::size_t N = 0;
    std::size_t steps = 0;  ///< time steps up to the evaluation time
};

struct RefinementPlan {
    RefinementAxis axis = RefinementAxis::time;
    double eval_time = 1.0;
    std::vector<RefinementCase> cases;
};

struct ConvergenceRow {
    double h = 0.0;
    double tau = 0.0;
    double max_error = 0.0;
    std::optional<double> order;  ///< absent on the first row and after failed rows
    std::string failure;          ///< empty when the case succeeded
    double seconds = 0.0;
    std::optional<std::size_t> ledger_violations;  ///< set when the options ask for a ledger
    double worst_relative_slack = 0.0;
};

struct ConvergenceTable {
    RefinementAxis axis = RefinementAxis::time;
    std::vector<ConvergenceRow> rows;
};

/// log(e1/e2) / log(step1/step2).
double convergence_order(double e1, double e2, double step1, double step2);

/// Fills the order column: the step is tau on the time axis and h otherwise.
void compute_orders(ConvergenceTable& table);

/// Fixed N, time step eval_time / steps for each entry.
RefinementPlan time_refinement(double length, std::size_t N, double eval_time,
                               const std::vector<std::size_t>& steps);

/// Fixed number of steps, N from the list.
RefinementPlan space_refinement(double length, const std::vector<std::size_t>& Ns,
                                double eval_time, std::size_t steps);

/// tau tied to h by tau = h^exponent. The step count is rounded up so that eval_time is a grid
/// level and the realised tau never exceeds the target.
RefinementPlan coupled_refinement(double length, const std::vector<std::size_t>& Ns,
                                  double exponent, double eval_time);

/// Runs every case (up to `jobs` at once) and records the max error at eval_time.
/// Requires problem.exact. Failures are recorded per row, not thrown.
ConvergenceTable run_convergence(const ProblemSpec& problem, const RefinementPlan& plan,
                                 const SolveOptions& options, unsigned jobs = 1);

/// Named presets: "test1-time", "test1-coupled", "test2-time", "test2-coupled".
struct PresetPlan {
    std::string problem;
    RefinementPlan plan;
};
PresetPlan preset_plan(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace fracdiff
