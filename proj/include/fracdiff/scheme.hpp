#pragma once

#include "fracdiff/grid.hpp"
#include "fracdiff/kernel.hpp"
#include "fracdiff/problem.hpp"
#include "fracdiff/tridiagonal.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace fracdiff {

/// Time history y^0..y^j of the scheme. The L1 memory term needs every level, so the full
/// history is kept (N+1 doubles per level).
struct SolutionField {
    Grid grid;
    std::vector<std::vector<double>> levels;

    std::size_t filled() const noexcept { return levels.size(); }
    std::span<const double> level(std::size_t j) const { return levels.at(j); }
    GridFunction at(std::size_t j) const { return {grid, j, levels.at(j)}; }
    /// y_i^0..y_i^upto of one node.
    std::vector<double> node_history(std::size_t i, std::size_t upto) const;
};

struct StepReport {
    std::size_t level = 0;
    double residual = 0.0;  ///< max row residual, 0 when the check is off
    double seconds = 0.0;
    std::optional<std::size_t> ledger_entry;
};

struct MarchOptions {
    unsigned workers = 1;        ///< threads for kernel rows and history sums
    bool check_residual = true;  ///< re-evaluate the scheme rows after each solve
};

/// Samples of the exact or initial data on the grid; y^0_i = u0(x_i).
std::vector<double> sample_initial(const ProblemSpec& problem, const Grid& grid);

/// Memory part (1/tau) sum_{s=0}^{j-1} B[i][j-s] (y_i^{s+1} - y_i^s) of the operator at level
/// j+1 for every node, from levels 0..j of `field`.
std::vector<double> history_sums(const SolutionField& field, const KernelTable& kernel,
                                 std::size_t next_level, unsigned workers = 1);

/// Interior system (size N-1) for level `next_level` with boundary values moved to the right
/// side. Needs levels 0..next_level-1 in `field`.
TridiagonalSystem assemble_dirichlet_system(std::size_t next_level, const SolutionField& field,
                                            const ProblemSpec& problem,
                                            const KernelTable& kernel, unsigned workers = 1);

/// Full system (size N+1) including the two Robin boundary rows.
TridiagonalSystem assemble_robin_system(std::size_t next_level, const SolutionField& field,
                                        const ProblemSpec& problem, const KernelTable& kernel,
                                        unsigned workers = 1);

/// Kernel table sized for the problem's scheme on `grid` (all N+1 nodes, j0 lags).
KernelTable build_problem_kernel(const ProblemSpec& problem, const Grid& grid,
                                 const GammaQuadrature& quad, unsigned workers = 1);

struct MarchResult {
    SolutionField field;
    std::vector<StepReport> steps;
};

/// Advances levels 1..j0 with one tridiagonal solve each. Failures are rethrown as
/// StepFailure carrying the level.
MarchResult march(const ProblemSpec& problem, const Grid& grid, const KernelTable& kernel,
                  const MarchOptions& options = {});

/// Row defects P(Delta)v_i - (Lambda v)_i - phi_i of the scheme at `level` for an arbitrary
/// history (levels 0..level). Dirichlet boundary entries hold v - mu; Robin rows 0 and N use the
/// boundary operator with phi = 2 mu-tilde / h.
std::vector<double> scheme_defect(const SolutionField& history, const ProblemSpec& problem,
                                  const KernelTable& kernel, std::size_t level);

/// max_i |defect_i| at `level`, evaluated directly from the scheme equations.
double residual_norm(const SolutionField& field, const ProblemSpec& problem,
                     const KernelTable& kernel, std::size_t level);

/// Exact solution sampled on every level of `grid`. Requires problem.exact.
SolutionField sample_exact(const ProblemSpec& problem, const Grid& grid);

}  // namespace fracdiff
