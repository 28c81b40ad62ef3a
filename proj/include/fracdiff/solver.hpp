#pragma once

#include "fracdiff/estimates.hpp"
#include "fracdiff/kernel.hpp"
#include "fracdiff/problem.hpp"
#include "fracdiff/scheme.hpp"

#include <cstddef>
#include <optional>

namespace fracdiff {

struct SolveOptions {
    std::size_t quad_nodes = 64;
    unsigned workers = 1;
    bool ledger = false;
    bool check_residual = true;
};

struct SolveOutcome {
    Grid grid;
    std::size_t eval_level = 0;
    MarchResult result;
    KernelTable kernel;
    ValidationReport validation;
    std::optional<double> max_error;  ///< at eval_level, when an exact solution is known
    std::optional<EnergyLedger> ledger;
    double max_residual = 0.0;
    double kernel_seconds = 0.0;
    double march_seconds = 0.0;
};

/// Validates, builds the kernel, marches to grid.T and evaluates the error at `eval_time`.
/// With options.ledger the matching estimate is attached: homogeneous Dirichlet data use the
/// direct estimate, inhomogeneous data the error problem, Robin the Robin estimate.
/// Throws InvalidProblem when validation fails and StepFailure on numerical failure.
SolveOutcome solve(const ProblemSpec& problem, const Grid& grid, double eval_time,
                   const SolveOptions& options = {});

}  // namespace fracdiff
