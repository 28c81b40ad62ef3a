#include "fracdiff/solver.hpp"

#include "fracdiff/error.hpp"

#include <algorithm>
#include <chrono>

namespace fracdiff {

namespace {

bool homogeneous_dirichlet(const DirichletBC& bc, const Grid& grid) {
    for (std::size_t j = 1; j <= grid.j0; ++j) {
        if (bc.mu1(grid.t(j)) != 0.0 || bc.mu2(grid.t(j)) != 0.0) {
            return false;
        }
    }
    return true;
}

}  // namespace

SolveOutcome solve(const ProblemSpec& problem, const Grid& grid, double eval_time,
                   const SolveOptions& options) {
    using clock = std::chrono::steady_clock;
    const std::size_t eval_level = grid.level_of(eval_time);
    const auto quad = build_quadrature(problem.dist.alpha, problem.dist.beta, options.quad_nodes);

    auto validation = validate_problem(problem, grid, quad);
    if (!validation.valid) {
        std::string msg = "problem '" + problem.name + "' failed validation";
        if (!validation.violations.empty()) {
            msg += ": " + validation.violations.front();
        }
        throw InvalidProblem(msg);
    }

    const auto k_start = clock::now();
    KernelTable kernel = build_problem_kernel(problem, grid, quad, options.workers);
    const auto m_start = clock::now();
    MarchOptions mo;
    mo.workers = options.workers;
    mo.check_residual = options.check_residual;
    MarchResult result = march(problem, grid, kernel, mo);
    const auto m_end = clock::now();

    SolveOutcome out{grid,   eval_level, std::move(result), std::move(kernel),
                     std::move(validation), std::nullopt, std::nullopt};
    out.kernel_seconds = std::chrono::duration<double>(m_start - k_start).count();
    out.march_seconds = std::chrono::duration<double>(m_end - m_start).count();
    for (const auto& s : out.result.steps) {
        out.max_residual = std::max(out.max_residual, s.residual);
    }
    if (problem.exact) {
        out.max_error = max_error(out.result.field.level(eval_level), grid, problem.exact->u,
                                  grid.t(eval_level));
    }
    if (options.ledger) {
        if (problem.is_robin()) {
            out.ledger = robin_ledger(out.result.field, problem, out.kernel);
        } else if (homogeneous_dirichlet(std::get<DirichletBC>(problem.bc), grid)) {
            out.ledger = dirichlet_ledger(out.result.field, problem, out.kernel);
        } else if (problem.exact) {
            out.ledger = error_problem_ledger(out.result.field, problem, out.kernel);
        }
        if (out.ledger) {
            for (std::size_t n = 0; n < out.ledger->entries.size(); ++n) {
                out.result.steps[n].ledger_entry = n;
            }
        }
    }
    return out;
}

}  // namespace fracdiff
