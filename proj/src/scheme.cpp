#include "fracdiff/scheme.hpp"

#include "fracdiff/error.hpp"
#include "fracdiff/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

namespace fracdiff {

std::vector<double> SolutionField::node_history(std::size_t i, std::size_t upto) const {
    std::vector<double> v(upto + 1);
    for (std::size_t s = 0; s <= upto; ++s) {
        v[s] = levels.at(s).at(i);
    }
    return v;
}

std::vector<double> sample_initial(const ProblemSpec& problem, const Grid& grid) {
    std::vector<double> y(grid.N + 1);
    for (std::size_t i = 0; i <= grid.N; ++i) {
        y[i] = problem.u0(grid.x(i));
    }
    return y;
}

namespace {

void check_kernel(const KernelTable& kernel, const Grid& grid, std::size_t next_level) {
    if (kernel.nodes() != grid.N + 1) {
        throw UsageError("kernel table does not cover the N+1 grid nodes");
    }
    if (std::abs(kernel.tau() - grid.tau) > 1e-12 * grid.tau) {
        throw UsageError("kernel table was built for a different time step");
    }
    if (next_level < 1 || next_level > kernel.lags()) {
        std::ostringstream msg;
        msg << "kernel table has " << kernel.lags() << " lags, level " << next_level
            << " is out of range";
        throw UsageError(msg.str());
    }
}

// Coefficients of the spatial operator sampled at t_{j+1}.
struct LevelCoefficients {
    std::vector<double> a;    // a_i = k(x_{i-1/2}, t), i = 1..N (entry 0 unused)
    std::vector<double> d;    // q(x_i, t)
    std::vector<double> phi;  // f(x_i, t)
};

LevelCoefficients sample_coefficients(const ProblemSpec& problem, const Grid& grid, double t) {
    LevelCoefficients c;
    c.a.assign(grid.N + 1, 0.0);
    c.d.resize(grid.N + 1);
    c.phi.resize(grid.N + 1);
    for (std::size_t i = 0; i <= grid.N; ++i) {
        const double x = grid.x(i);
        if (i > 0) {
            c.a[i] = problem.k(x - 0.5 * grid.h, t);
        }
        c.d[i] = problem.q(x, t);
        c.phi[i] = problem.f(x, t);
    }
    return c;
}

}  // namespace

std::vector<double> history_sums(const SolutionField& field, const KernelTable& kernel,
                                 std::size_t next_level, unsigned workers) {
    check_kernel(kernel, field.grid, next_level);
    if (field.filled() < next_level) {
        throw UsageError("history_sums: field is missing earlier levels");
    }
    const std::size_t j = next_level - 1;
    const double tau = kernel.tau();
    std::vector<double> mem(field.grid.N + 1, 0.0);
    parallel_for(0, field.grid.N + 1, workers, [&](std::size_t i) {
        const auto row = kernel.row(i);
        double sum = 0.0;
        for (std::size_t s = 0; s < j; ++s) {
            sum += row[j - s] * (field.levels[s + 1][i] - field.levels[s][i]);
        }
        mem[i] = sum / tau;
    });
    return mem;
}

TridiagonalSystem assemble_dirichlet_system(std::size_t next_level, const SolutionField& field,
                                            const ProblemSpec& problem,
                                            const KernelTable& kernel, unsigned workers) {
    const auto* bc = std::get_if<DirichletBC>(&problem.bc);
    if (bc == nullptr) {
        throw UsageError("assemble_dirichlet_system: problem has Robin conditions");
    }
    const Grid& grid = field.grid;
    const auto mem = history_sums(field, kernel, next_level, workers);
    const double t = grid.t(next_level);
    const auto c = sample_coefficients(problem, grid, t);
    const double h2 = grid.h * grid.h;
    const double tau = grid.tau;
    const auto& prev = field.levels[next_level - 1];

    const std::size_t n = grid.N - 1;
    TridiagonalSystem sys(n);
    for (std::size_t i = 1; i < grid.N; ++i) {
        const std::size_t row = i - 1;
        const double b0 = kernel(i, 0) / tau;
        sys.lower[row] = -c.a[i] / h2;
        sys.upper[row] = -c.a[i + 1] / h2;
        sys.diag[row] = b0 + (c.a[i] + c.a[i + 1]) / h2 + c.d[i];
        sys.rhs[row] = c.phi[i] + b0 * prev[i] - mem[i];
    }
    sys.rhs[0] += c.a[1] / h2 * bc->mu1(t);
    sys.rhs[n - 1] += c.a[grid.N] / h2 * bc->mu2(t);
    sys.lower[0] = 0.0;
    sys.upper[n - 1] = 0.0;
    return sys;
}

TridiagonalSystem assemble_robin_system(std::size_t next_level, const SolutionField& field,
                                        const ProblemSpec& problem, const KernelTable& kernel,
                                        unsigned workers) {
    const auto* bc = std::get_if<RobinBC>(&problem.bc);
    if (bc == nullptr) {
        throw UsageError("assemble_robin_system: problem has Dirichlet conditions");
    }
    const Grid& grid = field.grid;
    const auto mem = history_sums(field, kernel, next_level, workers);
    const double t = grid.t(next_level);
    const auto c = sample_coefficients(problem, grid, t);
    const double h = grid.h;
    const double h2 = h * h;
    const double tau = grid.tau;
    const auto& prev = field.levels[next_level - 1];
    const std::size_t N = grid.N;

    TridiagonalSystem sys(N + 1);
    for (std::size_t i = 1; i < N; ++i) {
        const double b0 = kernel(i, 0) / tau;
        sys.lower[i] = -c.a[i] / h2;
        sys.upper[i] = -c.a[i + 1] / h2;
        sys.diag[i] = b0 + (c.a[i] + c.a[i + 1]) / h2 + c.d[i];
        sys.rhs[i] = c.phi[i] + b0 * prev[i] - mem[i];
    }

    const double beta1 = bc->beta1(t) + 0.5 * h * c.d[0];
    const double mu1 = bc->mu1(t) + 0.5 * h * c.phi[0];
    const double b00 = kernel(0, 0) / tau;
    sys.diag[0] = b00 + 2.0 * c.a[1] / h2 + 2.0 * beta1 / h;
    sys.upper[0] = -2.0 * c.a[1] / h2;
    sys.rhs[0] = 2.0 * mu1 / h + b00 * prev[0] - mem[0];

    const double beta2 = bc->beta2(t) + 0.5 * h * c.d[N];
    const double mu2 = bc->mu2(t) + 0.5 * h * c.phi[N];
    const double bN0 = kernel(N, 0) / tau;
    sys.diag[N] = bN0 + 2.0 * c.a[N] / h2 + 2.0 * beta2 / h;
    sys.lower[N] = -2.0 * c.a[N] / h2;
    sys.rhs[N] = 2.0 * mu2 / h + bN0 * prev[N] - mem[N];
    return sys;
}

KernelTable build_problem_kernel(const ProblemSpec& problem, const Grid& grid,
                                 const GammaQuadrature& quad, unsigned workers) {
    const auto xs = grid.nodes();
    return build_kernel_table(problem.dist, xs, grid.tau, grid.j0, quad, workers);
}

MarchResult march(const ProblemSpec& problem, const Grid& grid, const KernelTable& kernel,
                  const MarchOptions& options) {
    using clock = std::chrono::steady_clock;
    MarchResult out;
    out.field.grid = grid;
    out.field.levels.reserve(grid.j0 + 1);
    out.field.levels.push_back(sample_initial(problem, grid));
    out.steps.reserve(grid.j0);

    const bool robin = problem.is_robin();
    for (std::size_t level = 1; level <= grid.j0; ++level) {
        const auto start = clock::now();
        std::vector<double> next(grid.N + 1);
        try {
            auto sys = robin ? assemble_robin_system(level, out.field, problem, kernel, options.workers)
                             : assemble_dirichlet_system(level, out.field, problem, kernel,
                                                         options.workers);
            for (double d : sys.diag) {
                if (!(d > 0.0)) {
                    throw SingularSystem("non-positive diagonal in the assembled system", 0);
                }
            }
            const auto sol = thomas_solve(sys);
            if (robin) {
                next = sol;
            } else {
                const auto& bc = std::get<DirichletBC>(problem.bc);
                const double t = grid.t(level);
                next[0] = bc.mu1(t);
                next[grid.N] = bc.mu2(t);
                std::copy(sol.begin(), sol.end(), next.begin() + 1);
            }
            for (double v : next) {
                if (!std::isfinite(v)) {
                    throw SingularSystem("solution is not finite", 0);
                }
            }
        } catch (const std::exception& e) {
            std::ostringstream msg;
            msg << "level " << level << ": " << e.what();
            throw StepFailure(msg.str(), level);
        }
        out.field.levels.push_back(std::move(next));

        StepReport report;
        report.level = level;
        if (options.check_residual) {
            report.residual = residual_norm(out.field, problem, kernel, level);
        }
        report.seconds = std::chrono::duration<double>(clock::now() - start).count();
        out.steps.push_back(report);
    }
    return out;
}

std::vector<double> scheme_defect(const SolutionField& history, const ProblemSpec& problem,
                                  const KernelTable& kernel, std::size_t level) {
    const Grid& grid = history.grid;
    check_kernel(kernel, grid, level);
    if (history.filled() <= level) {
        throw UsageError("scheme_defect: field does not reach the requested level");
    }
    const double t = grid.t(level);
    const auto c = sample_coefficients(problem, grid, t);
    const auto& y = history.levels[level];
    const double h = grid.h;
    const double h2 = h * h;
    const std::size_t N = grid.N;

    const auto fractional = [&](std::size_t i) {
        return apply_distributed_l1(kernel.row(i), history.node_history(i, level), grid.tau);
    };

    std::vector<double> defect(N + 1, 0.0);
    for (std::size_t i = 1; i < N; ++i) {
        const double lambda =
            (c.a[i + 1] * (y[i + 1] - y[i]) - c.a[i] * (y[i] - y[i - 1])) / h2 - c.d[i] * y[i];
        defect[i] = fractional(i) - lambda - c.phi[i];
    }
    if (const auto* bc = std::get_if<RobinBC>(&problem.bc)) {
        const double beta1 = bc->beta1(t) + 0.5 * h * c.d[0];
        const double mu1 = bc->mu1(t) + 0.5 * h * c.phi[0];
        const double lambda0 = (c.a[1] * (y[1] - y[0]) / h - beta1 * y[0]) / (0.5 * h);
        defect[0] = fractional(0) - lambda0 - 2.0 * mu1 / h;

        const double beta2 = bc->beta2(t) + 0.5 * h * c.d[N];
        const double mu2 = bc->mu2(t) + 0.5 * h * c.phi[N];
        const double lambdaN = (-c.a[N] * (y[N] - y[N - 1]) / h - beta2 * y[N]) / (0.5 * h);
        defect[N] = fractional(N) - lambdaN - 2.0 * mu2 / h;
    } else {
        const auto& dir = std::get<DirichletBC>(problem.bc);
        defect[0] = y[0] - dir.mu1(t);
        defect[N] = y[N] - dir.mu2(t);
    }
    return defect;
}

double residual_norm(const SolutionField& field, const ProblemSpec& problem,
                     const KernelTable& kernel, std::size_t level) {
    const auto defect = scheme_defect(field, problem, kernel, level);
    double worst = 0.0;
    for (double d : defect) {
        worst = std::max(worst, std::abs(d));
    }
    return worst;
}

SolutionField sample_exact(const ProblemSpec& problem, const Grid& grid) {
    if (!problem.exact) {
        throw UsageError("sample_exact: problem has no exact solution");
    }
    SolutionField field;
    field.grid = grid;
    field.levels.resize(grid.j0 + 1, std::vector<double>(grid.N + 1));
    for (std::size_t j = 0; j <= grid.j0; ++j) {
        for (std::size_t i = 0; i <= grid.N; ++i) {
            field.levels[j][i] = problem.exact->u(grid.x(i), grid.t(j));
        }
    }
    return field;
}

}  // namespace fracdiff
