#include "fracdiff/estimates.hpp"

#include "fracdiff/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fracdiff {

std::size_t EnergyLedger::violations(double rel_tol) const {
    return static_cast<std::size_t>(std::count_if(
        entries.begin(), entries.end(),
        [rel_tol](const LedgerEntry& e) { return e.slack < -rel_tol * e.rhs; }));
}

double EnergyLedger::worst_relative_slack() const {
    if (entries.empty()) {
        return 0.0;
    }
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& e : entries) {
        worst = std::min(worst, e.slack / std::max(e.rhs, std::numeric_limits<double>::min()));
    }
    return worst;
}

namespace {


std::vector<double> node_weights(const Grid& grid, bool boundary_weighted) {
    std::vector<double> w(grid.N + 1, grid.h);
    w[0] = boundary_weighted ? 0.5 * grid.h : 0.0;
    w[grid.N] = boundary_weighted ? 0.5 * grid.h : 0.0;
    return w;
}

double gradient_norm2(std::span<const double> y, double h) {
    // ||y_xbar]|^2 = sum_{i=1}^{N} (y_xbar,i)^2 h
    double sum = 0.0;
    for (std::size_t i = 1; i < y.size(); ++i) {
        const double d = (y[i] - y[i - 1]) / h;
        sum += d * d;
    }
    return sum * h;
}

double interior_norm2(std::span<const double> v, double h) {
    return inner_product(v, v, h, Pairing::open);
}

// Fractional parts of both sides: sum_i w_i sum_{s<=j} B[i][j-s] (y_i^{s+1})^2 and
// sum_i w_i (sum_{k<=j} B[i][k]) u0_i^2 for every j.
void fractional_terms(const SolutionField& field, const KernelTable& kernel,
                      std::span<const double> weights, std::span<const double> initial,
                      std::vector<double>& lhs, std::vector<double>& rhs) {
    const Grid& grid = field.grid;
    const std::size_t levels = grid.j0;
    if (kernel.nodes() != grid.N + 1 || kernel.lags() < levels) {
        throw UsageError("energy ledger: kernel table does not match the field");
    }
    if (field.filled() != grid.j0 + 1) {
        throw UsageError("energy ledger: field is incomplete");
    }
    if (initial.size() != grid.N + 1) {
        throw UsageError("energy ledger: initial data has the wrong length");
    }
    lhs.assign(levels, 0.0);
    rhs.assign(levels, 0.0);
    std::vector<double> sq(levels);
    for (std::size_t i = 0; i <= grid.N; ++i) {
        if (weights[i] == 0.0) {
            continue;
        }
        const auto row = kernel.row(i);
        for (std::size_t s = 0; s < levels; ++s) {
            const double v = field.levels[s + 1][i];
            sq[s] = v * v;
        }
        double cumulative = 0.0;
        const double u0sq = initial[i] * initial[i];
        for (std::size_t j = 0; j < levels; ++j) {
            double acc = 0.0;
            for (std::size_t s = 0; s <= j; ++s) {
                acc += row[j - s] * sq[s];
            }
            lhs[j] += weights[i] * acc;
            cumulative += row[j];
            rhs[j] += weights[i] * cumulative * u0sq;
        }
    }
}

void check_forcing(const Grid& grid, const std::vector<std::vector<double>>& forcing) {
    if (forcing.size() < grid.j0) {
        throw UsageError("energy ledger: forcing does not cover every level");
    }
    for (const auto& f : forcing) {
        if (f.size() != grid.N + 1) {
            throw UsageError("energy ledger: forcing level has the wrong length");
        }
    }
}

std::vector<std::vector<double>> sample_forcing(const ProblemSpec& problem, const Grid& grid) {
    std::vector<std::vector<double>> forcing(grid.j0, std::vector<double>(grid.N + 1));
    for (std::size_t s = 0; s < grid.j0; ++s) {
        const double t = grid.t(s + 1);
        for (std::size_t i = 0; i <= grid.N; ++i) {
            forcing[s][i] = problem.f(grid.x(i), t);
        }
    }
    return forcing;
}

}  // namespace

EnergyLedger dirichlet_ledger(const SolutionField& field, const KernelTable& kernel,
                              const DirichletEnergyData& data) {
    const Grid& grid = field.grid;
    if (!(data.c1 > 0.0)) {
        throw InvalidProblem("dirichlet ledger: c1 must be positive");
    }
    check_forcing(grid, data.forcing);
    std::vector<double> lhs;
    std::vector<double> rhs;
    const auto weights = node_weights(grid, false);
    fractional_terms(field, kernel, weights, data.initial, lhs, rhs);

    EnergyLedger ledger;
    ledger.flavor = LedgerFlavor::dirichlet;
    const double forcing_scale = grid.l * grid.l / (2.0 * data.c1);
    double grad_sum = 0.0;
    double forcing_sum = 0.0;
    for (std::size_t j = 0; j < grid.j0; ++j) {
        grad_sum += gradient_norm2(field.levels[j + 1], grid.h) * grid.tau;
        forcing_sum += interior_norm2(data.forcing[j], grid.h) * grid.tau;
        LedgerEntry e;
        e.level = j + 1;
        e.t = grid.t(j + 1);
        e.lhs = lhs[j] + data.c1 * grad_sum;
        e.rhs = forcing_scale * forcing_sum + rhs[j];
        e.slack = e.rhs - e.lhs;
        ledger.entries.push_back(e);
    }
    return ledger;
}

EnergyLedger dirichlet_ledger(const SolutionField& field, const ProblemSpec& problem,
                              const KernelTable& kernel) {
    const auto* bc = std::get_if<DirichletBC>(&problem.bc);
    if (bc == nullptr) {
        throw NotApplicable("dirichlet ledger: problem has Robin conditions");
    }
    const Grid& grid = field.grid;
    for (std::size_t j = 1; j <= grid.j0; ++j) {
        if (bc->mu1(grid.t(j)) != 0.0 || bc->mu2(grid.t(j)) != 0.0) {
            throw NotApplicable(
                "dirichlet ledger: the estimate covers homogeneous boundary data only; "
                "use the error-problem ledger");
        }
    }
    DirichletEnergyData data;
    data.initial = sample_initial(problem, grid);
    data.forcing = sample_forcing(problem, grid);
    data.c1 = problem.c1;
    return dirichlet_ledger(field, kernel, data);
}

EnergyLedger robin_ledger(const SolutionField& field, const KernelTable& kernel,
                          const RobinEnergyData& data) {
    const Grid& grid = field.grid;
    if (!(data.beta0 > 0.0)) {
        throw InvalidProblem("robin ledger: beta0 must be positive");
    }
    if (!(data.c1 > 0.0)) {
        throw InvalidProblem("robin ledger: c1 must be positive");
    }
    check_forcing(grid, data.forcing);
    if (data.mu_tilde1.size() < grid.j0 || data.mu_tilde2.size() < grid.j0) {
        throw UsageError("robin ledger: boundary forcing does not cover every level");
    }
    std::vector<double> lhs;
    std::vector<double> rhs;
    const auto weights = node_weights(grid, true);
    fractional_terms(field, kernel, weights, data.initial, lhs, rhs);

    const double gamma1 = std::min(data.c1, data.beta0);
    const double delta1 = std::max(1.0 + grid.l, grid.l * grid.l);

    EnergyLedger ledger;
    ledger.flavor = LedgerFlavor::robin;
    double energy_sum = 0.0;
    double forcing_sum = 0.0;
    for (std::size_t j = 0; j < grid.j0; ++j) {
        const auto& y = field.levels[j + 1];
        energy_sum += (gradient_norm2(y, grid.h) + y.front() * y.front() + y.back() * y.back()) *
                      grid.tau;
        forcing_sum += (data.mu_tilde1[j] * data.mu_tilde1[j] +
                        data.mu_tilde2[j] * data.mu_tilde2[j] +
                        interior_norm2(data.forcing[j], grid.h)) *
                       grid.tau;
        LedgerEntry e;
        e.level = j + 1;
        e.t = grid.t(j + 1);
        e.lhs = lhs[j] + gamma1 * energy_sum;
        e.rhs = delta1 / gamma1 * forcing_sum + rhs[j];
        e.slack = e.rhs - e.lhs;
        ledger.entries.push_back(e);
    }
    return ledger;
}

EnergyLedger robin_ledger(const SolutionField& field, const ProblemSpec& problem,
                          const KernelTable& kernel) {
    const auto* bc = std::get_if<RobinBC>(&problem.bc);
    if (bc == nullptr) {
        throw NotApplicable("robin ledger: problem has Dirichlet conditions");
    }
    if (!problem.beta0 || !(*problem.beta0 > 0.0)) {
        throw InvalidProblem("robin ledger: beta0 must be declared and positive");
    }
    const Grid& grid = field.grid;
    RobinEnergyData data;
    data.initial = sample_initial(problem, grid);
    data.forcing = sample_forcing(problem, grid);
    data.c1 = problem.c1;
    data.beta0 = *problem.beta0;
    for (std::size_t s = 0; s < grid.j0; ++s) {
        const double t = grid.t(s + 1);
        data.mu_tilde1.push_back(bc->mu1(t) + 0.5 * grid.h * data.forcing[s].front());
        data.mu_tilde2.push_back(bc->mu2(t) + 0.5 * grid.h * data.forcing[s].back());
    }
    return robin_ledger(field, kernel, data);
}

EnergyLedger error_problem_ledger(const SolutionField& field, const ProblemSpec& problem,
                                  const KernelTable& kernel) {
    if (!problem.exact) {
        throw NotApplicable("error-problem ledger: problem has no exact solution");
    }
    const Grid& grid = field.grid;
    const SolutionField exact = sample_exact(problem, grid);

    SolutionField error;
    error.grid = grid;
    error.levels.resize(grid.j0 + 1, std::vector<double>(grid.N + 1));
    for (std::size_t j = 0; j <= grid.j0; ++j) {
        for (std::size_t i = 0; i <= grid.N; ++i) {
            error.levels[j][i] = field.levels.at(j).at(i) - exact.levels[j][i];
        }
    }
    // psi = -(defect of u); on Robin boundary rows psi_0 = 2 mu-tilde(z) / h.
    std::vector<std::vector<double>> psi(grid.j0);
    for (std::size_t s = 0; s < grid.j0; ++s) {
        psi[s] = scheme_defect(exact, problem, kernel, s + 1);
        for (double& v : psi[s]) {
            v = -v;
        }
    }
    const std::vector<double> zero_initial(grid.N + 1, 0.0);

    if (!problem.is_robin()) {
        DirichletEnergyData data;
        data.initial = zero_initial;
        data.forcing = std::move(psi);
        data.c1 = problem.c1;
        return dirichlet_ledger(error, kernel, data);
    }
    if (!problem.beta0 || !(*problem.beta0 > 0.0)) {
        throw InvalidProblem("error-problem ledger: beta0 must be declared and positive");
    }
    RobinEnergyData data;
    data.initial = zero_initial;
    data.c1 = problem.c1;
    data.beta0 = *problem.beta0;
    for (auto& level : psi) {
        data.mu_tilde1.push_back(0.5 * grid.h * level.front());
        data.mu_tilde2.push_back(0.5 * grid.h * level.back());
        level.front() = 0.0;
        level.back() = 0.0;
    }
    data.forcing = std::move(psi);
    return robin_ledger(error, kernel, data);
}

}  // namespace fracdiff
