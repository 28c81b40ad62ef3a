#pragma once

#include "fracdiff/kernel.hpp"
#include "fracdiff/problem.hpp"
#include "fracdiff/scheme.hpp"

#include <cstddef>
#include <vector>

namespace fracdiff {

enum class LedgerFlavor { dirichlet, robin };

/// Both sides of the discrete a priori estimate after level `level` (= j+1).
struct LedgerEntry {
    std::size_t level = 0;
    double t = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;  ///< rhs - lhs
};

struct EnergyLedger {
    LedgerFlavor flavor = LedgerFlavor::dirichlet;
    std::vector<LedgerEntry> entries;

    /// Entries with slack < -rel_tol * rhs.
    std::size_t violations(double rel_tol = 1e-10) const;
    /// min over entries of slack / max(rhs, tiny); 0 for an empty ledger.
    double worst_relative_slack() const;
};

/// Forcing of a homogeneous Dirichlet problem: interior values phi^{s+1} per level s+1 = 1..j0
/// (entry s holds level s+1) plus the initial data.
struct DirichletEnergyData {
    std::vector<double> initial;
    std::vector<std::vector<double>> forcing;
    double c1 = 0.0;
};

/// Robin forcing: interior phi^{s+1}, boundary mu-tilde values, bounds c1 and beta0.
struct RobinEnergyData {
    std::vector<double> initial;
    std::vector<std::vector<double>> forcing;
    std::vector<double> mu_tilde1;
    std::vector<double> mu_tilde2;
    double c1 = 0.0;
    double beta0 = 0.0;
};

/// Homogeneous-Dirichlet estimate, per level j+1:
///   lhs = sum_i h sum_{s<=j} B[i][j-s] (y_i^{s+1})^2 + c1 tau sum_{s<=j} ||y_xbar^{s+1}]|^2
///   rhs = l^2/(2 c1) tau sum_{s<=j} ||phi^{s+1}||^2 + sum_i h (sum_{k<=j} B[i][k]) u0_i^2
/// with interior pairings. The B-sums are the gamma-quadratures of the L1 coefficients.
EnergyLedger dirichlet_ledger(const SolutionField& field, const KernelTable& kernel,
                              const DirichletEnergyData& data);

/// Same estimate for a marched Dirichlet problem. Throws NotApplicable when mu1 or mu2 is
/// nonzero at some level (use error_problem_ledger then).
EnergyLedger dirichlet_ledger(const SolutionField& field, const ProblemSpec& problem,
                              const KernelTable& kernel);

/// Robin estimate with gamma1 = min(c1, beta0), delta1 = max(1 + l, l^2) and the
/// boundary-weighted pairing for the fractional terms.
EnergyLedger robin_ledger(const SolutionField& field, const KernelTable& kernel,
                          const RobinEnergyData& data);

/// Robin estimate for a marched Robin problem. Throws InvalidProblem when beta0 <= 0.
EnergyLedger robin_ledger(const SolutionField& field, const ProblemSpec& problem,
                          const KernelTable& kernel);

/// Estimate applied to the error z = y - u, which solves the scheme with homogeneous data,
/// zero initial values and forcing psi = phi + Lambda u - P(Delta)u. Requires problem.exact.
EnergyLedger error_problem_ledger(const SolutionField& field, const ProblemSpec& problem,
                                  const KernelTable& kernel);

}  // namespace fracdiff
