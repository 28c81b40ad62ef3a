#pragma once

#include "fracdiff/distribution.hpp"
#include "fracdiff/quadrature.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace fracdiff {

/// L1 weights of a single Caputo derivative of order theta at level j+1. Entry k (the lag)
/// multiplies the increment u^{s+1} - u^s with k = j - s:
///   ((k+1)^{1-theta} - k^{1-theta}) tau^{-theta} / Gamma(2 - theta).
std::vector<double> l1_weights(double theta, double tau, std::size_t j);

/// (k+1)^a - k^a without cancellation for large k.
double power_increment(std::size_t k, double a);

/// Distributed L1 weights B[i][k] per space node i and lag k:
///   B[i][k] = int dgamma sum_r omega_r(x_i, gamma) tau^{1-theta_r} ((k+1)^{1-theta_r} - k^{1-theta_r})
///             / Gamma(2 - theta_r),
/// so that the discrete operator is (1/tau) sum_s B[i][j-s] (v^{s+1} - v^s).
/// Immutable once built.
class KernelTable {
public:
    KernelTable(std::size_t nodes, std::size_t lags, double tau, std::vector<double> data,
                std::string built_with);

    std::size_t nodes() const noexcept { return nodes_; }
    std::size_t lags() const noexcept { return lags_; }
    double tau() const noexcept { return tau_; }
    const std::string& built_with() const noexcept { return built_with_; }

    double operator()(std::size_t i, std::size_t k) const { return data_[i * lags_ + k]; }
    std::span<const double> row(std::size_t i) const {
        return {data_.data() + i * lags_, lags_};
    }
    std::span<const double> data() const noexcept { return data_; }

    /// B >= 0, B[i][0] > 0 and non-increasing in the lag for every node.
    bool satisfies_invariants() const;

private:
    std::size_t nodes_;
    std::size_t lags_;
    double tau_;
    std::vector<double> data_;
    std::string built_with_;
};

/// One row of the table at position x with `lags` entries.
std::vector<double> build_kernel_row(const OrderDistribution& dist, double x, double tau,
                                     std::size_t lags, const GammaQuadrature& quad);

/// Table over `x_nodes` for lags 0..j0-1. Rows are independent and may be built by
/// `workers` threads. Throws InvalidDistribution when a node has no mass.
KernelTable build_kernel_table(const OrderDistribution& dist, std::span<const double> x_nodes,
                               double tau, std::size_t j0, const GammaQuadrature& quad,
                               unsigned workers = 1);

/// Largest entrywise relative change between tables built with P and 2P Gauss nodes.
double quadrature_refinement_drift(const OrderDistribution& dist,
                                   std::span<const double> x_nodes, double tau,
                                   std::size_t j0, std::size_t points);

/// (1/tau) sum_{s=0}^{j} row[j-s] (v^{s+1} - v^s) for history v^0..v^{j+1}.
double apply_distributed_l1(std::span<const double> row, std::span<const double> history,
                            double tau);

/// v^{j+1} * P(Delta)v - 1/2 * P(Delta)(v^2). Nonnegative whenever the row is nonnegative and
/// non-increasing in the lag.
double lemma2_gap(std::span<const double> row, std::span<const double> history, double tau);

}  // namespace fracdiff
