#include "fracdiff/kernel.hpp"

#include "fracdiff/error.hpp"
#include "fracdiff/parallel.hpp"
#include "fracdiff/special.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fracdiff {

double power_increment(std::size_t k, double a) {
    if (k == 0) {
        return 1.0;
    }
    const double kd = static_cast<double>(k);
    return std::pow(kd, a) * std::expm1(a * std::log1p(1.0 / kd));
}

std::vector<double> l1_weights(double theta, double tau, std::size_t j) {
    if (!(theta >= 0.0 && theta < 1.0)) {
        throw DomainError("l1_weights: order must lie in [0, 1)");
    }
    if (!(tau > 0.0)) {
        throw UsageError("l1_weights: time step must be positive");
    }
    const double scale = std::pow(tau, -theta) / gamma_fn(2.0 - theta);
    std::vector<double> w(j + 1);
    for (std::size_t k = 0; k <= j; ++k) {
        w[k] = power_increment(k, 1.0 - theta) * scale;
    }
    return w;
}

KernelTable::KernelTable(std::size_t nodes, std::size_t lags, double tau,
                         std::vector<double> data, std::string built_with)
    : nodes_(nodes), lags_(lags), tau_(tau), data_(std::move(data)),
      built_with_(std::move(built_with)) {
    if (data_.size() != nodes_ * lags_) {
        throw UsageError("KernelTable: data size does not match nodes x lags");
    }
}

bool KernelTable::satisfies_invariants() const {
    for (std::size_t i = 0; i < nodes_; ++i) {
        const auto r = row(i);
        if (lags_ > 0 && !(r[0] > 0.0)) {
            return false;
        }
        for (std::size_t k = 0; k < lags_; ++k) {
            if (r[k] < 0.0 || (k + 1 < lags_ && r[k + 1] > r[k])) {
                return false;
            }
        }
    }
    return true;
}

namespace {

// Accumulates one row; log terms of the lag grid are shared across (r, gamma).
void fill_row(const OrderDistribution& dist, double x, double tau, const GammaQuadrature& quad,
              std::span<const double> log_k, std::span<const double> log1p_inv_k,
              std::span<double> out) {
    dist.validate_at(x, quad);
    std::fill(out.begin(), out.end(), 0.0);
    const double log_tau = std::log(tau);
    for (std::size_t q = 0; q < quad.size(); ++q) {
        const double g = quad.nodes[q];
        for (int r = 1; r <= dist.m; ++r) {
            const double omega = dist.omega(r, x, g);
            if (omega == 0.0) {
                continue;
            }
            const double theta = dist.theta(r, x, g);
            const double a = 1.0 - theta;
            const double coef =
                quad.weights[q] * omega * std::exp(a * log_tau) / gamma_fn(2.0 - theta);
            out[0] += coef;
            for (std::size_t k = 1; k < out.size(); ++k) {
                out[k] += coef * std::exp(a * log_k[k]) * std::expm1(a * log1p_inv_k[k]);
            }
        }
    }
}

struct LagLogs {
    std::vector<double> log_k;
    std::vector<double> log1p_inv_k;

    explicit LagLogs(std::size_t lags) : log_k(lags, 0.0), log1p_inv_k(lags, 0.0) {
        for (std::size_t k = 1; k < lags; ++k) {
            const double kd = static_cast<double>(k);
            log_k[k] = std::log(kd);
            log1p_inv_k[k] = std::log1p(1.0 / kd);
        }
    }
};

std::string describe(const GammaQuadrature& quad) {
    std::ostringstream s;
    s << "gauss-legendre P=" << quad.size() << " on [" << quad.alpha << ", " << quad.beta << "]";
    return s.str();
}

}  // namespace

std::vector<double> build_kernel_row(const OrderDistribution& dist, double x, double tau,
                                     std::size_t lags, const GammaQuadrature& quad) {
    if (!(tau > 0.0)) {
        throw UsageError("build_kernel_row: time step must be positive");
    }
    const LagLogs logs(lags);
    std::vector<double> out(lags);
    fill_row(dist, x, tau, quad, logs.log_k, logs.log1p_inv_k, out);
    return out;
}

KernelTable build_kernel_table(const OrderDistribution& dist, std::span<const double> x_nodes,
                               double tau, std::size_t j0, const GammaQuadrature& quad,
                               unsigned workers) {
    if (!(tau > 0.0)) {
        throw UsageError("build_kernel_table: time step must be positive");
    }
    if (j0 < 1) {
        throw UsageError("build_kernel_table: at least one time step is required");
    }
    const LagLogs logs(j0);
    std::vector<double> data(x_nodes.size() * j0);
    parallel_for(0, x_nodes.size(), workers, [&](std::size_t i) {
        fill_row(dist, x_nodes[i], tau, quad, logs.log_k, logs.log1p_inv_k,
                 std::span<double>(data.data() + i * j0, j0));
    });
    return KernelTable(x_nodes.size(), j0, tau, std::move(data), describe(quad));
}

double quadrature_refinement_drift(const OrderDistribution& dist,
                                   std::span<const double> x_nodes, double tau,
                                   std::size_t j0, std::size_t points) {
    const auto coarse = build_kernel_table(
        dist, x_nodes, tau, j0, build_quadrature(dist.alpha, dist.beta, points));
    const auto fine = build_kernel_table(
        dist, x_nodes, tau, j0, build_quadrature(dist.alpha, dist.beta, 2 * points));
    double drift = 0.0;
    for (std::size_t n = 0; n < coarse.data().size(); ++n) {
        const double a = coarse.data()[n];
        const double b = fine.data()[n];
        const double scale = std::max(std::abs(a), std::abs(b));
        if (scale > 0.0) {
            drift = std::max(drift, std::abs(a - b) / scale);
        }
    }
    return drift;
}

double apply_distributed_l1(std::span<const double> row, std::span<const double> history,
                            double tau) {
    if (history.size() < 2) {
        throw UsageError("apply_distributed_l1: history needs at least two levels");
    }
    const std::size_t j = history.size() - 2;
    if (row.size() < j + 1) {
        throw UsageError("apply_distributed_l1: kernel row shorter than the history");
    }
    double sum = 0.0;
    for (std::size_t s = 0; s <= j; ++s) {
        sum += row[j - s] * (history[s + 1] - history[s]);
    }
    return sum / tau;
}

double lemma2_gap(std::span<const double> row, std::span<const double> history, double tau) {
    if (history.size() < 2) {
        throw UsageError("lemma2_gap: history needs at least two levels");
    }
    const std::size_t j = history.size() - 2;
    if (row.size() < j + 1) {
        throw UsageError("lemma2_gap: kernel row shorter than the history");
    }
    // Per-increment form of v^{j+1} * sum B dv - 1/2 sum B d(v^2).
    const double last = history[j + 1];
    double sum = 0.0;
    for (std::size_t s = 0; s <= j; ++s) {
        const double dv = history[s + 1] - history[s];
        sum += row[j - s] * dv * (last - 0.5 * (history[s + 1] + history[s]));
    }
    return sum / tau;
}

}  // namespace fracdiff
