#include "fracdiff/oracle.hpp"

#include "fracdiff/error.hpp"

#include <cmath>
#include <utility>

namespace fracdiff::oracle {

std::vector<double> dense_solve(DenseMatrix a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) {
                pivot = r;
            }
        }
        if (a[pivot][col] == 0.0) {
            throw SingularSystem("dense_solve: singular matrix", col);
        }
        std::swap(a[pivot], a[col]);
        std::swap(b[pivot], b[col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double factor = a[r][col] / a[col][col];
            if (factor == 0.0) {
                continue;
            }
            for (std::size_t c = col; c < n; ++c) {
                a[r][c] -= factor * a[col][c];
            }
            b[r] -= factor * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t r = n; r-- > 0;) {
        double acc = b[r];
        for (std::size_t c = r + 1; c < n; ++c) {
            acc -= a[r][c] * x[c];
        }
        x[r] = acc / a[r][r];
    }
    return x;
}

namespace {

/// c[k] = sum over gamma nodes and terms of omega * (t_{k+1}^{1-theta} - t_k^{1-theta})
/// / Gamma(2-theta), where t_k = k tau.
std::vector<double> memory_weights(const OrderDistribution& dist, double x, double tau,
                                   std::size_t lags, const GammaQuadrature& quad) {
    std::vector<double> c(lags, 0.0);
    for (std::size_t q = 0; q < quad.size(); ++q) {
        const double g = quad.nodes[q];
        for (int r = 1; r <= dist.m; ++r) {
            const double theta = dist.theta(r, x, g);
            const double w = quad.weights[q] * dist.omega(r, x, g) / std::tgamma(2.0 - theta);
            for (std::size_t k = 0; k < lags; ++k) {
                const double tk = static_cast<double>(k) * tau;
                c[k] += w * (std::pow(tk + tau, 1.0 - theta) - std::pow(tk, 1.0 - theta));
            }
        }
    }
    return c;
}

}  // namespace

std::vector<std::vector<double>> dense_march(const ProblemSpec& problem, const Grid& grid,
                                             const GammaQuadrature& quad) {
    const std::size_t N = grid.N;
    const double h = grid.h;
    const double tau = grid.tau;

    std::vector<std::vector<double>> c(N + 1);
    for (std::size_t i = 0; i <= N; ++i) {
        c[i] = memory_weights(problem.dist, grid.x(i), tau, grid.j0, quad);
    }

    std::vector<std::vector<double>> y;
    std::vector<double> y0(N + 1);
    for (std::size_t i = 0; i <= N; ++i) {
        y0[i] = problem.u0(grid.x(i));
    }
    y.push_back(std::move(y0));

    for (std::size_t level = 1; level <= grid.j0; ++level) {
        const double t = grid.t(level);
        const std::size_t j = level - 1;
        DenseMatrix a(N + 1, std::vector<double>(N + 1, 0.0));
        std::vector<double> b(N + 1, 0.0);

        // Operator rows: (1/tau) sum_s c[j-s] (y^{s+1} - y^s) - Lambda y^{level} = phi.
        // Everything except the c[0] y^{level} part goes to the right side.
        auto memory = [&](std::size_t i) {
            double acc = -c[i][0] * y[j][i];
            for (std::size_t s = 0; s < j; ++s) {
                acc += c[i][j - s] * (y[s + 1][i] - y[s][i]);
            }
            return acc / tau;
        };
        auto flux_coeff = [&](std::size_t i) { return problem.k(grid.x(i) - 0.5 * h, t); };

        for (std::size_t i = 1; i < N; ++i) {
            const double aw = flux_coeff(i);
            const double ae = flux_coeff(i + 1);
            const double x = grid.x(i);
            a[i][i - 1] = -aw / (h * h);
            a[i][i + 1] = -ae / (h * h);
            a[i][i] = c[i][0] / tau + (aw + ae) / (h * h) + problem.q(x, t);
            b[i] = problem.f(x, t) - memory(i);
        }

        if (const auto* d = std::get_if<DirichletBC>(&problem.bc)) {
            a[0][0] = 1.0;
            b[0] = d->mu1(t);
            a[N][N] = 1.0;
            b[N] = d->mu2(t);
        } else {
            // Boundary operator at x_0: (a_1 (y_1 - y_0)/h - beta1~ y_0) / (h/2), and its mirror
            // at x_N; the half-cell reaction and source enter beta~ and mu~.
            const auto& r = std::get<RobinBC>(problem.bc);
            const double a1 = flux_coeff(1);
            const double aN = flux_coeff(N);
            const double x0 = grid.x(0);
            const double xN = grid.x(N);
            const double bt1 = r.beta1(t) + 0.5 * h * problem.q(x0, t);
            const double bt2 = r.beta2(t) + 0.5 * h * problem.q(xN, t);
            const double mt1 = r.mu1(t) + 0.5 * h * problem.f(x0, t);
            const double mt2 = r.mu2(t) + 0.5 * h * problem.f(xN, t);
            a[0][0] = c[0][0] / tau + (a1 / h + bt1) * 2.0 / h;
            a[0][1] = -(a1 / h) * 2.0 / h;
            b[0] = 2.0 * mt1 / h - memory(0);
            a[N][N] = c[N][0] / tau + (aN / h + bt2) * 2.0 / h;
            a[N][N - 1] = -(aN / h) * 2.0 / h;
            b[N] = 2.0 * mt2 / h - memory(N);
        }
        y.push_back(dense_solve(std::move(a), std::move(b)));
    }
    return y;
}

}  // namespace fracdiff::oracle
