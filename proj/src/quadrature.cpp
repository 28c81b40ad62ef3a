#include "fracdiff/quadrature.hpp"

#include "fracdiff/error.hpp"

#include <cmath>
#include <numbers>

namespace fracdiff {

double GammaQuadrature::integrate(const std::function<double(double)>& fn) const {
    double sum = 0.0;
    for (std::size_t q = 0; q < nodes.size(); ++q) {
        sum += weights[q] * fn(nodes[q]);
    }
    return sum;
}

GammaQuadrature build_quadrature(double alpha, double beta, std::size_t points) {
    if (!(alpha < beta)) {
        throw UsageError("build_quadrature: alpha must be smaller than beta");
    }
    if (points < 2) {
        throw UsageError("build_quadrature: at least two nodes are required");
    }

    GammaQuadrature quad;
    quad.alpha = alpha;
    quad.beta = beta;
    quad.nodes.resize(points);
    quad.weights.resize(points);

    const double mid = 0.5 * (beta + alpha);
    const double half = 0.5 * (beta - alpha);
    const std::size_t n = points;
    const std::size_t pairs = (n + 1) / 2;

    // Newton iteration on P_n from the Chebyshev-like initial guess; roots are symmetric.
    for (std::size_t i = 0; i < pairs; ++i) {
        double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = 0.0;
            for (std::size_t k = 1; k <= n; ++k) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * static_cast<double>(k) - 1.0) * z * p1 -
                      (static_cast<double>(k) - 1.0) * p2) /
                     static_cast<double>(k);
            }
            dp = static_cast<double>(n) * (z * p0 - p1) / (z * z - 1.0);
            const double step = p0 / dp;
            z -= step;
            if (std::abs(step) < 1e-16) {
                break;
            }
        }
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        quad.nodes[i] = mid - half * z;
        quad.nodes[n - 1 - i] = mid + half * z;
        quad.weights[i] = half * w;
        quad.weights[n - 1 - i] = half * w;
    }
    return quad;
}

}  // namespace fracdiff
