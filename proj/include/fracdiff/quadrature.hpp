#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace fracdiff {

/// Gauss-Legendre rule on [alpha, beta] for integrals over the distribution variable.
struct GammaQuadrature {
    double alpha = 0.0;
    double beta = 1.0;
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const noexcept { return nodes.size(); }

    double integrate(const std::function<double(double)>& fn) const;
};

/// P-point Gauss-Legendre rule mapped to [alpha, beta]; exact for polynomials of degree
/// 2P - 1. Requires alpha < beta and P >= 2.
GammaQuadrature build_quadrature(double alpha, double beta, std::size_t points);

}  // namespace fracdiff
