#pragma once

#include <functional>
#include <string>

namespace fracdiff {

struct GammaQuadrature;

/// Order/weight functions of one term, evaluated at (term index r, position x, gamma).
using TermFunction = std::function<double(int r, double x, double gamma)>;

/// Multi-term, variable, distributed order operator data: m terms with orders theta_r(x, gamma)
/// and weights omega_r(x, gamma) integrated over gamma in [alpha, beta]. Terms are 1-based.
struct OrderDistribution {
    int m = 1;
    double alpha = 0.0;
    double beta = 1.0;
    TermFunction theta;
    TermFunction omega;
    std::string label;

    /// Largest order sampled over r = 1..m, x in `samples_x` points on [0, length] and
    /// `samples_gamma` points on [alpha, beta] (endpoints included).
    double sampled_theta_max(double length, int samples_x = 201, int samples_gamma = 201) const;

    /// Quadrature of sum_r omega_r(x, .) over [alpha, beta].
    double mass_at(double x, const GammaQuadrature& quad) const;

    /// Throws InvalidDistribution when alpha >= beta, m < 1, or a sampled order/weight at
    /// the quadrature nodes over x breaks 0 <= theta < 1, omega >= 0, or the mass is not positive.
    void validate_at(double x, const GammaQuadrature& quad) const;
};

/// Single term with constant order and weight 1/(beta - alpha) on [alpha, beta]; the
/// gamma-integral then reduces to the plain Caputo derivative of that order.
OrderDistribution constant_order(double theta, double alpha = 0.0, double beta = 1.0);

}  // namespace fracdiff
