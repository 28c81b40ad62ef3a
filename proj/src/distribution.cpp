#include "fracdiff/distribution.hpp"

#include "fracdiff/error.hpp"
#include "fracdiff/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fracdiff {

double OrderDistribution::sampled_theta_max(double length, int samples_x,
                                            int samples_gamma) const {
    double best = -1.0;
    for (int r = 1; r <= m; ++r) {
        for (int a = 0; a < samples_x; ++a) {
            const double x = length * a / (samples_x - 1);
            for (int b = 0; b < samples_gamma; ++b) {
                const double g = alpha + (beta - alpha) * b / (samples_gamma - 1);
                best = std::max(best, theta(r, x, g));
            }
        }
    }
    return best;
}

double OrderDistribution::mass_at(double x, const GammaQuadrature& quad) const {
    double mass = 0.0;
    for (std::size_t q = 0; q < quad.size(); ++q) {
        double sum = 0.0;
        for (int r = 1; r <= m; ++r) {
            sum += omega(r, x, quad.nodes[q]);
        }
        mass += quad.weights[q] * sum;
    }
    return mass;
}

void OrderDistribution::validate_at(double x, const GammaQuadrature& quad) const {
    if (m < 1) {
        throw InvalidDistribution("order distribution needs at least one term");
    }
    if (!(alpha < beta)) {
        throw InvalidDistribution("order distribution needs alpha < beta");
    }
    for (int r = 1; r <= m; ++r) {
        for (double g : quad.nodes) {
            const double th = theta(r, x, g);
            const double om = omega(r, x, g);
            if (!(th >= 0.0 && th < 1.0)) {
                std::ostringstream msg;
                msg << "order theta_" << r << "(" << x << ", " << g << ") = " << th
                    << " outside [0, 1)";
                throw InvalidDistribution(msg.str());
            }
            if (!(om >= 0.0) || !std::isfinite(om)) {
                std::ostringstream msg;
                msg << "weight omega_" << r << "(" << x << ", " << g << ") = " << om
                    << " is negative or not finite";
                throw InvalidDistribution(msg.str());
            }
        }
    }
    if (!(mass_at(x, quad) > 0.0)) {
        std::ostringstream msg;
        msg << "distribution has no mass at x = " << x;
        throw InvalidDistribution(msg.str());
    }
}

OrderDistribution constant_order(double theta, double alpha, double beta) {
    OrderDistribution dist;
    dist.m = 1;
    dist.alpha = alpha;
    dist.beta = beta;
    const double weight = 1.0 / (beta - alpha);
    dist.theta = [theta](int, double, double) { return theta; };
    dist.omega = [weight](int, double, double) { return weight; };
    std::ostringstream label;
    label << "constant order " << theta;
    dist.label = label.str();
    return dist;
}

}  // namespace fracdiff
