#include "fracdiff/special.hpp"

#include "fracdiff/error.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace fracdiff {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoeffs = {
    0.99999999999980993,   676.5203681218851,      -1259.1392167224028,
    771.32342877765313,    -176.61502916214059,    12.507343278686905,
    -0.13857109526572012,  9.9843695780195716e-6,  1.5056327351493116e-7,
};

// Valid for x >= 0.5.
double lanczos_gamma(double x) {
    const double z = x - 1.0;
    double sum = kLanczosCoeffs[0];
    for (std::size_t i = 1; i < kLanczosCoeffs.size(); ++i) {
        sum += kLanczosCoeffs[i] / (z + static_cast<double>(i));
    }
    const double t = z + kLanczosG + 0.5;
    // t^(z+0.5) split in two halves so large arguments do not overflow early.
    const double half_pow = std::pow(t, 0.5 * (z + 0.5));
    return std::sqrt(2.0 * std::numbers::pi) * half_pow * (half_pow * std::exp(-t)) * sum;
}

}  // namespace

double gamma_fn(double x) {
    if (!(x > 0.0)) {
        throw DomainError("gamma_fn: argument must be positive, got " + std::to_string(x));
    }
    if (x < 0.5) {
        return std::numbers::pi / (std::sin(std::numbers::pi * x) * lanczos_gamma(1.0 - x));
    }
    return lanczos_gamma(x);
}

double stable_powdiff_log(double t, double a, double b) {
    if (!(t > 0.0) || t > 1.0) {
        throw DomainError("stable_powdiff_log: t must lie in (0, 1]");
    }
    const double log_t = std::log(t);
    if (std::abs(log_t) < 1e-6) {
        const double z = (a - b) * log_t;
        const double phi = (z == 0.0) ? 1.0 : std::expm1(z) / z;
        return (a - b) * std::pow(t, b) * phi;
    }
    return (std::pow(t, a) - std::pow(t, b)) / log_t;
}

double caputo_exact_power(double p, double theta, double t) {
    if (!(theta < 1.0) || theta < 0.0) {
        throw DomainError("caputo_exact_power: order must lie in [0, 1)");
    }
    if (p < 0.0) {
        throw DomainError("caputo_exact_power: exponent must be nonnegative");
    }
    if (t < 0.0) {
        throw DomainError("caputo_exact_power: time must be nonnegative");
    }
    if (p == 0.0) {
        return 0.0;
    }
    return gamma_fn(p + 1.0) / gamma_fn(p + 1.0 - theta) * std::pow(t, p - theta);
}

}  // namespace fracdiff
