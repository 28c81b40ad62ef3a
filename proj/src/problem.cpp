#include "fracdiff/problem.hpp"

#include "fracdiff/error.hpp"
#include "fracdiff/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace fracdiff {

namespace {

double test1_theta(int r, double x, double g) {
    const double rx = r * x;
    return (1.0 + (rx + 1.0) * g - std::cos(rx * g)) / (r + 4.0);
}

double test1_omega(int r, double x, double g) {
    const double rx = r * x;
    return (rx + 1.0 + rx * std::sin(rx * g)) * gamma_fn(3.0 - test1_theta(r, x, g)) /
           (2.0 * r + 8.0);
}

double test2_theta(int r, double x, double g) {
    return (3.0 + g + std::exp(x * (g - 3.0))) / (r * x + 14.0);
}

double test2_omega(int r, double x, double g) {
    return (1.0 + x * std::exp(x * (g - 3.0))) * gamma_fn(4.0 - test2_theta(r, x, g)) /
           (6.0 * r * x + 84.0);
}

}  // namespace

ProblemSpec builtin_test1() {
    ProblemSpec p;
    p.name = "test1";
    p.l = 1.0;
    p.T = 1.0;
    p.dist.m = 5;
    p.dist.alpha = 0.0;
    p.dist.beta = 1.0;
    p.dist.theta = test1_theta;
    p.dist.omega = test1_omega;
    p.dist.label = "test1: theta_r = (1+(rx+1)g-cos(rxg))/(r+4)";

    p.k = [](double x, double t) { return (8.0 + std::sin(t)) / (3.0 * x * x + 1.0); };
    p.q = [](double x, double t) { return 1.0 - std::sin(x * t); };
    p.f = [](double x, double t) {
        const double space = x * x * x + x + 1.0;
        double distributed = 0.0;
        for (int r = 1; r <= 5; ++r) {
            distributed += stable_powdiff_log(t, 2.0 - test1_theta(r, x, 0.0),
                                              2.0 - test1_theta(r, x, 1.0));
        }
        return distributed * space + space * (t * t + 1.0) * (1.0 - std::sin(x * t));
    };
    p.u0 = [](double x) { return x * x * x + x + 1.0; };
    p.bc = DirichletBC{
        [](double t) { return t * t + 1.0; },
        [](double t) { return 3.0 * (t * t + 1.0); },
    };
    p.c1 = 2.0;
    p.theta_max = 0.856;

    ExactSolution ex;
    ex.u = [](double x, double t) { return (x * x * x + x + 1.0) * (t * t + 1.0); };
    ex.u_x = [](double x, double t) { return (3.0 * x * x + 1.0) * (t * t + 1.0); };
    ex.separable = SeparablePolynomial{[](double x) { return x * x * x + x + 1.0; },
                                       {1.0, 0.0, 1.0}};
    ex.note = "(x^3+x+1)(t^2+1)";
    p.exact = std::move(ex);
    return p;
}

ProblemSpec builtin_test2(Test2Data data) {
    const bool corrected = data == Test2Data::corrected;
    ProblemSpec p;
    p.name = corrected ? "test2" : "test2-uncorrected";
    p.l = 1.0;
    p.T = 1.0;
    p.dist.m = 9;
    p.dist.alpha = -2.0;
    p.dist.beta = 3.0;
    p.dist.theta = test2_theta;
    p.dist.omega = test2_omega;
    p.dist.label = "test2: theta_r = (3+g+exp(x(g-3)))/(rx+14)";

    p.k = [](double x, double t) {
        return (10.0 + std::cos(2.0 * t)) / (5.0 * std::pow(x, 4) + 1.0);
    };
    p.q = [](double x, double t) { return 1.0 - std::cos(2.0 * x * t); };
    const double exponent_base = corrected ? 3.0 : 2.0;
    p.f = [exponent_base](double x, double t) {
        const double space = std::pow(x, 5) + x + 1.0;
        double distributed = 0.0;
        for (int r = 1; r <= 9; ++r) {
            distributed += stable_powdiff_log(t, exponent_base - test2_theta(r, x, -2.0),
                                              exponent_base - test2_theta(r, x, 3.0));
        }
        return distributed * space + space * (t * t * t + 1.0) * (1.0 - std::cos(2.0 * x * t));
    };
    p.u0 = [](double x) { return std::pow(x, 5) + x + 1.0; };
    RobinBC bc;
    bc.beta1 = [](double t) { return 5.0 + std::cos(2.0 * t); };
    bc.beta2 = [](double t) { return 1.0 - std::cos(2.0 * t) / 3.0; };
    if (corrected) {
        bc.mu1 = [](double t) { return -5.0 * (t * t * t + 1.0); };
    } else {
        bc.mu1 = [](double t) { return -5.0 * (t * t + 1.0); };
    }
    bc.mu2 = [](double t) { return 13.0 * (t * t * t + 1.0); };
    p.bc = bc;
    // min over [0,1]^2 of k is (10 + cos 2)/6; beta2 is smallest at t = 0.
    p.c1 = (10.0 + std::cos(2.0)) / 6.0;
    p.beta0 = 2.0 / 3.0;
    p.theta_max = 0.5;

    ExactSolution ex;
    ex.u = [](double x, double t) { return (std::pow(x, 5) + x + 1.0) * (t * t * t + 1.0); };
    ex.u_x = [](double x, double t) { return (5.0 * std::pow(x, 4) + 1.0) * (t * t * t + 1.0); };
    ex.separable = SeparablePolynomial{[](double x) { return std::pow(x, 5) + x + 1.0; },
                                       {1.0, 0.0, 0.0, 1.0}};
    ex.note = "(x^5+x+1)(t^3+1)";
    p.exact = std::move(ex);
    return p;
}

ProblemSpec builtin_homogeneous() {
    ProblemSpec p = builtin_test1();
    p.name = "test1-homogeneous";
    p.u0 = [](double x) { return std::sin(std::numbers::pi * x); };
    p.f = [](double x, double t) { return 1.0 + x * t; };
    p.bc = DirichletBC{[](double) { return 0.0; }, [](double) { return 0.0; }};
    p.exact.reset();
    return p;
}

ProblemSpec builtin_problem(const std::string& name) {
    if (name == "test1") {
        return builtin_test1();
    }
    if (name == "test2") {
        return builtin_test2(Test2Data::corrected);
    }
    if (name == "test2-uncorrected") {
        return builtin_test2(Test2Data::uncorrected);
    }
    if (name == "test1-homogeneous") {
        return builtin_homogeneous();
    }
    throw std::invalid_argument("unknown built-in problem '" + name + "'");
}

namespace {

double richardson_central(const std::function<double(double)>& fn, double x, double step) {
    const auto central = [&](double d) { return (fn(x + d) - fn(x - d)) / (2.0 * d); };
    return (4.0 * central(0.5 * step) - central(step)) / 3.0;
}

// Caputo derivative of order theta of t -> u(x, t) by the substitution s = (t - eta)^{1-theta},
// which removes the weak singularity: (1/Gamma(2-theta)) int_0^{t^{1-theta}} u_t(t - s^{1/(1-theta)}) ds.
double numeric_caputo(const SpaceTimeFn& u, double x, double t, double theta) {
    static const GammaQuadrature unit = build_quadrature(0.0, 1.0, 128);
    const double a = 1.0 - theta;
    const double upper = std::pow(t, a);
    const double dt = 1e-4 * std::max(t, 1e-3);
    double sum = 0.0;
    for (std::size_t q = 0; q < unit.size(); ++q) {
        const double s = upper * unit.nodes[q];
        const double eta = t - std::pow(s, 1.0 / a);
        double ut;
        if (eta > dt) {
            ut = richardson_central([&](double tt) { return u(x, tt); }, eta, dt);
        } else {
            // one-sided second order near the origin
            const double e = std::max(eta, 0.0);
            ut = (-3.0 * u(x, e) + 4.0 * u(x, e + dt) - u(x, e + 2.0 * dt)) / (2.0 * dt);
        }
        sum += unit.weights[q] * ut;
    }
    return upper * sum / gamma_fn(2.0 - theta);
}

double caputo_of_exact(const ExactSolution& exact, double x, double t, double theta) {
    if (exact.separable) {
        const auto& sep = *exact.separable;
        double value = 0.0;
        for (std::size_t p = 1; p < sep.time_coeffs.size(); ++p) {
            if (sep.time_coeffs[p] != 0.0) {
                value += sep.time_coeffs[p] *
                         caputo_exact_power(static_cast<double>(p), theta, t);
            }
        }
        return sep.space(x) * value;
    }
    return numeric_caputo(exact.u, x, t, theta);
}

}  // namespace

double mms_flux_derivative(const ExactSolution& exact, const SpaceTimeFn& k, double x, double t,
                           double length) {
    const double step = 1e-3 * length;
    std::function<double(double)> flux;
    if (exact.u_x) {
        flux = [&](double xi) { return k(xi, t) * exact.u_x(xi, t); };
    } else {
        flux = [&](double xi) {
            return k(xi, t) *
                   richardson_central([&](double z) { return exact.u(z, t); }, xi, step);
        };
    }
    return richardson_central(flux, x, step);
}

double mms_source(const ExactSolution& exact, const ProblemSpec& spec, double x, double t,
                  const GammaQuadrature& quad) {
    if (!(t > 0.0)) {
        throw DomainError("mms_source: t must be positive");
    }
    double distributed = 0.0;
    for (std::size_t q = 0; q < quad.size(); ++q) {
        const double g = quad.nodes[q];
        double terms = 0.0;
        for (int r = 1; r <= spec.dist.m; ++r) {
            const double omega = spec.dist.omega(r, x, g);
            if (omega != 0.0) {
                terms += omega * caputo_of_exact(exact, x, t, spec.dist.theta(r, x, g));
            }
        }
        distributed += quad.weights[q] * terms;
    }
    const double flux = mms_flux_derivative(exact, spec.k, x, t, spec.l);
    return distributed - flux + spec.q(x, t) * exact.u(x, t);
}

void ValidationReport::add(std::string message) {
    valid = false;
    ++violation_count;
    if (violations.size() < 100) {
        violations.push_back(std::move(message));
    }
}

ValidationReport validate_problem(const ProblemSpec& spec, const Grid& grid,
                                  const GammaQuadrature& quad) {
    ValidationReport report;
    const auto at = [](const char* what, double x, double t, double value) {
        std::ostringstream s;
        s << what << " at (x=" << x << ", t=" << t << "): " << value;
        return s.str();
    };

    if (!(spec.c1 > 0.0)) {
        report.add("declared c1 must be positive");
    }
    const double c1_guard = spec.c1 - 1e-12 * std::abs(spec.c1);
    double k_min = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j <= grid.j0; ++j) {
        const double t = grid.t(j);
        for (std::size_t i = 0; i <= grid.N; ++i) {
            const double x = grid.x(i);
            for (const double xs : {x, x - 0.5 * grid.h}) {
                if (xs < 0.0) {
                    continue;
                }
                const double kv = spec.k(xs, t);
                k_min = std::min(k_min, kv);
                if (!(kv >= c1_guard)) {
                    report.add(at("k below declared c1", xs, t, kv));
                }
            }
            const double qv = spec.q(x, t);
            if (!(qv >= 0.0)) {
                report.add(at("q negative", x, t, qv));
            }
            if (j > 0 && !std::isfinite(spec.f(x, t))) {
                report.add(at("f not finite", x, t, spec.f(x, t)));
            }
        }
    }
    report.inferred_c1 = k_min - 1e-12;

    for (std::size_t i = 0; i <= grid.N; ++i) {
        try {
            spec.dist.validate_at(grid.x(i), quad);
        } catch (const InvalidDistribution& e) {
            report.add(e.what());
        }
    }
    report.sampled_theta_max = spec.dist.sampled_theta_max(spec.l);

    if (const auto* robin = std::get_if<RobinBC>(&spec.bc)) {
        if (!spec.beta0 || !(*spec.beta0 > 0.0)) {
            report.add("Robin problem needs a declared beta0 > 0");
        }
        const double beta0 = spec.beta0.value_or(0.0);
        const double guard = beta0 - 1e-12 * std::abs(beta0);
        double b_min = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j <= grid.j0; ++j) {
            const double t = grid.t(j);
            const struct {
                const char* label;
                const TimeFn* fn;
                double x;
            } sides[] = {{"beta1 below beta0", &robin->beta1, 0.0},
                         {"beta2 below beta0", &robin->beta2, spec.l}};
            for (const auto& side : sides) {
                const double b = (*side.fn)(t);
                b_min = std::min(b_min, b);
                if (!(b >= guard) || !(b > 0.0)) {
                    report.add(at(side.label, side.x, t, b));
                }
            }
        }
        report.inferred_beta0 = b_min - 1e-12;
    } else {
        const auto& dir = std::get<DirichletBC>(spec.bc);
        const auto mismatch = [](double a, double b) {
            return std::abs(a - b) > 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
        };
        if (mismatch(spec.u0(0.0), dir.mu1(0.0))) {
            report.add(at("u0 incompatible with mu1", 0.0, 0.0, spec.u0(0.0) - dir.mu1(0.0)));
        }
        if (mismatch(spec.u0(spec.l), dir.mu2(0.0))) {
            report.add(
                at("u0 incompatible with mu2", spec.l, 0.0, spec.u0(spec.l) - dir.mu2(0.0)));
        }
    }
    return report;
}

}  // namespace fracdiff
