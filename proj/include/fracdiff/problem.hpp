#pragma once

#include "fracdiff/distribution.hpp"
#include "fracdiff/grid.hpp"
#include "fracdiff/quadrature.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace fracdiff {

using SpaceTimeFn = std::function<double(double x, double t)>;
using SpaceFn = std::function<double(double x)>;
using TimeFn = std::function<double(double t)>;

/// u(0, t) = mu1(t), u(l, t) = mu2(t).
struct DirichletBC {
    TimeFn mu1;
    TimeFn mu2;
};

/// k(0,t) u_x(0,t) = beta1(t) u(0,t) - mu1(t),  -k(l,t) u_x(l,t) = beta2(t) u(l,t) - mu2(t).
struct RobinBC {
    TimeFn beta1;
    TimeFn beta2;
    TimeFn mu1;
    TimeFn mu2;
};

using BoundaryCondition = std::variant<DirichletBC, RobinBC>;

/// u(x, t) = X(x) * sum_p coeffs[p] t^p.
struct SeparablePolynomial {
    SpaceFn space;
    std::vector<double> time_coeffs;
};

struct ExactSolution {
    SpaceTimeFn u;
    SpaceTimeFn u_x;  ///< may be empty; the MMS flux then differences u twice
    std::optional<SeparablePolynomial> separable;
    std::string note;
};

/// P u = (k u_x)_x - q u + f on (0, l) x (0, T] with u(x, 0) = u0(x).
struct ProblemSpec {
    std::string name;
    double l = 1.0;
    double T = 1.0;
    OrderDistribution dist;
    SpaceTimeFn k;
    SpaceTimeFn q;
    SpaceTimeFn f;
    SpaceFn u0;
    BoundaryCondition bc;
    double c1 = 0.0;                ///< declared lower bound of k
    std::optional<double> beta0;    ///< declared lower bound of beta1, beta2 (Robin)
    std::optional<ExactSolution> exact;
    std::optional<double> theta_max;  ///< declared max order, used to couple tau to h

    bool is_robin() const noexcept { return std::holds_alternative<RobinBC>(bc); }
};

/// Dirichlet problem on [0,1] with five terms on gamma in [0,1] and exact solution
/// (x^3 + x + 1)(t^2 + 1).
ProblemSpec builtin_test1();

enum class Test2Data {
    corrected,    ///< mu1 = -5(t^3+1), source exponents 3 - theta_r
    uncorrected,  ///< mu1 = -5(t^2+1), source exponents 2 - theta_r (inconsistent with u)
};

/// Robin problem on [0,1] with nine terms on gamma in [-2,3] and exact solution
/// (x^5 + x + 1)(t^3 + 1).
ProblemSpec builtin_test2(Test2Data data = Test2Data::corrected);

/// Test-1 coefficients and orders with zero boundary data, u0 = sin(pi x) and f = 1 + x t.
/// No exact solution; used for the homogeneous-data energy estimate.
ProblemSpec builtin_homogeneous();

/// Looks up "test1", "test2", "test2-uncorrected" or "test1-homogeneous".
/// Throws std::invalid_argument otherwise.
ProblemSpec builtin_problem(const std::string& name);

/// Source term that makes `exact` solve the problem: P u - (k u_x)_x + q u, with the
/// distributed Caputo part integrated over gamma with `quad` (analytic power rule for separable
/// solutions, numeric Caputo integral otherwise) and the flux differenced in x with
/// Richardson extrapolation. The problem's own f is ignored. Throws DomainError for t <= 0.
double mms_source(const ExactSolution& exact, const ProblemSpec& spec, double x, double t,
                  const GammaQuadrature& quad);

/// (k u_x)_x of the exact solution by Richardson-corrected central differences.
double mms_flux_derivative(const ExactSolution& exact, const SpaceTimeFn& k, double x, double t,
                           double length);

struct ValidationReport {
    bool valid = true;
    std::size_t violation_count = 0;
    std::vector<std::string> violations;  ///< first entries, with locations
    double inferred_c1 = 0.0;             ///< sampled min of k minus 1e-12
    std::optional<double> inferred_beta0;
    double sampled_theta_max = 0.0;

    void add(std::string message);
};

/// Samples the hypotheses on the grid: k >= c1 > 0 at nodes and half nodes, q >= 0, f finite
/// for t > 0, order/weight bounds at nodes x gamma-nodes, positive mass, Robin beta >= beta0 > 0,
/// and Dirichlet corner compatibility. Never throws for data violations.
ValidationReport validate_problem(const ProblemSpec& spec, const Grid& grid,
                                  const GammaQuadrature& quad);

}  // namespace fracdiff
