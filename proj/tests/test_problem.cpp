#include "fracdiff/error.hpp"
#include "fracdiff/problem.hpp"

#include "support.hpp"

#include <cmath>

using namespace fracdiff;
using fracdiff::testing::close;

TEST_SUITE("problems") {

TEST_CASE("test1 data") {
    const auto p = builtin_test1();
    CHECK(p.name == "test1");
    CHECK(!p.is_robin());
    CHECK(p.dist.m == 5);
    CHECK(close(p.dist.sampled_theta_max(p.l), 0.856, 1e-3));
    CHECK(close(p.dist.theta(3, 1.0, 1.0), (5.0 - std::cos(3.0)) / 7.0, 1e-15));
    CHECK(close(p.exact->u(0.5, 0.99), 3.2176625, 1e-8));
    const auto& bc = std::get<DirichletBC>(p.bc);
    for (double t : {0.0, 0.3, 1.0}) {
        CHECK(bc.mu1(t) == doctest::Approx(p.exact->u(0.0, t)));
        CHECK(bc.mu2(t) == doctest::Approx(p.exact->u(1.0, t)));
    }
}

TEST_CASE("test2 data") {
    const auto p = builtin_test2();
    CHECK(p.is_robin());
    CHECK(p.dist.m == 9);
    CHECK(p.dist.alpha == -2.0);
    CHECK(p.dist.beta == 3.0);
    CHECK(close(p.dist.sampled_theta_max(p.l), 0.5, 1e-12));
    CHECK(close(p.dist.theta(1, 0.0, 3.0), 0.5, 1e-15));
}

TEST_CASE("test2 boundary data agree with the exact solution by substitution") {
    const auto p = builtin_test2();
    const auto& bc = std::get<RobinBC>(p.bc);
    const auto& u = p.exact->u;
    const auto& ux = p.exact->u_x;
    for (double t : {0.0, 0.2, 0.7, 0.99}) {
        // k u_x = beta1 u - mu1 at x = 0 and -k u_x = beta2 u - mu2 at x = l.
        const double mu1 = bc.beta1(t) * u(0.0, t) - p.k(0.0, t) * ux(0.0, t);
        const double mu2 = bc.beta2(t) * u(1.0, t) + p.k(1.0, t) * ux(1.0, t);
        CHECK(close(bc.mu1(t), mu1, 1e-13, 1e-13));
        CHECK(close(bc.mu2(t), mu2, 1e-13, 1e-13));
        CHECK(close(bc.mu1(t), -5.0 * (t * t * t + 1.0), 1e-14));
        CHECK(close(bc.mu2(t), 13.0 * (t * t * t + 1.0), 1e-14));
    }
}

TEST_CASE("uncorrected test2 data break the substitution") {
    const auto p = builtin_test2(Test2Data::uncorrected);
    const auto& bc = std::get<RobinBC>(p.bc);
    const double t = 0.5;
    const double mu1 = bc.beta1(t) * p.exact->u(0.0, t) - p.k(0.0, t) * p.exact->u_x(0.0, t);
    CHECK(std::abs(bc.mu1(t) - mu1) > 0.1);
}

TEST_CASE("manufactured source matches the closed forms") {
    for (const char* name : {"test1", "test2"}) {
        const auto p = builtin_problem(name);
        const auto quad = build_quadrature(p.dist.alpha, p.dist.beta, 64);
        for (double x : {0.0, 0.25, 0.5, 0.8, 1.0}) {
            for (double t : {0.1, 0.5, 0.99}) {
                INFO(name << " x=" << x << " t=" << t);
                CHECK(std::abs(mms_source(*p.exact, p, x, t, quad) - p.f(x, t)) <= 1e-9);
            }
        }
    }
}

TEST_CASE("manufactured source exposes the uncorrected test2 exponent") {
    const auto p = builtin_test2(Test2Data::uncorrected);
    const auto quad = build_quadrature(p.dist.alpha, p.dist.beta, 64);
    const double diff = std::abs(mms_source(*p.exact, p, 0.5, 0.5, quad) - p.f(0.5, 0.5));
    CHECK(diff > 0.1);
}

TEST_CASE("manufactured source without the separable shortcut") {
    // Same exact solution as test1 but forcing the numeric Caputo path.
    auto p = builtin_test1();
    auto numeric = *p.exact;
    numeric.separable.reset();
    const auto quad = build_quadrature(0.0, 1.0, 64);
    for (double t : {0.2, 0.5, 0.99}) {
        CHECK(std::abs(mms_source(numeric, p, 0.4, t, quad) - p.f(0.4, t)) <= 1e-8);
    }
}

TEST_CASE("constant solution with q = 0 needs no source") {
    auto p = fracdiff::testing::zero_problem(false);
    ExactSolution c;
    c.u = [](double, double) { return 3.0; };
    c.u_x = [](double, double) { return 0.0; };
    const auto quad = build_quadrature(0.0, 1.0, 16);
    CHECK(std::abs(mms_source(c, p, 0.3, 0.4, quad)) <= 1e-12);
    CHECK_THROWS_AS(mms_source(c, p, 0.3, 0.0, quad), DomainError);
}

TEST_CASE("validation of the built-ins") {
    for (const char* name : {"test1", "test2"}) {
        const auto p = builtin_problem(name);
        const auto quad = build_quadrature(p.dist.alpha, p.dist.beta, 64);
        const auto report = validate_problem(p, make_grid(p.l, 20, 0.99, 30), quad);
        CHECK(report.valid);
        CHECK(report.violation_count == 0);
    }
    const auto p = builtin_test1();
    const auto report =
        validate_problem(p, make_grid(1.0, 10, 1.0, 10), build_quadrature(0.0, 1.0, 64));
    CHECK(close(report.inferred_c1, 2.0, 1e-10));
}

TEST_CASE("negative reaction is flagged at every node") {
    auto p = fracdiff::testing::zero_problem(false);
    p.q = [](double, double) { return -1.0; };
    const Grid g = make_grid(1.0, 10, 1.0, 4);
    const auto report = validate_problem(p, g, build_quadrature(0.0, 1.0, 8));
    CHECK_FALSE(report.valid);
    CHECK(report.violation_count >= (g.N + 1) * (g.j0 + 1));
}

TEST_CASE("Robin coefficient below beta0 is flagged") {
    auto p = fracdiff::testing::zero_problem(true);
    std::get<RobinBC>(p.bc).beta1 = [](double) { return 0.0; };
    const auto report =
        validate_problem(p, make_grid(1.0, 10, 1.0, 4), build_quadrature(0.0, 1.0, 8));
    CHECK_FALSE(report.valid);
}

TEST_CASE("k below the declared bound is flagged") {
    auto p = fracdiff::testing::zero_problem(false);
    p.c1 = 1.5;
    const auto report =
        validate_problem(p, make_grid(1.0, 10, 1.0, 4), build_quadrature(0.0, 1.0, 8));
    CHECK_FALSE(report.valid);
}

TEST_CASE("orders outside [0, 1) are flagged") {
    auto p = fracdiff::testing::zero_problem(false);
    p.dist.theta = [](int, double x, double) { return x > 0.5 ? 1.2 : 0.3; };
    const auto report =
        validate_problem(p, make_grid(1.0, 10, 1.0, 4), build_quadrature(0.0, 1.0, 8));
    CHECK_FALSE(report.valid);
}

TEST_CASE("unknown built-in name") {
    CHECK_THROWS_AS(builtin_problem("test3"), std::invalid_argument);
    CHECK(builtin_problem("test1-homogeneous").exact == std::nullopt);
}

}
