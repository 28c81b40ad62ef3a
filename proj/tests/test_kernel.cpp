#include "fracdiff/error.hpp"
#include "fracdiff/kernel.hpp"
#include "fracdiff/problem.hpp"
#include "fracdiff/scheme.hpp"
#include "fracdiff/special.hpp"

#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace fracdiff;
using fracdiff::testing::close;

namespace {

/// Caputo derivative of t^2 under the test-1 distribution, integrated with a fine rule.
double test1_caputo_t2(const ProblemSpec& p, double x, double t) {
    const auto fine = build_quadrature(p.dist.alpha, p.dist.beta, 128);
    double total = 0.0;
    for (int r = 1; r <= p.dist.m; ++r) {
        total += fine.integrate([&](double g) {
            const double theta = p.dist.theta(r, x, g);
            return p.dist.omega(r, x, g) * 2.0 * std::pow(t, 2.0 - theta) /
                   std::tgamma(3.0 - theta);
        });
    }
    return total;
}

}  // namespace

TEST_SUITE("kernel") {

TEST_CASE("l1 weights, single level") {
    const auto w = l1_weights(0.3, 0.01, 0);
    REQUIRE(w.size() == 1);
    CHECK(close(w[0], std::pow(0.01, -0.3) / std::tgamma(1.7), 1e-13));
}

TEST_CASE("l1 weights for theta = 0.5, tau = 1") {
    const auto w = l1_weights(0.5, 1.0, 1);
    REQUIRE(w.size() == 2);
    CHECK(close(w[0], 1.128379, 1e-6));
    CHECK(close(w[1], (std::sqrt(2.0) - 1.0) / std::tgamma(1.5), 1e-13));
}

TEST_CASE("order zero weights telescope") {
    const auto w = l1_weights(0.0, 0.2, 6);
    for (double v : w) {
        CHECK(close(v, 1.0, 1e-14));
    }
}

TEST_CASE("l1 weights reject orders outside [0, 1)") {
    CHECK_THROWS_AS(l1_weights(1.0, 0.1, 3), DomainError);
    CHECK_THROWS_AS(l1_weights(-0.1, 0.1, 3), DomainError);
}

TEST_CASE("power_increment matches the direct difference") {
    for (std::size_t k : {0u, 1u, 2u, 10u, 1000u, 100000u}) {
        for (double a : {0.01, 0.144, 0.5, 0.99, 1.0}) {
            const long double kd = static_cast<long double>(k);
            const auto direct = static_cast<double>(std::pow(kd + 1.0L, static_cast<long double>(a)) -
                                                    std::pow(kd, static_cast<long double>(a)));
            CHECK(close(power_increment(k, a), direct, 1e-12));
        }
    }
}

TEST_CASE("constant-order unit-mass distribution reduces to single-term weights") {
    const double tau = 0.05;
    for (auto [alpha, beta] : {std::pair{0.0, 1.0}, std::pair{-2.0, 3.0}}) {
        const auto dist = constant_order(0.5, alpha, beta);
        const auto quad = build_quadrature(alpha, beta, 16);
        const std::vector<double> xs{0.0, 0.5, 1.0};
        const auto table = build_kernel_table(dist, xs, tau, 30, quad);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            for (std::size_t k = 0; k < 30; ++k) {
                const double kd = static_cast<double>(k);
                const double expect = (std::sqrt(kd + 1.0) - std::sqrt(kd)) * std::sqrt(tau) /
                                      std::tgamma(1.5);
                CHECK(close(table(i, k), expect, 1e-13));
            }
        }
    }
}

TEST_CASE("built-in tables are positive and non-increasing in the lag") {
    for (const char* name : {"test1", "test2"}) {
        const auto p = builtin_problem(name);
        const auto quad = build_quadrature(p.dist.alpha, p.dist.beta, 64);
        const Grid grid = make_grid(p.l, 10, 0.99, 50);
        const auto table = build_problem_kernel(p, grid, quad);
        CHECK(table.nodes() == 11);
        CHECK(table.lags() == 50);
        CHECK(table.satisfies_invariants());
        for (std::size_t i = 0; i < table.nodes(); ++i) {
            for (std::size_t k = 0; k + 1 < table.lags(); ++k) {
                CHECK(table(i, k + 1) <= table(i, k));
            }
        }
    }
}

TEST_CASE("invariant check catches a broken table") {
    KernelTable bad(1, 3, 0.1, {1.0, 2.0, 0.5}, "hand-made");
    CHECK_FALSE(bad.satisfies_invariants());
    KernelTable negative(1, 2, 0.1, {1.0, -0.1}, "hand-made");
    CHECK_FALSE(negative.satisfies_invariants());
    CHECK_THROWS_AS(KernelTable(2, 2, 0.1, {1.0}, "short"), UsageError);
}

TEST_CASE("quadrature refinement changes test-1 entries by less than 1e-12") {
    const auto p = builtin_test1();
    const std::vector<double> xs{0.5};
    CHECK(quadrature_refinement_drift(p.dist, xs, 0.01, 99, 64) < 1e-12);
}

TEST_CASE("threaded and serial table builds agree bitwise") {
    const auto p = builtin_test2();
    const auto quad = build_quadrature(p.dist.alpha, p.dist.beta, 64);
    const Grid grid = make_grid(p.l, 16, 0.99, 20);
    const auto nodes = grid.nodes();
    const auto serial = build_kernel_table(p.dist, nodes, grid.tau, grid.j0, quad, 1);
    const auto threaded = build_kernel_table(p.dist, nodes, grid.tau, grid.j0, quad, 4);
    CHECK(std::equal(serial.data().begin(), serial.data().end(), threaded.data().begin()));
}

TEST_CASE("a distribution without mass is rejected") {
    auto dist = constant_order(0.4);
    dist.omega = [](int, double, double) { return 0.0; };
    const auto quad = build_quadrature(0.0, 1.0, 8);
    const std::vector<double> xs{0.0, 1.0};
    CHECK_THROWS_AS(build_kernel_table(dist, xs, 0.1, 4, quad), InvalidDistribution);
}

TEST_CASE("distributed operator on a constant history vanishes") {
    const auto p = builtin_test1();
    const auto quad = build_quadrature(0.0, 1.0, 64);
    const auto row = build_kernel_row(p.dist, 0.3, 0.01, 20, quad);
    const std::vector<double> v(21, 4.25);
    CHECK(apply_distributed_l1(row, v, 0.01) == 0.0);
    CHECK(lemma2_gap(row, v, 0.01) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("linear histories are reproduced exactly") {
    const auto quad = build_quadrature(0.0, 1.0, 32);
    for (double theta : {0.0, 0.2, 0.5, 0.9}) {
        const auto dist = constant_order(theta);
        const double tau = 0.02;
        const std::size_t j = 37;
        const auto row = build_kernel_row(dist, 0.0, tau, j + 1, quad);
        std::vector<double> v(j + 2);
        for (std::size_t s = 0; s < v.size(); ++s) {
            v[s] = static_cast<double>(s) * tau;
        }
        const double t = static_cast<double>(j + 1) * tau;
        CHECK(close(apply_distributed_l1(row, v, tau),
                    std::pow(t, 1.0 - theta) / std::tgamma(2.0 - theta), 1e-12));
    }
}

TEST_CASE("quadratic history under the test-1 distribution converges to the analytic value") {
    const auto p = builtin_test1();
    const auto quad = build_quadrature(0.0, 1.0, 64);
    const double x = 0.5;
    const double t = 0.5;
    const double exact = test1_caputo_t2(p, x, t);
    double previous = 0.0;
    for (std::size_t steps : {50u, 100u, 200u, 400u}) {
        const double tau = t / static_cast<double>(steps);
        const auto row = build_kernel_row(p.dist, x, tau, steps, quad);
        std::vector<double> v(steps + 1);
        for (std::size_t s = 0; s <= steps; ++s) {
            v[s] = std::pow(static_cast<double>(s) * tau, 2.0);
        }
        const double err = std::abs(apply_distributed_l1(row, v, tau) - exact);
        // O(tau^{2 - theta_max}) with theta_max < 0.86.
        CHECK(err < 0.1 * std::pow(tau, 1.14));
        if (previous > 0.0) {
            CHECK(previous / err > std::pow(2.0, 1.1));
        }
        previous = err;
    }
}

TEST_CASE("energy gap for a single step") {
    const auto quad = build_quadrature(0.0, 1.0, 8);
    const auto row = build_kernel_row(constant_order(0.5), 0.0, 1.0, 1, quad);
    const std::vector<double> v{0.0, 1.0};
    CHECK(close(lemma2_gap(row, v, 1.0), 0.5 / std::tgamma(1.5), 1e-13));
    CHECK(close(lemma2_gap(row, v, 1.0), 0.564190, 1e-6));
}

TEST_CASE("energy gap is non-negative over random distributions and histories") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int n = 0; n < 1000; ++n) {
        OrderDistribution d;
        d.m = 1 + static_cast<int>(rng() % 3);
        d.alpha = 0.0;
        d.beta = 0.5 + u(rng);
        const double a = 0.09 + 0.8 * u(rng);
        const double b = 0.09 * u(rng);
        const double c = 2.0 * u(rng);
        d.theta = [a, b](int r, double x, double g) { return a + b * std::sin(r * x + g); };
        d.omega = [c](int r, double, double g) { return 0.1 + c * g / r; };
        const auto quad = build_quadrature(d.alpha, d.beta, 12);
        const std::size_t j = rng() % 19;
        const double tau = 0.001 + u(rng);
        const auto row = build_kernel_row(d, u(rng), tau, j + 1, quad);
        std::vector<double> v(j + 2);
        for (double& x : v) {
            x = 2.0 * u(rng) - 1.0;
        }
        worst = std::min(worst, lemma2_gap(row, v, tau));
    }
    CHECK(worst >= -1e-12);
}

TEST_CASE("operator input validation") {
    const std::vector<double> row{1.0, 0.5};
    const std::vector<double> one{1.0};
    const std::vector<double> four{0.0, 1.0, 2.0, 3.0};
    CHECK_THROWS_AS(apply_distributed_l1(row, one, 0.1), UsageError);
    CHECK_THROWS_AS(apply_distributed_l1(row, four, 0.1), UsageError);
    CHECK_THROWS_AS(lemma2_gap(row, four, 0.1), UsageError);
}

}
