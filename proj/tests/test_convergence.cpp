#include "fracdiff/convergence.hpp"
#include "fracdiff/error.hpp"

#include "support.hpp"

#include <cmath>

using namespace fracdiff;
using fracdiff::testing::close;

namespace {

ConvergenceRow row(double h, double tau, double err, std::string failure = {}) {
    ConvergenceRow r;
    r.h = h;
    r.tau = tau;
    r.max_error = err;
    r.failure = std::move(failure);
    return r;
}

}  // namespace

TEST_SUITE("convergence") {

TEST_CASE("order formula") {
    CHECK(close(convergence_order(4e-3, 1e-3, 0.2, 0.1), 2.0, 1e-14));
    CHECK(convergence_order(1e-3, 1e-3, 0.2, 0.1) == 0.0);
}

TEST_CASE("orders use tau on the time axis and h otherwise") {
    ConvergenceTable t;
    t.axis = RefinementAxis::time;
    t.rows = {row(0.5, 0.1, 1e-2), row(0.5, 0.05, 2.5e-3)};
    compute_orders(t);
    CHECK_FALSE(t.rows[0].order);
    CHECK(close(*t.rows[1].order, 2.0, 1e-14));

    t.axis = RefinementAxis::space;
    t.rows = {row(0.2, 0.1, 1e-2), row(0.1, 0.1, 5e-3)};
    compute_orders(t);
    CHECK(close(*t.rows[1].order, 1.0, 1e-14));
}

TEST_CASE("failed rows break the order chain") {
    ConvergenceTable t;
    t.axis = RefinementAxis::time;
    t.rows = {row(0.5, 0.1, 1e-2),
              row(0.5, 0.05, 0.0, "boom"),
              row(0.5, 0.025, 1e-3)};
    compute_orders(t);
    CHECK_FALSE(t.rows[1].order);
    CHECK_FALSE(t.rows[2].order);
}

TEST_CASE("coupled plans round the step count up") {
    const auto plan = coupled_refinement(1.0, {10, 20, 40, 80}, 2.0 / (2.0 - 0.856), 0.99);
    const std::size_t expect[] = {56, 187, 626, 2103};
    for (std::size_t n = 0; n < 4; ++n) {
        CHECK(plan.cases[n].steps == expect[n]);
        const double tau = 0.99 / static_cast<double>(plan.cases[n].steps);
        CHECK(tau <= std::pow(1.0 / static_cast<double>(plan.cases[n].N), 2.0 / 1.144));
    }
    const auto t2 = coupled_refinement(1.0, {10, 20, 40}, 4.0 / 3.0, 0.99);
    CHECK(t2.cases[0].steps == 22);
    CHECK(t2.cases[1].steps == 54);
    CHECK(t2.cases[2].steps == 136);
}

TEST_CASE("presets") {
    for (const auto& name : preset_names()) {
        const auto p = preset_plan(name);
        CHECK_FALSE(p.plan.cases.empty());
        CHECK(p.plan.eval_time == 0.99);
    }
    CHECK(preset_plan("test2-time").plan.cases.back().steps == 80);
    CHECK(preset_plan("test2-time").plan.cases.front().N == 500);
    CHECK_THROWS_AS(preset_plan("table7"), std::invalid_argument);
}

TEST_CASE("a small study records errors and orders") {
    const auto p = builtin_test1();
    const auto plan = time_refinement(1.0, 100, 0.99, {10, 20, 40});
    const auto table = run_convergence(p, plan, {}, 3);
    REQUIRE(table.rows.size() == 3);
    for (const auto& r : table.rows) {
        CHECK(r.failure.empty());
        CHECK(r.max_error > 0.0);
    }
    CHECK(table.rows[0].max_error > table.rows[2].max_error);
    CHECK(*table.rows[1].order > 1.2);
    const auto serial = run_convergence(p, plan, {}, 1);
    CHECK(serial.rows[2].max_error == table.rows[2].max_error);
}

TEST_CASE("per-case failures are recorded, not thrown") {
    auto p = builtin_test1();
    // Breaks only on grids that sample k at x = 0.475.
    const auto k = p.k;
    p.k = [k](double x, double t) { return std::abs(x - 0.475) < 1e-9 ? -1.0 : k(x, t); };
    const auto plan = space_refinement(1.0, {10, 20, 40}, 0.99, 10);
    const auto table = run_convergence(p, plan, {}, 1);
    CHECK(table.rows[0].failure.empty());
    CHECK_FALSE(table.rows[1].failure.empty());
    CHECK_FALSE(table.rows[1].order);
    CHECK_FALSE(table.rows[2].order);
}

TEST_CASE("studies need an exact solution") {
    const auto plan = time_refinement(1.0, 10, 0.5, {2, 4});
    CHECK_THROWS_AS(run_convergence(builtin_homogeneous(), plan, {}), NotApplicable);
}

}
