#include "fracdiff/config.hpp"
#include "fracdiff/error.hpp"
#include "fracdiff/solver.hpp"

#include "support.hpp"

#include <json.hpp>

#include <cmath>
#include <variant>

using namespace fracdiff;
using fracdiff::testing::close;
using nlohmann::json;

namespace {

json zero_inline() {
    return json::parse(R"({
        "l": 1, "T": 1, "m": 1, "alpha": 0, "beta": 1,
        "theta": "0.5", "omega": "1",
        "k": "1", "q": "0", "f": "0", "u0": "0",
        "bc": {"type": "dirichlet", "mu1": "0", "mu2": "0"}
    })");
}

std::string error_path(const json& doc) {
    try {
        parse_config(doc);
    } catch (const ConfigError& e) {
        return e.path();
    }
    return "<no error>";
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("built-in problem with a tau grid") {
    const auto cfg = parse_config(
        json::parse(R"({"problem": "test1", "grid": {"N": 10, "tau": 0.01}, "eval_time": 0.99})"));
    CHECK(cfg.problem_source == "test1");
    CHECK(cfg.quad_nodes == 64);
    const Grid g = resolve_grid(cfg);
    CHECK(g.N == 10);
    CHECK(g.j0 == 99);
    CHECK(close(g.tau, 0.01, 1e-14));
}

TEST_CASE("steps grid and options") {
    const auto cfg = parse_config(json::parse(
        R"({"problem": "test2", "grid": {"N": 10, "steps": 22}, "eval_time": 0.99,
            "quad_nodes": 32, "parallel": 3, "ledger": true})"));
    CHECK(cfg.quad_nodes == 32);
    CHECK(cfg.workers == 3);
    CHECK(cfg.ledger);
    CHECK(close(resolve_grid(cfg).tau, 0.045, 1e-14));
}

TEST_CASE("eval_time off the grid is rejected") {
    const auto cfg = parse_config(
        json::parse(R"({"problem": "test1", "grid": {"N": 10, "tau": 0.01}, "eval_time": 0.995})"));
    try {
        resolve_grid(cfg);
        FAIL("expected a config error");
    } catch (const ConfigError& e) {
        CHECK(e.path() == "eval_time");
    }
}

TEST_CASE("inline zero problem") {
    json doc{{"problem", zero_inline()}, {"grid", {{"N", 8}, {"steps", 4}}}, {"eval_time", 0.5}};
    const auto cfg = parse_config(doc);
    CHECK(cfg.problem_source == "inline");
    CHECK(!cfg.problem.is_robin());
    CHECK(close(cfg.problem.c1, 1.0, 1e-11));
    const auto out = solve(cfg.problem, resolve_grid(cfg), cfg.eval_time);
    for (double v : out.result.field.level(4)) {
        CHECK(v == 0.0);
    }
}

TEST_CASE("inline Robin problem with per-term lists and an exact solution") {
    auto p = zero_inline();
    p["m"] = 2;
    p["theta"] = json::array({"0.2 + 0.1*g", "0.4*x"});
    p["omega"] = json::array({"1", "1 + x"});
    p["k"] = "1 + x^2";
    p.erase("f");
    p["exact"] = {{"u", "(x + 1)*(t^2 + 1)"}, {"u_x", "t^2 + 1"}};
    p["u0"] = "x + 1";
    p["bc"] = {{"type", "robin"},
               {"beta1", "1"},
               {"beta2", "2"},
               {"mu1", "(t^2+1) - (t^2+1)"},
               {"mu2", "2*2*(t^2+1) + 2*(t^2+1)"}};
    const auto cfg = parse_config(json{{"problem", p}, {"grid", {{"N", 10}, {"steps", 10}}}});
    CHECK(cfg.problem.is_robin());
    CHECK(cfg.problem.dist.m == 2);
    CHECK(close(cfg.problem.dist.theta(2, 0.5, 0.0), 0.2, 1e-15));
    CHECK(close(*cfg.problem.beta0, 1.0, 1e-11));
    // Manufactured source keeps the exact solution close to the discrete one.
    const auto out = solve(cfg.problem, resolve_grid(cfg), 1.0);
    REQUIRE(out.max_error);
    CHECK(*out.max_error < 5e-3);
}

TEST_CASE("errors name the offending field") {
    json doc{{"problem", zero_inline()}, {"grid", {{"N", 8}, {"steps", 4}}}};
    CHECK(error_path(json::object()) == "$.problem");
    CHECK(error_path(json{{"problem", "nope"}}) == "problem");

    auto bad_var = doc;
    bad_var["problem"]["k"] = "x + y";
    CHECK(error_path(bad_var) == "problem.k");

    auto bad_theta = doc;
    bad_theta["problem"]["theta"] = "t";
    CHECK(error_path(bad_theta) == "problem.theta");

    auto short_list = doc;
    short_list["problem"]["m"] = 2;
    short_list["problem"]["theta"] = json::array({"0.5"});
    CHECK(error_path(short_list) == "problem.theta");

    auto bad_syntax = doc;
    bad_syntax["problem"]["bc"]["mu2"] = "1+*t";
    CHECK(error_path(bad_syntax) == "problem.bc.mu2");

    auto bad_bc_var = doc;
    bad_bc_var["problem"]["bc"]["mu1"] = "x";
    CHECK(error_path(bad_bc_var) == "problem.bc.mu1");

    auto bad_u0 = doc;
    bad_u0["problem"]["u0"] = "t";
    CHECK(error_path(bad_u0) == "problem.u0");

    auto bad_type = doc;
    bad_type["problem"]["bc"]["type"] = "neumann";
    CHECK(error_path(bad_type) == "problem.bc.type");

    auto missing_k = doc;
    missing_k["problem"].erase("k");
    CHECK(error_path(missing_k) == "problem.k");

    auto no_f = doc;
    no_f["problem"].erase("f");
    CHECK(error_path(no_f) == "problem.f");

    auto both = doc;
    both["grid"]["tau"] = 0.1;
    CHECK(error_path(both) == "grid");

    auto small = doc;
    small["grid"]["N"] = 1;
    CHECK(error_path(small) == "grid.N");

    auto late = doc;
    late["eval_time"] = 2.0;
    CHECK(error_path(late) == "eval_time");
}

TEST_CASE("refinement plans") {
    const auto p = builtin_test1();
    const auto time = parse_plan(json::parse(R"({"axis": "time", "N": 100, "tau": [0.099, 0.0495]})"),
                                 p, 0.99);
    CHECK(time.axis == RefinementAxis::time);
    REQUIRE(time.cases.size() == 2);
    CHECK(time.cases[0].steps == 10);
    CHECK(time.cases[1].steps == 20);

    const auto coupled = parse_plan(json::parse(R"({"axis": "coupled", "N": [10, 20]})"), p, 0.99);
    CHECK(coupled.cases[0].steps == 56);
    CHECK(coupled.cases[1].steps == 187);

    const auto space = parse_plan(json::parse(R"({"axis": "space", "N": [4, 8], "steps": 3})"),
                                  p, 0.99);
    CHECK(space.cases[1].N == 8);

    const auto preset = parse_plan(json("test2-time"), p, 0.99);
    CHECK(preset.cases.size() == 4);

    CHECK_THROWS_AS(parse_plan(json::parse(R"({"axis": "time", "N": 10, "tau": [0.07]})"), p, 0.99),
                    ConfigError);
    CHECK_THROWS_AS(parse_plan(json::parse(R"({"axis": "diagonal", "N": 10})"), p, 0.99),
                    ConfigError);
    CHECK_THROWS_AS(parse_plan(json("no-such-preset"), p, 0.99), ConfigError);
}

TEST_CASE("missing file") {
    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

}
