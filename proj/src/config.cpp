#include "fracdiff/config.hpp"

#include "fracdiff/error.hpp"
#include "fracdiff/expr.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>

namespace fracdiff {

using nlohmann::json;

ConfigError::ConfigError(std::string path, const std::string& message)
    : std::runtime_error(path + ": " + message), path_(std::move(path)) {}

namespace {

const json& require(const json& obj, const char* key, const std::string& path) {
    if (!obj.is_object() || !obj.contains(key)) {
        throw ConfigError(path + "." + key, "missing");
    }
    return obj.at(key);
}

double as_number(const json& v, const std::string& path) {
    if (!v.is_number()) {
        throw ConfigError(path, "expected a number");
    }
    return v.get<double>();
}

std::size_t as_count(const json& v, const std::string& path) {
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw ConfigError(path, "expected a non-negative integer");
    }
    return v.get<std::size_t>();
}

double number_or(const json& obj, const char* key, double fallback, const std::string& path) {
    return obj.contains(key) ? as_number(obj.at(key), path + "." + key) : fallback;
}

/// Parses and compiles `text` against `vars`; identifiers outside `vars` are config errors.
expr::Expr compile_expr(const json& v, const std::vector<std::string>& vars,
                        const std::string& path) {
    std::string text;
    if (v.is_string()) {
        text = v.get<std::string>();
    } else if (v.is_number()) {
        text = v.dump();
    } else {
        throw ConfigError(path, "expected an expression string");
    }
    expr::Expr e;
    try {
        e = expr::parse(text);
    } catch (const expr::SyntaxError& err) {
        throw ConfigError(path, err.what());
    }
    for (const auto& name : e.free_vars()) {
        if (std::find(vars.begin(), vars.end(), name) == vars.end()) {
            std::string allowed;
            for (const auto& a : vars) {
                allowed += allowed.empty() ? a : ", " + a;
            }
            throw ConfigError(path, "unknown variable '" + name + "' (allowed: " + allowed + ")");
        }
    }
    return e.compile(vars);
}

SpaceTimeFn space_time(const json& v, const std::string& path) {
    auto e = compile_expr(v, {"x", "t"}, path);
    return [e](double x, double t) {
        const double args[] = {x, t};
        return e.eval(args);
    };
}

SpaceFn space_only(const json& v, const std::string& path) {
    auto e = compile_expr(v, {"x"}, path);
    return [e](double x) {
        const double args[] = {x};
        return e.eval(args);
    };
}

TimeFn time_only(const json& v, const std::string& path) {
    auto e = compile_expr(v, {"t"}, path);
    return [e](double t) {
        const double args[] = {t};
        return e.eval(args);
    };
}

/// theta/omega: one expression in (r, x, g) or a list of m expressions.
TermFunction term_function(const json& v, int m, const std::string& path) {
    const std::vector<std::string> vars{"r", "x", "g"};
    if (v.is_array()) {
        if (static_cast<int>(v.size()) != m) {
            throw ConfigError(path, "expected " + std::to_string(m) + " expressions");
        }
        std::vector<expr::Expr> terms;
        for (std::size_t n = 0; n < v.size(); ++n) {
            terms.push_back(compile_expr(v[n], vars, path + "[" + std::to_string(n) + "]"));
        }
        return [terms](int r, double x, double g) {
            const double args[] = {static_cast<double>(r), x, g};
            return terms.at(static_cast<std::size_t>(r - 1)).eval(args);
        };
    }
    auto e = compile_expr(v, vars, path);
    return [e](int r, double x, double g) {
        const double args[] = {static_cast<double>(r), x, g};
        return e.eval(args);
    };
}

constexpr int kBoundSamples = 201;

double sampled_min_k(const ProblemSpec& p) {
    double k_min = std::numeric_limits<double>::infinity();
    for (int a = 0; a < kBoundSamples; ++a) {
        const double x = p.l * a / (kBoundSamples - 1);
        for (int b = 0; b < kBoundSamples; ++b) {
            const double t = p.T * b / (kBoundSamples - 1);
            k_min = std::min(k_min, p.k(x, t));
        }
    }
    return k_min;
}

double sampled_min_beta(const RobinBC& bc, double T) {
    double b_min = std::numeric_limits<double>::infinity();
    for (int b = 0; b < kBoundSamples; ++b) {
        const double t = T * b / (kBoundSamples - 1);
        b_min = std::min({b_min, bc.beta1(t), bc.beta2(t)});
    }
    return b_min;
}

}  // namespace

ProblemSpec parse_problem(const json& spec, const std::string& path) {
    if (!spec.is_object()) {
        throw ConfigError(path, "expected a built-in name or an object");
    }
    ProblemSpec p;
    p.name = spec.value("name", std::string("inline"));
    p.l = number_or(spec, "l", 1.0, path);
    p.T = number_or(spec, "T", 1.0, path);
    if (!(p.l > 0.0)) {
        throw ConfigError(path + ".l", "must be positive");
    }
    if (!(p.T > 0.0)) {
        throw ConfigError(path + ".T", "must be positive");
    }

    const int m = spec.contains("m") ? static_cast<int>(as_count(spec.at("m"), path + ".m")) : 1;
    if (m < 1) {
        throw ConfigError(path + ".m", "must be at least 1");
    }
    p.dist.m = m;
    p.dist.alpha = number_or(spec, "alpha", 0.0, path);
    p.dist.beta = number_or(spec, "beta", 1.0, path);
    if (!(p.dist.alpha < p.dist.beta)) {
        throw ConfigError(path + ".beta", "must exceed alpha");
    }
    p.dist.theta = term_function(require(spec, "theta", path), m, path + ".theta");
    p.dist.omega = term_function(require(spec, "omega", path), m, path + ".omega");
    p.dist.label = p.name;

    p.k = space_time(require(spec, "k", path), path + ".k");
    p.q = spec.contains("q") ? space_time(spec.at("q"), path + ".q")
                             : SpaceTimeFn([](double, double) { return 0.0; });
    p.u0 = space_only(require(spec, "u0", path), path + ".u0");

    const auto& bc = require(spec, "bc", path);
    const std::string bc_path = path + ".bc";
    const auto type = require(bc, "type", bc_path);
    if (type == "dirichlet") {
        p.bc = DirichletBC{time_only(require(bc, "mu1", bc_path), bc_path + ".mu1"),
                           time_only(require(bc, "mu2", bc_path), bc_path + ".mu2")};
    } else if (type == "robin") {
        p.bc = RobinBC{time_only(require(bc, "beta1", bc_path), bc_path + ".beta1"),
                       time_only(require(bc, "beta2", bc_path), bc_path + ".beta2"),
                       time_only(require(bc, "mu1", bc_path), bc_path + ".mu1"),
                       time_only(require(bc, "mu2", bc_path), bc_path + ".mu2")};
    } else {
        throw ConfigError(bc_path + ".type", "expected \"dirichlet\" or \"robin\"");
    }

    if (spec.contains("exact")) {
        const auto& ex = spec.at("exact");
        ExactSolution sol;
        if (ex.is_object()) {
            sol.u = space_time(require(ex, "u", path + ".exact"), path + ".exact.u");
            if (ex.contains("u_x")) {
                sol.u_x = space_time(ex.at("u_x"), path + ".exact.u_x");
            }
            sol.note = ex.at("u").is_string() ? ex.at("u").get<std::string>() : "";
        } else {
            sol.u = space_time(ex, path + ".exact");
            sol.note = ex.is_string() ? ex.get<std::string>() : "";
        }
        p.exact = std::move(sol);
    }

    if (spec.contains("f")) {
        p.f = space_time(spec.at("f"), path + ".f");
    } else if (p.exact) {
        // Manufactured source for the given exact solution.
        auto quad = std::make_shared<GammaQuadrature>(
            build_quadrature(p.dist.alpha, p.dist.beta, 64));
        auto exact = *p.exact;
        auto self = std::make_shared<ProblemSpec>(p);
        p.f = [quad, exact, self](double x, double t) {
            return mms_source(exact, *self, x, t, *quad);
        };
    } else {
        throw ConfigError(path + ".f", "missing (and no exact solution to manufacture it from)");
    }

    if (spec.contains("c1")) {
        p.c1 = as_number(spec.at("c1"), path + ".c1");
    } else {
        p.c1 = sampled_min_k(p) - 1e-12;
    }
    if (p.is_robin()) {
        if (spec.contains("beta0")) {
            p.beta0 = as_number(spec.at("beta0"), path + ".beta0");
        } else {
            p.beta0 = sampled_min_beta(std::get<RobinBC>(p.bc), p.T) - 1e-12;
        }
    }
    if (spec.contains("theta_max")) {
        p.theta_max = as_number(spec.at("theta_max"), path + ".theta_max");
    }
    return p;
}

RefinementPlan parse_plan(const json& plan, const ProblemSpec& problem, double eval_time,
                          const std::string& path) {
    if (plan.is_string()) {
        try {
            auto preset = preset_plan(plan.get<std::string>());
            preset.plan.eval_time = eval_time;
            return preset.plan;
        } catch (const std::invalid_argument& e) {
            throw ConfigError(path, e.what());
        }
    }
    if (!plan.is_object()) {
        throw ConfigError(path, "expected a preset name or an object");
    }
    const auto axis = require(plan, "axis", path);
    const auto& n_field = require(plan, "N", path);

    auto count_list = [&](const json& v, const std::string& p) {
        if (!v.is_array() || v.empty()) {
            throw ConfigError(p, "expected a non-empty list");
        }
        std::vector<std::size_t> out;
        for (std::size_t n = 0; n < v.size(); ++n) {
            out.push_back(as_count(v[n], p + "[" + std::to_string(n) + "]"));
        }
        return out;
    };
    auto steps_for_tau = [&](double tau, const std::string& p) {
        if (!(tau > 0.0)) {
            throw ConfigError(p, "must be positive");
        }
        const double ratio = eval_time / tau;
        const double rounded = std::round(ratio);
        if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio)) {
            throw ConfigError(p, "eval_time is not a multiple of tau");
        }
        return static_cast<std::size_t>(rounded);
    };

    if (axis == "time") {
        const std::size_t N = as_count(n_field, path + ".N");
        std::vector<std::size_t> steps;
        if (plan.contains("steps")) {
            steps = count_list(plan.at("steps"), path + ".steps");
        } else {
            const auto& taus = require(plan, "tau", path);
            if (!taus.is_array() || taus.empty()) {
                throw ConfigError(path + ".tau", "expected a non-empty list");
            }
            for (std::size_t n = 0; n < taus.size(); ++n) {
                const std::string p = path + ".tau[" + std::to_string(n) + "]";
                steps.push_back(steps_for_tau(as_number(taus[n], p), p));
            }
        }
        return time_refinement(problem.l, N, eval_time, steps);
    }
    if (axis == "space") {
        const auto Ns = count_list(n_field, path + ".N");
        std::size_t steps = 0;
        if (plan.contains("steps")) {
            steps = as_count(plan.at("steps"), path + ".steps");
        } else {
            steps = steps_for_tau(as_number(require(plan, "tau", path), path + ".tau"),
                                  path + ".tau");
        }
        return space_refinement(problem.l, Ns, eval_time, steps);
    }
    if (axis == "coupled") {
        const auto Ns = count_list(n_field, path + ".N");
        double exponent = 0.0;
        if (plan.contains("exponent")) {
            exponent = as_number(plan.at("exponent"), path + ".exponent");
        } else {
            const double theta_max =
                problem.theta_max.value_or(problem.dist.sampled_theta_max(problem.l));
            exponent = 2.0 / (2.0 - theta_max);
        }
        if (!(exponent > 0.0)) {
            throw ConfigError(path + ".exponent", "must be positive");
        }
        return coupled_refinement(problem.l, Ns, exponent, eval_time);
    }
    throw ConfigError(path + ".axis", "expected \"time\", \"space\" or \"coupled\"");
}

RunConfig parse_config(const json& doc) {
    if (!doc.is_object()) {
        throw ConfigError("$", "expected a JSON object");
    }
    RunConfig cfg;
    const auto& problem = require(doc, "problem", "$");
    if (problem.is_string()) {
        cfg.problem_source = problem.get<std::string>();
        try {
            cfg.problem = builtin_problem(cfg.problem_source);
        } catch (const std::invalid_argument&) {
            throw ConfigError("problem", "unknown built-in problem '" + cfg.problem_source + "'");
        }
    } else {
        cfg.problem_source = "inline";
        cfg.problem = parse_problem(problem, "problem");
    }

    cfg.eval_time = number_or(doc, "eval_time", cfg.problem.T, "");
    if (!(cfg.eval_time > 0.0) || cfg.eval_time > cfg.problem.T * (1.0 + 1e-12)) {
        throw ConfigError("eval_time", "must lie in (0, T]");
    }
    if (doc.contains("quad_nodes")) {
        cfg.quad_nodes = as_count(doc.at("quad_nodes"), "quad_nodes");
        if (cfg.quad_nodes < 1) {
            throw ConfigError("quad_nodes", "must be at least 1");
        }
    }
    if (doc.contains("parallel")) {
        cfg.workers = static_cast<unsigned>(std::max<std::size_t>(
            1, as_count(doc.at("parallel"), "parallel")));
    }
    if (doc.contains("ledger")) {
        if (!doc.at("ledger").is_boolean()) {
            throw ConfigError("ledger", "expected true or false");
        }
        cfg.ledger = doc.at("ledger").get<bool>();
    }
    if (doc.contains("grid")) {
        const auto& g = doc.at("grid");
        GridRequest req;
        req.N = as_count(require(g, "N", "grid"), "grid.N");
        if (req.N < 2) {
            throw ConfigError("grid.N", "must be at least 2");
        }
        if (g.contains("tau") == g.contains("steps")) {
            throw ConfigError("grid", "give exactly one of \"tau\" and \"steps\"");
        }
        if (g.contains("tau")) {
            req.tau = as_number(g.at("tau"), "grid.tau");
            if (!(*req.tau > 0.0)) {
                throw ConfigError("grid.tau", "must be positive");
            }
        } else {
            req.steps = as_count(g.at("steps"), "grid.steps");
            if (*req.steps < 1) {
                throw ConfigError("grid.steps", "must be at least 1");
            }
        }
        cfg.grid = req;
    }
    if (doc.contains("plan")) {
        cfg.plan = parse_plan(doc.at("plan"), cfg.problem, cfg.eval_time, "plan");
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) {
        throw ConfigError("$", "cannot open " + file.string());
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("$", e.what());
    }
    return parse_config(doc);
}

Grid resolve_grid(const RunConfig& config) {
    if (!config.grid) {
        throw ConfigError("grid", "missing");
    }
    const auto& g = *config.grid;
    std::size_t steps = 0;
    if (g.steps) {
        steps = *g.steps;
    } else {
        const double ratio = config.eval_time / *g.tau;
        const double rounded = std::round(ratio);
        if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio)) {
            throw ConfigError("eval_time", "not a grid level for tau = " + std::to_string(*g.tau));
        }
        steps = static_cast<std::size_t>(rounded);
    }
    return make_grid(config.problem.l, g.N, config.eval_time, steps);
}

}  // namespace fracdiff
