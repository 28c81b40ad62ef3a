#include "fracdiff/verify.hpp"

#include "fracdiff/error.hpp"
#include "fracdiff/estimates.hpp"
#include "fracdiff/expr.hpp"
#include "fracdiff/kernel.hpp"
#include "fracdiff/oracle.hpp"
#include "fracdiff/problem.hpp"
#include "fracdiff/scheme.hpp"
#include "fracdiff/special.hpp"
#include "fracdiff/tridiagonal.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>

namespace fracdiff {

namespace {

constexpr double kFaultScale = 0.25;
constexpr std::size_t kMaxMessages = 10;

class Recorder {
public:
    explicit Recorder(std::string name) { result_.name = std::move(name); }

    void check(bool ok, const std::string& what) {
        ++result_.cases;
        if (!ok) {
            ++result_.failures;
            result_.passed = false;
            if (result_.messages.size() < kMaxMessages) {
                result_.messages.push_back(what);
            }
        }
    }
    void metric(std::string name, double value) {
        result_.metrics.emplace_back(std::move(name), value);
    }
    SuiteResult take() { return std::move(result_); }

private:
    SuiteResult result_;
};

std::string fmt(const char* pattern, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, pattern, a, b);
    return buf;
}

KernelTable faulty(const KernelTable& table) {
    std::vector<double> data(table.data().begin(), table.data().end());
    for (std::size_t i = 0; i < table.nodes(); ++i) {
        data[i * table.lags()] *= kFaultScale;
    }
    return {table.nodes(), table.lags(), table.tau(), std::move(data),
            table.built_with() + " (fault injected)"};
}

/// Random distribution with m terms, orders in [0, 0.99) and positive weights.
OrderDistribution random_distribution(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    OrderDistribution d;
    d.m = 1 + static_cast<int>(rng() % 4);
    d.alpha = -1.0 + 2.0 * u(rng);
    d.beta = d.alpha + 0.1 + 2.0 * u(rng);
    std::vector<std::array<double, 5>> c(static_cast<std::size_t>(d.m));
    for (auto& row : c) {
        for (double& v : row) {
            v = u(rng);
        }
    }
    d.theta = [c](int r, double x, double g) {
        const auto& p = c[static_cast<std::size_t>(r - 1)];
        const double raw = p[0] + 0.5 * p[1] * std::sin(3.0 * p[2] * g + x);
        return std::clamp(raw, 0.0, 0.99);
    };
    d.omega = [c](int r, double x, double g) {
        const auto& p = c[static_cast<std::size_t>(r - 1)];
        return 0.05 + p[3] * (1.0 + std::cos(p[4] * g * x));
    };
    d.label = "random";
    return d;
}

struct SmallRun {
    std::string problem;
    std::size_t N;
    std::size_t steps;
    double T;
};

const std::vector<SmallRun>& small_runs() {
    static const std::vector<SmallRun> runs{
        {"test1", 10, 8, 0.08},
        {"test1", 12, 5, 0.99},
        {"test2", 10, 8, 0.36},
        {"test2", 7, 6, 0.99},
        {"test2-uncorrected", 9, 4, 0.5},
        {"test1-homogeneous", 11, 7, 0.7},
    };
    return runs;
}

SuiteResult suite_gamma(const VerifyOptions&) {
    Recorder rec("gamma");
    double worst = 0.0;
    for (int n = 1; n <= 3000; ++n) {
        const double x = 0.001 * n;
        const double rel = std::abs(gamma_fn(x) / std::tgamma(x) - 1.0);
        worst = std::max(worst, rel);
        rec.check(rel <= 1e-13, fmt("gamma(%.4g) relative error %.3g", x, rel));
    }
    for (int n = 1; n <= 10; ++n) {
        double fact = 1.0;
        for (int k = 2; k < n; ++k) {
            fact *= k;
        }
        rec.check(std::abs(gamma_fn(n) / fact - 1.0) <= 1e-13, fmt("gamma(%g) != (n-1)!", n));
    }
    rec.check(std::abs(gamma_fn(0.5) - std::sqrt(std::acos(-1.0))) <= 1e-14, "gamma(1/2)");
    rec.metric("max_relative_error", worst);
    return rec.take();
}

SuiteResult suite_quadrature(const VerifyOptions& opt) {
    Recorder rec("quadrature");
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    double worst = 0.0;
    for (std::size_t P = 2; P <= 24; ++P) {
        const double a = u(rng);
        const double b = a + 0.5 + std::abs(u(rng));
        const auto quad = build_quadrature(a, b, P);
        for (std::size_t deg = 0; deg < 2 * P; ++deg) {
            const double p = static_cast<double>(deg);
            const double exact = (std::pow(b, p + 1) - std::pow(a, p + 1)) / (p + 1);
            const double got = quad.integrate([p](double x) { return std::pow(x, p); });
            const double err = std::abs(got - exact) / std::max(1.0, std::abs(exact));
            worst = std::max(worst, err);
            rec.check(err <= 1e-12, fmt("P=%g degree %g not exact", P, p));
        }
    }
    rec.metric("max_error", worst);
    return rec.take();
}

SuiteResult suite_kernel(const VerifyOptions& opt) {
    Recorder rec("kernel");
    const auto quad = build_quadrature(0.0, 1.0, opt.quad_nodes);
    // Telescoping: linear histories with constant order reproduce the Caputo value.
    double worst_tele = 0.0;
    for (double theta : {0.0, 0.1, 0.35, 0.5, 0.75, 0.95}) {
        const auto dist = constant_order(theta);
        for (double tau : {0.5, 0.01, 1e-3}) {
            const std::size_t lags = 50;
            const auto row = build_kernel_row(dist, 0.3, tau, lags, quad);
            std::vector<double> v(lags + 1);
            for (std::size_t s = 0; s <= lags; ++s) {
                v[s] = 2.0 - 3.0 * static_cast<double>(s) * tau;
            }
            const double t = static_cast<double>(lags) * tau;
            const double exact = -3.0 * caputo_exact_power(1.0, theta, t);
            const double got = apply_distributed_l1(row, v, tau);
            const double rel = std::abs(got / exact - 1.0);
            worst_tele = std::max(worst_tele, rel);
            rec.check(rel <= 1e-12, fmt("telescoping theta=%g rel %.3g", theta, rel));
        }
    }
    rec.metric("telescoping_max_relative", worst_tele);

    for (const char* name : {"test1", "test2"}) {
        const auto p = builtin_problem(name);
        const Grid grid = make_grid(p.l, 20, 0.99, 40);
        const auto q = build_quadrature(p.dist.alpha, p.dist.beta, opt.quad_nodes);
        const auto table = build_problem_kernel(p, grid, q, opt.workers);
        rec.check(table.satisfies_invariants(), std::string(name) + ": kernel invariants");
        const auto nodes = grid.nodes();
        const double drift =
            quadrature_refinement_drift(p.dist, nodes, grid.tau, grid.j0, 64);
        rec.metric(std::string(name) + "_quadrature_drift_64_128", drift);
        rec.check(drift < 1e-12, fmt("quadrature drift %.3g", drift));
    }
    return rec.take();
}

SuiteResult suite_lemma2(const VerifyOptions& opt) {
    Recorder rec("lemma2");
    std::mt19937_64 rng(opt.seed + 1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = std::numeric_limits<double>::infinity();
    for (int n = 0; n < 1200; ++n) {
        const auto dist = random_distribution(rng);
        const auto quad = build_quadrature(dist.alpha, dist.beta, 16);
        const double tau = std::pow(10.0, -3.0 * u(rng));
        const std::size_t j = 1 + rng() % 24;
        auto row = build_kernel_row(dist, u(rng), tau, j + 1, quad);
        if (opt.inject_kernel_fault) {
            row[0] *= kFaultScale;
        }
        std::vector<double> v(j + 2);
        for (double& x : v) {
            x = 2.0 * u(rng) - 1.0;
        }
        if (n % 3 == 0) {
            // Histories that jump at the last step stress the lag-0 weight.
            std::fill(v.begin(), v.end() - 1, 1.0);
            v.back() = 0.0;
        }
        const double gap = lemma2_gap(row, v, tau);
        worst = std::min(worst, gap);
        rec.check(gap >= -1e-12, fmt("case %g: gap %.3g", n, gap));
    }
    rec.metric("min_gap", worst);
    return rec.take();
}

SuiteResult suite_thomas(const VerifyOptions& opt) {
    Recorder rec("thomas");
    std::mt19937_64 rng(opt.seed + 2);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    for (int n = 0; n < 50; ++n) {
        const std::size_t size = 1 + rng() % 100;
        TridiagonalSystem sys(size);
        oracle::DenseMatrix dense(size, std::vector<double>(size, 0.0));
        for (std::size_t i = 0; i < size; ++i) {
            sys.lower[i] = i > 0 ? u(rng) : 0.0;
            sys.upper[i] = i + 1 < size ? u(rng) : 0.0;
            const double sign = u(rng) < 0.0 ? -1.0 : 1.0;
            sys.diag[i] = sign * (std::abs(sys.lower[i]) + std::abs(sys.upper[i]) + 0.1 +
                                  std::abs(u(rng)));
            sys.rhs[i] = 10.0 * u(rng);
            dense[i][i] = sys.diag[i];
            if (i > 0) {
                dense[i][i - 1] = sys.lower[i];
            }
            if (i + 1 < size) {
                dense[i][i + 1] = sys.upper[i];
            }
        }
        const auto x = thomas_solve(sys);
        const auto ref = oracle::dense_solve(dense, sys.rhs);
        double diff = 0.0;
        for (std::size_t i = 0; i < size; ++i) {
            diff = std::max(diff, std::abs(x[i] - ref[i]));
        }
        worst = std::max(worst, diff);
        rec.check(diff <= 1e-10, fmt("system %g differs by %.3g", n, diff));
    }
    rec.metric("max_abs_difference", worst);
    return rec.take();
}

SuiteResult suite_oracle(const VerifyOptions& opt) {
    Recorder rec("oracle");
    double worst = 0.0;
    for (const auto& run : small_runs()) {
        const auto p = builtin_problem(run.problem);
        const Grid grid = make_grid(p.l, run.N, run.T, run.steps);
        const auto quad = build_quadrature(p.dist.alpha, p.dist.beta, opt.quad_nodes);
        const auto kernel = build_problem_kernel(p, grid, quad, opt.workers);
        const auto marched = march(p, grid, kernel).field;
        const auto dense = oracle::dense_march(p, grid, quad);
        double diff = 0.0;
        for (std::size_t j = 0; j <= grid.j0; ++j) {
            for (std::size_t i = 0; i <= grid.N; ++i) {
                diff = std::max(diff, std::abs(marched.levels[j][i] - dense[j][i]));
            }
        }
        worst = std::max(worst, diff);
        rec.check(diff <= 1e-10, run.problem + fmt(": N=%g differs by %.3g", run.N, diff));
    }
    rec.metric("max_abs_difference", worst);
    return rec.take();
}

SuiteResult suite_residual(const VerifyOptions& opt) {
    Recorder rec("residual");
    double worst = 0.0;
    for (const auto& run : small_runs()) {
        const auto p = builtin_problem(run.problem);
        const Grid grid = make_grid(p.l, run.N, run.T, run.steps);
        const auto quad = build_quadrature(p.dist.alpha, p.dist.beta, opt.quad_nodes);
        const auto kernel = build_problem_kernel(p, grid, quad, opt.workers);
        MarchOptions mo;
        mo.check_residual = false;
        const auto field =
            march(p, grid, opt.inject_kernel_fault ? faulty(kernel) : kernel, mo).field;
        for (std::size_t j = 1; j <= grid.j0; ++j) {
            const double res = residual_norm(field, p, kernel, j);
            double scale = 1.0;
            for (double v : field.levels[j]) {
                scale = std::max(scale, std::abs(v));
            }
            const double rel = res / (scale / grid.tau + scale / (grid.h * grid.h));
            worst = std::max(worst, rel);
            rec.check(rel <= 1e-12, run.problem + fmt(": level %g residual %.3g", j, res));
        }
    }
    rec.metric("max_scaled_residual", worst);
    return rec.take();
}

SuiteResult suite_ledger(const VerifyOptions& opt) {
    Recorder rec("ledger");
    struct Case {
        const char* problem;
        std::size_t N;
        std::size_t steps;
        const char* variant;
    };
    const Case cases[] = {
        {"test1", 10, 99, "error"},     {"test1-homogeneous", 20, 40, "direct"},
        {"test2", 10, 22, "direct"},    {"test2", 10, 22, "error"},
        {"test2", 20, 30, "direct"},
    };
    for (const auto& c : cases) {
        const auto p = builtin_problem(c.problem);
        const Grid grid = make_grid(p.l, c.N, 0.99, c.steps);
        const auto quad = build_quadrature(p.dist.alpha, p.dist.beta, opt.quad_nodes);
        const auto kernel = build_problem_kernel(p, grid, quad, opt.workers);
        const auto field = march(p, grid, kernel).field;
        EnergyLedger ledger;
        if (std::string(c.variant) == "error") {
            ledger = error_problem_ledger(field, p, kernel);
        } else if (p.is_robin()) {
            ledger = robin_ledger(field, p, kernel);
        } else {
            ledger = dirichlet_ledger(field, p, kernel);
        }
        const std::string label =
            std::string(c.problem) + "/" + c.variant + "/N=" + std::to_string(c.N);
        for (const auto& e : ledger.entries) {
            rec.check(e.slack >= -1e-10 * e.rhs,
                      label + fmt(": level %g slack %.3g", static_cast<double>(e.level), e.slack));
        }
        rec.metric(label + " worst_relative_slack", ledger.worst_relative_slack());
    }
    return rec.take();
}

/// Random expression text with its value computed alongside.
struct Generated {
    std::string text;
    double value;
};

Generated random_expr(std::mt19937_64& rng, int depth, double x, double t) {
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    auto number = [&] {
        const double v = std::round(u(rng) * 1000.0) / 1000.0;
        char buf[64];
        std::snprintf(buf, sizeof buf, v < 0 ? "(%.17g)" : "%.17g", v);
        return Generated{buf, v};
    };
    if (depth == 0) {
        switch (rng() % 3) {
        case 0: return {"x", x};
        case 1: return {"t", t};
        default: return number();
        }
    }
    const auto a = random_expr(rng, depth - 1, x, t);
    const auto b = random_expr(rng, depth - 1, x, t);
    switch (rng() % 8) {
    case 0: return {"(" + a.text + " + " + b.text + ")", a.value + b.value};
    case 1: return {"(" + a.text + " - " + b.text + ")", a.value - b.value};
    case 2: return {"(" + a.text + " * " + b.text + ")", a.value * b.value};
    case 3:
        if (std::abs(b.value) > 0.1) {
            return {"(" + a.text + " / " + b.text + ")", a.value / b.value};
        }
        return {"(" + a.text + " + " + b.text + ")", a.value + b.value};
    case 4: return {"sin(" + a.text + ")", std::sin(a.value)};
    case 5: return {"cos(" + a.text + ")", std::cos(a.value)};
    case 6: return {"-" + a.text, -a.value};
    default: return {"abs(" + a.text + ")", std::abs(a.value)};
    }
}

SuiteResult suite_expr(const VerifyOptions& opt) {
    Recorder rec("expr");
    const std::map<std::string, double> fixed{
        {"1 + 2 * 3", 7.0},          {"2 ^ 3 ^ 2", 512.0},   {"-2 ^ 2", -4.0},
        {"(1 + 2) * 3", 9.0},        {"8 / 4 / 2", 1.0},     {"gammafn(5)", 24.0},
        {"min(3, max(1, 2))", 2.0},  {"ln(exp(2.5))", 2.5}, {"sqrt(16) - abs(-4)", 0.0},
        {"1e-3 * 1E3", 1.0},         {"0 ^ 0", 1.0},
    };
    for (const auto& [text, value] : fixed) {
        double got = std::nan("");
        try {
            got = expr::parse(text).eval(expr::Bindings{});
        } catch (const std::exception&) {
        }
        rec.check(std::abs(got - value) <= 1e-12 * std::max(1.0, std::abs(value)), text);
    }
    std::mt19937_64 rng(opt.seed + 3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int n = 0; n < 500; ++n) {
        const double x = u(rng);
        const double t = u(rng);
        const auto g = random_expr(rng, 1 + n % 5, x, t);
        double got = std::nan("");
        try {
            got = expr::parse(g.text).eval(expr::Bindings{{"x", x}, {"t", t}});
        } catch (const std::exception&) {
        }
        rec.check(std::abs(got - g.value) <= 1e-12 * std::max(1.0, std::abs(g.value)), g.text);
    }
    return rec.take();
}

SuiteResult suite_mms(const VerifyOptions& opt) {
    Recorder rec("mms");
    double worst = 0.0;
    for (const char* name : {"test1", "test2"}) {
        const auto p = builtin_problem(name);
        const auto quad = build_quadrature(p.dist.alpha, p.dist.beta, opt.quad_nodes);
        for (double x : {0.0, 0.25, 0.5, 0.9, 1.0}) {
            for (double t : {0.05, 0.5, 0.99}) {
                const double oracle = mms_source(*p.exact, p, x, t, quad);
                const double diff = std::abs(oracle - p.f(x, t));
                worst = std::max(worst, diff);
                rec.check(diff <= 1e-9, std::string(name) + fmt(": x=%g t=%g", x, t));
            }
        }
    }
    rec.metric("max_abs_difference", worst);
    return rec.take();
}

using SuiteFn = SuiteResult (*)(const VerifyOptions&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
    static const std::vector<std::pair<std::string, SuiteFn>> suites{
        {"gamma", suite_gamma},   {"quadrature", suite_quadrature}, {"kernel", suite_kernel},
        {"lemma2", suite_lemma2}, {"thomas", suite_thomas},         {"oracle", suite_oracle},
        {"residual", suite_residual}, {"ledger", suite_ledger},     {"expr", suite_expr},
        {"mms", suite_mms},
    };
    return suites;
}

}  // namespace

std::vector<std::string> suite_names() {
    std::vector<std::string> names;
    for (const auto& [name, fn] : registry()) {
        names.push_back(name);
    }
    return names;
}

std::vector<SuiteResult> run_verification(const VerifyOptions& options) {
    std::vector<SuiteResult> out;
    bool found = false;
    for (const auto& [name, fn] : registry()) {
        if (options.suite && *options.suite != name) {
            continue;
        }
        found = true;
        try {
            out.push_back(fn(options));
        } catch (const std::exception& e) {
            SuiteResult r;
            r.name = name;
            r.passed = false;
            r.failures = 1;
            r.messages.push_back(std::string("aborted: ") + e.what());
            out.push_back(std::move(r));
        }
    }
    if (!found) {
        throw std::invalid_argument("unknown suite '" + options.suite.value_or("") + "'");
    }
    return out;
}

}  // namespace fracdiff
