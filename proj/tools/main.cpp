// fracdiff command-line front end: solve, converge, verify.

#include "fracdiff/config.hpp"
#include "fracdiff/convergence.hpp"
#include "fracdiff/error.hpp"
#include "fracdiff/solver.hpp"
#include "fracdiff/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace fracdiff;

namespace {

enum Exit : int { ok = 0, suite_failed = 1, invalid = 2, numerical = 3 };

struct CommonFlags {
    std::string config;
    std::string out = ".";
    std::optional<std::size_t> quad_nodes;
    std::optional<unsigned> parallel;
    bool ledger = false;
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Writes text with LF line endings (binary mode so nothing is translated).
void write_file(const fs::path& path, const std::string& body) {
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << body;
}

std::string timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json grid_json(const Grid& g) {
    return {{"N", g.N}, {"h", g.h}, {"steps", g.j0}, {"tau", g.tau}, {"l", g.l}, {"T", g.T}};
}

std::string solution_csv(const SolveOutcome& out, const ProblemSpec& problem) {
    const auto& g = out.grid;
    const double t = g.t(out.eval_level);
    const auto y = out.result.field.level(out.eval_level);
    std::string csv = problem.exact ? "x,t,y,exact,error\n" : "x,t,y\n";
    for (std::size_t i = 0; i <= g.N; ++i) {
        csv += num(g.x(i)) + "," + num(t) + "," + num(y[i]);
        if (problem.exact) {
            const double u = problem.exact->u(g.x(i), t);
            csv += "," + num(u) + "," + num(std::abs(y[i] - u));
        }
        csv += "\n";
    }
    return csv;
}

std::string ledger_csv(const EnergyLedger& ledger) {
    std::string csv = "level,t,lhs,rhs,slack\n";
    for (const auto& e : ledger.entries) {
        csv += std::to_string(e.level) + "," + num(e.t) + "," + num(e.lhs) + "," + num(e.rhs) +
               "," + num(e.slack) + "\n";
    }
    return csv;
}

std::string convergence_csv(const ConvergenceTable& table) {
    std::string csv = "h,tau,max_error,order\n";
    for (const auto& r : table.rows) {
        csv += num(r.h) + "," + num(r.tau) + "," + (r.failure.empty() ? num(r.max_error) : "") +
               "," + (r.order ? num(*r.order) : "") + "\n";
    }
    return csv;
}

RunConfig load(const CommonFlags& flags) {
    RunConfig cfg = load_config(flags.config);
    if (flags.quad_nodes) {
        cfg.quad_nodes = *flags.quad_nodes;
    }
    if (flags.parallel) {
        cfg.workers = std::max(1u, *flags.parallel);
    }
    cfg.ledger = cfg.ledger || flags.ledger;
    return cfg;
}

int cmd_solve(const CommonFlags& flags) {
    const auto wall = std::chrono::steady_clock::now();
    const RunConfig cfg = load(flags);
    const Grid grid = resolve_grid(cfg);
    SolveOptions opts;
    opts.quad_nodes = cfg.quad_nodes;
    opts.workers = cfg.workers;
    opts.ledger = cfg.ledger;
    const SolveOutcome out = solve(cfg.problem, grid, cfg.eval_time, opts);

    const fs::path dir(flags.out);
    write_file(dir / "solution.csv", solution_csv(out, cfg.problem));
    json summary{
        {"command", "solve"},
        {"problem", cfg.problem.name},
        {"grid", grid_json(grid)},
        {"eval_time", cfg.eval_time},
        {"quad_nodes", cfg.quad_nodes},
        {"theta_max_sampled", out.validation.sampled_theta_max},
        {"max_error", out.max_error ? json(*out.max_error) : json(nullptr)},
        {"max_residual", out.max_residual},
        {"timings",
         {{"kernel_seconds", out.kernel_seconds},
          {"march_seconds", out.march_seconds},
          {"total_seconds",
           std::chrono::duration<double>(std::chrono::steady_clock::now() - wall).count()}}},
        {"generated_at", timestamp()},
    };
    if (out.ledger) {
        write_file(dir / "ledger.csv", ledger_csv(*out.ledger));
        summary["ledger"] = {{"violations", out.ledger->violations()},
                             {"worst_relative_slack", out.ledger->worst_relative_slack()},
                             {"levels", out.ledger->entries.size()}};
    } else {
        summary["ledger"] = nullptr;
    }
    write_file(dir / "summary.json", summary.dump(2) + "\n");

    std::cout << cfg.problem.name << ": N=" << grid.N << " steps=" << grid.j0
              << " t=" << num(cfg.eval_time);
    if (out.max_error) {
        std::cout << " max_error=" << num(*out.max_error);
    }
    if (out.ledger) {
        std::cout << " ledger_violations=" << out.ledger->violations();
    }
    std::cout << "\n";
    return ok;
}

int cmd_converge(const CommonFlags& flags, const std::string& preset) {
    const auto wall = std::chrono::steady_clock::now();
    ProblemSpec problem;
    RefinementPlan plan;
    std::size_t quad_nodes = flags.quad_nodes.value_or(64);
    unsigned workers = flags.parallel.value_or(1);
    if (!preset.empty()) {
        PresetPlan p;
        try {
            p = preset_plan(preset);
        } catch (const std::invalid_argument& e) {
            throw ConfigError("preset", e.what());
        }
        problem = builtin_problem(p.problem);
        plan = p.plan;
    } else {
        const RunConfig cfg = load(flags);
        if (!cfg.plan) {
            throw ConfigError("plan", "missing");
        }
        problem = cfg.problem;
        plan = *cfg.plan;
        quad_nodes = cfg.quad_nodes;
        workers = cfg.workers;
    }
    SolveOptions opts;
    opts.quad_nodes = quad_nodes;
    opts.workers = workers;
    const ConvergenceTable table = run_convergence(problem, plan, opts, workers);

    const fs::path dir(flags.out);
    write_file(dir / "convergence.csv", convergence_csv(table));
    json rows = json::array();
    bool failed = false;
    for (const auto& r : table.rows) {
        json row{{"h", r.h}, {"tau", r.tau}, {"seconds", r.seconds}};
        if (r.failure.empty()) {
            row["max_error"] = r.max_error;
        } else {
            row["failure"] = r.failure;
            failed = true;
        }
        row["order"] = r.order ? json(*r.order) : json(nullptr);
        rows.push_back(row);
    }
    json summary{
        {"command", "converge"},
        {"problem", problem.name},
        {"axis", to_string(table.axis)},
        {"eval_time", plan.eval_time},
        {"quad_nodes", quad_nodes},
        {"rows", rows},
        {"total_seconds",
         std::chrono::duration<double>(std::chrono::steady_clock::now() - wall).count()},
        {"generated_at", timestamp()},
    };
    write_file(dir / "summary.json", summary.dump(2) + "\n");

    std::cout << "h,tau,max_error,order\n";
    for (const auto& r : table.rows) {
        std::printf("%-10.6g %-12.6g %-14s %s\n", r.h, r.tau,
                    r.failure.empty() ? num(r.max_error).c_str() : "failed",
                    r.order ? num(*r.order).c_str() : "");
    }
    return failed ? numerical : ok;
}

int cmd_verify(const CommonFlags& flags, const std::string& suite, bool inject_fault) {
    VerifyOptions opts;
    if (!suite.empty()) {
        opts.suite = suite;
    }
    opts.quad_nodes = flags.quad_nodes.value_or(64);
    opts.workers = flags.parallel.value_or(1);
    opts.inject_kernel_fault = inject_fault;

    std::vector<SuiteResult> results;
    try {
        results = run_verification(opts);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("suite", e.what());
    }

    // With a config, the ledger suite also reports the configured run level by level.
    const fs::path dir(flags.out);
    if (!flags.config.empty() && (suite.empty() || suite == "ledger")) {
        RunConfig cfg = load(flags);
        SolveOptions so;
        so.quad_nodes = cfg.quad_nodes;
        so.workers = cfg.workers;
        so.ledger = true;
        const auto out = solve(cfg.problem, resolve_grid(cfg), cfg.eval_time, so);
        SuiteResult r;
        r.name = "ledger:" + cfg.problem.name;
        if (!out.ledger) {
            r.passed = false;
            r.messages.push_back("no estimate applies to this problem");
        } else {
            r.cases = out.ledger->entries.size();
            r.failures = out.ledger->violations();
            r.passed = r.failures == 0;
            r.metrics.emplace_back("worst_relative_slack", out.ledger->worst_relative_slack());
            write_file(dir / "ledger.csv", ledger_csv(*out.ledger));
            for (const auto& e : out.ledger->entries) {
                std::printf("level %4zu  t=%-10.6g slack=%.6e\n", e.level, e.t, e.slack);
            }
        }
        results.push_back(std::move(r));
    }

    bool all = true;
    json suites = json::array();
    for (const auto& r : results) {
        all = all && r.passed;
        json metrics = json::object();
        for (const auto& [name, value] : r.metrics) {
            metrics[name] = value;
        }
        suites.push_back({{"name", r.name},
                          {"passed", r.passed},
                          {"cases", r.cases},
                          {"failures", r.failures},
                          {"messages", r.messages},
                          {"metrics", metrics}});
        std::printf("%-24s %s  (%zu cases, %zu failures)\n", r.name.c_str(),
                    r.passed ? "PASS" : "FAIL", r.cases, r.failures);
        for (const auto& m : r.messages) {
            std::printf("    %s\n", m.c_str());
        }
    }
    json report{{"command", "verify"},
                {"passed", all},
                {"fault_injected", inject_fault},
                {"suites", suites},
                {"generated_at", timestamp()}};
    write_file(dir / "verify.json", report.dump(2) + "\n");
    return all ? ok : suite_failed;
}

void add_common(CLI::App* cmd, CommonFlags& flags, bool needs_config) {
    auto* c = cmd->add_option("--config", flags.config, "JSON run configuration");
    if (needs_config) {
        c->required();
    }
    cmd->add_option("--out", flags.out, "output directory")->capture_default_str();
    cmd->add_option("--quad-nodes", flags.quad_nodes, "Gauss nodes over gamma (default 64)")
        ->check(CLI::Range(2, 4096));
    cmd->add_option("--parallel", flags.parallel, "worker threads")->check(CLI::Range(1, 1024));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Solver for multi-term variable-distributed-order time-fractional diffusion"};
    app.require_subcommand(1);

    CommonFlags flags;
    std::string preset;
    std::string suite;
    bool inject_fault = false;

    auto* solve_cmd = app.add_subcommand("solve", "march one problem and write solution.csv");
    add_common(solve_cmd, flags, true);
    solve_cmd->add_flag("--ledger", flags.ledger, "write the energy-estimate ledger");

    auto* conv_cmd = app.add_subcommand("converge", "run a refinement study");
    add_common(conv_cmd, flags, false);
    conv_cmd->add_option("--preset", preset, "built-in plan: test1-time, test1-coupled, "
                                             "test2-time, test2-coupled");

    auto* verify_cmd = app.add_subcommand("verify", "run the property suites");
    add_common(verify_cmd, flags, false);
    verify_cmd->add_option("--suite", suite, "run a single suite");
    verify_cmd->add_flag("--inject-kernel-fault", inject_fault,
                         "debug: perturb the kernel so the checks must fail");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return invalid;
    }

    try {
        if (*solve_cmd) {
            return cmd_solve(flags);
        }
        if (*conv_cmd) {
            if (preset.empty() && flags.config.empty()) {
                throw ConfigError("config", "give --config or --preset");
            }
            return cmd_converge(flags, preset);
        }
        return cmd_verify(flags, suite, inject_fault);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return invalid;
    } catch (const InvalidProblem& e) {
        std::cerr << "validation failed: " << e.what() << "\n";
        return invalid;
    } catch (const InvalidDistribution& e) {
        std::cerr << "validation failed: " << e.what() << "\n";
        return invalid;
    } catch (const NotApplicable& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return invalid;
    } catch (const UsageError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return invalid;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return numerical;
    }
}
