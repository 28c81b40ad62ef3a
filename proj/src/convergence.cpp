#include "fracdiff/convergence.hpp"

#include "fracdiff/error.hpp"
#include "fracdiff/parallel.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace fracdiff {

const char* to_string(RefinementAxis axis) {
    switch (axis) {
    case RefinementAxis::time: return "time";
    case RefinementAxis::space: return "space";
    case RefinementAxis::coupled: return "coupled";
    }
    return "unknown";
}

double convergence_order(double e1, double e2, double step1, double step2) {
    return std::log(e1 / e2) / std::log(step1 / step2);
}

void compute_orders(ConvergenceTable& table) {
    for (std::size_t n = 0; n < table.rows.size(); ++n) {
        auto& row = table.rows[n];
        row.order.reset();
        if (n == 0 || !row.failure.empty() || !table.rows[n - 1].failure.empty()) {
            continue;
        }
        const auto& prev = table.rows[n - 1];
        const bool by_tau = table.axis == RefinementAxis::time;
        const double s1 = by_tau ? prev.tau : prev.h;
        const double s2 = by_tau ? row.tau : row.h;
        row.order = convergence_order(prev.max_error, row.max_error, s1, s2);
    }
}

RefinementPlan time_refinement(double length, std::size_t N, double eval_time,
                               const std::vector<std::size_t>& steps) {
    (void)length;
    RefinementPlan plan;
    plan.axis = RefinementAxis::time;
    plan.eval_time = eval_time;
    for (std::size_t s : steps) {
        plan.cases.push_back({N, s});
    }
    return plan;
}

RefinementPlan space_refinement(double length, const std::vector<std::size_t>& Ns,
                                double eval_time, std::size_t steps) {
    (void)length;
    RefinementPlan plan;
    plan.axis = RefinementAxis::space;
    plan.eval_time = eval_time;
    for (std::size_t N : Ns) {
        plan.cases.push_back({N, steps});
    }
    return plan;
}

RefinementPlan coupled_refinement(double length, const std::vector<std::size_t>& Ns,
                                  double exponent, double eval_time) {
    RefinementPlan plan;
    plan.axis = RefinementAxis::coupled;
    plan.eval_time = eval_time;
    for (std::size_t N : Ns) {
        const double h = length / static_cast<double>(N);
        const double target_tau = std::pow(h, exponent);
        const auto steps =
            static_cast<std::size_t>(std::ceil(eval_time / target_tau - 1e-9));
        plan.cases.push_back({N, std::max<std::size_t>(steps, 1)});
    }
    return plan;
}

ConvergenceTable run_convergence(const ProblemSpec& problem, const RefinementPlan& plan,
                                 const SolveOptions& options, unsigned jobs) {
    if (!problem.exact) {
        throw NotApplicable("convergence study needs an exact solution");
    }
    ConvergenceTable table;
    table.axis = plan.axis;
    table.rows.resize(plan.cases.size());
    // Split the thread budget between concurrent cases and per-case workers.
    SolveOptions case_options = options;
    if (jobs > 1) {
        case_options.workers = 1;
    }
    parallel_for(0, plan.cases.size(), jobs, [&](std::size_t n) {
        const auto& c = plan.cases[n];
        auto& row = table.rows[n];
        const auto start = std::chrono::steady_clock::now();
        try {
            const Grid grid = make_grid(problem.l, c.N, plan.eval_time, c.steps);
            row.h = grid.h;
            row.tau = grid.tau;
            const auto out = solve(problem, grid, plan.eval_time, case_options);
            row.max_error = *out.max_error;
            if (out.ledger) {
                row.ledger_violations = out.ledger->violations();
                row.worst_relative_slack = out.ledger->worst_relative_slack();
            }
        } catch (const std::exception& e) {
            row.failure = e.what();
        }
        row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                          .count();
    });
    compute_orders(table);
    return table;
}

PresetPlan preset_plan(const std::string& name) {
    constexpr double eval_time = 0.99;
    if (name == "test1-time") {
        return {"test1", time_refinement(1.0, 1000, eval_time, {10, 20, 40})};
    }
    if (name == "test1-coupled") {
        return {"test1", coupled_refinement(1.0, {10, 20, 40, 80}, 2.0 / (2.0 - 0.856),
                                            eval_time)};
    }
    if (name == "test2-time") {
        return {"test2", time_refinement(1.0, 500, eval_time, {10, 20, 40, 80})};
    }
    if (name == "test2-coupled") {
        return {"test2",
                coupled_refinement(1.0, {10, 20, 40}, 2.0 / (2.0 - 0.5), eval_time)};
    }
    throw std::invalid_argument("unknown refinement preset '" + name + "'");
}

std::vector<std::string> preset_names() {
    return {"test1-time", "test1-coupled", "test2-time", "test2-coupled"};
}

}  // namespace fracdiff
