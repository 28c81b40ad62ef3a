#pragma once

#include "fracdiff/distribution.hpp"
#include "fracdiff/problem.hpp"

#include <doctest.h>

#include <cmath>

namespace fracdiff::testing {

/// Relative closeness, with an absolute floor for values near zero.
inline bool close(double a, double b, double rel, double abs_floor = 0.0) {
    return std::abs(a - b) <= std::max(rel * std::max(std::abs(a), std::abs(b)), abs_floor);
}

/// Problem whose data are all zero: k = 1, q = 0, f = 0, u0 = 0, zero boundary data.
inline ProblemSpec zero_problem(bool robin, double theta = 0.5) {
    ProblemSpec p;
    p.name = robin ? "zero-robin" : "zero-dirichlet";
    p.dist = constant_order(theta);
    p.k = [](double, double) { return 1.0; };
    p.q = [](double, double) { return 0.0; };
    p.f = [](double, double) { return 0.0; };
    p.u0 = [](double) { return 0.0; };
    if (robin) {
        p.bc = RobinBC{[](double) { return 1.0; }, [](double) { return 1.0; },
                       [](double) { return 0.0; }, [](double) { return 0.0; }};
        p.beta0 = 1.0;
    } else {
        p.bc = DirichletBC{[](double) { return 0.0; }, [](double) { return 0.0; }};
    }
    p.c1 = 1.0;
    return p;
}

}  // namespace fracdiff::testing
