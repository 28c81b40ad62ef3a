#pragma once

#include "fracdiff/grid.hpp"
#include "fracdiff/problem.hpp"
#include "fracdiff/quadrature.hpp"

#include <cstddef>
#include <vector>

namespace fracdiff::oracle {

using DenseMatrix = std::vector<std::vector<double>>;

/// Gaussian elimination with partial pivoting. Throws SingularSystem on a zero pivot.
std::vector<double> dense_solve(DenseMatrix a, std::vector<double> b);

/// Reference march that assembles every level as a dense (N+1) x (N+1) system, with the
/// distributed L1 weights recomputed from std::pow / std::tgamma, and solves it by
/// dense_solve. Returns levels 0..grid.j0. Meant for small grids.
std::vector<std::vector<double>> dense_march(const ProblemSpec& problem, const Grid& grid,
                                             const GammaQuadrature& quad);

}  // namespace fracdiff::oracle
