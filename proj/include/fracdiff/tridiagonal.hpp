#pragma once

#include <cstddef>
#include <vector>

namespace fracdiff {

/// Row i reads lower[i] x_{i-1} + diag[i] x_i + upper[i] x_{i+1} = rhs[i];
/// lower[0] and upper[n-1] are ignored.
struct TridiagonalSystem {
    std::vector<double> lower;
    std::vector<double> diag;
    std::vector<double> upper;
    std::vector<double> rhs;

    explicit TridiagonalSystem(std::size_t n = 0)
        : lower(n, 0.0), diag(n, 0.0), upper(n, 0.0), rhs(n, 0.0) {}

    std::size_t size() const noexcept { return diag.size(); }

    /// |diag| >= |lower| + |upper| on every row, strictly on at least one.
    bool diagonally_dominant() const;

    /// A x with the stored coefficients.
    std::vector<double> apply(const std::vector<double>& x) const;
};

/// Thomas elimination without pivoting. Throws SingularSystem on a vanishing pivot.
std::vector<double> thomas_solve(const TridiagonalSystem& sys);

}  // namespace fracdiff
