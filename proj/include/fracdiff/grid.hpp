#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace fracdiff {

/// Uniform space-time grid x_i = i h (i = 0..N), t_j = j tau (j = 0..j0).
struct Grid {
    std::size_t N = 0;
    double h = 0.0;
    std::size_t j0 = 0;
    double tau = 0.0;
    double l = 0.0;
    double T = 0.0;

    double x(std::size_t i) const noexcept { return static_cast<double>(i) * h; }
    double t(std::size_t j) const noexcept { return static_cast<double>(j) * tau; }
    std::vector<double> nodes() const;

    /// Level index of time t, or throws UsageError when t is not a grid level (to 1e-9).
    std::size_t level_of(double time) const;

    friend bool operator==(const Grid&, const Grid&) = default;
};

/// Grid with N space intervals on [0, l] and j0 steps on [0, T]. Requires N >= 2, j0 >= 1.
Grid make_grid(double l, std::size_t N, double T, std::size_t j0);

/// Values y_0..y_N of one time level.
struct GridFunction {
    Grid grid;
    std::size_t level = 0;
    std::vector<double> values;
};

enum class Pairing {
    open,               ///< (y, v) = sum_{i=1}^{N-1} y_i v_i h
    half_open,          ///< (y, v] = sum_{i=1}^{N} y_i v_i h
    boundary_weighted,  ///< [y, v] = (y, v) + 0.5 h (y_0 v_0 + y_N v_N)
};

double inner_product(std::span<const double> y, std::span<const double> v, double h,
                     Pairing kind);
double inner_product(const GridFunction& y, const GridFunction& v, Pairing kind);

/// Backward difference y_{x-bar, i} = (y_i - y_{i-1}) / h stored at i = 1..N (entry 0 is 0).
std::vector<double> backward_difference(std::span<const double> y, double h);

/// max_i |y_i - u(x_i, t)|.
double max_error(std::span<const double> y, const Grid& grid,
                 const std::function<double(double, double)>& exact, double t);

}  // namespace fracdiff
