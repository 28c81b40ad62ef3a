#include "fracdiff/grid.hpp"

#include "fracdiff/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fracdiff {

std::vector<double> Grid::nodes() const {
    std::vector<double> xs(N + 1);
    for (std::size_t i = 0; i <= N; ++i) {
        xs[i] = x(i);
    }
    return xs;
}

std::size_t Grid::level_of(double time) const {
    const double ratio = time / tau;
    const double rounded = std::round(ratio);
    if (rounded < 0.0 || rounded > static_cast<double>(j0) || std::abs(ratio - rounded) > 1e-9) {
        std::ostringstream msg;
        msg << "time " << time << " is not a level of the grid (tau = " << tau << ", j0 = " << j0
            << ")";
        throw UsageError(msg.str());
    }
    return static_cast<std::size_t>(rounded);
}

Grid make_grid(double l, std::size_t N, double T, std::size_t j0) {
    if (N < 2) {
        throw UsageError("make_grid: at least two space intervals are required");
    }
    if (j0 < 1) {
        throw UsageError("make_grid: at least one time step is required");
    }
    if (!(l > 0.0) || !(T > 0.0)) {
        throw UsageError("make_grid: domain length and final time must be positive");
    }
    Grid g;
    g.N = N;
    g.j0 = j0;
    g.l = l;
    g.T = T;
    g.h = l / static_cast<double>(N);
    g.tau = T / static_cast<double>(j0);
    return g;
}

double inner_product(std::span<const double> y, std::span<const double> v, double h,
                     Pairing kind) {
    if (y.size() != v.size() || y.size() < 3) {
        throw UsageError("inner_product: grid functions must share a grid with N >= 2");
    }
    const std::size_t n = y.size() - 1;
    double sum = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        sum += y[i] * v[i];
    }
    switch (kind) {
    case Pairing::open:
        break;
    case Pairing::half_open:
        sum += y[n] * v[n];
        break;
    case Pairing::boundary_weighted:
        sum += 0.5 * (y[0] * v[0] + y[n] * v[n]);
        break;
    }
    return sum * h;
}

double inner_product(const GridFunction& y, const GridFunction& v, Pairing kind) {
    if (!(y.grid == v.grid)) {
        throw UsageError("inner_product: grid functions live on different grids");
    }
    if (y.values.size() != y.grid.N + 1 || v.values.size() != v.grid.N + 1) {
        throw UsageError("inner_product: grid function length differs from N + 1");
    }
    return inner_product(y.values, v.values, y.grid.h, kind);
}

std::vector<double> backward_difference(std::span<const double> y, double h) {
    std::vector<double> d(y.size(), 0.0);
    for (std::size_t i = 1; i < y.size(); ++i) {
        d[i] = (y[i] - y[i - 1]) / h;
    }
    return d;
}

double max_error(std::span<const double> y, const Grid& grid,
                 const std::function<double(double, double)>& exact, double t) {
    if (y.size() != grid.N + 1) {
        throw UsageError("max_error: grid function length differs from N + 1");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i <= grid.N; ++i) {
        worst = std::max(worst, std::abs(y[i] - exact(grid.x(i), t)));
    }
    return worst;
}

}  // namespace fracdiff
