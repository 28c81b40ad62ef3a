#include "fracdiff/tridiagonal.hpp"

#include "fracdiff/error.hpp"

#include <cmath>
#include <limits>

namespace fracdiff {

bool TridiagonalSystem::diagonally_dominant() const {
    const std::size_t n = size();
    bool strict = false;
    for (std::size_t i = 0; i < n; ++i) {
        const double off = (i > 0 ? std::abs(lower[i]) : 0.0) +
                           (i + 1 < n ? std::abs(upper[i]) : 0.0);
        const double d = std::abs(diag[i]);
        if (d < off) {
            return false;
        }
        strict = strict || d > off;
    }
    return strict;
}

std::vector<double> TridiagonalSystem::apply(const std::vector<double>& x) const {
    const std::size_t n = size();
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double v = diag[i] * x[i];
        if (i > 0) {
            v += lower[i] * x[i - 1];
        }
        if (i + 1 < n) {
            v += upper[i] * x[i + 1];
        }
        out[i] = v;
    }
    return out;
}

std::vector<double> thomas_solve(const TridiagonalSystem& sys) {
    const std::size_t n = sys.size();
    if (sys.lower.size() != n || sys.upper.size() != n || sys.rhs.size() != n) {
        throw UsageError("thomas_solve: coefficient vectors differ in length");
    }
    if (n == 0) {
        return {};
    }
    std::vector<double> c(n, 0.0);
    std::vector<double> d(n, 0.0);
    constexpr double tiny = std::numeric_limits<double>::min();

    double pivot = sys.diag[0];
    if (std::abs(pivot) <= tiny) {
        throw SingularSystem("thomas_solve: zero pivot", 0);
    }
    c[0] = (n > 1 ? sys.upper[0] : 0.0) / pivot;
    d[0] = sys.rhs[0] / pivot;
    for (std::size_t i = 1; i < n; ++i) {
        pivot = sys.diag[i] - sys.lower[i] * c[i - 1];
        if (std::abs(pivot) <= tiny || !std::isfinite(pivot)) {
            throw SingularSystem("thomas_solve: zero pivot", i);
        }
        c[i] = (i + 1 < n ? sys.upper[i] : 0.0) / pivot;
        d[i] = (sys.rhs[i] - sys.lower[i] * d[i - 1]) / pivot;
    }
    std::vector<double> x(n);
    x[n - 1] = d[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) {
        x[i] = d[i] - c[i] * x[i + 1];
    }
    return x;
}

}  // namespace fracdiff
