#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fracdiff {

/// Argument outside the mathematical domain of a function (x <= 0 for Gamma, ln of a
/// non-positive number, order >= 1, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Caller broke a precondition on shapes or sizes (length mismatch, grid mismatch).
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The order distribution has no mass at some node, or breaks the 0 <= theta < 1 bound.
class InvalidDistribution : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Problem data violates a declared bound (k >= c1, beta >= beta0, ...).
class InvalidProblem : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An estimate or check was requested for data it does not cover.
class NotApplicable : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Zero (or vanishing) pivot in the tridiagonal elimination.
class SingularSystem : public std::runtime_error {
public:
    SingularSystem(const std::string& what, std::size_t row)
        : std::runtime_error(what), row_(row) {}
    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

/// Failure while advancing the scheme; carries the time level that failed.
class StepFailure : public std::runtime_error {
public:
    StepFailure(const std::string& what, std::size_t level)
        : std::runtime_error(what), level_(level) {}
    std::size_t level() const noexcept { return level_; }

private:
    std::size_t level_;
};

}  // namespace fracdiff
