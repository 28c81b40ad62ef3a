#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fracdiff::expr {

/// Parse failure at a byte offset of the input, with the tokens that would have been accepted.
class SyntaxError : public std::runtime_error {
public:
    SyntaxError(const std::string& what, std::size_t offset, std::set<std::string> expected);
    std::size_t offset() const noexcept { return offset_; }
    const std::set<std::string>& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::set<std::string> expected_;
};

/// Unbound identifier or a function evaluated outside its domain.
class EvalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class NodeKind { number, variable, negate, binary, call };
enum class BinaryOp { add, sub, mul, div, pow };
enum class Function { sin, cos, exp, ln, sqrt, abs, gammafn, min, max };

struct Node {
    NodeKind kind = NodeKind::number;
    double value = 0.0;                       // number
    std::string name;                         // variable
    int slot = -1;                            // variable, once compiled
    BinaryOp op = BinaryOp::add;              // binary
    Function fn = Function::sin;              // call
    std::vector<std::shared_ptr<const Node>> children;
};

using NodePtr = std::shared_ptr<const Node>;
using Bindings = std::map<std::string, double, std::less<>>;

/// Immutable expression tree. Grammar:
///   expr  := term (('+' | '-') term)*
///   term  := unary (('*' | '/') unary)*
///   unary := '-' unary | power
///   power := primary ('^' unary)?          right-associative
///   primary := number | ident | ident '(' args ')' | '(' expr ')'
class Expr {
public:
    Expr() = default;
    explicit Expr(NodePtr root, std::string text = {}) : root_(std::move(root)), text_(std::move(text)) {}

    const NodePtr& root() const noexcept { return root_; }
    const std::string& text() const noexcept { return text_; }

    double eval(const Bindings& bindings) const;
    std::set<std::string> free_vars() const;

    /// Resolves identifiers to positions in `slots`; the result evaluates from a span of values
    /// in that order. Throws EvalError for identifiers outside `slots`.
    Expr compile(const std::vector<std::string>& slots) const;
    double eval(std::span<const double> slot_values) const;

private:
    NodePtr root_;
    std::string text_;
};

Expr parse(std::string_view text);
double eval(const Expr& ast, const Bindings& bindings);
std::set<std::string> free_vars(const Expr& ast);

}  // namespace fracdiff::expr
