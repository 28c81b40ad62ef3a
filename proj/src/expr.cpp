#include "fracdiff/expr.hpp"

#include "fracdiff/error.hpp"
#include "fracdiff/special.hpp"

#include <charconv>
#include <cctype>
#include <cmath>
#include <sstream>

namespace fracdiff::expr {

namespace {

std::string join(const std::set<std::string>& items) {
    std::string out;
    for (const auto& s : items) {
        if (!out.empty()) {
            out += ", ";
        }
        out += s;
    }
    return out;
}

struct FunctionInfo {
    std::string_view name;
    Function fn;
    std::size_t arity;
};

constexpr FunctionInfo kFunctions[] = {
    {"sin", Function::sin, 1},   {"cos", Function::cos, 1},
    {"exp", Function::exp, 1},   {"ln", Function::ln, 1},
    {"sqrt", Function::sqrt, 1}, {"abs", Function::abs, 1},
    {"gammafn", Function::gammafn, 1}, {"min", Function::min, 2},
    {"max", Function::max, 2},
};

const std::set<std::string> kOperand = {"number", "identifier", "'('", "'-'"};

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    NodePtr parse_all() {
        auto node = expression();
        skip_space();
        if (pos_ < text_.size()) {
            fail("unexpected character", {"'+'", "'-'", "'*'", "'/'", "'^'", "end of input"});
        }
        return node;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t depth_ = 0;

    static constexpr std::size_t kMaxDepth = 512;

    struct DepthGuard {
        Parser& p;
        explicit DepthGuard(Parser& parser) : p(parser) {
            if (++p.depth_ > kMaxDepth) {
                p.fail("expression nested too deeply", kOperand);
            }
        }
        ~DepthGuard() { --p.depth_; }
    };

    [[noreturn]] void fail(const std::string& what, std::set<std::string> expected) const {
        std::ostringstream msg;
        msg << what << " at offset " << pos_ << " (expected " << join(expected) << ")";
        throw SyntaxError(msg.str(), pos_, std::move(expected));
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    static NodePtr binary(BinaryOp op, NodePtr lhs, NodePtr rhs) {
        auto n = std::make_shared<Node>();
        n->kind = NodeKind::binary;
        n->op = op;
        n->children = {std::move(lhs), std::move(rhs)};
        return n;
    }

    NodePtr expression() {
        auto lhs = term();
        while (true) {
            if (accept('+')) {
                lhs = binary(BinaryOp::add, lhs, term());
            } else if (accept('-')) {
                lhs = binary(BinaryOp::sub, lhs, term());
            } else {
                return lhs;
            }
        }
    }

    NodePtr term() {
        auto lhs = unary();
        while (true) {
            if (accept('*')) {
                lhs = binary(BinaryOp::mul, lhs, unary());
            } else if (accept('/')) {
                lhs = binary(BinaryOp::div, lhs, unary());
            } else {
                return lhs;
            }
        }
    }

    NodePtr unary() {
        const DepthGuard guard(*this);
        if (accept('-')) {
            auto n = std::make_shared<Node>();
            n->kind = NodeKind::negate;
            n->children = {unary()};
            return n;
        }
        return power();
    }

    NodePtr power() {
        auto base = primary();
        if (accept('^')) {
            return binary(BinaryOp::pow, base, unary());
        }
        return base;
    }

    NodePtr primary() {
        skip_space();
        if (pos_ >= text_.size()) {
            fail("unexpected end of input", kOperand);
        }
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            auto inner = expression();
            if (!accept(')')) {
                fail("unbalanced parenthesis", {"')'"});
            }
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return number();
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            return identifier();
        }
        fail("unexpected character", kOperand);
    }

    NodePtr number() {
        const std::size_t start = pos_;
        const auto digits = [&] {
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
            }
        };
        digits();
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            digits();
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t save = pos_;
            ++pos_;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
                ++pos_;
            }
            if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                digits();
            } else {
                pos_ = save;
            }
        }
        double value = 0.0;
        const auto res = std::from_chars(text_.data() + start, text_.data() + pos_, value);
        if (res.ec != std::errc() || res.ptr != text_.data() + pos_) {
            pos_ = start;
            fail("malformed number", {"number"});
        }
        auto n = std::make_shared<Node>();
        n->kind = NodeKind::number;
        n->value = value;
        return n;
    }

    NodePtr identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        const std::string name(text_.substr(start, pos_ - start));
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == '(') {
            const FunctionInfo* info = nullptr;
            for (const auto& f : kFunctions) {
                if (f.name == name) {
                    info = &f;
                }
            }
            if (info == nullptr) {
                pos_ = start;
                fail("unknown function '" + name + "'",
                     {"sin", "cos", "exp", "ln", "sqrt", "abs", "gammafn", "min", "max"});
            }
            ++pos_;
            auto n = std::make_shared<Node>();
            n->kind = NodeKind::call;
            n->fn = info->fn;
            n->name = name;
            n->children.push_back(expression());
            for (std::size_t a = 1; a < info->arity; ++a) {
                if (!accept(',')) {
                    fail(name + " takes " + std::to_string(info->arity) + " arguments", {"','"});
                }
                n->children.push_back(expression());
            }
            if (!accept(')')) {
                fail(info->arity == 1 ? name + " takes one argument" : "unbalanced parenthesis",
                     {"')'"});
            }
            return n;
        }
        auto n = std::make_shared<Node>();
        n->kind = NodeKind::variable;
        n->name = name;
        return n;
    }
};

template <typename Lookup>
double evaluate(const Node& n, const Lookup& lookup) {
    switch (n.kind) {
    case NodeKind::number:
        return n.value;
    case NodeKind::variable:
        return lookup(n);
    case NodeKind::negate:
        return -evaluate(*n.children[0], lookup);
    case NodeKind::binary: {
        const double a = evaluate(*n.children[0], lookup);
        const double b = evaluate(*n.children[1], lookup);
        switch (n.op) {
        case BinaryOp::add: return a + b;
        case BinaryOp::sub: return a - b;
        case BinaryOp::mul: return a * b;
        case BinaryOp::div: return a / b;
        case BinaryOp::pow: return (a == 0.0 && b == 0.0) ? 1.0 : std::pow(a, b);
        }
        break;
    }
    case NodeKind::call: {
        const double a = evaluate(*n.children[0], lookup);
        switch (n.fn) {
        case Function::sin: return std::sin(a);
        case Function::cos: return std::cos(a);
        case Function::exp: return std::exp(a);
        case Function::ln:
            if (!(a > 0.0)) {
                throw EvalError("ln of non-positive argument " + std::to_string(a));
            }
            return std::log(a);
        case Function::sqrt:
            if (a < 0.0) {
                throw EvalError("sqrt of negative argument " + std::to_string(a));
            }
            return std::sqrt(a);
        case Function::abs: return std::abs(a);
        case Function::gammafn:
            try {
                return gamma_fn(a);
            } catch (const DomainError& e) {
                throw EvalError(e.what());
            }
        case Function::min: return std::min(a, evaluate(*n.children[1], lookup));
        case Function::max: return std::max(a, evaluate(*n.children[1], lookup));
        }
        break;
    }
    }
    throw EvalError("corrupt expression node");
}

void collect(const Node& n, std::set<std::string>& out) {
    if (n.kind == NodeKind::variable) {
        out.insert(n.name);
    }
    for (const auto& c : n.children) {
        collect(*c, out);
    }
}

NodePtr resolve(const NodePtr& n, const std::vector<std::string>& slots) {
    auto copy = std::make_shared<Node>(*n);
    if (copy->kind == NodeKind::variable) {
        for (std::size_t s = 0; s < slots.size(); ++s) {
            if (slots[s] == copy->name) {
                copy->slot = static_cast<int>(s);
            }
        }
        if (copy->slot < 0) {
            throw EvalError("unbound variable '" + copy->name + "'");
        }
    }
    for (auto& c : copy->children) {
        c = resolve(c, slots);
    }
    return copy;
}

}  // namespace

SyntaxError::SyntaxError(const std::string& what, std::size_t offset,
                         std::set<std::string> expected)
    : std::runtime_error(what), offset_(offset), expected_(std::move(expected)) {}

Expr parse(std::string_view text) {
    Parser p(text);
    return Expr(p.parse_all(), std::string(text));
}

double Expr::eval(const Bindings& bindings) const {
    if (!root_) {
        throw EvalError("empty expression");
    }
    return evaluate(*root_, [&](const Node& n) {
        const auto it = bindings.find(n.name);
        if (it == bindings.end()) {
            throw EvalError("unbound variable '" + n.name + "'");
        }
        return it->second;
    });
}

double Expr::eval(std::span<const double> slot_values) const {
    if (!root_) {
        throw EvalError("empty expression");
    }
    return evaluate(*root_, [&](const Node& n) {
        if (n.slot < 0 || static_cast<std::size_t>(n.slot) >= slot_values.size()) {
            throw EvalError("unbound variable '" + n.name + "'");
        }
        return slot_values[static_cast<std::size_t>(n.slot)];
    });
}

std::set<std::string> Expr::free_vars() const {
    std::set<std::string> out;
    if (root_) {
        collect(*root_, out);
    }
    return out;
}

Expr Expr::compile(const std::vector<std::string>& slots) const {
    if (!root_) {
        throw EvalError("empty expression");
    }
    return Expr(resolve(root_, slots), text_);
}

double eval(const Expr& ast, const Bindings& bindings) { return ast.eval(bindings); }

std::set<std::string> free_vars(const Expr& ast) { return ast.free_vars(); }

}  // namespace fracdiff::expr
