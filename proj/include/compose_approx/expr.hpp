#pragma once

// A small expression language for the outer function f(y1, ..., yn) and the
// inner components g_j(x). Evaluation is generic over double, Jet1 and JetN.
//
//   expr     := term (('+' | '-') term)*
//   term     := unary (('*' | '/') unary)*
//   unary    := '-' unary | power
//   power    := atom ('^' exponent)?
//   exponent := '-'? (number | '(' constant-expr ')') ('^' exponent)?
//   atom     := number | name | func '(' expr ')' | '(' expr ')'
//
// func is one of sin, cos, exp, log, sqrt. Exponents are folded to literals.

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "compose_approx/errors.hpp"
#include "compose_approx/jet1.hpp"
#include "compose_approx/jetn.hpp"

namespace compose_approx {

enum class ExprOp { Constant, Variable, Neg, Sin, Cos, Exp, Log, Sqrt, Add, Sub, Mul, Div, Pow };

struct ExprNode {
    ExprOp op;
    double value = 0.0;  // literal for Constant, exponent for Pow
    int index = 0;       // Variable
    std::shared_ptr<const ExprNode> lhs;
    std::shared_ptr<const ExprNode> rhs;
};

using ExprNodePtr = std::shared_ptr<const ExprNode>;

class ExprAst {
public:
    ExprAst(ExprNodePtr root, std::vector<std::string> names);

    const ExprNode& root() const noexcept { return *root_; }
    const ExprNodePtr& root_ptr() const noexcept { return root_; }
    int arity() const noexcept { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& names() const noexcept { return names_; }

    /// Fully parenthesised text that parses back to the same tree.
    std::string to_string() const;

    friend bool operator==(const ExprAst& a, const ExprAst& b);

private:
    ExprNodePtr root_;
    std::vector<std::string> names_;
};

std::string to_string(const ExprNode& node, const std::vector<std::string>& names);
bool structurally_equal(const ExprNode& a, const ExprNode& b);

ExprAst parse(std::string_view src, int arity, std::vector<std::string> names);

/// Outer function in y1..yn.
ExprAst parse_outer(std::string_view src, int arity);
/// Univariate function in x.
ExprAst parse_univariate(std::string_view src);

std::vector<std::string> outer_variable_names(int arity);

namespace detail {

inline double apply_pow(double x, double p) {
    if (p == std::trunc(p) && std::abs(p) < 1e9) return int_pow(x, static_cast<long>(p));
    if (x < 0.0) throw DomainError("power " + format_roundtrip(p) + " of negative base " + format_roundtrip(x));
    return std::pow(x, p);
}

inline double apply_log(double x) {
    if (!(x > 0.0)) throw DomainError("log of non-positive value " + format_roundtrip(x));
    return std::log(x);
}

inline double apply_sqrt(double x) {
    if (x < 0.0) throw DomainError("sqrt of negative value " + format_roundtrip(x));
    return std::sqrt(x);
}

inline double apply_div(double a, double b) {
    if (b == 0.0) throw DomainError("division by zero");
    return a / b;
}

template <typename T>
T apply_pow(const T& x, double p) {
    return pow(x, p);
}
template <typename T>
T apply_log(const T& x) {
    return log(x);
}
template <typename T>
T apply_sqrt(const T& x) {
    return sqrt(x);
}
template <typename T>
T apply_div(const T& a, const T& b) {
    return a / b;
}

// Raised inside evaluation; the public eval_* entry points translate it into a
// DomainError naming the subexpression.
class NodeDomainError : public DomainError {
public:
    NodeDomainError(const std::string& what, const ExprNode* node) : DomainError(what), node_(node) {}
    const ExprNode* node() const noexcept { return node_; }

private:
    const ExprNode* node_;
};

[[noreturn]] inline void rethrow_domain(const DomainError& e, const ExprNode& node) {
    throw NodeDomainError(e.what(), &node);
}

template <typename T, typename MakeConstant>
T evaluate(const ExprNode& node, std::span<const T> vars, const MakeConstant& make_constant) {
    using std::cos;
    using std::exp;
    using std::sin;
    switch (node.op) {
        case ExprOp::Constant:
            return make_constant(node.value);
        case ExprOp::Variable:
            return vars[static_cast<std::size_t>(node.index)];
        case ExprOp::Neg:
            return -evaluate(*node.lhs, vars, make_constant);
        case ExprOp::Add:
            return evaluate(*node.lhs, vars, make_constant) + evaluate(*node.rhs, vars, make_constant);
        case ExprOp::Sub:
            return evaluate(*node.lhs, vars, make_constant) - evaluate(*node.rhs, vars, make_constant);
        case ExprOp::Mul:
            return evaluate(*node.lhs, vars, make_constant) * evaluate(*node.rhs, vars, make_constant);
        default:
            break;
    }
    const T a = evaluate(*node.lhs, vars, make_constant);
    if (node.op == ExprOp::Div) {
        const T b = evaluate(*node.rhs, vars, make_constant);
        try {
            return apply_div(a, b);
        } catch (const DomainError& e) {
            rethrow_domain(e, node);
        }
    }
    try {
        switch (node.op) {
            case ExprOp::Sin:
                return sin(a);
            case ExprOp::Cos:
                return cos(a);
            case ExprOp::Exp:
                return exp(a);
            case ExprOp::Log:
                return apply_log(a);
            case ExprOp::Sqrt:
                return apply_sqrt(a);
            case ExprOp::Pow:
                return apply_pow(a, node.value);
            default:
                break;
        }
    } catch (const DomainError& e) {
        rethrow_domain(e, node);
    }
    throw ArgumentError("malformed expression node");
}

}  // namespace detail

double eval_scalar(const ExprAst& e, std::span<const double> point);
double eval_scalar(const ExprAst& e, double x);

/// Univariate expression on a jet (usually Jet::lift(x0, r)).
Jet eval_jet1(const ExprAst& e, const Jet& base);
/// Multivariate expression with one jet per variable (composition with inner jets).
Jet eval_jet1(const ExprAst& e, std::span<const Jet> vars);

/// All mixed partials D^l f(y0), |l| <= order, as a multivariate jet.
MultiJet eval_jetn(const ExprAst& e, std::span<const double> point, int order, const JetLimits& limits = {});

inline MultiJet jetn_partials(const ExprAst& f, std::span<const double> y0, int order,
                              const JetLimits& limits = {}) {
    return eval_jetn(f, y0, order, limits);
}

/// f^(r)(x) of a univariate expression.
double derivative_at(const ExprAst& e, double x, int r);

}  // namespace compose_approx
