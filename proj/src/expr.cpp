#include "compose_approx/expr.hpp"

#include <cctype>
#include <charconv>
#include <functional>
#include <utility>

namespace compose_approx {

namespace {

ExprNodePtr make_node(ExprOp op, ExprNodePtr lhs = nullptr, ExprNodePtr rhs = nullptr) {
    auto n = std::make_shared<ExprNode>();
    n->op = op;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

ExprNodePtr make_constant(double v) {
    auto n = std::make_shared<ExprNode>();
    n->op = ExprOp::Constant;
    n->value = v;
    return n;
}

ExprNodePtr make_variable(int index) {
    auto n = std::make_shared<ExprNode>();
    n->op = ExprOp::Variable;
    n->index = index;
    return n;
}

ExprNodePtr make_pow(ExprNodePtr base, double exponent) {
    auto n = std::make_shared<ExprNode>();
    n->op = ExprOp::Pow;
    n->value = exponent;
    n->lhs = std::move(base);
    return n;
}

bool has_variable(const ExprNode& n) {
    if (n.op == ExprOp::Variable) return true;
    return (n.lhs && has_variable(*n.lhs)) || (n.rhs && has_variable(*n.rhs));
}

struct FunctionName {
    std::string_view name;
    ExprOp op;
};

constexpr FunctionName kFunctions[] = {
    {"sin", ExprOp::Sin}, {"cos", ExprOp::Cos}, {"exp", ExprOp::Exp}, {"log", ExprOp::Log}, {"sqrt", ExprOp::Sqrt},
};

class Parser {
public:
    Parser(std::string_view src, const std::vector<std::string>& names) : src_(src), names_(names) {}

    ExprNodePtr parse_all() {
        skip_space();
        if (pos_ >= src_.size()) fail("empty expression");
        auto e = expr();
        skip_space();
        if (pos_ < src_.size()) fail(std::string("unexpected character '") + src_[pos_] + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

    void skip_space() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    ExprNodePtr expr() {
        auto lhs = term();
        while (true) {
            if (accept('+'))
                lhs = make_node(ExprOp::Add, lhs, term());
            else if (accept('-'))
                lhs = make_node(ExprOp::Sub, lhs, term());
            else
                return lhs;
        }
    }

    ExprNodePtr term() {
        auto lhs = unary();
        while (true) {
            if (accept('*'))
                lhs = make_node(ExprOp::Mul, lhs, unary());
            else if (accept('/'))
                lhs = make_node(ExprOp::Div, lhs, unary());
            else
                return lhs;
        }
    }

    ExprNodePtr unary() {
        if (accept('-')) return make_node(ExprOp::Neg, unary());
        return power();
    }

    ExprNodePtr power() {
        auto base = atom();
        if (accept('^')) return make_pow(base, exponent());
        return base;
    }

    // Right-associative chain of constant exponents, folded to one literal.
    double exponent() {
        skip_space();
        const std::size_t start = pos_;
        bool negate = false;
        if (accept('-')) negate = true;
        skip_space();
        double value = 0.0;
        if (accept('(')) {
            auto inner = expr();
            expect(')');
            if (has_variable(*inner)) {
                pos_ = start;
                fail("variable exponent in '^' (exponents must be constant)");
            }
            value = detail::evaluate<double>(*inner, std::span<const double>{}, [](double v) { return v; });
        } else if (pos_ < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.')) {
            value = number();
        } else if (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) {
            fail("variable exponent in '^' (exponents must be constant)");
        } else {
            fail("expected exponent");
        }
        if (negate) value = -value;
        if (accept('^')) value = detail::apply_pow(value, exponent());
        return value;
    }

    double number() {
        const char* first = src_.data() + pos_;
        const char* last = src_.data() + src_.size();
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || ptr == first) fail("malformed number");
        pos_ += static_cast<std::size_t>(ptr - first);
        return value;
    }

    ExprNodePtr atom() {
        skip_space();
        if (pos_ >= src_.size()) fail("expected operand");
        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return make_constant(number());
        if (c == '(') {
            ++pos_;
            auto e = expr();
            expect(')');
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                ++pos_;
            const std::string_view ident = src_.substr(start, pos_ - start);
            for (std::size_t i = 0; i < names_.size(); ++i)
                if (names_[i] == ident) return make_variable(static_cast<int>(i));
            for (const auto& f : kFunctions) {
                if (f.name != ident) continue;
                skip_space();
                if (pos_ >= src_.size() || src_[pos_] != '(') fail("function '" + std::string(ident) + "' needs '('");
                ++pos_;
                auto arg = expr();
                expect(')');
                return make_node(f.op, arg);
            }
            pos_ = start;
            fail("unknown identifier '" + std::string(ident) + "'");
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    std::string_view src_;
    const std::vector<std::string>& names_;
    std::size_t pos_ = 0;
};

std::string_view function_name(ExprOp op) {
    for (const auto& f : kFunctions)
        if (f.op == op) return f.name;
    return "?";
}

std::string print_number(double v) {
    std::string s = format_roundtrip(v);
    return v < 0 ? "(" + s + ")" : s;
}

template <typename Fn>
auto with_subexpression(const ExprAst& e, Fn&& fn) {
    try {
        return fn();
    } catch (const detail::NodeDomainError& err) {
        throw DomainError(std::string(err.what()) + " in '" + to_string(*err.node(), e.names()) + "'");
    }
}

void check_arity(const ExprAst& e, std::size_t got) {
    if (got != static_cast<std::size_t>(e.arity())) {
        throw ArgumentError("expression takes " + std::to_string(e.arity()) + " variable(s), got " +
                            std::to_string(got));
    }
}

}  // namespace

ExprAst::ExprAst(ExprNodePtr root, std::vector<std::string> names) : root_(std::move(root)), names_(std::move(names)) {
    if (!root_) throw ArgumentError("empty expression tree");
    std::function<void(const ExprNode&)> check = [&](const ExprNode& n) {
        if (n.op == ExprOp::Variable && (n.index < 0 || n.index >= arity()))
            throw ArgumentError("variable index " + std::to_string(n.index) + " outside declared arity");
        if (n.lhs) check(*n.lhs);
        if (n.rhs) check(*n.rhs);
    };
    check(*root_);
}

std::string ExprAst::to_string() const { return compose_approx::to_string(*root_, names_); }

bool operator==(const ExprAst& a, const ExprAst& b) {
    return a.names_ == b.names_ && structurally_equal(*a.root_, *b.root_);
}

std::string to_string(const ExprNode& n, const std::vector<std::string>& names) {
    switch (n.op) {
        case ExprOp::Constant:
            return print_number(n.value);
        case ExprOp::Variable:
            return n.index < static_cast<int>(names.size()) ? names[static_cast<std::size_t>(n.index)]
                                                            : "v" + std::to_string(n.index);
        case ExprOp::Neg:
            return "(-" + to_string(*n.lhs, names) + ")";
        case ExprOp::Add:
            return "(" + to_string(*n.lhs, names) + "+" + to_string(*n.rhs, names) + ")";
        case ExprOp::Sub:
            return "(" + to_string(*n.lhs, names) + "-" + to_string(*n.rhs, names) + ")";
        case ExprOp::Mul:
            return "(" + to_string(*n.lhs, names) + "*" + to_string(*n.rhs, names) + ")";
        case ExprOp::Div:
            return "(" + to_string(*n.lhs, names) + "/" + to_string(*n.rhs, names) + ")";
        case ExprOp::Pow:
            return "(" + to_string(*n.lhs, names) + "^" + print_number(n.value) + ")";
        default:
            return std::string(function_name(n.op)) + "(" + to_string(*n.lhs, names) + ")";
    }
}

bool structurally_equal(const ExprNode& a, const ExprNode& b) {
    if (a.op != b.op) return false;
    if (a.op == ExprOp::Constant || a.op == ExprOp::Pow) {
        if (a.value != b.value) return false;
    }
    if (a.op == ExprOp::Variable && a.index != b.index) return false;
    if (static_cast<bool>(a.lhs) != static_cast<bool>(b.lhs)) return false;
    if (static_cast<bool>(a.rhs) != static_cast<bool>(b.rhs)) return false;
    if (a.lhs && !structurally_equal(*a.lhs, *b.lhs)) return false;
    if (a.rhs && !structurally_equal(*a.rhs, *b.rhs)) return false;
    return true;
}

ExprAst parse(std::string_view src, int arity, std::vector<std::string> names) {
    if (arity < 0 || names.size() != static_cast<std::size_t>(arity)) {
        throw ArgumentError("arity " + std::to_string(arity) + " does not match " + std::to_string(names.size()) +
                            " variable names");
    }
    for (const auto& name : names) {
        for (const auto& f : kFunctions)
            if (f.name == name) throw ArgumentError("variable name '" + name + "' shadows a function");
    }
    Parser parser(src, names);
    ExprNodePtr root = parser.parse_all();
    return ExprAst(std::move(root), std::move(names));
}

std::vector<std::string> outer_variable_names(int arity) {
    std::vector<std::string> names;
    for (int i = 1; i <= arity; ++i) names.push_back("y" + std::to_string(i));
    return names;
}

ExprAst parse_outer(std::string_view src, int arity) { return parse(src, arity, outer_variable_names(arity)); }

ExprAst parse_univariate(std::string_view src) { return parse(src, 1, {"x"}); }

double eval_scalar(const ExprAst& e, std::span<const double> point) {
    check_arity(e, point.size());
    return with_subexpression(e, [&] { return detail::evaluate<double>(e.root(), point, [](double v) { return v; }); });
}

double eval_scalar(const ExprAst& e, double x) { return eval_scalar(e, std::span<const double>(&x, 1)); }

Jet eval_jet1(const ExprAst& e, const Jet& base) { return eval_jet1(e, std::span<const Jet>(&base, 1)); }

Jet eval_jet1(const ExprAst& e, std::span<const Jet> vars) {
    check_arity(e, vars.size());
    const int order = vars.empty() ? 0 : vars.front().order();
    for (const auto& v : vars)
        if (v.order() != order) throw ArgumentError("eval_jet1: variable jets have different orders");
    return with_subexpression(e, [&] {
        return detail::evaluate<Jet>(e.root(), vars, [order](double v) { return Jet::constant(v, order); });
    });
}

MultiJet eval_jetn(const ExprAst& e, std::span<const double> point, int order, const JetLimits& limits) {
    check_arity(e, point.size());
    const int dim = std::max(1, e.arity());
    auto basis = MonomialBasis::get(dim, order, limits);
    std::vector<MultiJet> vars;
    vars.reserve(point.size());
    for (std::size_t j = 0; j < point.size(); ++j) vars.push_back(MultiJet::variable(basis, static_cast<int>(j), point[j]));
    return with_subexpression(e, [&] {
        return detail::evaluate<MultiJet>(e.root(), std::span<const MultiJet>(vars),
                                          [&basis](double v) { return MultiJet::constant(basis, v); });
    });
}

double derivative_at(const ExprAst& e, double x, int r) {
    return eval_jet1(e, Jet::lift(x, r)).derivative(r);
}

}  // namespace compose_approx
