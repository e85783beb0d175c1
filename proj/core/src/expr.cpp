#include "zmc/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <optional>

#include "zmc/errors.hpp"

namespace zmc {

namespace {

constexpr std::array<std::pair<std::string_view, UnaryOp>, 10> kFunctions{{
    {"exp", UnaryOp::exp},
    {"log", UnaryOp::log},
    {"sin", UnaryOp::sin},
    {"cos", UnaryOp::cos},
    {"tan", UnaryOp::tan},
    {"atan", UnaryOp::atan},
    {"sinh", UnaryOp::sinh},
    {"cosh", UnaryOp::cosh},
    {"tanh", UnaryOp::tanh},
    {"sqrt", UnaryOp::sqrt},
}};

std::optional<UnaryOp> lookup_function(std::string_view name) {
    for (const auto& [n, op] : kFunctions) {
        if (n == name) return op;
    }
    return std::nullopt;
}

bool is_reserved(std::string_view name) { return name == "i" || lookup_function(name).has_value(); }

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_cplx(cplx z) {
    return "(" + format_double(z.real()) + (std::signbit(z.imag()) ? " - " : " + ") +
           format_double(std::abs(z.imag())) + "i)";
}

// Exact integer power by repeated squaring; keeps (1+i)^3 exact.
cplx int_pow(cplx base, int k) {
    unsigned long long e = k < 0 ? static_cast<unsigned long long>(-static_cast<long long>(k))
                                 : static_cast<unsigned long long>(k);
    cplx result(1.0, 0.0);
    cplx b = base;
    while (e) {
        if (e & 1ULL) result *= b;
        e >>= 1ULL;
        if (e) b *= b;
    }
    return k < 0 ? cplx(1.0, 0.0) / result : result;
}

cplx apply_unary(UnaryOp op, cplx a) {
    switch (op) {
        case UnaryOp::neg: return -a;
        case UnaryOp::exp: return std::exp(a);
        case UnaryOp::log: return std::log(a);
        case UnaryOp::sin: return std::sin(a);
        case UnaryOp::cos: return std::cos(a);
        case UnaryOp::tan: return std::tan(a);
        case UnaryOp::atan: return std::atan(a);
        case UnaryOp::sinh: return std::sinh(a);
        case UnaryOp::cosh: return std::cosh(a);
        case UnaryOp::tanh: return std::tanh(a);
        case UnaryOp::sqrt: return std::sqrt(a);
    }
    return a;
}

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// ---------------------------------------------------------------------------
// Parser

class Parser {
public:
    Parser(std::string_view src, std::span<const std::string> names) : src_(src), names_(names) {}

    NodePtr run() {
        NodePtr e = parse_expr();
        skip_ws();
        if (pos_ != src_.size()) fail("unexpected character '" + std::string(1, src_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, pos_); }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < src_.size() && src_[pos_] == c;
    }

    bool accept(char c) {
        if (peek(c)) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) {
            if (pos_ >= src_.size()) fail(std::string("expected '") + c + "' but input ended");
            fail(std::string("expected '") + c + "'");
        }
    }

    NodePtr parse_expr() {
        NodePtr lhs = parse_term();
        for (;;) {
            if (accept('+')) {
                lhs = node::binary(BinaryOp::add, lhs, parse_term());
            } else if (accept('-')) {
                lhs = node::binary(BinaryOp::sub, lhs, parse_term());
            } else {
                return lhs;
            }
        }
    }

    NodePtr parse_term() {
        NodePtr lhs = parse_unary();
        for (;;) {
            if (accept('*')) {
                lhs = node::binary(BinaryOp::mul, lhs, parse_unary());
            } else if (accept('/')) {
                lhs = node::binary(BinaryOp::div, lhs, parse_unary());
            } else {
                return lhs;
            }
        }
    }

    NodePtr parse_unary() {
        if (accept('-')) return node::unary(UnaryOp::neg, parse_unary());
        if (accept('+')) return parse_unary();
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_primary();
        while (accept('^')) base = node::power(base, parse_exponent());
        return base;
    }

    int parse_exponent() {
        const bool paren = accept('(');
        int sign = 1;
        if (accept('-')) {
            sign = -1;
        } else {
            accept('+');
        }
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (start == pos_) {
            if (pos_ >= src_.size()) fail("expected integer exponent but input ended");
            fail("expected integer exponent");
        }
        if (pos_ < src_.size() && (src_[pos_] == '.' || src_[pos_] == 'e' || src_[pos_] == 'E')) {
            fail("exponent must be an integer");
        }
        int value = 0;
        auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, value);
        if (ec != std::errc{}) {
            pos_ = start;
            fail("exponent out of range");
        }
        (void)ptr;
        if (paren) expect(')');
        return sign * value;
    }

    NodePtr parse_number() {
        const std::size_t start = pos_;
        auto digits = [&] {
            const std::size_t s = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            return pos_ - s;
        };
        std::size_t n = digits();
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            n += digits();
        }
        if (n == 0) {
            pos_ = start;
            fail("malformed number");
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            const std::size_t save = pos_;
            ++pos_;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
            if (digits() == 0) {
                pos_ = save;
                fail("malformed exponent in number");
            }
        }
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, value);
        if (ec != std::errc{} || ptr != src_.data() + pos_) {
            pos_ = start;
            fail("malformed number");
        }
        return node::constant(cplx(value, 0.0));
    }

    NodePtr parse_primary() {
        skip_ws();
        if (pos_ >= src_.size()) fail("unexpected end of input");
        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (c == '(') {
            ++pos_;
            NodePtr inner = parse_expr();
            expect(')');
            return inner;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                ++pos_;
            }
            const std::string_view name = src_.substr(start, pos_ - start);
            if (auto op = lookup_function(name)) {
                if (!peek('(')) fail("expected '(' after function '" + std::string(name) + "'");
                ++pos_;
                NodePtr arg = parse_expr();
                expect(')');
                return node::unary(*op, arg);
            }
            for (std::size_t s = 0; s < names_.size(); ++s) {
                if (names_[s] == name) {
                    if (peek('(')) fail("variable '" + std::string(name) + "' is not a function");
                    return node::variable(static_cast<int>(s));
                }
            }
            if (name == "i") return node::constant(cplx(0.0, 1.0));
            throw UnknownIdentifier("unknown identifier '" + std::string(name) + "' at offset " +
                                    std::to_string(start));
        }
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    std::string_view src_;
    std::span<const std::string> names_;
    std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Evaluator

class Evaluator {
public:
    Evaluator(std::span<const cplx> args, std::span<const std::string> names)
        : args_(args), names_(names) {}

    cplx run(const ExprNode& n) const {
        const cplx v = step(n);
        if (!finite(v)) fail(n, "non-finite value");
        return v;
    }

private:
    [[noreturn]] void fail(const ExprNode& n, const std::string& why) const {
        std::string where;
        for (std::size_t s = 0; s < args_.size(); ++s) {
            if (!where.empty()) where += ", ";
            where += (s < names_.size() ? names_[s] : "arg" + std::to_string(s)) + " = " +
                     format_cplx(args_[s]);
        }
        throw EvalDomainError(why + " in '" + print_tree(n, names_) + "' at " + where);
    }

    cplx step(const ExprNode& n) const {
        switch (n.kind) {
            case ExprNode::Kind::constant: return n.value;
            case ExprNode::Kind::variable: return args_[static_cast<std::size_t>(n.slot)];
            case ExprNode::Kind::unary: {
                const cplx a = run(*n.lhs);
                if (n.unary_op == UnaryOp::log && a == cplx(0.0, 0.0)) fail(n, "log of zero");
                if (n.unary_op == UnaryOp::atan && (a == cplx(0.0, 1.0) || a == cplx(0.0, -1.0))) {
                    fail(n, "atan branch point");
                }
                return apply_unary(n.unary_op, a);
            }
            case ExprNode::Kind::binary: {
                const cplx a = run(*n.lhs);
                const cplx b = run(*n.rhs);
                switch (n.binary_op) {
                    case BinaryOp::add: return a + b;
                    case BinaryOp::sub: return a - b;
                    case BinaryOp::mul: return a * b;
                    case BinaryOp::div:
                        if (b == cplx(0.0, 0.0)) fail(n, "division by zero");
                        return a / b;
                }
                return a;
            }
            case ExprNode::Kind::power: {
                const cplx a = run(*n.lhs);
                if (n.exponent < 0 && a == cplx(0.0, 0.0)) fail(n, "negative power of zero");
                return int_pow(a, n.exponent);
            }
        }
        return {};
    }

    std::span<const cplx> args_;
    std::span<const std::string> names_;
};

// ---------------------------------------------------------------------------
// Printer

void print_into(const ExprNode& n, std::span<const std::string> names, std::string& out) {
    switch (n.kind) {
        case ExprNode::Kind::constant: {
            const cplx v = n.value;
            if (v == cplx(0.0, 1.0)) {
                out += "i";
            } else if (v.imag() == 0.0 && !std::signbit(v.real()) && !std::signbit(v.imag())) {
                out += format_double(v.real());
            } else {
                // Folded constants: parses back to the same value.
                out += "(";
                out += format_double(v.real());
                out += v.imag() < 0 ? " - " : " + ";
                out += format_double(std::abs(v.imag()));
                out += "*i)";
            }
            return;
        }
        case ExprNode::Kind::variable:
            out += static_cast<std::size_t>(n.slot) < names.size() ? names[static_cast<std::size_t>(n.slot)]
                                                                   : "_" + std::to_string(n.slot);
            return;
        case ExprNode::Kind::unary:
            if (n.unary_op == UnaryOp::neg) {
                out += "(-";
                print_into(*n.lhs, names, out);
                out += ")";
            } else {
                out += to_string(n.unary_op);
                out += "(";
                print_into(*n.lhs, names, out);
                out += ")";
            }
            return;
        case ExprNode::Kind::binary: {
            static constexpr std::array<const char*, 4> ops{" + ", " - ", " * ", " / "};
            out += "(";
            print_into(*n.lhs, names, out);
            out += ops[static_cast<std::size_t>(n.binary_op)];
            print_into(*n.rhs, names, out);
            out += ")";
            return;
        }
        case ExprNode::Kind::power:
            out += "(";
            print_into(*n.lhs, names, out);
            out += ")^";
            if (n.exponent < 0) {
                out += "(" + std::to_string(n.exponent) + ")";
            } else {
                out += std::to_string(n.exponent);
            }
            return;
    }
}

bool is_value(const ExprNode& n, cplx v) { return n.kind == ExprNode::Kind::constant && n.value == v; }

}  // namespace

std::string_view to_string(UnaryOp op) {
    if (op == UnaryOp::neg) return "neg";
    for (const auto& [n, o] : kFunctions) {
        if (o == op) return n;
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Node constructors

namespace node {

NodePtr constant(cplx c) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::constant;
    n->value = c;
    return n;
}

NodePtr variable(int slot) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::variable;
    n->slot = slot;
    return n;
}

NodePtr unary(UnaryOp op, NodePtr a) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::unary;
    n->unary_op = op;
    n->lhs = std::move(a);
    return n;
}

NodePtr binary(BinaryOp op, NodePtr a, NodePtr b) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::binary;
    n->binary_op = op;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
}

NodePtr power(NodePtr base, int exponent) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::power;
    n->exponent = exponent;
    n->lhs = std::move(base);
    return n;
}

bool is_constant(const ExprNode& n) { return n.kind == ExprNode::Kind::constant; }

bool equals(const ExprNode& a, const ExprNode& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case ExprNode::Kind::constant: return a.value == b.value;
        case ExprNode::Kind::variable: return a.slot == b.slot;
        case ExprNode::Kind::unary: return a.unary_op == b.unary_op && equals(*a.lhs, *b.lhs);
        case ExprNode::Kind::binary:
            return a.binary_op == b.binary_op && equals(*a.lhs, *b.lhs) && equals(*a.rhs, *b.rhs);
        case ExprNode::Kind::power: return a.exponent == b.exponent && equals(*a.lhs, *b.lhs);
    }
    return false;
}

NodePtr add(NodePtr a, NodePtr b) {
    if (is_constant(*a) && is_constant(*b)) return constant(a->value + b->value);
    if (is_value(*a, 0.0)) return b;
    if (is_value(*b, 0.0)) return a;
    return binary(BinaryOp::add, std::move(a), std::move(b));
}

NodePtr sub(NodePtr a, NodePtr b) {
    if (is_constant(*a) && is_constant(*b)) return constant(a->value - b->value);
    if (is_value(*b, 0.0)) return a;
    if (is_value(*a, 0.0)) return neg(std::move(b));
    return binary(BinaryOp::sub, std::move(a), std::move(b));
}

NodePtr mul(NodePtr a, NodePtr b) {
    if (is_constant(*a) && is_constant(*b)) return constant(a->value * b->value);
    if (is_value(*a, 0.0) || is_value(*b, 0.0)) return constant(0.0);
    if (is_value(*a, 1.0)) return b;
    if (is_value(*b, 1.0)) return a;
    return binary(BinaryOp::mul, std::move(a), std::move(b));
}

NodePtr div(NodePtr a, NodePtr b) {
    if (is_constant(*a) && is_constant(*b) && b->value != cplx(0.0, 0.0)) {
        return constant(a->value / b->value);
    }
    if (is_value(*a, 0.0) && !is_value(*b, 0.0)) return constant(0.0);
    if (is_value(*b, 1.0)) return a;
    return binary(BinaryOp::div, std::move(a), std::move(b));
}

NodePtr neg(NodePtr a) {
    if (is_constant(*a)) return constant(-a->value);
    if (a->kind == ExprNode::Kind::unary && a->unary_op == UnaryOp::neg) return a->lhs;
    return unary(UnaryOp::neg, std::move(a));
}

NodePtr pow(NodePtr base, int exponent) {
    if (exponent == 0) return constant(1.0);
    if (exponent == 1) return base;
    if (is_constant(*base) && !(exponent < 0 && base->value == cplx(0.0, 0.0))) {
        return constant(int_pow(base->value, exponent));
    }
    return power(std::move(base), exponent);
}

NodePtr apply(UnaryOp op, NodePtr a) {
    if (op == UnaryOp::neg) return neg(std::move(a));
    if (is_constant(*a)) {
        const cplx v = a->value;
        const bool singular = (op == UnaryOp::log && v == cplx(0.0, 0.0)) ||
                              (op == UnaryOp::atan && (v == cplx(0.0, 1.0) || v == cplx(0.0, -1.0)));
        if (!singular) {
            const cplx r = apply_unary(op, v);
            if (finite(r)) return constant(r);
        }
    }
    return unary(op, std::move(a));
}

}  // namespace node

// ---------------------------------------------------------------------------

NodePtr parse_tree(std::string_view src, std::span<const std::string> names) {
    return Parser(src, names).run();
}

cplx evaluate(const ExprNode& n, std::span<const cplx> args, std::span<const std::string> names) {
    return Evaluator(args, names).run(n);
}

NodePtr derive(const NodePtr& np, int slot) {
    using namespace node;
    const ExprNode& n = *np;
    switch (n.kind) {
        case ExprNode::Kind::constant: return constant(0.0);
        case ExprNode::Kind::variable: return constant(n.slot == slot ? 1.0 : 0.0);
        case ExprNode::Kind::unary: {
            const NodePtr& a = n.lhs;
            NodePtr da = derive(a, slot);
            if (is_value(*da, 0.0)) return constant(0.0);
            switch (n.unary_op) {
                case UnaryOp::neg: return neg(da);
                case UnaryOp::exp: return mul(apply(UnaryOp::exp, a), da);
                case UnaryOp::log: return div(da, a);
                case UnaryOp::sin: return mul(apply(UnaryOp::cos, a), da);
                case UnaryOp::cos: return neg(mul(apply(UnaryOp::sin, a), da));
                case UnaryOp::tan: return mul(pow(apply(UnaryOp::cos, a), -2), da);
                case UnaryOp::atan: return div(da, add(constant(1.0), pow(a, 2)));
                case UnaryOp::sinh: return mul(apply(UnaryOp::cosh, a), da);
                case UnaryOp::cosh: return mul(apply(UnaryOp::sinh, a), da);
                case UnaryOp::tanh: return mul(pow(apply(UnaryOp::cosh, a), -2), da);
                case UnaryOp::sqrt: return div(da, mul(constant(2.0), apply(UnaryOp::sqrt, a)));
            }
            return constant(0.0);
        }
        case ExprNode::Kind::binary: {
            const NodePtr& a = n.lhs;
            const NodePtr& b = n.rhs;
            NodePtr da = derive(a, slot);
            NodePtr db = derive(b, slot);
            switch (n.binary_op) {
                case BinaryOp::add: return add(da, db);
                case BinaryOp::sub: return sub(da, db);
                case BinaryOp::mul: return add(mul(da, b), mul(a, db));
                case BinaryOp::div:
                    if (is_value(*db, 0.0)) return div(da, b);
                    return div(sub(mul(da, b), mul(a, db)), pow(b, 2));
            }
            return constant(0.0);
        }
        case ExprNode::Kind::power: {
            NodePtr da = derive(n.lhs, slot);
            if (is_value(*da, 0.0)) return constant(0.0);
            return mul(mul(constant(static_cast<double>(n.exponent)), pow(n.lhs, n.exponent - 1)), da);
        }
    }
    return constant(0.0);
}

std::string print_tree(const ExprNode& n, std::span<const std::string> names) {
    std::string out;
    print_into(n, names, out);
    return out;
}

// ---------------------------------------------------------------------------
// AnalyticExpr

AnalyticExpr::AnalyticExpr(NodePtr root, std::string varname)
    : root_(std::move(root)), names_{std::move(varname)} {
    if (is_reserved(names_[0])) throw UnknownIdentifier("reserved name used as variable: " + names_[0]);
}

AnalyticExpr AnalyticExpr::constant(cplx c, std::string varname) {
    return {node::constant(c), std::move(varname)};
}

AnalyticExpr AnalyticExpr::identity(std::string varname) { return {node::variable(0), std::move(varname)}; }

cplx AnalyticExpr::operator()(cplx w) const {
    const std::array<cplx, 1> args{w};
    return evaluate(*root_, args, names_);
}

AnalyticExpr AnalyticExpr::derivative() const { return {derive(root_, 0), names_[0]}; }

AnalyticExpr AnalyticExpr::renamed(std::string varname) const { return {root_, std::move(varname)}; }

std::string AnalyticExpr::str() const { return print_tree(*root_, names_); }

AnalyticExpr operator*(cplx scale, const AnalyticExpr& e) {
    return {node::mul(node::constant(scale), e.root_), e.varname()};
}

AnalyticExpr operator+(const AnalyticExpr& a, const AnalyticExpr& b) {
    return {node::add(a.root_, b.root_), a.varname()};
}

AnalyticExpr parse(std::string_view src, std::string_view varname) {
    const std::array<std::string, 1> names{std::string(varname)};
    if (is_reserved(names[0])) throw UnknownIdentifier("reserved name used as variable: " + names[0]);
    return {parse_tree(src, names), names[0]};
}

cplx eval(const AnalyticExpr& e, cplx w) { return e(w); }

AnalyticExpr differentiate(const AnalyticExpr& e) { return e.derivative(); }

std::string print(const AnalyticExpr& e) { return e.str(); }

// ---------------------------------------------------------------------------
// BivariateExpr

BivariateExpr::BivariateExpr(NodePtr root, std::string xname, std::string yname)
    : root_(std::move(root)), names_{std::move(xname), std::move(yname)} {}

BivariateExpr BivariateExpr::parse(std::string_view src, std::string_view xname, std::string_view yname) {
    const std::array<std::string, 2> names{std::string(xname), std::string(yname)};
    for (const auto& n : names) {
        if (is_reserved(n)) throw UnknownIdentifier("reserved name used as variable: " + n);
    }
    return {parse_tree(src, names), names[0], names[1]};
}

cplx BivariateExpr::operator()(cplx x, cplx y) const {
    const std::array<cplx, 2> args{x, y};
    return evaluate(*root_, args, names_);
}

BivariateExpr BivariateExpr::partial(int slot) const { return {derive(root_, slot), names_[0], names_[1]}; }

std::string BivariateExpr::str() const { return print_tree(*root_, names_); }

}  // namespace zmc
