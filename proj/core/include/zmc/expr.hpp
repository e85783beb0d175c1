#pragma once

// Complex-analytic expressions in one free variable: parsing, evaluation
// with principal branches, and exact symbolic differentiation.
//
// Grammar (whitespace insensitive):
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' exponent)*
//   exponent:= ['+' | '-'] integer | '(' ['+' | '-'] integer ')'
//   primary := number | 'i' | variable | function '(' expr ')' | '(' expr ')'
//
// Functions: exp log sin cos tan atan sinh cosh tanh sqrt.
// Exponents are integers so derivatives stay inside the grammar; a general
// power a^b is written exp(b*log(a)).

#include <complex>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace zmc {

using cplx = std::complex<double>;

enum class UnaryOp { neg, exp, log, sin, cos, tan, atan, sinh, cosh, tanh, sqrt };
enum class BinaryOp { add, sub, mul, div };

std::string_view to_string(UnaryOp op);

struct ExprNode;
using NodePtr = std::shared_ptr<const ExprNode>;

/// Immutable expression tree node. Variables are referenced by slot index so
/// the same tree type serves one- and two-variable expressions.
struct ExprNode {
    enum class Kind { constant, variable, unary, binary, power };

    Kind kind = Kind::constant;
    cplx value{};        // constant
    int slot = 0;        // variable
    UnaryOp unary_op = UnaryOp::neg;
    BinaryOp binary_op = BinaryOp::add;
    int exponent = 0;    // power
    NodePtr lhs;         // unary operand, binary left, power base
    NodePtr rhs;         // binary right
};

namespace node {
// Raw constructors: build exactly the requested node.
NodePtr constant(cplx c);
NodePtr variable(int slot);
NodePtr unary(UnaryOp op, NodePtr a);
NodePtr binary(BinaryOp op, NodePtr a, NodePtr b);
NodePtr power(NodePtr base, int exponent);

// Folding constructors: fold constant operands and drop additive zeros and
// multiplicative ones. Used by differentiation.
NodePtr add(NodePtr a, NodePtr b);
NodePtr sub(NodePtr a, NodePtr b);
NodePtr mul(NodePtr a, NodePtr b);
NodePtr div(NodePtr a, NodePtr b);
NodePtr neg(NodePtr a);
NodePtr pow(NodePtr base, int exponent);
NodePtr apply(UnaryOp op, NodePtr a);

bool is_constant(const ExprNode& n);
bool equals(const ExprNode& a, const ExprNode& b);
}  // namespace node

/// Parse `src` with the given variable names (slot i is names[i]).
NodePtr parse_tree(std::string_view src, std::span<const std::string> names);

/// Evaluate with principal branches of log, sqrt and atan.
/// Throws EvalDomainError naming the offending subexpression.
cplx evaluate(const ExprNode& n, std::span<const cplx> args, std::span<const std::string> names);

/// Exact derivative with respect to variable `slot`.
NodePtr derive(const NodePtr& n, int slot);

/// Fully parenthesized text that parses back to the identical tree for
/// trees produced by the parser.
std::string print_tree(const ExprNode& n, std::span<const std::string> names);

/// A parsed analytic function of one complex variable.
class AnalyticExpr {
public:
    AnalyticExpr(NodePtr root, std::string varname);

    static AnalyticExpr constant(cplx c, std::string varname = "w");
    static AnalyticExpr identity(std::string varname = "w");

    cplx operator()(cplx w) const;
    double real_at(double t) const { return (*this)(cplx(t, 0.0)).real(); }

    AnalyticExpr derivative() const;

    /// Same function written in another variable name.
    AnalyticExpr renamed(std::string varname) const;

    const NodePtr& root() const noexcept { return root_; }
    const std::string& varname() const noexcept { return names_[0]; }
    std::string str() const;

    friend AnalyticExpr operator*(cplx scale, const AnalyticExpr& e);
    friend AnalyticExpr operator+(const AnalyticExpr& a, const AnalyticExpr& b);

private:
    NodePtr root_;
    std::vector<std::string> names_;
};

AnalyticExpr parse(std::string_view src, std::string_view varname);
cplx eval(const AnalyticExpr& e, cplx w);
AnalyticExpr differentiate(const AnalyticExpr& e);
std::string print(const AnalyticExpr& e);

/// Two-variable expression Z(x, y) used for user-defined graph surfaces.
class BivariateExpr {
public:
    BivariateExpr(NodePtr root, std::string xname = "x", std::string yname = "y");

    static BivariateExpr parse(std::string_view src, std::string_view xname = "x",
                               std::string_view yname = "y");

    cplx operator()(cplx x, cplx y) const;
    /// Partial derivative; slot 0 is x, slot 1 is y.
    BivariateExpr partial(int slot) const;

    const NodePtr& root() const noexcept { return root_; }
    std::string str() const;

private:
    NodePtr root_;
    std::vector<std::string> names_;
};

}  // namespace zmc
