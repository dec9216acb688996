#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "statdiff/errors.hpp"

namespace statdiff {

enum class ExprKind { Const, Var, Add, Sub, Mul, Div, Pow, Exp, Ln, Sin, Cos, Sqrt };

// Immutable AST of a univariate real function g(x). Nodes are shared;
// copies are cheap and expressions are safe to evaluate concurrently.
class Expression {
 public:
  // Defaults to the constant 0.
  Expression();

  static Expression constant(double value);
  static Expression variable();
  static Expression add(Expression lhs, Expression rhs);
  static Expression sub(Expression lhs, Expression rhs);
  static Expression mul(Expression lhs, Expression rhs);
  static Expression div(Expression lhs, Expression rhs);
  static Expression pow(Expression base, int exponent);
  static Expression exp(Expression arg);
  static Expression ln(Expression arg);
  static Expression sin(Expression arg);
  static Expression cos(Expression arg);
  static Expression sqrt(Expression arg);

  ExprKind kind() const noexcept;
  int arity() const noexcept;          // 0, 1 or 2
  double value() const;               // Const only
  int exponent() const;               // Pow only
  Expression child(int i = 0) const;  // i < arity()

  // Structural equality (exact constant comparison, no simplification).
  bool operator==(const Expression& other) const;
  bool operator!=(const Expression& other) const { return !(*this == other); }

 private:
  struct Node;
  friend struct ExprAccess;
  explicit Expression(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Grammar:
//   expr   := term (("+"|"-") term)*
//   term   := factor (("*"|"/") factor)*
//   factor := atom ("^" integer)?
//   atom   := number | "x" | "(" expr ")" | func "(" expr ")"
//   func   := "exp" | "ln" | "sin" | "cos" | "sqrt"
// Whitespace is insignificant; numbers are decimal literals with optional
// exponent notation. Throws SyntaxError (with byte offset) on malformed
// input and NonIntegerExponent for things like "x^0.5".
Expression parse(std::string_view text);

// Value of g at x. Throws DomainError for ln of a nonpositive value,
// sqrt of a negative value, or division by zero.
double eval(const Expression& g, double x);

// Degree of g as a polynomial in x after symbolically distributing
// products and integer powers over a sparse coefficient map, or nullopt
// when g is not a polynomial (Div by a non-constant, or Exp/Ln/Sin/Cos/
// Sqrt of a non-constant). The zero polynomial has degree 0.
std::optional<int> poly_degree(const Expression& g);

// Coefficient of x^k in the expanded polynomial form, when g is one.
std::optional<double> poly_coefficient(const Expression& g, int k);

// Canonical text form. parse(to_string(e)) reproduces e structurally when
// every constant is nonnegative (text produced by parse always is); a
// negative constant c prints as "(0 - |c|)", which re-parses to that
// equivalent form.
std::string to_string(const Expression& g);

std::ostream& operator<<(std::ostream& os, const Expression& g);

// Builder sugar, mostly for tests and generated expressions.
inline Expression operator+(Expression a, Expression b) { return Expression::add(std::move(a), std::move(b)); }
inline Expression operator-(Expression a, Expression b) { return Expression::sub(std::move(a), std::move(b)); }
inline Expression operator*(Expression a, Expression b) { return Expression::mul(std::move(a), std::move(b)); }
inline Expression operator/(Expression a, Expression b) { return Expression::div(std::move(a), std::move(b)); }

// Shortest decimal form of v that parses back to exactly v.
std::string format_double(double v);

}  // namespace statdiff
