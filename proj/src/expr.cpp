#include "statdiff/expr.hpp"

#include <cstdlib>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <sstream>
#include <utility>
#include <vector>

namespace statdiff {

struct Expression::Node {
  ExprKind kind;
  double value = 0.0;  // Const
  int exponent = 0;    // Pow
  std::shared_ptr<const Node> a, b;
};

namespace {

int arity_of(ExprKind k) {
  switch (k) {
    case ExprKind::Const:
    case ExprKind::Var:
      return 0;
    case ExprKind::Add:
    case ExprKind::Sub:
    case ExprKind::Mul:
    case ExprKind::Div:
      return 2;
    default:
      return 1;  // Pow (exponent is data, not a child), Exp, Ln, Sin, Cos, Sqrt
  }
}

double ipow(double base, int e) {
  if (e < 0) {
    if (base == 0.0) throw DomainError("0 raised to a negative power");
    return 1.0 / ipow(base, -e);
  }
  double acc = 1.0, p = base;
  for (int n = e; n > 0; n >>= 1) {
    if (n & 1) acc *= p;
    p *= p;
  }
  return acc;
}

}  // namespace

Expression::Expression() : Expression(constant(0.0)) {}

Expression Expression::constant(double value) {
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::Const;
  n->value = value;
  return Expression(std::move(n));
}

Expression Expression::variable() {
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::Var;
  return Expression(std::move(n));
}

struct ExprAccess {
  static Expression wrap(std::shared_ptr<const Expression::Node> n) { return Expression(std::move(n)); }
  static const std::shared_ptr<const Expression::Node>& node(const Expression& e) { return e.node_; }

  static Expression make_binary(ExprKind k, Expression lhs, Expression rhs) {
    auto n = std::make_shared<Expression::Node>();
    n->kind = k;
    n->a = node(lhs);
    n->b = node(rhs);
    return wrap(std::move(n));
  }

  static Expression make_unary(ExprKind k, Expression arg) {
    auto n = std::make_shared<Expression::Node>();
    n->kind = k;
    n->a = node(arg);
    return wrap(std::move(n));
  }

  static Expression make_pow(Expression base, int exponent) {
    auto n = std::make_shared<Expression::Node>();
    n->kind = ExprKind::Pow;
    n->exponent = exponent;
    n->a = node(base);
    return wrap(std::move(n));
  }
};

namespace {
Expression make_binary(ExprKind k, Expression lhs, Expression rhs) {
  return ExprAccess::make_binary(k, std::move(lhs), std::move(rhs));
}
Expression make_unary(ExprKind k, Expression arg) {
  return ExprAccess::make_unary(k, std::move(arg));
}
}  // namespace

Expression Expression::add(Expression l, Expression r) { return make_binary(ExprKind::Add, std::move(l), std::move(r)); }
Expression Expression::sub(Expression l, Expression r) { return make_binary(ExprKind::Sub, std::move(l), std::move(r)); }
Expression Expression::mul(Expression l, Expression r) { return make_binary(ExprKind::Mul, std::move(l), std::move(r)); }
Expression Expression::div(Expression l, Expression r) { return make_binary(ExprKind::Div, std::move(l), std::move(r)); }

Expression Expression::pow(Expression base, int exponent) {
  return ExprAccess::make_pow(std::move(base), exponent);
}

Expression Expression::exp(Expression a) { return make_unary(ExprKind::Exp, std::move(a)); }
Expression Expression::ln(Expression a) { return make_unary(ExprKind::Ln, std::move(a)); }
Expression Expression::sin(Expression a) { return make_unary(ExprKind::Sin, std::move(a)); }
Expression Expression::cos(Expression a) { return make_unary(ExprKind::Cos, std::move(a)); }
Expression Expression::sqrt(Expression a) { return make_unary(ExprKind::Sqrt, std::move(a)); }

ExprKind Expression::kind() const noexcept { return node_->kind; }
int Expression::arity() const noexcept { return arity_of(node_->kind); }

double Expression::value() const {
  if (node_->kind != ExprKind::Const) throw Error("value() on non-constant node");
  return node_->value;
}

int Expression::exponent() const {
  if (node_->kind != ExprKind::Pow) throw Error("exponent() on non-Pow node");
  return node_->exponent;
}

Expression Expression::child(int i) const {
  if (i < 0 || i >= arity()) throw Error("child index out of range");
  return ExprAccess::wrap(i == 0 ? node_->a : node_->b);
}

bool Expression::operator==(const Expression& other) const {
  const Node* x = node_.get();
  const Node* y = other.node_.get();
  if (x == y) return true;
  if (x->kind != y->kind) return false;
  switch (x->kind) {
    case ExprKind::Const:
      return x->value == y->value;
    case ExprKind::Var:
      return true;
    case ExprKind::Pow:
      if (x->exponent != y->exponent) return false;
      break;
    default:
      break;
  }
  auto eq = [](const std::shared_ptr<const Node>& a, const std::shared_ptr<const Node>& b) {
    if (!a && !b) return true;
    if (!a || !b) return false;
    return ExprAccess::wrap(a) == ExprAccess::wrap(b);
  };
  return eq(x->a, y->a) && eq(x->b, y->b);
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

constexpr int kMaxExponentMagnitude = 9999;

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Expression run() {
    Expression e = parse_expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, pos_); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  Expression parse_expr() {
    Expression e = parse_term();
    for (;;) {
      if (eat('+')) {
        e = Expression::add(std::move(e), parse_term());
      } else if (eat('-')) {
        e = Expression::sub(std::move(e), parse_term());
      } else {
        return e;
      }
    }
  }

  Expression parse_term() {
    Expression e = parse_factor();
    for (;;) {
      if (eat('*')) {
        e = Expression::mul(std::move(e), parse_factor());
      } else if (eat('/')) {
        e = Expression::div(std::move(e), parse_factor());
      } else {
        return e;
      }
    }
  }

  Expression parse_factor() {
    Expression base = parse_atom();
    if (!eat('^')) return base;
    skip_ws();
    std::size_t tok_start = pos_;
    // A sign is accepted here so that printed negative exponents re-parse.
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    double v = scan_number(tok_start);
    if (v != std::floor(v) || std::abs(v) > kMaxExponentMagnitude)
      throw NonIntegerExponent("exponent must be a small integer", tok_start);
    return Expression::pow(std::move(base), static_cast<int>(v));
  }

  Expression parse_atom() {
    skip_ws();
    if (pos_ >= s_.size()) fail("expected expression");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Expression e = parse_expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos_;
      return Expression::constant(scan_number(start));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string_view name = s_.substr(start, pos_ - start);
      if (name == "x") return Expression::variable();
      Expression (*fn)(Expression) = nullptr;
      if (name == "exp") fn = &Expression::exp;
      else if (name == "ln") fn = &Expression::ln;
      else if (name == "sin") fn = &Expression::sin;
      else if (name == "cos") fn = &Expression::cos;
      else if (name == "sqrt") fn = &Expression::sqrt;
      if (!fn) throw SyntaxError("unknown identifier '" + std::string(name) + "'", start);
      if (!eat('(')) fail("expected '(' after function name");
      Expression arg = parse_expr();
      if (!eat(')')) fail("expected ')'");
      return fn(std::move(arg));
    }
    fail("expected expression");
  }

  // Scans digits [. digits] [eE [sign] digits] starting at pos_ (a leading
  // sign, when allowed, was already consumed; tok_start points at it).
  double scan_number(std::size_t tok_start) {
    std::size_t p = pos_;
    while (p < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p]))) ++p;
    bool any_digits = p > pos_;
    if (p < s_.size() && s_[p] == '.') {
      ++p;
      while (p < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p]))) ++p;
      any_digits = any_digits || p > pos_ + 1;
    }
    if (!any_digits) throw SyntaxError("expected number", tok_start);
    if (p < s_.size() && (s_[p] == 'e' || s_[p] == 'E')) {
      std::size_t q = p + 1;
      if (q < s_.size() && (s_[q] == '+' || s_[q] == '-')) ++q;
      if (q < s_.size() && std::isdigit(static_cast<unsigned char>(s_[q]))) {
        do ++q;
        while (q < s_.size() && std::isdigit(static_cast<unsigned char>(s_[q])));
        p = q;
      }
    }
    std::string token(s_.substr(tok_start, p - tok_start));
    char* endp = nullptr;
    double out = std::strtod(token.c_str(), &endp);
    if (endp != token.c_str() + token.size()) throw SyntaxError("malformed number", tok_start);
    if (!std::isfinite(out)) throw SyntaxError("number out of range", tok_start);
    pos_ = p;
    return out;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression parse(std::string_view text) { return Parser(text).run(); }

// ---------------------------------------------------------------------------
// Evaluation

double eval(const Expression& g, double x) {
  switch (g.kind()) {
    case ExprKind::Const:
      return g.value();
    case ExprKind::Var:
      return x;
    case ExprKind::Add:
      return eval(g.child(0), x) + eval(g.child(1), x);
    case ExprKind::Sub:
      return eval(g.child(0), x) - eval(g.child(1), x);
    case ExprKind::Mul:
      return eval(g.child(0), x) * eval(g.child(1), x);
    case ExprKind::Div: {
      double den = eval(g.child(1), x);
      if (den == 0.0) throw DomainError("division by zero");
      return eval(g.child(0), x) / den;
    }
    case ExprKind::Pow:
      return ipow(eval(g.child(0), x), g.exponent());
    case ExprKind::Exp:
      return std::exp(eval(g.child(0), x));
    case ExprKind::Ln: {
      double a = eval(g.child(0), x);
      if (a <= 0.0) throw DomainError("ln of a nonpositive value");
      return std::log(a);
    }
    case ExprKind::Sin:
      return std::sin(eval(g.child(0), x));
    case ExprKind::Cos:
      return std::cos(eval(g.child(0), x));
    case ExprKind::Sqrt: {
      double a = eval(g.child(0), x);
      if (a < 0.0) throw DomainError("sqrt of a negative value");
      return std::sqrt(a);
    }
  }
  throw Error("unreachable expression kind");
}

// ---------------------------------------------------------------------------
// Polynomial structure

namespace {

// Sparse coefficient map, exact zeros pruned so cancellation is decided
// without tolerances.
using Poly = std::map<int, double>;

void prune(Poly& p) {
  for (auto it = p.begin(); it != p.end();) {
    if (it->second == 0.0) it = p.erase(it);
    else ++it;
  }
}

std::optional<Poly> poly_mul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [i, ci] : a)
    for (const auto& [j, cj] : b) out[i + j] += ci * cj;
  prune(out);
  return out;
}

std::optional<Poly> as_poly(const Expression& g) {
  switch (g.kind()) {
    case ExprKind::Const: {
      Poly p;
      if (g.value() != 0.0) p[0] = g.value();
      return p;
    }
    case ExprKind::Var:
      return Poly{{1, 1.0}};
    case ExprKind::Add:
    case ExprKind::Sub: {
      auto a = as_poly(g.child(0));
      auto b = as_poly(g.child(1));
      if (!a || !b) return std::nullopt;
      double sign = g.kind() == ExprKind::Add ? 1.0 : -1.0;
      for (const auto& [k, c] : *b) (*a)[k] += sign * c;
      prune(*a);
      return a;
    }
    case ExprKind::Mul: {
      auto a = as_poly(g.child(0));
      auto b = as_poly(g.child(1));
      if (!a || !b) return std::nullopt;
      return poly_mul(*a, *b);
    }
    case ExprKind::Div: {
      auto a = as_poly(g.child(0));
      auto b = as_poly(g.child(1));
      if (!a || !b) return std::nullopt;
      if (b->size() != 1 || b->begin()->first != 0) return std::nullopt;  // non-constant divisor
      double c = b->begin()->second;
      for (auto& [k, v] : *a) v /= c;
      prune(*a);
      return a;
    }
    case ExprKind::Pow: {
      auto base = as_poly(g.child(0));
      if (!base) return std::nullopt;
      int e = g.exponent();
      if (e < 0) {
        // Only a nonzero constant base stays polynomial.
        if (base->empty()) return std::nullopt;
        if (base->size() != 1 || base->begin()->first != 0) return std::nullopt;
        return Poly{{0, ipow(base->begin()->second, e)}};
      }
      Poly acc{{0, 1.0}};
      Poly p = *base;
      for (int n = e; n > 0; n >>= 1) {
        if (n & 1) acc = *poly_mul(acc, p);
        if (n > 1) p = *poly_mul(p, p);
      }
      return acc;
    }
    case ExprKind::Exp:
    case ExprKind::Ln:
    case ExprKind::Sin:
    case ExprKind::Cos:
    case ExprKind::Sqrt: {
      auto a = as_poly(g.child(0));
      if (!a) return std::nullopt;
      if (!a->empty() && (a->size() != 1 || a->begin()->first != 0))
        return std::nullopt;  // elementary function of a non-constant
      double c = a->empty() ? 0.0 : a->begin()->second;
      double v;
      switch (g.kind()) {
        case ExprKind::Exp: v = std::exp(c); break;
        case ExprKind::Ln:
          if (c <= 0.0) return std::nullopt;
          v = std::log(c);
          break;
        case ExprKind::Sin: v = std::sin(c); break;
        case ExprKind::Cos: v = std::cos(c); break;
        default:
          if (c < 0.0) return std::nullopt;
          v = std::sqrt(c);
          break;
      }
      Poly p;
      if (v != 0.0) p[0] = v;
      return p;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<int> poly_degree(const Expression& g) {
  auto p = as_poly(g);
  if (!p) return std::nullopt;
  if (p->empty()) return 0;  // zero polynomial
  return p->rbegin()->first;
}

std::optional<double> poly_coefficient(const Expression& g, int k) {
  auto p = as_poly(g);
  if (!p) return std::nullopt;
  auto it = p->find(k);
  return it == p->end() ? 0.0 : it->second;
}

// ---------------------------------------------------------------------------
// Printing

std::string format_double(double v) {
  char buf[40];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

namespace {

// Precedence levels: 0 additive, 1 multiplicative, 2 power, 3 atom.
int precedence(const Expression& e) {
  switch (e.kind()) {
    case ExprKind::Add:
    case ExprKind::Sub:
      return 0;
    case ExprKind::Mul:
    case ExprKind::Div:
      return 1;
    case ExprKind::Pow:
      return 2;
    default:
      return 3;  // atoms; negative constants print their own parens
  }
}

void print(std::ostream& os, const Expression& e, int min_prec) {
  bool paren = precedence(e) < min_prec;
  if (paren) os << '(';
  switch (e.kind()) {
    case ExprKind::Const: {
      double v = e.value();
      if (v < 0) {
        os << "(0 - " << format_double(-v) << ')';
      } else {
        os << format_double(v);
      }
      break;
    }
    case ExprKind::Var:
      os << 'x';
      break;
    case ExprKind::Add:
    case ExprKind::Sub:
      print(os, e.child(0), 0);
      os << (e.kind() == ExprKind::Add ? " + " : " - ");
      print(os, e.child(1), 1);  // left-assoc: rhs must bind tighter
      break;
    case ExprKind::Mul:
    case ExprKind::Div:
      print(os, e.child(0), 1);
      os << (e.kind() == ExprKind::Mul ? "*" : "/");
      print(os, e.child(1), 2);
      break;
    case ExprKind::Pow:
      print(os, e.child(0), 3);
      os << '^' << e.exponent();
      break;
    case ExprKind::Exp: os << "exp("; print(os, e.child(0), 0); os << ')'; break;
    case ExprKind::Ln:  os << "ln(";  print(os, e.child(0), 0); os << ')'; break;
    case ExprKind::Sin: os << "sin("; print(os, e.child(0), 0); os << ')'; break;
    case ExprKind::Cos: os << "cos("; print(os, e.child(0), 0); os << ')'; break;
    case ExprKind::Sqrt: os << "sqrt("; print(os, e.child(0), 0); os << ')'; break;
  }
  if (paren) os << ')';
}

}  // namespace

std::string to_string(const Expression& g) {
  std::ostringstream os;
  print(os, g, 0);
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Expression& g) {
  print(os, g, 0);
  return os;
}

}  // namespace statdiff
