#include "statdiff/jet.hpp"

#include <stdexcept>

#include "statdiff/series.hpp"

namespace statdiff {

namespace {

series::Coeffs propagate(const Expression& g, double center, int order) {
  using namespace series;
  switch (g.kind()) {
    case ExprKind::Const:
      return constant(g.value(), order);
    case ExprKind::Var:
      return variable(center, order);
    case ExprKind::Add:
      return add(propagate(g.child(0), center, order), propagate(g.child(1), center, order));
    case ExprKind::Sub:
      return sub(propagate(g.child(0), center, order), propagate(g.child(1), center, order));
    case ExprKind::Mul:
      return mul(propagate(g.child(0), center, order), propagate(g.child(1), center, order));
    case ExprKind::Div:
      return div(propagate(g.child(0), center, order), propagate(g.child(1), center, order));
    case ExprKind::Pow:
      return pow_int(propagate(g.child(0), center, order), g.exponent());
    case ExprKind::Exp:
      return exp(propagate(g.child(0), center, order));
    case ExprKind::Ln:
      return ln(propagate(g.child(0), center, order));
    case ExprKind::Sin:
      return sin(propagate(g.child(0), center, order));
    case ExprKind::Cos:
      return cos(propagate(g.child(0), center, order));
    case ExprKind::Sqrt:
      return sqrt(propagate(g.child(0), center, order));
  }
  throw Error("unreachable expression kind");
}

}  // namespace

Jet jet_of(const Expression& g, double center, int order, int max_order) {
  if (order < 0) throw std::invalid_argument("jet order must be nonnegative");
  if (order > max_order) throw std::invalid_argument("jet order exceeds the configured maximum");
  return Jet{center, order, propagate(g, center, order)};
}

double derivative_at(const Expression& g, double x, int k, int max_order) {
  Jet j = jet_of(g, x, k, max_order);
  double factorial = 1.0;
  for (int i = 2; i <= k; ++i) factorial *= i;
  return factorial * j.coeffs[static_cast<std::size_t>(k)];
}

}  // namespace statdiff
