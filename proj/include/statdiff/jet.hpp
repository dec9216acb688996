#pragma once

#include <vector>

#include "statdiff/expr.hpp"

namespace statdiff {

// Truncated Taylor data of g at a center: coeffs[k] = g^(k)(center)/k!.
struct Jet {
  double center = 0.0;
  int order = 0;
  std::vector<double> coeffs;  // order + 1 entries
};

// Memory/significance guard; orders used in practice are small.
inline constexpr int kDefaultMaxJetOrder = 32;

// Computes g and its derivatives at `center` to `order` by propagating a
// truncated power series through the expression. Throws DomainError when
// the center violates a subexpression's domain and std::invalid_argument
// when order is negative or exceeds max_order.
Jet jet_of(const Expression& g, double center, int order, int max_order = kDefaultMaxJetOrder);

// k-th derivative of g at x: k! * jet_of(g, x, k).coeffs[k].
double derivative_at(const Expression& g, double x, int k, int max_order = kDefaultMaxJetOrder);

}  // namespace statdiff
