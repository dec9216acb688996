#pragma once

#include <functional>

#include "statdiff/errors.hpp"

namespace statdiff {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // absolute error estimate
  double l1 = 0.0;     // integral of |f|, used for relative checks
};

// Adaptive Gauss-Kronrod (15-point) integration of f over [lo, hi].
// Succeeds when the error estimate is within max(abs_tol, rel_tol * L1);
// otherwise throws QuadratureFailure. Throws NonFinite when the result is
// not finite. Deterministic: fixed subdivision rule, no parallelism.
QuadratureResult integrate(const std::function<double(double)>& f, double lo, double hi,
                           double abs_tol, double rel_tol, int max_depth = 17);

// Non-adaptive composite 15-point Kronrod rule over equally spaced panels.
// Used for inner integrals of nested quadratures: the fixed subdivision
// keeps the result a smooth function of the endpoints, which adaptive
// refinement is not.
QuadratureResult integrate_fixed(const std::function<double(double)>& f, double lo, double hi,
                                 int panels = 16);

}  // namespace statdiff
