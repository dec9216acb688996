#pragma once

#include <optional>

#include "statdiff/dist.hpp"
#include "statdiff/expr.hpp"

namespace statdiff {

// Truncated moment-series approximation of E[g(X)] about m = E[X]:
//   g(m) + sum_{k=2..order} mu_k * g^(k)(m) / k!
// (the k = 1 term vanishes since E[X - m] = 0). order must be >= 2; the
// two-term form is order = 2.
double approx_mean(const Expression& g, const Distribution& d, int order);

// First-order variance propagation: [g'(m)]^2 * Var[X].
double approx_variance_first(const Expression& g, const Distribution& d);

// Second-form variance: with a = approx_mean(g, d, 2), expands
// h(x) = (g(x) - a)^2 through approx_mean at the given order, clamped at
// 0 from below. The truncation order of the outer expectation is the
// caller's choice; 2 by default.
double approx_variance_second(const Expression& g, const Distribution& d, int order = 2);

enum class ExactnessStatus {
  ExactDegree2,
  ExactDegree3ZeroThirdMoment,
  ExactByPeano,
  NotExact,
};

struct ExactnessConditions {
  std::optional<int> degree;    // absent when g is not a polynomial
  bool degree_le_2 = false;
  bool degree_le_3 = false;
  double third_central_moment = 0.0;
  bool third_moment_zero = false;     // |mu_3| <= tol * (1 + mu_2^{3/2})
  bool remainder_negligible = false;  // |peano n=2| <= tol
};

struct ExactnessVerdict {
  ExactnessStatus status = ExactnessStatus::NotExact;
  double residual = 0.0;  // signed Peano remainder at n = 2
  ExactnessConditions conditions;
};

const char* to_string(ExactnessStatus s);

// Certifies the two-term approximation: exact for polynomials of degree
// <= 2, for cubics when mu_3 vanishes, or when the Peano remainder is
// below tol; NotExact (with the remainder as residual) otherwise.
ExactnessVerdict exactness_verdict(const Expression& g, const Distribution& d, double tol);

}  // namespace statdiff
