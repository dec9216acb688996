#pragma once

#include <string>
#include <vector>

#include "statdiff/dist.hpp"
#include "statdiff/expr.hpp"

namespace statdiff {

enum class BoundKind { PeanoRemainder, ClassL, BoundedDerivative, Lyapunov, Corollary2 };

const char* to_string(BoundKind k);

struct HypothesisCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

// A diagnostic bound value plus the hypothesis checks gating it. Bounds
// take the big-O constant as 1 and are diagnostic magnitudes, not proven
// envelopes. value is nonnegative; PeanoRemainder keeps its sign in
// signed_value (and in a hypothesis detail).
struct ErrorBound {
  BoundKind kind;
  double value = 0.0;
  bool applicable = false;
  std::vector<HypothesisCheck> hypotheses;
  double signed_value = 0.0;
};

// Expected Taylor remainder in Peano (integral) form:
//   (1/n!) * E[ integral_m^X (X - theta)^n g^(n+1)(theta) dtheta ].
// Reconstruction contract: approx_mean(g, d, n) + peano_remainder(g, d, n)
// equals oracle_mean(g, d) within combined quadrature tolerance.
double peano_remainder(const Expression& g, const Distribution& d, int n);

// peano_remainder wrapped as an ErrorBound for reports.
ErrorBound peano_bound(const Expression& g, const Distribution& d, int n);

struct MembershipReport {
  bool member = false;
  std::vector<HypothesisCheck> checks;  // one entry per derivative order
};

// Sufficient condition for the derivative-domination class: g > 0 and
// g^(j) >= 0 for 1 <= j <= max_order on a 257-point Chebyshev grid over
// region (then |g^(j)| = g^(j) = |g|^(j)). Sign checks are strict: any
// violation fails.
MembershipReport class_L_membership(const Expression& g, Interval region, int max_order);

// E[|X - m|^3 * |g'''(X)|], gated on class-L membership over the
// evaluation region (polynomials of degree <= 2 pass trivially: the
// remainder chain is identically zero). Not applicable => applicable =
// false, value still reported.
ErrorBound bound_class_L(const Expression& g, const Distribution& d);

// M * E[|X - m|^3 * e^{|X - m|}] for |g^(j)| <= M. The bound on the
// derivatives is spot-checked for 3 <= j <= 8 on the evaluation-region
// grid; a violation throws HypothesisFailure.
ErrorBound bound_bounded_derivative(const Expression& g, const Distribution& d, double M);

// C^3 * g'''(C + m) with C = nu_n^{1/n}. Requires g^(j) >= 0 on the
// evaluation region for 3 <= j <= n (grid-checked; HypothesisFailure on
// violation) and n >= 3.
ErrorBound bound_lyapunov(const Expression& g, const Distribution& d, int n);

// M * nu_n^{3/n} * e^{nu_n^{1/n}} under the bounded-derivative
// hypothesis; n >= 3.
ErrorBound bound_corollary2(const Expression& g, const Distribution& d, double M, int n);

struct LyapunovCheckResult {
  double lhs = 0.0;  // nu_s^{1/s}
  double rhs = 0.0;  // nu_r^{1/r}
  bool holds = false;
};

// Moment-norm monotonicity nu_s^{1/s} >= nu_r^{1/r} for 0 < r < s.
LyapunovCheckResult lyapunov_check(const Distribution& d, int r, int s);

}  // namespace statdiff
