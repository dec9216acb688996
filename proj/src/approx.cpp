#include "statdiff/approx.hpp"

#include <cmath>
#include <stdexcept>

#include "statdiff/bounds.hpp"
#include "statdiff/jet.hpp"

namespace statdiff {

double approx_mean(const Expression& g, const Distribution& d, int order) {
  if (order < 2) throw std::invalid_argument("approximation order must be at least 2");
  double m = d.mean();
  Jet jet = jet_of(g, m, order);
  double acc = jet.coeffs[0];
  for (int k = 2; k <= order; ++k) acc += d.central_moment(k) * jet.coeffs[static_cast<std::size_t>(k)];
  return acc;
}

double approx_variance_first(const Expression& g, const Distribution& d) {
  double slope = derivative_at(g, d.mean(), 1);
  return slope * slope * d.variance();
}

double approx_variance_second(const Expression& g, const Distribution& d, int order) {
  double a = approx_mean(g, d, 2);
  Expression h = Expression::pow(g - Expression::constant(a), 2);
  return std::max(0.0, approx_mean(h, d, order));
}

const char* to_string(ExactnessStatus s) {
  switch (s) {
    case ExactnessStatus::ExactDegree2: return "ExactDegree2";
    case ExactnessStatus::ExactDegree3ZeroThirdMoment: return "ExactDegree3ZeroThirdMoment";
    case ExactnessStatus::ExactByPeano: return "ExactByPeano";
    case ExactnessStatus::NotExact: return "NotExact";
  }
  return "?";
}

ExactnessVerdict exactness_verdict(const Expression& g, const Distribution& d, double tol) {
  ExactnessVerdict v;
  auto& c = v.conditions;
  c.degree = poly_degree(g);
  c.degree_le_2 = c.degree && *c.degree <= 2;
  c.degree_le_3 = c.degree && *c.degree <= 3;
  double mu2 = d.central_moment(2);
  c.third_central_moment = d.central_moment(3);
  // Scale with the moment magnitude so large-variance inputs are not
  // flagged inexact by roundoff alone.
  c.third_moment_zero = std::abs(c.third_central_moment) <= tol * (1.0 + std::pow(mu2, 1.5));

  v.residual = peano_remainder(g, d, 2);
  c.remainder_negligible = std::abs(v.residual) <= tol;

  if (c.degree_le_2) v.status = ExactnessStatus::ExactDegree2;
  else if (c.degree_le_3 && c.third_moment_zero) v.status = ExactnessStatus::ExactDegree3ZeroThirdMoment;
  else if (c.remainder_negligible) v.status = ExactnessStatus::ExactByPeano;
  else v.status = ExactnessStatus::NotExact;
  return v;
}

}  // namespace statdiff
