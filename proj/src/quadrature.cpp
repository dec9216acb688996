#include "statdiff/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "statdiff/expr.hpp"

namespace statdiff {

QuadratureResult integrate(const std::function<double(double)>& f, double lo, double hi,
                           double abs_tol, double rel_tol, int max_depth) {
  if (lo == hi) return {0.0, 0.0, 0.0};
  double sign = 1.0;
  if (lo > hi) {
    std::swap(lo, hi);
    sign = -1.0;
  }
  using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;
  double error = 0.0, l1 = 0.0;
  double value = Rule::integrate(f, lo, hi, static_cast<unsigned>(max_depth), rel_tol, &error, &l1);
  if (!std::isfinite(value)) throw NonFinite("integral evaluated to a non-finite value");
  // The Kronrod error estimate is conservative; the gate is only meant to
  // catch integrals the subdivision never resolved (singular or wildly
  // oscillatory integrands), so it carries a generous slack.
  if (error > std::max(abs_tol, rel_tol * std::max(l1, std::abs(value))) * 64.0) {
    throw QuadratureFailure("adaptive integration failed to reach tolerance (error estimate " +
                            format_double(error) + ")");
  }
  return {sign * value, error, l1};
}

QuadratureResult integrate_fixed(const std::function<double(double)>& f, double lo, double hi,
                                 int panels) {
  if (lo == hi) return {0.0, 0.0, 0.0};
  double sign = 1.0;
  if (lo > hi) {
    std::swap(lo, hi);
    sign = -1.0;
  }
  using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;
  double value = 0.0, error = 0.0, l1 = 0.0;
  double width = (hi - lo) / panels;
  for (int i = 0; i < panels; ++i) {
    double a = lo + i * width;
    double b = i + 1 == panels ? hi : a + width;
    double panel_error = 0.0, panel_l1 = 0.0;
    value += Rule::integrate(f, a, b, 0, 0.0, &panel_error, &panel_l1);
    error += panel_error;
    l1 += panel_l1;
  }
  if (!std::isfinite(value)) throw NonFinite("integral evaluated to a non-finite value");
  return {sign * value, error, l1};
}

}  // namespace statdiff
