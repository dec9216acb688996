#include "statdiff/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "statdiff/jet.hpp"
#include "statdiff/quadrature.hpp"

namespace statdiff {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kGridPoints = 257;
constexpr int kGridMaxOrder = 8;

double ipow(double base, int e) {
  double acc = 1.0, p = base;
  for (int n = e; n > 0; n >>= 1) {
    if (n & 1) acc *= p;
    p *= p;
  }
  return acc;
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

std::vector<double> chebyshev_grid(Interval region) {
  std::vector<double> xs(kGridPoints);
  double mid = 0.5 * (region.lo + region.hi);
  double half = 0.5 * (region.hi - region.lo);
  for (int i = 0; i < kGridPoints; ++i)
    xs[static_cast<std::size_t>(i)] = mid + half * std::cos(kPi * i / (kGridPoints - 1));
  return xs;
}

std::string describe(Interval r) {
  return "[" + format_double(r.lo) + ", " + format_double(r.hi) + "]";
}

// E[f(X)] for bound integrands: exact sum for discrete distributions,
// quadrature over the evaluation region (split at the mean, where the
// |x - m| factors kink) otherwise.
double bound_expectation(const Distribution& d, const std::function<double(double)>& f) {
  if (const auto* disc = std::get_if<DiscreteFinite>(&d.model())) {
    double acc = 0.0;
    for (std::size_t i = 0; i < disc->points.size(); ++i) acc += disc->probs[i] * f(disc->points[i]);
    return acc;
  }
  Interval region = d.evaluation_region();
  auto integrand = [&](double x) { return f(x) * d.density_at(x); };
  double mid = std::clamp(d.mean(), region.lo, region.hi);
  // |g'''| factors can kink where g''' changes sign; diagnostic accuracy
  // well past the reporting precision is enough here.
  return integrate(integrand, region.lo, mid, 1e-10, 1e-8).value +
         integrate(integrand, mid, region.hi, 1e-10, 1e-8).value;
}

struct GridViolation {
  int order;
  double x;
  double value;
};

// First grid point where |g^(j)| > M (orders lo..hi), or where g^(j) < 0
// when M < 0 signals a nonnegativity check.
std::optional<GridViolation> scan_grid(const Expression& g, Interval region, int order_lo,
                                       int order_hi, double M, bool nonneg_mode) {
  for (double x : chebyshev_grid(region)) {
    Jet jet = jet_of(g, x, order_hi);
    for (int j = order_lo; j <= order_hi; ++j) {
      double deriv = factorial(j) * jet.coeffs[static_cast<std::size_t>(j)];
      if (nonneg_mode ? (deriv < 0.0) : (std::abs(deriv) > M))
        return GridViolation{j, x, deriv};
    }
  }
  return std::nullopt;
}

}  // namespace

const char* to_string(BoundKind k) {
  switch (k) {
    case BoundKind::PeanoRemainder: return "PeanoRemainder";
    case BoundKind::ClassL: return "ClassL";
    case BoundKind::BoundedDerivative: return "BoundedDerivative";
    case BoundKind::Lyapunov: return "Lyapunov";
    case BoundKind::Corollary2: return "Corollary2";
  }
  return "?";
}

// ---------------------------------------------------------------------------

double peano_remainder(const Expression& g, const Distribution& d, int n) {
  if (n < 1) throw std::invalid_argument("peano_remainder requires n >= 1");
  double m = d.mean();

  auto inner = [&](double x) {
    if (x == m) return 0.0;
    auto integrand = [&](double theta) {
      return ipow(x - theta, n) * derivative_at(g, theta, n + 1);
    };
    // Fixed panels keep inner(x) smooth in x, which the adaptive outer
    // integration relies on.
    return integrate_fixed(integrand, m, x).value;
  };

  double expectation;
  if (const auto* disc = std::get_if<DiscreteFinite>(&d.model())) {
    expectation = 0.0;
    for (std::size_t i = 0; i < disc->points.size(); ++i)
      expectation += disc->probs[i] * inner(disc->points[i]);
  } else {
    Interval dom = d.quadrature_domain();
    auto outer = [&](double x) { return inner(x) * d.density_at(x); };
    double mid = std::clamp(m, dom.lo, dom.hi);
    expectation = integrate(outer, dom.lo, mid, 1e-13, 1e-9).value +
                  integrate(outer, mid, dom.hi, 1e-13, 1e-9).value;
  }
  return expectation / factorial(n);
}

ErrorBound peano_bound(const Expression& g, const Distribution& d, int n) {
  double r = peano_remainder(g, d, n);
  ErrorBound b{BoundKind::PeanoRemainder, std::abs(r), true, {}, r};
  b.hypotheses.push_back({"smooth_order_" + std::to_string(n + 1), true,
                          "signed remainder " + format_double(r)});
  return b;
}

MembershipReport class_L_membership(const Expression& g, Interval region, int max_order) {
  if (region.hi < region.lo) throw std::invalid_argument("empty region");
  MembershipReport rep;
  rep.member = true;
  std::vector<double> grid = chebyshev_grid(region);

  std::vector<std::optional<GridViolation>> worst(static_cast<std::size_t>(max_order) + 1);
  for (double x : grid) {
    Jet jet = jet_of(g, x, max_order);
    for (int j = 0; j <= max_order; ++j) {
      double deriv = factorial(j) * jet.coeffs[static_cast<std::size_t>(j)];
      bool ok = j == 0 ? deriv > 0.0 : deriv >= 0.0;
      if (!ok && !worst[static_cast<std::size_t>(j)])
        worst[static_cast<std::size_t>(j)] = GridViolation{j, x, deriv};
    }
  }
  auto degree = poly_degree(g);
  for (int j = 0; j <= max_order; ++j) {
    const auto& v = worst[static_cast<std::size_t>(j)];
    HypothesisCheck check;
    check.name = j == 0 ? "g_positive" : "derivative_" + std::to_string(j) + "_nonnegative";
    check.passed = !v;
    if (v) {
      std::ostringstream os;
      os << "violated at x = " << format_double(v->x) << " (value " << format_double(v->value) << ")";
      if (degree && *degree <= 2)
        os << "; degree <= 2, so the order-3 remainder is 0 regardless";
      check.detail = os.str();
      rep.member = false;
    } else {
      check.detail = "holds on " + std::to_string(kGridPoints) + "-point grid over " + describe(region);
    }
    rep.checks.push_back(std::move(check));
  }
  return rep;
}

ErrorBound bound_class_L(const Expression& g, const Distribution& d) {
  ErrorBound b{BoundKind::ClassL, 0.0, false, {}, 0.0};
  Interval region = d.evaluation_region();
  auto degree = poly_degree(g);
  if (degree && *degree <= 2) {
    // g''' vanishes identically; the domination chain is trivial.
    b.applicable = true;
    b.hypotheses.push_back({"polynomial_degree_le_2", true,
                            "degree " + std::to_string(*degree) + "; g''' is identically zero"});
  } else {
    MembershipReport rep = class_L_membership(g, region, kGridMaxOrder);
    b.applicable = rep.member;
    b.hypotheses.push_back({"class_L_membership", rep.member,
                            rep.member ? "g and derivatives to order " + std::to_string(kGridMaxOrder) +
                                             " positive on " + describe(region)
                                       : "see per-order checks"});
    for (auto& c : rep.checks)
      if (!c.passed) b.hypotheses.push_back(c);
  }
  double m = d.mean();
  b.value = bound_expectation(d, [&](double x) {
    return ipow(std::abs(x - m), 3) * std::abs(derivative_at(g, x, 3));
  });
  b.signed_value = b.value;
  return b;
}

ErrorBound bound_bounded_derivative(const Expression& g, const Distribution& d, double M) {
  if (!(M > 0.0)) throw std::invalid_argument("derivative bound M must be positive");
  Interval region = d.evaluation_region();
  if (auto v = scan_grid(g, region, 3, kGridMaxOrder, M, false)) {
    throw HypothesisFailure("derivative of order " + std::to_string(v->order) + " exceeds M = " +
                            format_double(M) + " at x = " + format_double(v->x) + " (value " +
                            format_double(v->value) + ")");
  }
  ErrorBound b{BoundKind::BoundedDerivative, 0.0, true, {}, 0.0};
  b.hypotheses.push_back({"derivatives_bounded_by_M", true,
                          "|g^(j)| <= " + format_double(M) + " for 3 <= j <= " +
                              std::to_string(kGridMaxOrder) + " on " + describe(region)});
  double m = d.mean();
  b.value = M * bound_expectation(d, [&](double x) {
    double t = std::abs(x - m);
    return t * t * t * std::exp(t);
  });
  b.signed_value = b.value;
  return b;
}

ErrorBound bound_lyapunov(const Expression& g, const Distribution& d, int n) {
  if (n < 3) throw std::invalid_argument("bound_lyapunov requires n >= 3");
  Interval region = d.evaluation_region();
  if (auto v = scan_grid(g, region, 3, n, -1.0, true)) {
    throw HypothesisFailure("derivative of order " + std::to_string(v->order) +
                            " is negative at x = " + format_double(v->x) + " (value " +
                            format_double(v->value) + ")");
  }
  ErrorBound b{BoundKind::Lyapunov, 0.0, true, {}, 0.0};
  b.hypotheses.push_back({"derivatives_nonnegative", true,
                          "g^(j) >= 0 for 3 <= j <= " + std::to_string(n) + " on " + describe(region)});
  double m = d.mean();
  double nu_n = d.abs_central_moment(n);
  double c = std::pow(nu_n, 1.0 / n);
  b.hypotheses.push_back({"absolute_moment_finite", std::isfinite(c),
                          "C = nu_" + std::to_string(n) + "^{1/" + std::to_string(n) + "} = " +
                              format_double(c)});
  b.value = c * c * c * derivative_at(g, c + m, 3);
  b.signed_value = b.value;
  return b;
}

ErrorBound bound_corollary2(const Expression& g, const Distribution& d, double M, int n) {
  if (n < 3) throw std::invalid_argument("bound_corollary2 requires n >= 3");
  if (!(M > 0.0)) throw std::invalid_argument("derivative bound M must be positive");
  Interval region = d.evaluation_region();
  if (auto v = scan_grid(g, region, 3, kGridMaxOrder, M, false)) {
    throw HypothesisFailure("derivative of order " + std::to_string(v->order) + " exceeds M = " +
                            format_double(M) + " at x = " + format_double(v->x) + " (value " +
                            format_double(v->value) + ")");
  }
  double nu_n = d.abs_central_moment(n);
  ErrorBound b{BoundKind::Corollary2, 0.0, true, {}, 0.0};
  b.hypotheses.push_back({"derivatives_bounded_by_M", true,
                          "|g^(j)| <= " + format_double(M) + " for 3 <= j <= " +
                              std::to_string(kGridMaxOrder) + " on " + describe(region)});
  b.hypotheses.push_back({"absolute_moment_finite", std::isfinite(nu_n),
                          "nu_" + std::to_string(n) + " = " + format_double(nu_n)});
  b.value = M * std::pow(nu_n, 3.0 / n) * std::exp(std::pow(nu_n, 1.0 / n));
  b.signed_value = b.value;
  return b;
}

LyapunovCheckResult lyapunov_check(const Distribution& d, int r, int s) {
  if (r <= 0 || s <= r) throw std::invalid_argument("lyapunov_check requires 0 < r < s");
  LyapunovCheckResult out;
  out.lhs = std::pow(d.abs_central_moment(s), 1.0 / s);
  out.rhs = std::pow(d.abs_central_moment(r), 1.0 / r);
  out.holds = out.lhs >= out.rhs - 1e-9 * out.rhs;
  return out;
}

}  // namespace statdiff
