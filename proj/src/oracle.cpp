#include "statdiff/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "statdiff/quadrature.hpp"

namespace statdiff {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

// g = exp(a*x + b)? Returns (a, b) when the argument of a top-level Exp
// expands to a degree <= 1 polynomial.
std::optional<std::pair<double, double>> as_exp_linear(const Expression& g) {
  if (g.kind() != ExprKind::Exp) return std::nullopt;
  Expression arg = g.child(0);
  auto deg = poly_degree(arg);
  if (!deg || *deg > 1) return std::nullopt;
  return std::make_pair(*poly_coefficient(arg, 1), *poly_coefficient(arg, 0));
}

double quadrature_mean(const Expression& g, const Distribution& d, double tol) {
  Interval dom = d.quadrature_domain();
  auto integrand = [&](double x) {
    double v = eval(g, x) * d.density_at(x);
    if (!std::isfinite(v)) throw NonFinite("integrand overflowed at x = " + format_double(x));
    return v;
  };
  // Split at the mean: bound integrands carry |x - m| kinks there, and a
  // fixed split keeps panels aligned across tolerance levels.
  double mid = std::clamp(d.mean(), dom.lo, dom.hi);
  return integrate(integrand, dom.lo, mid, tol, tol).value +
         integrate(integrand, mid, dom.hi, tol, tol).value;
}

// ---- counter-based sampling ------------------------------------------------

inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// SplitMix64 stream keyed by (seed, sample index); deterministic per
// sample, independent of iteration order.
struct SampleStream {
  std::uint64_t state;

  SampleStream(std::uint64_t seed, std::uint64_t index)
      : state(mix64(seed ^ mix64(index + 0x51ED2701FF69C04FULL))) {}

  std::uint64_t next_word() {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in the open interval (0, 1).
  double next_unit() { return (static_cast<double>(next_word() >> 11) + 0.5) * 0x1.0p-53; }
};

struct RejectionEnvelope {
  double height;
};

double draw_sample(const DistModel& model, SampleStream& rng, const RejectionEnvelope& env) {
  struct V {
    SampleStream& rng;
    const RejectionEnvelope& env;
    double operator()(const DiscreteFinite& d) const {
      double u = rng.next_unit();
      double acc = 0.0;
      for (std::size_t i = 0; i < d.points.size(); ++i) {
        acc += d.probs[i];
        if (u <= acc) return d.points[i];
      }
      return d.points.back();
    }
    double operator()(const Uniform& u) const { return u.a + (u.b - u.a) * rng.next_unit(); }
    double operator()(const Normal& n) const {
      double u1 = rng.next_unit(), u2 = rng.next_unit();
      return n.mu + n.sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
    }
    double operator()(const Exponential& e) const { return -std::log(rng.next_unit()) / e.rate; }
    double operator()(const CustomDensity& c) const {
      for (int tries = 0; tries < 4096; ++tries) {
        double x = c.lo + (c.hi - c.lo) * rng.next_unit();
        double y = env.height * rng.next_unit();
        if (y <= eval(c.density, x) / c.normalization) return x;
      }
      throw NonFinite("rejection sampling failed to accept; density envelope too loose");
    }
  };
  return std::visit(V{rng, env}, model);
}

RejectionEnvelope make_envelope(const Distribution& d) {
  RejectionEnvelope env{0.0};
  if (const auto* c = std::get_if<CustomDensity>(&d.model())) {
    double peak = 0.0;
    for (int i = 0; i <= 1024; ++i) {
      double x = c->lo + (c->hi - c->lo) * i / 1024.0;
      peak = std::max(peak, eval(c->density, x) / c->normalization);
    }
    env.height = 1.5 * peak + 1e-12;
  }
  return env;
}

}  // namespace

double oracle_mean(const Expression& g, const Distribution& d, double tol) {
  if (const auto* disc = std::get_if<DiscreteFinite>(&d.model())) {
    double acc = 0.0;
    for (std::size_t i = 0; i < disc->points.size(); ++i)
      acc += disc->probs[i] * eval(g, disc->points[i]);
    if (!std::isfinite(acc)) throw NonFinite("expectation overflowed");
    return acc;
  }
  if (const auto* n = std::get_if<Normal>(&d.model())) {
    if (auto lin = as_exp_linear(g)) {
      auto [a, b] = *lin;
      return std::exp(b + a * n->mu + 0.5 * a * a * n->sigma * n->sigma);
    }
  }
  return quadrature_mean(g, d, tol);
}

double oracle_variance(const Expression& g, const Distribution& d, double tol) {
  double m1 = oracle_mean(g, d, tol);
  double m2 = oracle_mean(Expression::pow(g, 2), d, tol);
  return std::max(0.0, m2 - m1 * m1);
}

McResult mc_mean(const Expression& g, const Distribution& d, std::uint64_t samples,
                 std::uint64_t seed) {
  if (samples == 0) throw std::invalid_argument("samples must be positive");
  RejectionEnvelope env = make_envelope(d);
  double mean = 0.0, m2 = 0.0;  // Welford
  for (std::uint64_t i = 0; i < samples; ++i) {
    SampleStream rng(seed, i);
    double y = eval(g, draw_sample(d.model(), rng, env));
    if (!std::isfinite(y)) throw NonFinite("sample evaluated to a non-finite value");
    double delta = y - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (y - mean);
  }
  double var = samples > 1 ? m2 / static_cast<double>(samples - 1) : 0.0;
  return {mean, std::sqrt(var / static_cast<double>(samples))};
}

}  // namespace statdiff
