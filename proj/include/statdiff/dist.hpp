#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "statdiff/expr.hpp"

namespace statdiff {

// Closed interval; lo/hi may be infinite.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct DiscreteFinite {
  std::vector<double> points;
  std::vector<double> probs;
};

struct Uniform {
  double a, b;
};

struct Normal {
  double mu, sigma;
};

struct Exponential {
  double rate;
};

struct CustomDensity {
  Expression density;
  double lo, hi;
  double normalization = 1.0;  // density integrates to this before scaling
};

using DistModel = std::variant<DiscreteFinite, Uniform, Normal, Exponential, CustomDensity>;

// Model of the random variable X. Parameters are immutable; moments are
// computed lazily into a lock-protected per-instance cache that copies
// share, so all query operations are safe to call concurrently.
class Distribution {
 public:
  // Factories validate their invariants and throw ValidationError:
  // probabilities nonnegative summing to 1 (1e-12), points distinct,
  // b > a, sigma > 0, rate > 0, density nonnegative on a sample grid and
  // integrating to 1 within 1e-3 (auto-normalized inside that slack).
  static Distribution discrete(std::vector<double> points, std::vector<double> probs);
  static Distribution uniform(double a, double b);
  static Distribution normal(double mu, double sigma);
  static Distribution exponential(double rate);
  static Distribution custom_density(Expression density, double lo, double hi);

  const DistModel& model() const;
  bool is_discrete() const;

  double mean() const;
  double variance() const;

  // mu_k = E[(X-m)^k]: exact sums for discrete, closed forms for the
  // standard families, quadrature (1e-10) for custom densities.
  double central_moment(int k) const;
  // nu_k = E[|X-m|^k].
  double abs_central_moment(int k) const;
  // E[X^j] by the finite binomial expansion over central moments.
  double raw_moment(int j) const;

  double density_at(double x) const;  // 0 outside support; discrete throws

  Interval support() const;            // may be unbounded
  Interval quadrature_domain() const;  // finite truncation used for integration
  // support ∩ [m - 8*sd, m + 8*sd]; the region grid checks and bound
  // integrands are evaluated on.
  Interval evaluation_region() const;

 private:
  struct State;
  explicit Distribution(std::shared_ptr<State> state) : state_(std::move(state)) {}
  std::shared_ptr<State> state_;
};

struct ThirdMomentIdentity {
  double lhs;       // E[X^3]
  double rhs;       // m^3 + 3*m*Var[X]
  double residual;  // lhs - rhs
};

// The identity holds whenever mu_3 = 0; callers gate on that.
ThirdMomentIdentity third_moment_identity(const Distribution& d);

// CLI spec strings: "discrete(1:0.5,3:0.5)", "uniform(0,1)",
// "normal(0,0.1)" (second parameter is sigma), "exponential(2)",
// "density(expr; lo, hi)". Throws SyntaxError / ValidationError.
Distribution parse_distribution(std::string_view spec);

}  // namespace statdiff
