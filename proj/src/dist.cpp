#include "statdiff/dist.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include <boost/math/special_functions/binomial.hpp>

#include "statdiff/quadrature.hpp"

namespace statdiff {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = 3.14159265358979323846;
// Tolerances for the family-internal quadratures (custom densities).
constexpr double kMomentAbsTol = 1e-13;
constexpr double kMomentRelTol = 1e-12;

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

// Number of derangements of k items; the k-th central moment of Exp(1).
double derangements(int k) {
  double d = 1.0;
  for (int i = 1; i <= k; ++i) d = i * d + (i % 2 == 0 ? 1.0 : -1.0);
  return d;
}

double custom_pdf(const CustomDensity& c, double x) {
  if (x < c.lo || x > c.hi) return 0.0;
  return eval(c.density, x) / c.normalization;
}

// Integrates f(x)*pdf(x), split at the mean so |x-m|^k kinks stay off the
// panel interiors.
double custom_expect(const CustomDensity& c, double m, const std::function<double(double)>& f) {
  auto integrand = [&](double x) { return f(x) * custom_pdf(c, x); };
  double mid = std::clamp(m, c.lo, c.hi);
  double left = integrate(integrand, c.lo, mid, kMomentAbsTol, kMomentRelTol).value;
  double right = integrate(integrand, mid, c.hi, kMomentAbsTol, kMomentRelTol).value;
  return left + right;
}

double compute_mean(const DistModel& model) {
  struct V {
    double operator()(const DiscreteFinite& d) const {
      double m = 0.0;
      for (std::size_t i = 0; i < d.points.size(); ++i) m += d.probs[i] * d.points[i];
      return m;
    }
    double operator()(const Uniform& u) const { return 0.5 * (u.a + u.b); }
    double operator()(const Normal& n) const { return n.mu; }
    double operator()(const Exponential& e) const { return 1.0 / e.rate; }
    double operator()(const CustomDensity& c) const {
      return custom_expect(c, 0.5 * (c.lo + c.hi), [](double x) { return x; });
    }
  };
  return std::visit(V{}, model);
}

double compute_central(const DistModel& model, double m, int k) {
  struct V {
    double m;
    int k;
    double operator()(const DiscreteFinite& d) const {
      double acc = 0.0;
      for (std::size_t i = 0; i < d.points.size(); ++i) acc += d.probs[i] * ipow(d.points[i] - m, k);
      return acc;
    }
    double operator()(const Uniform& u) const {
      if (k % 2 != 0) return 0.0;
      double w = 0.5 * (u.b - u.a);
      return ipow(w, k) / (k + 1);
    }
    double operator()(const Normal& n) const {
      if (k % 2 != 0) return 0.0;
      double acc = 1.0;  // (k-1)!! * sigma^k
      for (int i = k - 1; i > 0; i -= 2) acc *= i;
      return acc * ipow(n.sigma, k);
    }
    double operator()(const Exponential& e) const { return derangements(k) / ipow(e.rate, k); }
    double operator()(const CustomDensity& c) const {
      return custom_expect(c, m, [&](double x) { return ipow(x - m, k); });
    }
  };
  return std::visit(V{m, k}, model);
}

double compute_absolute(const DistModel& model, double m, int k) {
  struct V {
    double m;
    int k;
    double operator()(const DiscreteFinite& d) const {
      double acc = 0.0;
      for (std::size_t i = 0; i < d.points.size(); ++i)
        acc += d.probs[i] * ipow(std::abs(d.points[i] - m), k);
      return acc;
    }
    double operator()(const Uniform& u) const {
      double w = 0.5 * (u.b - u.a);
      return ipow(w, k) / (k + 1);
    }
    double operator()(const Normal& n) const {
      return ipow(n.sigma, k) * std::pow(2.0, 0.5 * k) * std::tgamma(0.5 * (k + 1)) /
             std::sqrt(kPi);
    }
    double operator()(const Exponential& e) const {
      if (k % 2 == 0) return derangements(k) / ipow(e.rate, k);
      if (k <= 12) {
        // nu_k * rate^k = (I_k + k!)/e with I_j = e - j*I_{j-1}; the forward
        // recurrence loses a factor j of accuracy per step, fine for k <= 12.
        const double ee = std::exp(1.0);
        double integral = ee - 1.0;
        for (int j = 1; j <= k; ++j) integral = ee - j * integral;
        return (integral + factorial(k)) / ee / ipow(e.rate, k);
      }
      double hi = 60.0 / e.rate;
      auto f = [&](double x) {
        return ipow(std::abs(x - m), k) * e.rate * std::exp(-e.rate * x);
      };
      return integrate(f, 0.0, m, kMomentAbsTol, kMomentRelTol).value +
             integrate(f, m, hi, kMomentAbsTol, kMomentRelTol).value;
    }
    double operator()(const CustomDensity& c) const {
      return custom_expect(c, m, [&](double x) { return ipow(std::abs(x - m), k); });
    }
  };
  return std::visit(V{m, k}, model);
}

}  // namespace

struct Distribution::State {
  DistModel model;
  mutable std::mutex mu;
  mutable std::optional<double> mean;
  mutable std::map<int, double> central;
  mutable std::map<int, double> absolute;

  double mean_locked() const {
    if (!mean) mean = compute_mean(model);
    return *mean;
  }

  double central_locked(int k) const {
    if (k == 0) return 1.0;
    auto it = central.find(k);
    if (it != central.end()) return it->second;
    double v = compute_central(model, mean_locked(), k);
    central.emplace(k, v);
    return v;
  }

  double absolute_locked(int k) const {
    if (k == 0) return 1.0;
    auto it = absolute.find(k);
    if (it != absolute.end()) return it->second;
    double v = compute_absolute(model, mean_locked(), k);
    absolute.emplace(k, v);
    return v;
  }
};

Distribution Distribution::discrete(std::vector<double> points, std::vector<double> probs) {
  if (points.empty() || points.size() != probs.size())
    throw ValidationError("discrete distribution needs matching, nonempty points and probabilities");
  double total = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) throw ValidationError("probabilities must be nonnegative");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw ValidationError("probabilities do not sum to 1 (sum = " + format_double(total) + ")");
  std::vector<double> sorted = points;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw ValidationError("discrete points must be distinct");
  for (double x : points)
    if (!std::isfinite(x)) throw ValidationError("discrete points must be finite");
  auto st = std::make_shared<State>();
  st->model = DiscreteFinite{std::move(points), std::move(probs)};
  return Distribution(std::move(st));
}

Distribution Distribution::uniform(double a, double b) {
  if (!(b > a) || !std::isfinite(a) || !std::isfinite(b))
    throw ValidationError("uniform requires finite bounds with b > a");
  auto st = std::make_shared<State>();
  st->model = Uniform{a, b};
  return Distribution(std::move(st));
}

Distribution Distribution::normal(double mu, double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(mu) || !std::isfinite(sigma))
    throw ValidationError("normal requires finite mu and sigma > 0");
  auto st = std::make_shared<State>();
  st->model = Normal{mu, sigma};
  return Distribution(std::move(st));
}

Distribution Distribution::exponential(double rate) {
  if (!(rate > 0.0) || !std::isfinite(rate))
    throw ValidationError("exponential requires rate > 0");
  auto st = std::make_shared<State>();
  st->model = Exponential{rate};
  return Distribution(std::move(st));
}

Distribution Distribution::custom_density(Expression density, double lo, double hi) {
  if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi))
    throw ValidationError("custom density requires finite support with hi > lo");
  for (int i = 0; i < 257; ++i) {
    double x = lo + (hi - lo) * i / 256.0;
    double v = eval(density, x);
    if (!(v >= -1e-12))
      throw ValidationError("density is negative at x = " + format_double(x));
  }
  double z = integrate([&](double x) { return eval(density, x); }, lo, hi, 1e-12, 1e-10).value;
  if (std::abs(z - 1.0) >= 1e-3)
    throw ValidationError("density integrates to " + format_double(z) + ", not 1");
  auto st = std::make_shared<State>();
  st->model = CustomDensity{std::move(density), lo, hi, z};
  return Distribution(std::move(st));
}

const DistModel& Distribution::model() const { return state_->model; }

bool Distribution::is_discrete() const {
  return std::holds_alternative<DiscreteFinite>(state_->model);
}

double Distribution::mean() const {
  std::lock_guard lk(state_->mu);
  return state_->mean_locked();
}

double Distribution::variance() const { return central_moment(2); }

double Distribution::central_moment(int k) const {
  if (k < 0) throw std::invalid_argument("moment order must be nonnegative");
  std::lock_guard lk(state_->mu);
  return state_->central_locked(k);
}

double Distribution::abs_central_moment(int k) const {
  if (k < 0) throw std::invalid_argument("moment order must be nonnegative");
  std::lock_guard lk(state_->mu);
  return state_->absolute_locked(k);
}

double Distribution::raw_moment(int j) const {
  if (j < 0) throw std::invalid_argument("moment order must be nonnegative");
  std::lock_guard lk(state_->mu);
  double m = state_->mean_locked();
  double acc = 0.0;
  for (int i = 0; i <= j; ++i) {
    acc += boost::math::binomial_coefficient<double>(static_cast<unsigned>(j),
                                                     static_cast<unsigned>(i)) *
           state_->central_locked(i) * ipow(m, j - i);
  }
  return acc;
}

double Distribution::density_at(double x) const {
  struct V {
    double x;
    double operator()(const DiscreteFinite&) const {
      throw DomainError("discrete distributions have no density");
    }
    double operator()(const Uniform& u) const {
      return (x >= u.a && x <= u.b) ? 1.0 / (u.b - u.a) : 0.0;
    }
    double operator()(const Normal& n) const {
      double t = (x - n.mu) / n.sigma;
      return std::exp(-0.5 * t * t) / (n.sigma * std::sqrt(2.0 * kPi));
    }
    double operator()(const Exponential& e) const {
      return x >= 0.0 ? e.rate * std::exp(-e.rate * x) : 0.0;
    }
    double operator()(const CustomDensity& c) const { return custom_pdf(c, x); }
  };
  return std::visit(V{x}, state_->model);
}

Interval Distribution::support() const {
  struct V {
    Interval operator()(const DiscreteFinite& d) const {
      auto [lo, hi] = std::minmax_element(d.points.begin(), d.points.end());
      return {*lo, *hi};
    }
    Interval operator()(const Uniform& u) const { return {u.a, u.b}; }
    Interval operator()(const Normal&) const { return {-kInf, kInf}; }
    Interval operator()(const Exponential&) const { return {0.0, kInf}; }
    Interval operator()(const CustomDensity& c) const { return {c.lo, c.hi}; }
  };
  return std::visit(V{}, state_->model);
}

Interval Distribution::quadrature_domain() const {
  struct V {
    const Distribution* self;
    Interval operator()(const DiscreteFinite&) const { return self->support(); }
    Interval operator()(const Uniform& u) const { return {u.a, u.b}; }
    Interval operator()(const Normal& n) const {
      // Mass beyond 12 sigma is < 1.8e-33, negligible against smooth
      // polynomial-times-exponential integrands.
      return {n.mu - 12.0 * n.sigma, n.mu + 12.0 * n.sigma};
    }
    Interval operator()(const Exponential& e) const {
      // rate*x = 60 leaves tail mass < 9e-27; 12 sigma would leave ~2e-6.
      return {0.0, 60.0 / e.rate};
    }
    Interval operator()(const CustomDensity& c) const { return {c.lo, c.hi}; }
  };
  return std::visit(V{this}, state_->model);
}

Interval Distribution::evaluation_region() const {
  Interval s = support();
  double m = mean();
  double sd = std::sqrt(std::max(variance(), 0.0));
  return {std::max(s.lo, m - 8.0 * sd), std::min(s.hi, m + 8.0 * sd)};
}

ThirdMomentIdentity third_moment_identity(const Distribution& d) {
  double m = d.mean();
  double lhs = d.raw_moment(3);
  double rhs = m * m * m + 3.0 * m * d.variance();
  return {lhs, rhs, lhs - rhs};
}

// ---------------------------------------------------------------------------
// Spec-string parsing

namespace {

class SpecParser {
 public:
  explicit SpecParser(std::string_view s) : s_(s) {}

  Distribution run() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    std::string_view name = s_.substr(start, pos_ - start);
    if (name.empty()) throw SyntaxError("expected distribution name", pos_);
    expect('(');
    Distribution d = dispatch(name, start);
    expect(')');
    skip_ws();
    if (pos_ != s_.size()) throw SyntaxError("unexpected trailing input", pos_);
    return d;
  }

 private:
  Distribution dispatch(std::string_view name, std::size_t name_pos) {
    if (name == "discrete") return parse_discrete();
    if (name == "uniform") {
      double a = number();
      expect(',');
      double b = number();
      return Distribution::uniform(a, b);
    }
    if (name == "normal") {
      double mu = number();
      expect(',');
      double sigma = number();
      return Distribution::normal(mu, sigma);
    }
    if (name == "exponential") return Distribution::exponential(number());
    if (name == "density") return parse_density();
    throw SyntaxError("unknown distribution '" + std::string(name) + "'", name_pos);
  }

  Distribution parse_discrete() {
    std::vector<double> points, probs;
    for (;;) {
      points.push_back(number());
      expect(':');
      probs.push_back(number());
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == ',') {
        ++pos_;
        continue;
      }
      break;
    }
    return Distribution::discrete(std::move(points), std::move(probs));
  }

  Distribution parse_density() {
    skip_ws();
    std::size_t expr_start = pos_;
    std::size_t semi = s_.find(';', pos_);
    if (semi == std::string_view::npos) throw SyntaxError("expected ';' after density expression", s_.size());
    Expression density;
    try {
      density = parse(s_.substr(expr_start, semi - expr_start));
    } catch (const SyntaxError& e) {
      throw SyntaxError("invalid density expression", expr_start + e.offset());
    }
    pos_ = semi + 1;
    double lo = number();
    expect(',');
    double hi = number();
    return Distribution::custom_density(std::move(density), lo, hi);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != c)
      throw SyntaxError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  double number() {
    skip_ws();
    if (pos_ >= s_.size()) throw SyntaxError("expected number", pos_);
    std::string tail(s_.substr(pos_));
    char* endp = nullptr;
    double v = std::strtod(tail.c_str(), &endp);
    if (endp == tail.c_str()) throw SyntaxError("expected number", pos_);
    if (!std::isfinite(v)) throw SyntaxError("number out of range", pos_);
    pos_ += static_cast<std::size_t>(endp - tail.c_str());
    return v;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Distribution parse_distribution(std::string_view spec) { return SpecParser(spec).run(); }

}  // namespace statdiff
