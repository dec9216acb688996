#include "statdiff/report.hpp"

#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "statdiff/jet.hpp"
#include "statdiff/version.hpp"

namespace statdiff {

namespace {

using nlohmann::json;

// Single formatting rule shared by json and csv so both carry identical
// numeric text (shortest 17-significant-digit round trip).
std::string fmt_num(double v) { return json(v).dump(); }

json bound_to_json(const ErrorBound& b) {
  json checks = json::array();
  for (const auto& h : b.hypotheses)
    checks.push_back({{"name", h.name}, {"passed", h.passed}, {"detail", h.detail}});
  return {{"kind", to_string(b.kind)},
          {"value", b.value},
          {"signed_value", b.signed_value},
          {"applicable", b.applicable},
          {"hypotheses", checks}};
}

json verdict_to_json(const ExactnessVerdict& v) {
  const auto& c = v.conditions;
  json degree = nullptr;
  if (c.degree) degree = *c.degree;
  return {{"status", to_string(v.status)},
          {"residual", v.residual},
          {"conditions",
           {{"degree", degree},
            {"degree_le_2", c.degree_le_2},
            {"degree_le_3", c.degree_le_3},
            {"third_central_moment", c.third_central_moment},
            {"third_moment_zero", c.third_moment_zero},
            {"remainder_negligible", c.remainder_negligible}}}};
}

std::string bound_label(const ErrorBound& b, const ReportOptions& o) {
  std::string label = to_string(b.kind);
  if (b.kind == BoundKind::PeanoRemainder) label += "(n=2)";
  if (b.kind == BoundKind::Lyapunov || b.kind == BoundKind::Corollary2)
    label += "(n=" + std::to_string(o.lyapunov_n) + ")";
  return label;
}

}  // namespace

ApproxReport build_report(const std::string& function_text, const std::string& dist_spec,
                          const ReportOptions& options) {
  if (options.max_order < 2) throw std::invalid_argument("max order must be at least 2");
  if (options.max_order > kDefaultMaxJetOrder)
    throw std::invalid_argument("max order exceeds the jet order cap");

  ApproxReport r;
  r.function_text = function_text;
  r.dist_spec = dist_spec;
  r.options = options;
  r.version = kVersion;

  Expression g = parse(function_text);
  Distribution d = parse_distribution(dist_spec);

  r.oracle_mean = oracle_mean(g, d, options.oracle_tol);
  r.oracle_variance = oracle_variance(g, d, options.oracle_tol);
  for (int order = 2; order <= options.max_order; ++order) {
    r.orders.push_back(order);
    double a = approx_mean(g, d, order);
    r.mean_approx.push_back(a);
    r.true_error.push_back(std::abs(r.oracle_mean - a));
  }
  r.variance_first = approx_variance_first(g, d);
  r.variance_second = approx_variance_second(g, d, options.variance_order);

  r.bounds.push_back(peano_bound(g, d, 2));
  auto guarded = [&r](BoundKind kind, auto&& fn) {
    // A failed gate downgrades the bound to not-applicable instead of
    // aborting the whole report.
    try {
      r.bounds.push_back(fn());
    } catch (const HypothesisFailure& e) {
      r.bounds.push_back({kind, 0.0, false, {{"hypothesis", false, e.what()}}, 0.0});
    } catch (const DomainError& e) {
      r.bounds.push_back({kind, 0.0, false, {{"domain", false, e.what()}}, 0.0});
    }
  };
  guarded(BoundKind::ClassL, [&] { return bound_class_L(g, d); });
  guarded(BoundKind::Lyapunov, [&] { return bound_lyapunov(g, d, options.lyapunov_n); });
  if (options.bound_M) {
    guarded(BoundKind::BoundedDerivative,
            [&] { return bound_bounded_derivative(g, d, *options.bound_M); });
    guarded(BoundKind::Corollary2,
            [&] { return bound_corollary2(g, d, *options.bound_M, options.lyapunov_n); });
  }

  r.verdict = exactness_verdict(g, d, options.verdict_tol);
  if (options.mc_samples > 0) r.mc = mc_mean(g, d, options.mc_samples, options.seed);
  return r;
}

json report_to_json(const ApproxReport& r) {
  json j;
  j["function"] = r.function_text;
  j["dist"] = r.dist_spec;
  j["orders"] = r.orders;
  j["mean_approx"] = r.mean_approx;
  j["true_error"] = r.true_error;
  j["oracle_mean"] = r.oracle_mean;
  j["oracle_variance"] = r.oracle_variance;
  j["variance_first"] = r.variance_first;
  j["variance_second"] = r.variance_second;
  j["bounds"] = json::array();
  for (const auto& b : r.bounds) j["bounds"].push_back(bound_to_json(b));
  j["verdict"] = verdict_to_json(r.verdict);
  j["seed"] = r.options.seed;
  j["tolerances"] = {{"oracle_tol", r.options.oracle_tol}, {"verdict_tol", r.options.verdict_tol}};
  j["version"] = r.version;
  if (r.mc)
    j["mc"] = {{"estimate", r.mc->estimate},
               {"std_error", r.mc->std_error},
               {"samples", r.options.mc_samples}};
  return j;
}

std::string report_to_csv(const ApproxReport& r) {
  std::ostringstream os;
  os << "field,order,value\n";
  for (std::size_t i = 0; i < r.orders.size(); ++i) {
    os << "mean_approx," << r.orders[i] << ',' << fmt_num(r.mean_approx[i]) << '\n';
    os << "true_error," << r.orders[i] << ',' << fmt_num(r.true_error[i]) << '\n';
  }
  os << "oracle_mean,," << fmt_num(r.oracle_mean) << '\n';
  os << "oracle_variance,," << fmt_num(r.oracle_variance) << '\n';
  os << "variance_first,," << fmt_num(r.variance_first) << '\n';
  os << "variance_second,," << fmt_num(r.variance_second) << '\n';
  for (const auto& b : r.bounds) {
    std::string label = to_string(b.kind);
    os << "bound." << label << ".value,," << fmt_num(b.value) << '\n';
    os << "bound." << label << ".applicable,," << (b.applicable ? "true" : "false") << '\n';
  }
  os << "verdict,," << to_string(r.verdict.status) << '\n';
  os << "verdict_residual,," << fmt_num(r.verdict.residual) << '\n';
  os << "oracle_tol,," << fmt_num(r.options.oracle_tol) << '\n';
  os << "verdict_tol,," << fmt_num(r.options.verdict_tol) << '\n';
  os << "seed,," << r.options.seed << '\n';
  os << "version,," << r.version << '\n';
  if (r.mc) {
    os << "mc_estimate,," << fmt_num(r.mc->estimate) << '\n';
    os << "mc_std_error,," << fmt_num(r.mc->std_error) << '\n';
  }
  return os.str();
}

std::string report_to_table(const ApproxReport& r) {
  std::ostringstream os;
  os << "function:         " << r.function_text << '\n';
  os << "dist:             " << r.dist_spec << '\n';
  os << "oracle mean:      " << format_double(r.oracle_mean)
     << "   (tol " << format_double(r.options.oracle_tol) << ")\n";
  os << "oracle variance:  " << format_double(r.oracle_variance) << "\n\n";
  os << "order  mean approximation     |true error|\n";
  for (std::size_t i = 0; i < r.orders.size(); ++i) {
    std::string a = format_double(r.mean_approx[i]);
    os << r.orders[i] << "      " << a << std::string(a.size() < 22 ? 22 - a.size() : 1, ' ')
       << format_double(r.true_error[i]) << '\n';
  }
  os << '\n';
  os << "variance, first order:   " << format_double(r.variance_first) << '\n';
  os << "variance, second form (order " << r.options.variance_order
     << "): " << format_double(r.variance_second) << '\n';
  os << "verdict: " << to_string(r.verdict.status) << "  (residual "
     << format_double(r.verdict.residual) << ")\n\n";
  os << "bounds (diagnostic, big-O constant taken as 1):\n";
  for (const auto& b : r.bounds) {
    os << "  " << bound_label(b, r.options) << ": value " << format_double(b.value)
       << (b.applicable ? "  [applicable]" : "  [not applicable]") << '\n';
    for (const auto& h : b.hypotheses)
      os << "      " << (h.passed ? "pass " : "FAIL ") << h.name
         << (h.detail.empty() ? "" : ": " + h.detail) << '\n';
  }
  if (r.mc) {
    os << "\nmc cross-check: " << format_double(r.mc->estimate) << " +/- "
       << format_double(r.mc->std_error) << "  (" << r.options.mc_samples
       << " samples, seed " << r.options.seed << ")\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------

SweepReport build_sweep(const std::string& function_text, const std::string& dist_spec,
                        int order_lo, int order_hi, const ReportOptions& options) {
  if (order_lo < 2) throw std::invalid_argument("sweep orders must start at 2 or above");
  if (order_hi < order_lo) throw std::invalid_argument("empty order range");
  if (order_hi > kDefaultMaxJetOrder)
    throw std::invalid_argument("max order exceeds the jet order cap");

  SweepReport s;
  s.function_text = function_text;
  s.dist_spec = dist_spec;
  s.options = options;
  s.version = kVersion;

  Expression g = parse(function_text);
  Distribution d = parse_distribution(dist_spec);
  s.oracle_mean = oracle_mean(g, d, options.oracle_tol);
  for (int order = order_lo; order <= order_hi; ++order) {
    SweepRow row;
    row.order = order;
    row.mean_approx = approx_mean(g, d, order);
    row.abs_error = std::abs(s.oracle_mean - row.mean_approx);
    row.peano_remainder = peano_remainder(g, d, order);
    s.rows.push_back(row);
  }
  return s;
}

json sweep_to_json(const SweepReport& s) {
  json rows = json::array();
  for (const auto& r : s.rows)
    rows.push_back({{"order", r.order},
                    {"mean_approx", r.mean_approx},
                    {"abs_error", r.abs_error},
                    {"peano_remainder", r.peano_remainder}});
  return {{"function", s.function_text},
          {"dist", s.dist_spec},
          {"oracle_mean", s.oracle_mean},
          {"rows", rows},
          {"seed", s.options.seed},
          {"tolerances",
           {{"oracle_tol", s.options.oracle_tol}, {"verdict_tol", s.options.verdict_tol}}},
          {"version", s.version}};
}

std::string sweep_to_csv(const SweepReport& s) {
  std::ostringstream os;
  os << "order,mean_approx,abs_error,peano_remainder\n";
  for (const auto& r : s.rows)
    os << r.order << ',' << fmt_num(r.mean_approx) << ',' << fmt_num(r.abs_error) << ','
       << fmt_num(r.peano_remainder) << '\n';
  return os.str();
}

std::string sweep_to_table(const SweepReport& s) {
  std::ostringstream os;
  os << "function: " << s.function_text << "   dist: " << s.dist_spec << '\n';
  os << "oracle mean: " << format_double(s.oracle_mean) << '\n';
  os << "order  mean approximation     |true error|           peano remainder\n";
  for (const auto& r : s.rows) {
    std::string a = format_double(r.mean_approx);
    std::string e = format_double(r.abs_error);
    os << r.order << "      " << a << std::string(a.size() < 22 ? 22 - a.size() : 1, ' ') << e
       << std::string(e.size() < 22 ? 22 - e.size() : 1, ' ')
       << format_double(r.peano_remainder) << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------

CheckReport build_check(const std::string& dist_spec, int max_k, double tol) {
  CheckReport c;
  c.dist_spec = dist_spec;
  c.max_k = max_k;
  Distribution d = parse_distribution(dist_spec);

  auto push = [&c](const std::string& name, bool passed, const std::string& detail) {
    c.lines.push_back({name, passed, detail});
    c.all_passed = c.all_passed && passed;
  };

  double mu2 = d.central_moment(2);
  push("mu_0 = 1", d.central_moment(0) == 1.0, "mu_0 = " + format_double(d.central_moment(0)));
  push("|mu_1| <= 1e-10", std::abs(d.central_moment(1)) <= 1e-10,
       "mu_1 = " + format_double(d.central_moment(1)));
  push("mu_2 >= 0", mu2 >= 0.0, "mu_2 = " + format_double(mu2));
  for (int k = 1; k <= max_k; ++k) {
    double nu = d.abs_central_moment(k);
    double mu = d.central_moment(k);
    push("nu_" + std::to_string(k) + " >= |mu_" + std::to_string(k) + "|",
         nu >= std::abs(mu) - 1e-12 * std::abs(mu),
         "nu = " + format_double(nu) + ", mu = " + format_double(mu));
  }
  for (int k = 1; k + 1 <= max_k; ++k) {
    auto res = lyapunov_check(d, k, k + 1);
    push("nu_" + std::to_string(k + 1) + "^{1/" + std::to_string(k + 1) + "} >= nu_" +
             std::to_string(k) + "^{1/" + std::to_string(k) + "}",
         res.holds, format_double(res.lhs) + " >= " + format_double(res.rhs));
  }
  if (max_k >= 4 && d.abs_central_moment(4) == 0.0)
    push("nu_4 = 0 implies point mass", d.variance() == 0.0,
         "variance = " + format_double(d.variance()));
  double mu3 = d.central_moment(3);
  if (std::abs(mu3) <= tol * (1.0 + std::pow(mu2, 1.5))) {
    auto identity = third_moment_identity(d);
    push("E[X^3] = m^3 + 3*m*Var[X]",
         std::abs(identity.residual) <= 1e-8 * (1.0 + std::abs(identity.lhs)),
         "lhs " + format_double(identity.lhs) + ", rhs " + format_double(identity.rhs) +
             ", residual " + format_double(identity.residual));
  }
  return c;
}

json check_to_json(const CheckReport& c) {
  json lines = json::array();
  for (const auto& l : c.lines)
    lines.push_back({{"name", l.name}, {"passed", l.passed}, {"detail", l.detail}});
  return {{"dist", c.dist_spec}, {"max_k", c.max_k}, {"checks", lines}, {"all_passed", c.all_passed}};
}

std::string check_to_table(const CheckReport& c) {
  std::ostringstream os;
  os << "dist: " << c.dist_spec << '\n';
  for (const auto& l : c.lines)
    os << (l.passed ? "[pass] " : "[FAIL] ") << l.name << "   (" << l.detail << ")\n";
  os << (c.all_passed ? "all checks passed" : "CHECKS FAILED") << '\n';
  return os.str();
}

}  // namespace statdiff
