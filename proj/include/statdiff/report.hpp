#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "statdiff/approx.hpp"
#include "statdiff/bounds.hpp"
#include "statdiff/oracle.hpp"

namespace statdiff {

struct ReportOptions {
  int max_order = 4;
  int variance_order = 2;
  int lyapunov_n = 3;
  std::optional<double> bound_M;       // enables the bounded-derivative bounds
  double oracle_tol = 1e-10;
  double verdict_tol = 1e-9;
  std::uint64_t seed = 0;
  std::uint64_t mc_samples = 0;        // 0 disables the Monte Carlo cross-check
};

// Juxtaposes approximations, the oracle, true errors, bounds and the
// exactness verdict for one (g, X) pair.
struct ApproxReport {
  std::string function_text;
  std::string dist_spec;
  std::vector<int> orders;             // 2..max_order
  std::vector<double> mean_approx;     // one per order
  std::vector<double> true_error;      // |oracle - approx|, one per order
  double oracle_mean = 0.0;
  double oracle_variance = 0.0;
  double variance_first = 0.0;
  double variance_second = 0.0;
  std::vector<ErrorBound> bounds;
  ExactnessVerdict verdict;
  std::optional<McResult> mc;
  ReportOptions options;
  std::string version;
};

ApproxReport build_report(const std::string& function_text, const std::string& dist_spec,
                          const ReportOptions& options);

nlohmann::json report_to_json(const ApproxReport& r);
std::string report_to_csv(const ApproxReport& r);
std::string report_to_table(const ApproxReport& r);

struct SweepRow {
  int order = 0;
  double mean_approx = 0.0;
  double abs_error = 0.0;
  double peano_remainder = 0.0;
};

struct SweepReport {
  std::string function_text;
  std::string dist_spec;
  double oracle_mean = 0.0;
  std::vector<SweepRow> rows;
  ReportOptions options;
  std::string version;
};

SweepReport build_sweep(const std::string& function_text, const std::string& dist_spec,
                        int order_lo, int order_hi, const ReportOptions& options);

nlohmann::json sweep_to_json(const SweepReport& s);
std::string sweep_to_csv(const SweepReport& s);
std::string sweep_to_table(const SweepReport& s);

struct CheckLine {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct CheckReport {
  std::string dist_spec;
  int max_k = 8;
  std::vector<CheckLine> lines;
  bool all_passed = true;
};

// Moment-table invariants, the norm-monotonicity chain up to max_k and
// (when mu_3 vanishes) the third-moment identity.
CheckReport build_check(const std::string& dist_spec, int max_k, double tol);

nlohmann::json check_to_json(const CheckReport& c);
std::string check_to_table(const CheckReport& c);

}  // namespace statdiff
