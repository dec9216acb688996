// statdiff: moment-series approximations of E[g(X)] and Var[g(X)] with
// exactness certification, remainder reconstruction and error bounds,
// cross-checked against an independent oracle.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "statdiff/report.hpp"
#include "statdiff/version.hpp"

namespace {

// Exit codes: 0 success, 1 failed checks, 2 parse/validation error,
// 3 domain or hypothesis failure, 4 quadrature/overflow failure.
enum ExitCode { kOk = 0, kChecksFailed = 1, kParseError = 2, kDomainError = 3, kNumericError = 4 };

std::uint64_t seed_from_env() {
  if (const char* env = std::getenv("STATDIFF_SEED")) return std::strtoull(env, nullptr, 10);
  return 0;
}

struct OrderRange {
  int lo = 2, hi = 6;
};

OrderRange parse_orders(const std::string& text) {
  auto dots = text.find("..");
  if (dots == std::string::npos)
    throw std::invalid_argument("--orders expects a range like 2..6");
  OrderRange r;
  r.lo = std::stoi(text.substr(0, dots));
  r.hi = std::stoi(text.substr(dots + 2));
  return r;
}

int run(int argc, char** argv) {
  CLI::App app{"statistical-differential approximation toolkit"};
  app.set_version_flag("--version", statdiff::kVersion);
  app.require_subcommand(1);

  std::string function_text, dist_spec, format = "table", orders_text = "2..6";
  statdiff::ReportOptions opts;
  opts.seed = seed_from_env();
  int max_k = 8;
  double bound_M = 0.0;

  auto add_common = [&](CLI::App* cmd, bool with_function) {
    if (with_function)
      cmd->add_option("--function", function_text, "expression in x, e.g. \"exp(x)\"")->required();
    cmd->add_option("--dist", dist_spec,
                    "distribution spec: discrete(1:0.5,3:0.5) | uniform(0,1) | normal(0,0.1) | "
                    "exponential(2) | density(expr; lo, hi)")
        ->required();
    cmd->add_option("--format", format, "table | json | csv")
        ->check(CLI::IsMember({"table", "json", "csv"}));
    cmd->add_option("--oracle-tol", opts.oracle_tol, "oracle quadrature tolerance");
    cmd->add_option("--verdict-tol", opts.verdict_tol, "exactness verdict tolerance");
    cmd->add_option("--seed", opts.seed, "RNG seed (fallback: STATDIFF_SEED)");
  };

  CLI::App* report = app.add_subcommand("report", "approximations, oracle, errors, bounds, verdict");
  add_common(report, true);
  report->add_option("--max-order", opts.max_order, "highest truncation order (>= 2)");
  report->add_option("--variance-order", opts.variance_order, "outer order of the second variance form");
  report->add_option("--lyapunov-n", opts.lyapunov_n, "moment order for the Lyapunov-based bound");
  report->add_option("--bound-M", bound_M, "derivative bound M; enables the bounded-derivative bounds");
  report->add_option("--mc-samples", opts.mc_samples, "Monte Carlo cross-check sample count");

  CLI::App* check = app.add_subcommand("check", "moment-table and inequality checks for a distribution");
  add_common(check, false);
  check->add_option("--max-k", max_k, "highest moment order to check");

  CLI::App* sweep = app.add_subcommand("sweep", "error decay across truncation orders");
  add_common(sweep, true);
  sweep->add_option("--orders", orders_text, "order range, e.g. 2..6");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kParseError;
  }

  if (report->parsed()) {
    if (bound_M > 0.0) opts.bound_M = bound_M;
    statdiff::ApproxReport r = statdiff::build_report(function_text, dist_spec, opts);
    if (format == "json") std::cout << statdiff::report_to_json(r).dump(2) << '\n';
    else if (format == "csv") std::cout << statdiff::report_to_csv(r);
    else std::cout << statdiff::report_to_table(r);
    return kOk;
  }
  if (check->parsed()) {
    statdiff::CheckReport c = statdiff::build_check(dist_spec, max_k, opts.verdict_tol);
    if (format == "json") std::cout << statdiff::check_to_json(c).dump(2) << '\n';
    else std::cout << statdiff::check_to_table(c);
    return c.all_passed ? kOk : kChecksFailed;
  }
  OrderRange range = parse_orders(orders_text);
  statdiff::SweepReport s = statdiff::build_sweep(function_text, dist_spec, range.lo, range.hi, opts);
  if (format == "json") std::cout << statdiff::sweep_to_json(s).dump(2) << '\n';
  else if (format == "csv") std::cout << statdiff::sweep_to_csv(s);
  else std::cout << statdiff::sweep_to_table(s);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const statdiff::SyntaxError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const statdiff::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const statdiff::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDomainError;
  } catch (const statdiff::HypothesisFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDomainError;
  } catch (const statdiff::QuadratureFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumericError;
  } catch (const statdiff::NonFinite& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumericError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumericError;
  }
}
