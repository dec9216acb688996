#include <set>
#include <sstream>
#include <string>

#include <doctest.h>
#include <nlohmann/json.hpp>

#include "statdiff/report.hpp"

using namespace statdiff;
using nlohmann::json;

namespace {

ReportOptions default_opts() {
  ReportOptions o;
  o.max_order = 4;
  o.seed = 42;
  return o;
}

// Every numeric token from the csv "value" column (version is a string
// field that merely looks numeric).
std::set<std::string> csv_values(const std::string& csv) {
  std::set<std::string> out;
  std::istringstream is(csv);
  std::string line;
  std::getline(is, line);  // header
  while (std::getline(is, line)) {
    if (line.rfind("version,", 0) == 0) continue;
    auto pos = line.rfind(',');
    std::string v = line.substr(pos + 1);
    if (!v.empty() && (std::isdigit(static_cast<unsigned char>(v[0])) || v[0] == '-'))
      out.insert(v);
  }
  return out;
}

void collect_numbers(const json& j, std::set<std::string>& out) {
  if (j.is_number()) out.insert(j.dump());
  else if (j.is_array())
    for (const auto& v : j) collect_numbers(v, out);
  else if (j.is_object())
    for (const auto& [k, v] : j.items()) collect_numbers(v, out);
}

}  // namespace

TEST_CASE("report for exp under N(0, 0.1)") {
  ApproxReport r = build_report("exp(x)", "normal(0,0.1)", default_opts());
  REQUIRE(r.orders == std::vector<int>{2, 3, 4});
  CHECK(r.mean_approx[0] == 1.005);
  CHECK(r.oracle_mean == doctest::Approx(1.0050125208594011).epsilon(1e-13));
  CHECK(r.true_error[0] == doctest::Approx(1.2520859401063384e-5).epsilon(1e-7));
  CHECK(r.true_error[2] < r.true_error[0]);
  CHECK(r.verdict.status == ExactnessStatus::NotExact);
  CHECK(r.bounds.size() == 3);  // peano, class-L, lyapunov
  for (const auto& b : r.bounds) CHECK(b.applicable);
  CHECK(r.version == std::string("0.1.0"));
}

TEST_CASE("report certifies quadratics") {
  ApproxReport r = build_report("x^2+1", "uniform(0,1)", default_opts());
  CHECK(r.verdict.status == ExactnessStatus::ExactDegree2);
  CHECK(r.true_error[0] <= 1e-12);
}

TEST_CASE("report downgrades inapplicable bounds instead of failing") {
  // cos has a sign-changing third derivative on [0, 4]
  ReportOptions o = default_opts();
  ApproxReport r = build_report("cos(x)", "uniform(0,4)", o);
  bool lyapunov_seen = false;
  for (const auto& b : r.bounds)
    if (b.kind == BoundKind::Lyapunov) {
      lyapunov_seen = true;
      CHECK(!b.applicable);
    }
  CHECK(lyapunov_seen);
}

TEST_CASE("report respects bound_M and mc options") {
  ReportOptions o = default_opts();
  o.bound_M = 1.0;
  o.mc_samples = 20000;
  ApproxReport r = build_report("sin(x)", "uniform(0,1)", o);
  CHECK(r.bounds.size() == 5);
  REQUIRE(r.mc.has_value());
  CHECK(std::abs(r.mc->estimate - r.oracle_mean) <= 4 * r.mc->std_error);
}

TEST_CASE("json report is stable-keyed and round-trips") {
  ApproxReport r = build_report("exp(x)", "normal(0,0.1)", default_opts());
  json j = report_to_json(r);
  for (const char* key : {"function", "dist", "orders", "mean_approx", "oracle_mean",
                          "true_error", "bounds", "verdict", "seed", "tolerances", "version"})
    CHECK(j.contains(key));
  json reparsed = json::parse(j.dump());
  CHECK(reparsed == j);
  CHECK(reparsed.dump() == j.dump());
  CHECK(j["seed"] == 42);
  CHECK(j["tolerances"]["oracle_tol"] == 1e-10);
}

TEST_CASE("json and csv carry identical numeric values") {
  ApproxReport r = build_report("exp(x)", "normal(0,0.1)", default_opts());
  std::set<std::string> csv = csv_values(report_to_csv(r));
  std::set<std::string> js;
  collect_numbers(report_to_json(r), js);
  // every csv numeric token appears verbatim in the json
  int missing = 0;
  for (const auto& v : csv)
    if (!js.count(v)) ++missing;
  CHECK(missing == 0);
}

TEST_CASE("sweep matches report at the shared order") {
  ReportOptions o = default_opts();
  ApproxReport r = build_report("exp(x)", "uniform(0,1)", o);
  SweepReport s = build_sweep("exp(x)", "uniform(0,1)", 2, 2, o);
  REQUIRE(s.rows.size() == 1);
  CHECK(s.rows[0].mean_approx == r.mean_approx[0]);  // bit-for-bit
  CHECK(s.rows[0].abs_error == r.true_error[0]);
  CHECK(s.oracle_mean == r.oracle_mean);
}

TEST_CASE("sweep error decays for analytic g") {
  // all central moments of an exponential are nonzero, so every order helps
  SweepReport s = build_sweep("exp(x)", "exponential(2)", 2, 6, default_opts());
  REQUIRE(s.rows.size() == 5);
  for (std::size_t i = 1; i < s.rows.size(); ++i)
    CHECK(s.rows[i].abs_error < s.rows[i - 1].abs_error);

  // symmetric support: odd orders add nothing, so the decay is only
  // monotone, with ties at odd orders
  SweepReport u = build_sweep("exp(x)", "uniform(0,1)", 2, 6, default_opts());
  for (std::size_t i = 1; i < u.rows.size(); ++i)
    CHECK(u.rows[i].abs_error <= u.rows[i - 1].abs_error);
  for (const auto& row : u.rows)
    CHECK(row.mean_approx + row.peano_remainder ==
          doctest::Approx(u.oracle_mean).epsilon(1e-9));
}

TEST_CASE("sweep for quadratics is flat at zero error") {
  SweepReport s = build_sweep("x^2+1", "uniform(0,1)", 2, 5, default_opts());
  for (const auto& row : s.rows) CHECK(row.abs_error <= 1e-12);
}

TEST_CASE("check command: healthy distributions pass") {
  CheckReport a = build_check("discrete(1:0.5,3:0.5)", 8, 1e-9);
  CHECK(a.all_passed);
  bool identity_seen = false;
  for (const auto& l : a.lines)
    if (l.name.find("E[X^3]") != std::string::npos) {
      identity_seen = true;
      CHECK(l.detail.find("lhs 14") != std::string::npos);
    }
  CHECK(identity_seen);

  CHECK(build_check("uniform(0,1)", 8, 1e-9).all_passed);
  CHECK(build_check("normal(0.5,0.1)", 8, 1e-9).all_passed);
  CHECK(build_check("exponential(2)", 8, 1e-9).all_passed);
  CHECK_THROWS_AS(build_check("discrete(1:0.7,3:0.4)", 8, 1e-9), ValidationError);
}

TEST_CASE("table renderers do not blow up") {
  ReportOptions o = default_opts();
  o.bound_M = 1.0;
  o.mc_samples = 1000;
  ApproxReport r = build_report("sin(x)", "uniform(0,1)", o);
  CHECK(!report_to_table(r).empty());
  SweepReport s = build_sweep("sin(x)", "uniform(0,1)", 2, 3, o);
  CHECK(!sweep_to_table(s).empty());
  CHECK(sweep_to_csv(s).rfind("order,", 0) == 0);
  CheckReport c = build_check("uniform(0,1)", 4, 1e-9);
  CHECK(!check_to_table(c).empty());
  CHECK(check_to_json(c)["all_passed"] == true);
}
