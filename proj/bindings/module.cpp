#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "statdiff/approx.hpp"
#include "statdiff/bounds.hpp"
#include "statdiff/jet.hpp"
#include "statdiff/oracle.hpp"
#include "statdiff/report.hpp"
#include "statdiff/version.hpp"

namespace py = pybind11;
using namespace statdiff;

namespace {

py::dict bound_to_dict(const ErrorBound& b) {
  py::dict d;
  d["kind"] = std::string(to_string(b.kind));
  d["value"] = b.value;
  d["signed_value"] = b.signed_value;
  d["applicable"] = b.applicable;
  py::list checks;
  for (const auto& h : b.hypotheses) {
    py::dict c;
    c["name"] = h.name;
    c["passed"] = h.passed;
    c["detail"] = h.detail;
    checks.append(c);
  }
  d["hypotheses"] = checks;
  return d;
}

py::dict verdict_to_dict(const ExactnessVerdict& v) {
  py::dict d;
  d["status"] = std::string(to_string(v.status));
  d["residual"] = v.residual;
  py::dict c;
  if (v.conditions.degree) c["degree"] = *v.conditions.degree;
  else c["degree"] = py::none();
  c["degree_le_2"] = v.conditions.degree_le_2;
  c["degree_le_3"] = v.conditions.degree_le_3;
  c["third_central_moment"] = v.conditions.third_central_moment;
  c["third_moment_zero"] = v.conditions.third_moment_zero;
  c["remainder_negligible"] = v.conditions.remainder_negligible;
  d["conditions"] = c;
  return d;
}

}  // namespace

PYBIND11_MODULE(_statdiff, m) {
  m.doc() = "moment-series approximations of E[g(X)] and Var[g(X)] with exactness "
            "certification, Peano remainders and error bounds";
  m.attr("__version__") = kVersion;

  py::register_exception<SyntaxError>(m, "ExpressionSyntaxError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<HypothesisFailure>(m, "HypothesisFailure", PyExc_ValueError);
  py::register_exception<QuadratureFailure>(m, "QuadratureFailure", PyExc_RuntimeError);
  py::register_exception<NonFinite>(m, "NonFinite", PyExc_OverflowError);

  py::class_<Expression>(m, "Expression")
      .def("__call__", [](const Expression& g, double x) { return eval(g, x); }, py::arg("x"))
      .def("__repr__", [](const Expression& g) { return "Expression(" + to_string(g) + ")"; })
      .def("__str__", [](const Expression& g) { return to_string(g); })
      .def("poly_degree", [](const Expression& g) -> py::object {
        auto d = poly_degree(g);
        if (!d) return py::none();
        return py::int_(*d);
      })
      .def("derivative", [](const Expression& g, double x, int k) { return derivative_at(g, x, k); },
           py::arg("x"), py::arg("k"))
      .def("jet", [](const Expression& g, double center, int order) {
        return jet_of(g, center, order).coeffs;
      }, py::arg("center"), py::arg("order"));

  py::class_<Distribution>(m, "Distribution")
      .def("mean", &Distribution::mean)
      .def("variance", &Distribution::variance)
      .def("central_moment", &Distribution::central_moment, py::arg("k"))
      .def("abs_central_moment", &Distribution::abs_central_moment, py::arg("k"))
      .def("raw_moment", &Distribution::raw_moment, py::arg("j"));

  m.def("parse", &parse, py::arg("text"), "Parse an expression in x.");
  m.def("parse_distribution",
        [](const std::string& spec) { return parse_distribution(spec); }, py::arg("spec"),
        "Parse a distribution spec string, e.g. \"normal(0,0.1)\".");

  m.def("third_moment_identity", [](const Distribution& d) {
    auto r = third_moment_identity(d);
    py::dict out;
    out["lhs"] = r.lhs;
    out["rhs"] = r.rhs;
    out["residual"] = r.residual;
    return out;
  }, py::arg("dist"));

  m.def("approx_mean", &approx_mean, py::arg("g"), py::arg("dist"), py::arg("order") = 2);
  m.def("approx_variance_first", &approx_variance_first, py::arg("g"), py::arg("dist"));
  m.def("approx_variance_second", &approx_variance_second, py::arg("g"), py::arg("dist"),
        py::arg("order") = 2);
  m.def("exactness_verdict", [](const Expression& g, const Distribution& d, double tol) {
    return verdict_to_dict(exactness_verdict(g, d, tol));
  }, py::arg("g"), py::arg("dist"), py::arg("tol") = 1e-9);

  m.def("oracle_mean", &oracle_mean, py::arg("g"), py::arg("dist"), py::arg("tol") = 1e-10);
  m.def("oracle_variance", &oracle_variance, py::arg("g"), py::arg("dist"), py::arg("tol") = 1e-10);
  m.def("mc_mean", [](const Expression& g, const Distribution& d, std::uint64_t samples,
                      std::uint64_t seed) {
    McResult r = mc_mean(g, d, samples, seed);
    return py::make_tuple(r.estimate, r.std_error);
  }, py::arg("g"), py::arg("dist"), py::arg("samples") = 1000000, py::arg("seed") = 0);

  m.def("peano_remainder", &peano_remainder, py::arg("g"), py::arg("dist"), py::arg("n") = 2);
  m.def("bound_class_L", [](const Expression& g, const Distribution& d) {
    return bound_to_dict(bound_class_L(g, d));
  }, py::arg("g"), py::arg("dist"));
  m.def("bound_bounded_derivative", [](const Expression& g, const Distribution& d, double M) {
    return bound_to_dict(bound_bounded_derivative(g, d, M));
  }, py::arg("g"), py::arg("dist"), py::arg("M"));
  m.def("bound_lyapunov", [](const Expression& g, const Distribution& d, int n) {
    return bound_to_dict(bound_lyapunov(g, d, n));
  }, py::arg("g"), py::arg("dist"), py::arg("n") = 3);
  m.def("bound_corollary2", [](const Expression& g, const Distribution& d, double M, int n) {
    return bound_to_dict(bound_corollary2(g, d, M, n));
  }, py::arg("g"), py::arg("dist"), py::arg("M"), py::arg("n") = 3);
  m.def("class_L_membership", [](const Expression& g, double lo, double hi, int max_order) {
    MembershipReport r = class_L_membership(g, Interval{lo, hi}, max_order);
    py::list checks;
    for (const auto& c : r.checks) {
      py::dict d;
      d["name"] = c.name;
      d["passed"] = c.passed;
      d["detail"] = c.detail;
      checks.append(d);
    }
    py::dict out;
    out["member"] = r.member;
    out["checks"] = checks;
    return out;
  }, py::arg("g"), py::arg("lo"), py::arg("hi"), py::arg("max_order") = 8);
  m.def("lyapunov_check", [](const Distribution& d, int r, int s) {
    auto res = lyapunov_check(d, r, s);
    py::dict out;
    out["lhs"] = res.lhs;
    out["rhs"] = res.rhs;
    out["holds"] = res.holds;
    return out;
  }, py::arg("dist"), py::arg("r"), py::arg("s"));

  m.def("report_json", [](const std::string& function, const std::string& dist, int max_order,
                          double oracle_tol, double verdict_tol, std::uint64_t seed,
                          std::uint64_t mc_samples) {
    ReportOptions o;
    o.max_order = max_order;
    o.oracle_tol = oracle_tol;
    o.verdict_tol = verdict_tol;
    o.seed = seed;
    o.mc_samples = mc_samples;
    return report_to_json(build_report(function, dist, o)).dump();
  }, py::arg("function"), py::arg("dist"), py::arg("max_order") = 4,
     py::arg("oracle_tol") = 1e-10, py::arg("verdict_tol") = 1e-9, py::arg("seed") = 0,
     py::arg("mc_samples") = 0,
     "Full report (approximations, oracle, errors, bounds, verdict) as a JSON string.");
}
