#include <cmath>

#include <doctest.h>

#include "statdiff/approx.hpp"
#include "statdiff/bounds.hpp"
#include "statdiff/oracle.hpp"
#include "test_helpers.hpp"

using namespace statdiff;

TEST_CASE("peano_remainder spot values") {
  for (const Distribution& d : testutil::suite())
    CHECK(std::abs(peano_remainder(parse("x^2 - 3*x + 2"), d, 2)) <= 1e-12);

  // frozen closed form: (e - 1) - e^{1/2}(1 + 1/24)
  CHECK(peano_remainder(parse("exp(x)"), Distribution::uniform(0.0, 1.0), 2) ==
        doctest::Approx(8.6383814641174906e-4).epsilon(1e-7));

  // odd remainder integrand vanishes under symmetry
  CHECK(std::abs(peano_remainder(parse("x^3"), Distribution::normal(0.0, 1.0), 2)) <= 1e-9);

  CHECK_THROWS_AS(peano_remainder(parse("x"), Distribution::uniform(0.0, 1.0), 0),
                  std::invalid_argument);
}

TEST_CASE("peano remainder reconstructs the oracle") {
  const Distribution dists[] = {
      Distribution::uniform(0.0, 1.0),
      Distribution::normal(0.5, 0.1),
      Distribution::discrete({0.0, 0.5, 1.0}, {0.3, 0.4, 0.3}),
  };
  for (const char* text : {"exp(x)", "sin(x)", "ln(1+x)"}) {
    Expression g = parse(text);
    for (const Distribution& d : dists) {
      double truth = oracle_mean(g, d);
      for (int n : {2, 3, 4}) {
        double reconstructed = approx_mean(g, d, n) + peano_remainder(g, d, n);
        CAPTURE(text);
        CAPTURE(n);
        CHECK(std::abs(reconstructed - truth) <= 1e-6 * (1.0 + std::abs(truth)));
      }
    }
  }
}

TEST_CASE("remainder magnitude shrinks with order on smooth cases") {
  const Distribution dists[] = {Distribution::uniform(0.0, 1.0), Distribution::normal(0.5, 0.1)};
  for (const char* text : {"exp(x)", "sin(x)", "ln(1+x)"}) {
    Expression g = parse(text);
    for (const Distribution& d : dists) {
      double prev = std::abs(peano_remainder(g, d, 2));
      for (int n : {3, 4, 5, 6}) {
        double cur = std::abs(peano_remainder(g, d, n));
        CAPTURE(text);
        CAPTURE(n);
        CHECK(cur <= prev + 1e-14);
        prev = cur;
      }
    }
  }
}

TEST_CASE("class_L_membership") {
  MembershipReport m1 = class_L_membership(parse("exp(x)"), {0.0, 1.0}, 8);
  CHECK(m1.member);
  CHECK(m1.checks.size() == 9);

  // 1/x phrased as exp(-ln x): derivatives alternate in sign
  MembershipReport m2 = class_L_membership(parse("exp(0 - ln(x))"), {0.1, 2.0}, 4);
  CHECK(!m2.member);
  MembershipReport m2b = class_L_membership(parse("1/x"), {0.1, 2.0}, 4);
  CHECK(!m2b.member);

  // strict sufficient condition rejects x^2+1 (g' < 0 on part of the region)
  // but the report points out the degree-2 escape hatch
  MembershipReport m3 = class_L_membership(parse("x^2 + 1"), {-1.0, 1.0}, 8);
  CHECK(!m3.member);
  bool noted = false;
  for (const auto& c : m3.checks)
    if (!c.passed && c.detail.find("degree <= 2") != std::string::npos) noted = true;
  CHECK(noted);
}

TEST_CASE("bound_class_L") {
  // frozen mpmath: E[|X|^3 e^X] for X ~ N(0, 0.1)
  ErrorBound b1 = bound_class_L(parse("exp(x)"), Distribution::normal(0.0, 0.1));
  CHECK(b1.applicable);
  CHECK(b1.value == doctest::Approx(1.6278445072493426e-3).epsilon(1e-6));

  ErrorBound b2 = bound_class_L(parse("x^2 + 1"), Distribution::uniform(-1.0, 1.0));
  CHECK(b2.applicable);  // degree <= 2: trivially in class, bound is 0
  CHECK(b2.value == doctest::Approx(0.0).epsilon(1e-12));

  ErrorBound b3 = bound_class_L(parse("1/x"), Distribution::uniform(0.5, 2.0));
  CHECK(!b3.applicable);
  CHECK(b3.value > 0.0);  // reported even when the gate fails
}

TEST_CASE("bound_bounded_derivative") {
  // frozen closed form: 2(e^{1/2}(-3.625) + 6)
  ErrorBound b = bound_bounded_derivative(parse("sin(x)"), Distribution::uniform(0.0, 1.0), 1.0);
  CHECK(b.applicable);
  CHECK(b.value == doctest::Approx(0.046770787424070935).epsilon(1e-9));
  double true_err = std::abs(oracle_mean(parse("sin(x)"), Distribution::uniform(0.0, 1.0)) -
                             approx_mean(parse("sin(x)"), Distribution::uniform(0.0, 1.0), 2));
  CHECK(true_err <= b.value);

  CHECK_THROWS_AS(bound_bounded_derivative(parse("exp(x)"), Distribution::normal(0.0, 1.0), 1.0),
                  HypothesisFailure);

  ErrorBound q = bound_bounded_derivative(parse("x^2"), Distribution::uniform(0.0, 1.0), 5.0);
  CHECK(q.applicable);
  CHECK(q.value >= 0.0);
  CHECK_THROWS_AS(bound_bounded_derivative(parse("x"), Distribution::uniform(0.0, 1.0), 0.0),
                  std::invalid_argument);
}

TEST_CASE("bound_lyapunov") {
  // frozen: C = (2 sqrt(2/pi) 1e-3)^{1/3}, value = C^3 e^{C}
  ErrorBound b = bound_lyapunov(parse("exp(x)"), Distribution::normal(0.0, 0.1), 3);
  CHECK(b.applicable);
  CHECK(b.value == doctest::Approx(1.7935795173407417e-3).epsilon(1e-12));

  ErrorBound point = bound_lyapunov(parse("x^3 + 2*x"), Distribution::discrete({1.5}, {1.0}), 3);
  CHECK(point.value == 0.0);

  // cos has a sign-changing fourth derivative on (0, pi)
  CHECK_THROWS_AS(bound_lyapunov(parse("cos(x)"), Distribution::uniform(0.0, 3.14159265), 4),
                  HypothesisFailure);
  CHECK_THROWS_AS(bound_lyapunov(parse("exp(x)"), Distribution::normal(0.0, 0.1), 2),
                  std::invalid_argument);
}

TEST_CASE("bound_corollary2") {
  // frozen: (1/80)^{3/4} e^{(1/80)^{1/4}}
  ErrorBound b = bound_corollary2(parse("sin(x)"), Distribution::uniform(0.0, 1.0), 1.0, 4);
  CHECK(b.applicable);
  CHECK(b.value == doctest::Approx(0.052227305681360264).epsilon(1e-12));

  ErrorBound point = bound_corollary2(parse("sin(x)"), Distribution::discrete({0.3}, {1.0}), 1.0, 4);
  CHECK(point.value == 0.0);

  CHECK_THROWS_AS(bound_corollary2(parse("sin(x)"), Distribution::uniform(0.0, 1.0), 1.0, 2),
                  std::invalid_argument);
}

TEST_CASE("lyapunov_check") {
  auto n = lyapunov_check(Distribution::normal(0.0, 1.0), 1, 2);
  CHECK(n.lhs == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(n.rhs == doctest::Approx(0.79788456080286536).epsilon(1e-13));
  CHECK(n.holds);

  auto p = lyapunov_check(Distribution::discrete({2.0}, {1.0}), 1, 3);
  CHECK(p.lhs == 0.0);
  CHECK(p.rhs == 0.0);
  CHECK(p.holds);

  auto u = lyapunov_check(Distribution::uniform(0.0, 1.0), 2, 4);
  CHECK(u.lhs == doctest::Approx(0.33437015248821101).epsilon(1e-13));
  CHECK(u.rhs == doctest::Approx(0.28867513459481288).epsilon(1e-13));
  CHECK(u.holds);

  CHECK_THROWS_AS(lyapunov_check(Distribution::uniform(0.0, 1.0), 3, 3), std::invalid_argument);

  for (const Distribution& d : testutil::suite())
    for (int r = 1; r < 8; ++r)
      for (int s = r + 1; s <= 8; ++s) CHECK(lyapunov_check(d, r, s).holds);
}

TEST_CASE("bounds dominate the true error on the small-spread suite") {
  struct Case {
    const char* g;
    Distribution d;
  };
  const Case cases[] = {
      {"exp(x)", Distribution::normal(0.0, 0.1)},
      {"exp(x)", Distribution::uniform(0.0, 0.5)},
      {"exp(x)", Distribution::normal(0.5, 0.2)},
  };
  for (const Case& c : cases) {
    Expression g = parse(c.g);
    REQUIRE(c.d.variance() <= 0.25);
    double true_err = std::abs(oracle_mean(g, c.d) - approx_mean(g, c.d, 2));
    ErrorBound cl = bound_class_L(g, c.d);
    ErrorBound ly = bound_lyapunov(g, c.d, 3);
    CHECK(cl.applicable);
    CHECK(ly.applicable);
    CHECK(true_err <= cl.value);
    CHECK(true_err <= ly.value);
  }
  // sin on a small-spread uniform: bounded-derivative family with M = 1
  Distribution u01 = Distribution::uniform(0.0, 1.0);
  double sin_err = std::abs(oracle_mean(parse("sin(x)"), u01) -
                            approx_mean(parse("sin(x)"), u01, 2));
  CHECK(sin_err <= bound_bounded_derivative(parse("sin(x)"), u01, 1.0).value);
  CHECK(sin_err <= bound_corollary2(parse("sin(x)"), u01, 1.0, 4).value);
}

TEST_CASE("peano_bound wraps the signed remainder") {
  ErrorBound b = peano_bound(parse("exp(x)"), Distribution::uniform(0.0, 1.0), 2);
  CHECK(b.kind == BoundKind::PeanoRemainder);
  CHECK(b.applicable);
  CHECK(b.value == doctest::Approx(8.6383814641174906e-4).epsilon(1e-7));
  CHECK(b.signed_value == b.value);  // positive here
  ErrorBound neg = peano_bound(parse("0 - exp(x)"), Distribution::uniform(0.0, 1.0), 2);
  CHECK(neg.signed_value == doctest::Approx(-8.6383814641174906e-4).epsilon(1e-7));
  CHECK(neg.value == doctest::Approx(8.6383814641174906e-4).epsilon(1e-7));
}
