#include <cmath>
#include <future>
#include <vector>

#include <doctest.h>

#include "statdiff/dist.hpp"
#include "test_helpers.hpp"

using namespace statdiff;
using testutil::expect;

namespace {
const Distribution kCoin = Distribution::discrete({1.0, 3.0}, {0.5, 0.5});
}

TEST_CASE("mean and variance") {
  CHECK(kCoin.mean() == 2.0);
  CHECK(kCoin.variance() == 1.0);

  Distribution u = Distribution::uniform(0.0, 1.0);
  CHECK(u.mean() == doctest::Approx(testutil::expect_mean(u)).epsilon(1e-12));
  CHECK(u.mean() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(u.variance() == doctest::Approx(1.0 / 12).epsilon(1e-13));

  Distribution n = Distribution::normal(1.5, 0.3);
  CHECK(n.mean() == 1.5);
  CHECK(n.variance() == doctest::Approx(0.09).epsilon(1e-15));

  Distribution e = Distribution::exponential(2.0);
  CHECK(e.mean() == 0.5);
  CHECK(e.variance() == 0.25);
  CHECK(e.mean() == doctest::Approx(testutil::expect_mean(e)).epsilon(1e-11));

  Distribution c = Distribution::custom_density(parse("0.75*(1 - x^2)"), -1.0, 1.0);
  CHECK(c.mean() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(c.variance() == doctest::Approx(0.2).epsilon(1e-11));  // Epanechnikov: 1/5
}

TEST_CASE("central moments") {
  CHECK(Distribution::normal(0.0, 0.7).central_moment(3) == 0.0);
  CHECK(Distribution::normal(0.0, 2.0).central_moment(4) == doctest::Approx(48.0).epsilon(1e-14));
  CHECK(kCoin.central_moment(2) == 1.0);
  Distribution u = Distribution::uniform(0.0, 1.0);
  double mu4 = expect(u, [&](double x) { return std::pow(x - 0.5, 4); });
  CHECK(u.central_moment(4) == doctest::Approx(mu4).epsilon(1e-11));
  CHECK(u.central_moment(4) == doctest::Approx(1.0 / 80).epsilon(1e-13));

  // Exp(1) central moments are the derangement numbers 1, 0, 1, 2, 9, 44.
  Distribution e1 = Distribution::exponential(1.0);
  CHECK(e1.central_moment(3) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(e1.central_moment(4) == doctest::Approx(9.0).epsilon(1e-13));
  CHECK(e1.central_moment(5) == doctest::Approx(44.0).epsilon(1e-13));
  double mu3q = expect(e1, [&](double x) { return std::pow(x - 1.0, 3); });
  CHECK(e1.central_moment(3) == doctest::Approx(mu3q).epsilon(1e-10));
}

TEST_CASE("absolute central moments") {
  CHECK(Distribution::normal(0.0, 0.4).abs_central_moment(2) ==
        doctest::Approx(0.16).epsilon(1e-14));
  CHECK(kCoin.abs_central_moment(3) == 1.0);
  Distribution u = Distribution::uniform(0.0, 1.0);
  CHECK(u.abs_central_moment(1) == doctest::Approx(0.25).epsilon(1e-13));
  CHECK(u.abs_central_moment(1) ==
        doctest::Approx(expect(u, [](double x) { return std::abs(x - 0.5); })).epsilon(1e-11));

  // frozen: nu_1, nu_3 of N(0,1) are sqrt(2/pi) and 2*sqrt(2/pi)
  Distribution n = Distribution::normal(0.0, 1.0);
  CHECK(n.abs_central_moment(1) == doctest::Approx(0.79788456080286536).epsilon(1e-13));
  CHECK(n.abs_central_moment(3) == doctest::Approx(1.5957691216057308).epsilon(1e-13));
  CHECK(n.abs_central_moment(4) == doctest::Approx(3.0).epsilon(1e-13));

  // frozen: Exp(1) nu_1 = 2/e, nu_3 = 2.41455329405730786
  Distribution e1 = Distribution::exponential(1.0);
  CHECK(e1.abs_central_moment(1) == doctest::Approx(0.73575888234288464).epsilon(1e-13));
  CHECK(e1.abs_central_moment(3) == doctest::Approx(2.4145532940573079).epsilon(1e-13));
  for (int k = 1; k <= 8; ++k) {
    double direct = expect(e1, [&](double x) { return std::pow(std::abs(x - 1.0), k); });
    CHECK(e1.abs_central_moment(k) == doctest::Approx(direct).epsilon(1e-9));
  }
  // k > 12 switches to quadrature internally; cross-check one
  double direct14 = expect(e1, [&](double x) { return std::pow(std::abs(x - 1.0), 14); });
  CHECK(e1.abs_central_moment(14) == doctest::Approx(direct14).epsilon(1e-8));
}

TEST_CASE("raw moments via the binomial conversion") {
  CHECK(kCoin.raw_moment(0) == 1.0);
  CHECK(kCoin.raw_moment(3) == doctest::Approx(14.0).epsilon(1e-14));
  for (const Distribution& d : testutil::suite()) {
    double m = d.mean();
    CHECK(d.raw_moment(2) == doctest::Approx(d.variance() + m * m).epsilon(1e-12));
    for (int k = 0; k <= 8; ++k) {
      double direct = expect(d, [&](double x) { return std::pow(x, k); });
      CHECK(d.raw_moment(k) == doctest::Approx(direct).epsilon(1e-9));
    }
  }
}

TEST_CASE("moment table invariants") {
  for (const Distribution& d : testutil::suite()) {
    CHECK(d.central_moment(0) == 1.0);
    CHECK(std::abs(d.central_moment(1)) <= 1e-10);
    CHECK(d.variance() >= 0.0);
    for (int k = 1; k <= 8; ++k) {
      double nu = d.abs_central_moment(k);
      CHECK(nu >= 0.0);
      CHECK(nu >= std::abs(d.central_moment(k)) * (1 - 1e-12));
    }
  }
}

TEST_CASE("norm monotonicity in the moment order") {
  for (const Distribution& d : testutil::suite()) {
    double prev = 0.0;
    for (int k = 1; k <= 8; ++k) {
      double cur = std::pow(d.abs_central_moment(k), 1.0 / k);
      CHECK(cur >= prev * (1 - 1e-9));
      prev = cur;
    }
  }
}

TEST_CASE("third moment identity") {
  auto coin = third_moment_identity(kCoin);
  CHECK(coin.lhs == doctest::Approx(14.0).epsilon(1e-14));
  CHECK(coin.rhs == doctest::Approx(14.0).epsilon(1e-14));
  CHECK(coin.residual == doctest::Approx(0.0).epsilon(1e-13));

  auto std_normal = third_moment_identity(Distribution::normal(0.0, 1.0));
  CHECK(std_normal.lhs == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(std_normal.rhs == 0.0);

  Distribution u13 = Distribution::uniform(1.0, 3.0);
  auto unif = third_moment_identity(u13);
  double direct = expect(u13, [](double x) { return x * x * x; });
  CHECK(unif.lhs == doctest::Approx(direct).epsilon(1e-12));
  CHECK(unif.lhs == doctest::Approx(10.0).epsilon(1e-13));
  CHECK(unif.rhs == doctest::Approx(10.0).epsilon(1e-13));
}

TEST_CASE("degenerate fourth moment means a point mass") {
  Distribution point = Distribution::discrete({2.5}, {1.0});
  CHECK(point.abs_central_moment(4) == 0.0);
  CHECK(point.variance() == 0.0);
  for (const Distribution& d : testutil::suite()) {
    if (d.abs_central_moment(4) == 0.0) CHECK(d.variance() == 0.0);
  }
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(Distribution::discrete({1.0, 3.0}, {0.7, 0.4}), ValidationError);
  CHECK_THROWS_AS(Distribution::discrete({1.0, 3.0}, {1.2, -0.2}), ValidationError);
  CHECK_THROWS_AS(Distribution::discrete({1.0, 1.0}, {0.5, 0.5}), ValidationError);
  CHECK_THROWS_AS(Distribution::discrete({}, {}), ValidationError);
  CHECK_THROWS_AS(Distribution::uniform(1.0, 1.0), ValidationError);
  CHECK_THROWS_AS(Distribution::uniform(2.0, 1.0), ValidationError);
  CHECK_THROWS_AS(Distribution::normal(0.0, 0.0), ValidationError);
  CHECK_THROWS_AS(Distribution::normal(0.0, -1.0), ValidationError);
  CHECK_THROWS_AS(Distribution::exponential(0.0), ValidationError);
  // density integrating to 1.5 is rejected; a 0.3% mismatch is normalized
  CHECK_THROWS_AS(Distribution::custom_density(parse("1.5*(1 - x^2)"), -1.0, 1.0), ValidationError);
  Distribution near = Distribution::custom_density(parse("0.7503*(1 - x^2)"), -1.0, 1.0);
  CHECK(near.central_moment(0) == 1.0);
  CHECK(near.variance() == doctest::Approx(0.2).epsilon(1e-10));
  CHECK_THROWS_AS(Distribution::custom_density(parse("x"), -1.0, 1.0), ValidationError);
}

TEST_CASE("spec string parsing") {
  CHECK(parse_distribution("discrete(1:0.5,3:0.5)").mean() == 2.0);
  CHECK(parse_distribution(" uniform( 0 , 1 ) ").variance() == doctest::Approx(1.0 / 12));
  CHECK(parse_distribution("normal(0,0.1)").variance() == doctest::Approx(0.01));
  CHECK(parse_distribution("exponential(2)").mean() == 0.5);
  Distribution c = parse_distribution("density(0.75*(1 - x^2); -1, 1)");
  CHECK(c.variance() == doctest::Approx(0.2).epsilon(1e-11));

  CHECK_THROWS_AS(parse_distribution("discrete(1:0.7,3:0.4)"), ValidationError);
  CHECK_THROWS_AS(parse_distribution("triangular(0,1)"), SyntaxError);
  CHECK_THROWS_AS(parse_distribution("uniform(0 1)"), SyntaxError);
  CHECK_THROWS_AS(parse_distribution("uniform(0,1) junk"), SyntaxError);
  CHECK_THROWS_AS(parse_distribution("density(x^; 0, 1)"), SyntaxError);
  CHECK_THROWS_AS(parse_distribution(""), SyntaxError);
}

TEST_CASE("support and regions") {
  Interval s = Distribution::normal(0.0, 1.0).support();
  CHECK(std::isinf(s.lo));
  CHECK(std::isinf(s.hi));
  Interval r = Distribution::normal(0.0, 1.0).evaluation_region();
  CHECK(r.lo == doctest::Approx(-8.0));
  CHECK(r.hi == doctest::Approx(8.0));
  Interval q = Distribution::exponential(2.0).quadrature_domain();
  CHECK(q.lo == 0.0);
  CHECK(q.hi == doctest::Approx(30.0));
  Interval ru = Distribution::uniform(0.0, 1.0).evaluation_region();
  CHECK(ru.lo == 0.0);
  CHECK(ru.hi == 1.0);
}

TEST_CASE("concurrent moment queries") {
  Distribution d = Distribution::custom_density(parse("0.75*(1 - x^2)"), -1.0, 1.0);
  std::vector<std::future<double>> futures;
  for (int t = 0; t < 8; ++t)
    futures.push_back(std::async(std::launch::async, [&d] {
      double acc = 0.0;
      for (int k = 1; k <= 8; ++k) acc += d.central_moment(k) + d.abs_central_moment(k);
      return acc;
    }));
  std::vector<double> results;
  for (auto& f : futures) results.push_back(f.get());
  for (double v : results) CHECK(v == results.front());
}
