#include "statdiff/series.hpp"

#include <cmath>
#include <utility>

// Recurrences are the classic truncated-series rules (Griewank & Walther,
// "Evaluating Derivatives", ch. 13) in normalized-coefficient form.

namespace statdiff::series {

namespace {

int order_of(const Coeffs& a) { return static_cast<int>(a.size()) - 1; }

std::pair<Coeffs, Coeffs> sin_cos(const Coeffs& a) {
  const int n = order_of(a);
  Coeffs s(n + 1), c(n + 1);
  s[0] = std::sin(a[0]);
  c[0] = std::cos(a[0]);
  for (int k = 1; k <= n; ++k) {
    double ds = 0.0, dc = 0.0;
    for (int j = 1; j <= k; ++j) {
      ds += j * a[j] * c[k - j];
      dc += j * a[j] * s[k - j];
    }
    s[k] = ds / k;
    c[k] = -dc / k;
  }
  return {std::move(s), std::move(c)};
}

}  // namespace

Coeffs constant(double v, int order) {
  Coeffs c(order + 1, 0.0);
  c[0] = v;
  return c;
}

Coeffs variable(double center, int order) {
  Coeffs c(order + 1, 0.0);
  c[0] = center;
  if (order >= 1) c[1] = 1.0;
  return c;
}

Coeffs add(const Coeffs& a, const Coeffs& b) {
  Coeffs out(a);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] += b[k];
  return out;
}

Coeffs sub(const Coeffs& a, const Coeffs& b) {
  Coeffs out(a);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] -= b[k];
  return out;
}

Coeffs mul(const Coeffs& a, const Coeffs& b) {
  const int n = order_of(a);
  Coeffs out(n + 1, 0.0);
  for (int k = 0; k <= n; ++k) {
    double acc = 0.0;
    for (int j = 0; j <= k; ++j) acc += a[j] * b[k - j];
    out[k] = acc;
  }
  return out;
}

Coeffs div(const Coeffs& a, const Coeffs& b) {
  if (b[0] == 0.0) throw DomainError("series division by a zero constant term");
  const int n = order_of(a);
  Coeffs out(n + 1, 0.0);
  for (int k = 0; k <= n; ++k) {
    double acc = a[k];
    for (int j = 1; j <= k; ++j) acc -= b[j] * out[k - j];
    out[k] = acc / b[0];
  }
  return out;
}

Coeffs pow_int(const Coeffs& a, int e) {
  const int n = order_of(a);
  if (e < 0) {
    if (a[0] == 0.0) throw DomainError("negative power of a series with zero constant term");
    return div(constant(1.0, n), pow_int(a, -e));
  }
  Coeffs acc = constant(1.0, n);
  Coeffs p = a;
  for (int m = e; m > 0; m >>= 1) {
    if (m & 1) acc = mul(acc, p);
    if (m > 1) p = mul(p, p);
  }
  return acc;
}

Coeffs exp(const Coeffs& a) {
  const int n = order_of(a);
  Coeffs out(n + 1, 0.0);
  out[0] = std::exp(a[0]);
  for (int k = 1; k <= n; ++k) {
    double acc = 0.0;
    for (int j = 1; j <= k; ++j) acc += j * a[j] * out[k - j];
    out[k] = acc / k;
  }
  return out;
}

Coeffs ln(const Coeffs& a) {
  if (a[0] <= 0.0) throw DomainError("ln of a series with nonpositive constant term");
  const int n = order_of(a);
  Coeffs out(n + 1, 0.0);
  out[0] = std::log(a[0]);
  for (int k = 1; k <= n; ++k) {
    double acc = k * a[k];
    for (int j = 1; j < k; ++j) acc -= j * out[j] * a[k - j];
    out[k] = acc / (k * a[0]);
  }
  return out;
}

Coeffs sin(const Coeffs& a) { return sin_cos(a).first; }

Coeffs cos(const Coeffs& a) { return sin_cos(a).second; }

Coeffs sqrt(const Coeffs& a) {
  if (a[0] <= 0.0) throw DomainError("sqrt of a series with nonpositive constant term");
  const int n = order_of(a);
  Coeffs out(n + 1, 0.0);
  out[0] = std::sqrt(a[0]);
  for (int k = 1; k <= n; ++k) {
    double acc = a[k];
    for (int j = 1; j < k; ++j) acc -= out[j] * out[k - j];
    out[k] = acc / (2.0 * out[0]);
  }
  return out;
}

}  // namespace statdiff::series
