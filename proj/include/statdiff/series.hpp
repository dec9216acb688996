#pragma once

#include <vector>

#include "statdiff/errors.hpp"

namespace statdiff::series {

// Truncated power series in normalized (Taylor) form: c[k] = f^(k)(x0)/k!.
// All operands of a binary op must have equal length; results keep it.
using Coeffs = std::vector<double>;

Coeffs constant(double v, int order);
Coeffs variable(double center, int order);

Coeffs add(const Coeffs& a, const Coeffs& b);
Coeffs sub(const Coeffs& a, const Coeffs& b);
Coeffs mul(const Coeffs& a, const Coeffs& b);
// Requires b[0] != 0; throws DomainError otherwise.
Coeffs div(const Coeffs& a, const Coeffs& b);
// Integer power by binary exponentiation; negative exponents require a
// nonzero constant term.
Coeffs pow_int(const Coeffs& a, int e);

Coeffs exp(const Coeffs& a);
// Requires a[0] > 0.
Coeffs ln(const Coeffs& a);
Coeffs sin(const Coeffs& a);
Coeffs cos(const Coeffs& a);
// Requires a[0] > 0 (a zero constant term is rejected rather than
// continued analytically).
Coeffs sqrt(const Coeffs& a);

}  // namespace statdiff::series
