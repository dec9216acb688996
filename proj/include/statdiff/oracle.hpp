#pragma once

#include <cstdint>

#include "statdiff/dist.hpp"
#include "statdiff/expr.hpp"

namespace statdiff {

// Ground truth for E[g(X)]: exact probability-weighted sums for discrete
// distributions, the lognormal closed form for exp(a*x + b) under a
// Normal, adaptive quadrature of g * density otherwise (unbounded
// supports truncated per Distribution::quadrature_domain, tail mass
// documented there). Throws QuadratureFailure / NonFinite / DomainError.
double oracle_mean(const Expression& g, const Distribution& d, double tol = 1e-10);

// E[g^2] - E[g]^2, clamped at 0.
double oracle_variance(const Expression& g, const Distribution& d, double tol = 1e-10);

struct McResult {
  double estimate = 0.0;
  double std_error = 0.0;
};

// Seeded Monte Carlo estimate of E[g(X)]. Per-sample randomness is
// counter-based (keyed on seed and sample index), so results are
// bit-identical for fixed (samples, seed) regardless of any partitioning.
McResult mc_mean(const Expression& g, const Distribution& d, std::uint64_t samples,
                 std::uint64_t seed);

}  // namespace statdiff
