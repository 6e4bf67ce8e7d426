#pragma once

// Special functions used by the average-case bounds: Lambert W (principal
// branch), the Chernoff rate function and its inverse, binary entropy and
// log-space binomials.

#include <cstdint>
#include <span>

namespace bbmis::numerics {

inline constexpr double kE = 2.718281828459045235360287;
inline constexpr double kInvE = 0.367879441171442321595524;
inline constexpr double kLn2 = 0.693147180559945309417232;

/// Closed bracket [lo, hi] for root finding.
struct RealInterval {
  double lo;
  double hi;

  RealInterval(double lo_, double hi_);
  double width() const { return hi - lo; }
  double mid() const { return lo + 0.5 * (hi - lo); }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

/// Principal branch W0 of the inverse of w -> w e^w, defined for x >= -1/e.
/// Halley iteration from a log-based seed; falls back to bisection if an
/// iterate leaves the bracket.
double lambert_w0(double x);

/// phi(delta) = (1 + delta) ln(1 + delta) - delta, delta >= 0.
double chernoff_phi(double delta);

/// Inverse of chernoff_phi on [0, inf) by monotone bisection.
double chernoff_phi_inv(double y);

/// Closed form exp(W((x - 1)/e) + 1) - 1 of the same inverse, for x > 1.
double h_lambert(double x);

/// -x ln x - (1 - x) ln(1 - x) in nats; 0 at the endpoints.
double binary_entropy(double x);

/// ln C(n, i).
double log_binomial(std::int64_t n, std::int64_t i);

/// ln n!
double log_factorial(std::int64_t n);

/// ln(sum exp(v)) without overflow. Entries equal to -inf are allowed;
/// an empty span or all -inf yields -inf.
double log_sum_exp(std::span<const double> values);

/// ln P(X >= t) for X ~ Binomial(trials, p), t an integer threshold.
/// Exact log-space summation of the probability mass function.
double log_binomial_upper_tail(std::int64_t trials, double p, std::int64_t t);

}  // namespace bbmis::numerics
