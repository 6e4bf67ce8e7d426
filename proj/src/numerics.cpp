#include "bbmis/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "bbmis/error.hpp"

namespace bbmis::numerics {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw DomainError(std::string(what) + ": non-finite argument");
}

// Residual of w e^w = x, monotone increasing in w on [-1, inf).
double w_residual(double w, double x) { return w * std::exp(w) - x; }

double lambert_bisect(double x, double lo, double hi) {
  for (int it = 0; it < 400 && hi - lo > 2 * kEps * std::max(1.0, std::fabs(lo)); ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid == lo || mid == hi) break;
    if (w_residual(mid, x) < 0)
      lo = mid;
    else
      hi = mid;
  }
  return lo + 0.5 * (hi - lo);
}

double lambert_seed(double x) {
  if (x < -0.25) {
    // Branch-point expansion in p = sqrt(2 (e x + 1)).
    const double p = std::sqrt(std::max(0.0, 2.0 * (kE * x + 1.0)));
    return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0)));
  }
  if (x <= kE) {
    const double l = std::log1p(x);
    return l * (1.0 - std::log1p(l) / (2.0 + l));
  }
  const double l1 = std::log(x);
  const double l2 = std::log(l1);
  return l1 - l2 + l2 / l1;
}

}  // namespace

RealInterval::RealInterval(double lo_, double hi_) : lo(lo_), hi(hi_) {
  if (std::isnan(lo) || std::isnan(hi) || lo > hi)
    throw DomainError("RealInterval: requires lo <= hi");
}

double lambert_w0(double x) {
  require_finite(x, "lambert_w0");
  if (x < -kInvE) throw DomainError("lambert_w0: argument below -1/e");
  if (x == 0.0) return 0.0;
  if (x == -kInvE) return -1.0;

  RealInterval bracket(-1.0, x <= kE ? 1.0 : std::log(x));
  double w = std::clamp(lambert_seed(x), bracket.lo, bracket.hi);

  for (int it = 0; it < 64; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    if (f == 0.0) return w;
    if (f < 0)
      bracket.lo = std::max(bracket.lo, w);
    else
      bracket.hi = std::min(bracket.hi, w);

    const double wp1 = w + 1.0;
    const double denom = ew * wp1 - (wp1 + 1.0) * f / (2.0 * wp1);
    const double next = w - f / denom;
    if (!std::isfinite(next) || next <= bracket.lo || next >= bracket.hi) {
      w = lambert_bisect(x, bracket.lo, bracket.hi);
      break;
    }
    const double step = std::fabs(next - w);
    w = next;
    if (step <= 4 * kEps * std::max(1.0, std::fabs(w))) break;
  }

  if (std::fabs(w_residual(w, x)) > 1e-12 * std::max(1.0, std::fabs(x)))
    w = lambert_bisect(x, -1.0, x <= kE ? 1.0 : std::log(x));
  return w;
}

double chernoff_phi(double delta) {
  if (std::isnan(delta) || delta < 0) throw DomainError("chernoff_phi: delta must be >= 0");
  if (delta == kInf) return kInf;
  if (delta < 1e-3) {
    // sum_{j>=2} (-1)^j delta^j / (j (j - 1)); the closed form cancels here.
    double term = delta * delta;
    double sum = 0.0;
    for (int j = 2; j <= 9; ++j) {
      sum += ((j % 2 == 0) ? 1.0 : -1.0) * term / (j * (j - 1.0));
      term *= delta;
    }
    return sum;
  }
  return (1.0 + delta) * std::log1p(delta) - delta;
}

double chernoff_phi_inv(double y) {
  if (std::isnan(y) || y < 0) throw DomainError("chernoff_phi_inv: y must be >= 0");
  if (y == 0.0) return 0.0;
  if (y == kInf) return kInf;

  double lo = 0.5;
  double hi = 1.0;
  if (chernoff_phi(hi) < y) {
    while (chernoff_phi(hi) < y) {
      lo = hi;
      hi *= 2.0;
    }
  } else {
    while (lo > 1e-300 && chernoff_phi(lo) >= y) {
      hi = lo;
      lo *= 0.5;
    }
  }

  for (int it = 0; it < 200; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid == lo || mid == hi) break;
    if (hi - lo <= 1e-15 * hi) break;
    if (chernoff_phi(mid) < y)
      lo = mid;
    else
      hi = mid;
  }
  return lo + 0.5 * (hi - lo);
}

double h_lambert(double x) {
  if (std::isnan(x) || x <= 1.0) throw DomainError("h_lambert: requires x > 1");
  require_finite(x, "h_lambert");
  return std::exp(lambert_w0((x - 1.0) / kE) + 1.0) - 1.0;
}

double binary_entropy(double x) {
  if (std::isnan(x) || x < 0.0 || x > 1.0) throw DomainError("binary_entropy: x outside [0, 1]");
  if (x == 0.0 || x == 1.0) return 0.0;
  const double t = x <= 0.5 ? x : 1.0 - x;
  return -t * std::log(t) - (1.0 - t) * std::log1p(-t);
}

double log_factorial(std::int64_t n) {
  if (n < 0) throw DomainError("log_factorial: negative argument");
  if (n < 2) return 0.0;
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(static_cast<double>(n) + 1.0, &sign);
#else
  return std::lgamma(static_cast<double>(n) + 1.0);
#endif
}

double log_binomial(std::int64_t n, std::int64_t i) {
  if (n < 0 || i < 0 || i > n) throw DomainError("log_binomial: requires 0 <= i <= n");
  if (i == 0 || i == n) return 0.0;
  // Evaluating at min(i, n - i) makes the symmetry exact in floating point.
  const std::int64_t j = std::min(i, n - i);
  return log_factorial(n) - log_factorial(j) - log_factorial(n - j);
}

double log_sum_exp(std::span<const double> values) {
  double hi = -kInf;
  for (double v : values) hi = std::max(hi, v);
  if (hi == -kInf) return -kInf;
  if (hi == kInf) return kInf;
  double sum = 0.0;
  for (double v : values) sum += std::exp(v - hi);
  return hi + std::log(sum);
}

double log_binomial_upper_tail(std::int64_t trials, double p, std::int64_t t) {
  if (trials < 0) throw DomainError("log_binomial_upper_tail: negative trial count");
  if (std::isnan(p) || p < 0.0 || p > 1.0) throw DomainError("log_binomial_upper_tail: p outside [0, 1]");
  if (t <= 0) return 0.0;
  if (t > trials) return -kInf;
  if (p == 0.0) return -kInf;
  if (p == 1.0) return 0.0;

  const double lp = std::log(p);
  const double lq = std::log1p(-p);
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(trials - t + 1));
  for (std::int64_t j = t; j <= trials; ++j)
    terms.push_back(log_binomial(trials, j) + static_cast<double>(j) * lp +
                    static_cast<double>(trials - j) * lq);
  return std::min(0.0, log_sum_exp(terms));
}

}  // namespace bbmis::numerics
