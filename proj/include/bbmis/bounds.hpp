#pragma once

// Closed-form and numerically solved average-case quantities for the
// exhaustive search and the potential-pruned search on G(n, p).
//
// Three parametrisations of the edge probability appear: p fixed, p = phi(n)/n
// with phi(n) -> infinity, and p = k/n with k fixed. RegimeParams keeps the
// single value n * p under the three names used by the respective bounds.

#include <cstddef>
#include <cstdint>
#include <vector>

namespace bbmis::bounds {

struct RegimeParams {
  std::int64_t n;
  double p;
  double k;      // n * p, fixed-k regime
  double f_n;    // n * p, vanishing-density regime
  double phi_n;  // n * p, growing-density regime

  static RegimeParams from(std::int64_t n, double p);
};

struct BoundCurvePoint {
  double k;
  double lambda;
  double gamma;
  double x_star;  // argmax of the pointwise minimum, as u / n
};

struct PotentialSplit {
  std::int64_t n;
  double delta_n;
  double c_n;
};

/// E[#IS(G)] = sum_i C(n, i) (1 - p)^C(i, 2), summed in log space.
double expected_is_count(std::int64_t n, double p);
double log_expected_is_count(std::int64_t n, double p);

/// (2 W(k) + W(k)^2) / (2k): exponent of the exhaustive upper bound at p = k/n.
double g_of_k(double k);

/// (2 W(k/e) + W(k/e)^2) / (2k): exponent of the exhaustive lower bound.
/// Tends to 1/e as k -> 0.
double exhaustive_lower_exponent(double k);

/// ln^2 n / (-2 ln(1 - p)): the maximised exponent for fixed p.
double fixed_p_upper_exponent(std::int64_t n, double p);

/// n (2 ln phi + ln^2 phi) / (2 phi) for p = phi/n, phi > 1.
double subexp_upper_exponent(std::int64_t n, double phi_n);

/// phi^{-1}(2 ln 2 / f_n).
double delta_n(double f_n);

/// delta_n and C_n = 1 / (1 + (1 + delta_n) ((n - 1)/n) f_n).
PotentialSplit c_n(std::int64_t n, double f_n);

/// exp(-N p phi(delta)) with delta = threshold / (N p) - 1.
double chernoff_tail_bound(std::int64_t trials, double p, double threshold);

/// Exact P(Binomial(trials, p) >= threshold).
double binomial_upper_tail(std::int64_t trials, double p, double threshold);

struct WeightedCount {
  double value;
  bool chernoff_used;  // tail replaced by the Chernoff bound (n > 200)
};

inline constexpr std::int64_t kExactTailMaxOrder = 200;

/// w_n(u): expected number of feasible potential-u nodes, weighted by
/// P(m >= n^2/(2u) - n/2).
WeightedCount w_n_u(std::int64_t n, double p, std::int64_t u);

/// The unweighted sum in w_n(u): sum_{i=n-u}^{n} C(i, i-(n-u)) (1-p)^C(i-(n-u), 2).
double potential_level_sum(std::int64_t n, double p, std::int64_t u);

/// mu(lambda) = 2 ln 2 + lambda - (k + 1) + (lambda - 1) ln(k / (lambda - 1)).
double mu_of_lambda(double lambda, double k);

/// 1 + k (1 + phi^{-1}(2 ln 2 / k)): the root of mu above k + 1.
double lambda_of_k(double k);

/// Small-potential exponent per vertex at x = u/n: max(mu(1/x)/2, 0).
double t1_exponent(double x, double k);

/// Large-potential exponent per vertex at x = u/n: max(H(x) - k x^2 / 2, 0).
double t2_exponent(double x, double k);

/// psi_n(u) = n ln n - u ln u - (n-u) ln(n-u) - k u^2 / (2n).
double psi_n(double n, double u, double k);

/// gamma(k) = exp(max_x min(t1, t2)).
BoundCurvePoint gamma_of_k(double k);

/// h n ln ln(1/f_n) / ln(1/f_n): exponent shape of the large-potential
/// bound as f_n -> 0. The constant h is supplied by the caller.
double large_potential_exponent(std::int64_t n, double f_n, double h);

/// n H(1 - C_n): exponent of the large-potential bound, valid while 1 - C_n < 1/2.
double large_potential_entropy_exponent(std::int64_t n, double f_n);

/// The approximation 4(k + 1)/3 + 1 quoted next to the lambda curve.
double lambda_caption_approx(double k);

}  // namespace bbmis::bounds
