#include "bbmis/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bbmis/error.hpp"
#include "bbmis/kernels.hpp"
#include "bbmis/numerics.hpp"

namespace bbmis::bounds {

namespace nm = bbmis::numerics;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError(std::string(what) + ": p outside [0, 1]");
}

void require_positive(double v, const char* what, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(what) + ": " + name + " must be positive");
}

void require_open_unit(double x, const char* what) {
  if (!(x > 0.0 && x < 1.0)) throw DomainError(std::string(what) + ": x outside (0, 1)");
}

double pairs(double i) { return i * (i - 1.0) / 2.0; }

// c2 * ln(1 - p) with the convention 0 * (-inf) = 0.
double log_power_q(double c2, double log_q) { return c2 == 0.0 ? 0.0 : c2 * log_q; }

// Sum of exp(terms) in linear space when it cannot overflow (keeps small
// integer-valued sums exact), otherwise in log space.
double sum_exp(const std::vector<double>& log_terms) {
  const double hi = log_terms.empty() ? -kInf : *std::max_element(log_terms.begin(), log_terms.end());
  if (hi < 600.0) {
    double s = 0.0;
    for (double t : log_terms) s += std::exp(t);
    return s;
  }
  return std::exp(nm::log_sum_exp(log_terms));
}

}  // namespace

RegimeParams RegimeParams::from(std::int64_t n, double p) {
  if (n < 0) throw DomainError("RegimeParams: negative n");
  require_probability(p, "RegimeParams");
  const double np = static_cast<double>(n) * p;
  return {n, p, np, np, np};
}

double log_expected_is_count(std::int64_t n, double p) {
  if (n < 0) throw DomainError("expected_is_count: negative n");
  require_probability(p, "expected_is_count");
  const double lq = std::log1p(-p);
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(n + 1));
  for (std::int64_t i = 0; i <= n; ++i)
    terms.push_back(nm::log_binomial(n, i) + log_power_q(pairs(static_cast<double>(i)), lq));
  return nm::log_sum_exp(terms);
}

double expected_is_count(std::int64_t n, double p) {
  if (n < 0) throw DomainError("expected_is_count: negative n");
  require_probability(p, "expected_is_count");
  const double lq = std::log1p(-p);
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(n + 1));
  for (std::int64_t i = 0; i <= n; ++i)
    terms.push_back(nm::log_binomial(n, i) + log_power_q(pairs(static_cast<double>(i)), lq));
  return sum_exp(terms);
}

double g_of_k(double k) {
  require_positive(k, "g_of_k", "k");
  const double w = nm::lambert_w0(k);
  return (2.0 * w + w * w) / (2.0 * k);
}

double exhaustive_lower_exponent(double k) {
  require_positive(k, "exhaustive_lower_exponent", "k");
  const double w = nm::lambert_w0(k / nm::kE);
  return (2.0 * w + w * w) / (2.0 * k);
}

double fixed_p_upper_exponent(std::int64_t n, double p) {
  if (n < 1) throw DomainError("fixed_p_upper_exponent: n must be >= 1");
  if (!(p > 0.0 && p < 1.0)) throw DomainError("fixed_p_upper_exponent: p must lie in (0, 1)");
  const double ln_n = std::log(static_cast<double>(n));
  return ln_n * ln_n / (-2.0 * std::log1p(-p));
}

double subexp_upper_exponent(std::int64_t n, double phi_n) {
  if (n < 1) throw DomainError("subexp_upper_exponent: n must be >= 1");
  if (!(phi_n > 1.0) || !std::isfinite(phi_n)) throw DomainError("subexp_upper_exponent: phi_n must exceed 1");
  const double l = std::log(phi_n);
  return static_cast<double>(n) * (2.0 * l + l * l) / (2.0 * phi_n);
}

double delta_n(double f_n) {
  require_positive(f_n, "delta_n", "f_n");
  return nm::chernoff_phi_inv(2.0 * nm::kLn2 / f_n);
}

PotentialSplit c_n(std::int64_t n, double f_n) {
  if (n < 2) throw DomainError("c_n: n must be >= 2");
  require_positive(f_n, "c_n", "f_n");
  const double d = delta_n(f_n);
  const double nn = static_cast<double>(n);
  return {n, d, 1.0 / (1.0 + (1.0 + d) * ((nn - 1.0) / nn) * f_n)};
}

double chernoff_tail_bound(std::int64_t trials, double p, double threshold) {
  if (trials < 0) throw DomainError("chernoff_tail_bound: negative trial count");
  require_probability(p, "chernoff_tail_bound");
  const double mean = static_cast<double>(trials) * p;
  if (std::isnan(threshold) || threshold < mean)
    throw DomainError("chernoff_tail_bound: threshold below the mean");
  if (mean == 0.0) return threshold > 0.0 ? 0.0 : 1.0;
  const double delta = threshold / mean - 1.0;
  return std::exp(-mean * nm::chernoff_phi(std::max(0.0, delta)));
}

double binomial_upper_tail(std::int64_t trials, double p, double threshold) {
  if (std::isnan(threshold)) throw DomainError("binomial_upper_tail: NaN threshold");
  if (threshold <= 0.0) return 1.0;
  if (threshold > static_cast<double>(trials)) return 0.0;
  const auto t = static_cast<std::int64_t>(std::ceil(threshold));
  return std::exp(nm::log_binomial_upper_tail(trials, p, t));
}

double potential_level_sum(std::int64_t n, double p, std::int64_t u) {
  if (n < 1 || u < 1 || u > n) throw DomainError("w_n_u: requires 1 <= u <= n");
  require_probability(p, "w_n_u");
  const double lq = std::log1p(-p);
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(u + 1));
  for (std::int64_t i = n - u; i <= n; ++i) {
    const std::int64_t s = i - (n - u);
    terms.push_back(nm::log_binomial(i, s) + log_power_q(pairs(static_cast<double>(s)), lq));
  }
  return sum_exp(terms);
}

WeightedCount w_n_u(std::int64_t n, double p, std::int64_t u) {
  const double sum = potential_level_sum(n, p, u);
  const double nn = static_cast<double>(n);
  const double threshold = nn * nn / (2.0 * static_cast<double>(u)) - nn / 2.0;
  const std::int64_t edge_slots = n * (n - 1) / 2;

  if (n <= kExactTailMaxOrder) return {sum * binomial_upper_tail(edge_slots, p, threshold), false};

  const double mean = static_cast<double>(edge_slots) * p;
  const double tail = threshold <= mean ? 1.0 : chernoff_tail_bound(edge_slots, p, threshold);
  return {sum * tail, true};
}

double mu_of_lambda(double lambda, double k) {
  if (!(lambda > 1.0) || !std::isfinite(lambda)) throw DomainError("mu_of_lambda: lambda must exceed 1");
  require_positive(k, "mu_of_lambda", "k");
  return 2.0 * nm::kLn2 + lambda - (k + 1.0) + (lambda - 1.0) * std::log(k / (lambda - 1.0));
}

double lambda_of_k(double k) {
  require_positive(k, "lambda_of_k", "k");
  return 1.0 + k * (1.0 + nm::chernoff_phi_inv(2.0 * nm::kLn2 / k));
}

double t1_exponent(double x, double k) {
  require_open_unit(x, "t1_exponent");
  require_positive(k, "t1_exponent", "k");
  return std::max(mu_of_lambda(1.0 / x, k) / 2.0, 0.0);
}

double t2_exponent(double x, double k) {
  require_open_unit(x, "t2_exponent");
  if (!(k >= 0.0) || !std::isfinite(k)) throw DomainError("t2_exponent: k must be >= 0");
  return std::max(nm::binary_entropy(x) - k * x * x / 2.0, 0.0);
}

double psi_n(double n, double u, double k) {
  if (!(u > 0.0 && u < n)) throw DomainError("psi_n: requires 0 < u < n");
  return n * std::log(n) - u * std::log(u) - (n - u) * std::log(n - u) - k * u * u / (2.0 * n);
}

namespace {

struct Scan {
  double value;
  double t;
};

// x = logistic(t). The grid lives in t so that both ends of (0, 1) are
// resolved: the argmax sits near 1/k for large k and near 1 for small k.
double logistic(double t) { return 1.0 / (1.0 + std::exp(-t)); }

constexpr double kGridHalfWidth = 30.0;
constexpr std::size_t kCoarsePoints = 8192;
constexpr std::size_t kRefinePoints = 1024;
constexpr int kRefineRounds = 4;
constexpr std::size_t kMaxCandidates = 8;

class MinExponentGrid {
 public:
  explicit MinExponentGrid(double k) : k_(k) {}

  // Fills the grid on [lo, hi] and returns the sampled values.
  const std::vector<double>& fill(double lo, double hi, std::size_t points) {
    t_.resize(points);
    a_.resize(points);
    b_.resize(points);
    for (std::size_t j = 0; j < points; ++j) {
      const double t = lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(points - 1);
      const double x = logistic(t);
      t_[j] = t;
      if (x <= 0.0 || x >= 1.0) {
        a_[j] = b_[j] = std::numeric_limits<double>::quiet_NaN();
        continue;
      }
      a_[j] = t1_exponent(x, k_);
      b_[j] = t2_exponent(x, k_);
    }
    values_.resize(points);
    for (std::size_t j = 0; j < points; ++j) values_[j] = std::min(a_[j], b_[j]);
    return values_;
  }

  Scan best() const {
    const auto mm = kernels::max_of_min(a_, b_);
    return {mm.value, t_[mm.index]};
  }

  double t_at(std::size_t j) const { return t_[j]; }

 private:
  double k_;
  std::vector<double> t_, a_, b_, values_;
};

}  // namespace

BoundCurvePoint gamma_of_k(double k) {
  require_positive(k, "gamma_of_k", "k");
  MinExponentGrid grid(k);
  const auto& coarse = grid.fill(-kGridHalfWidth, kGridHalfWidth, kCoarsePoints);
  const Scan global = grid.best();
  const double step = 2.0 * kGridHalfWidth / static_cast<double>(kCoarsePoints - 1);

  // Strict local maxima close to the coarse best are each refined, so that a
  // second peak hidden between grid points is not lost.
  std::vector<std::pair<double, double>> candidates;  // (value, t)
  candidates.emplace_back(global.value, global.t);
  for (std::size_t j = 1; j + 1 < coarse.size(); ++j) {
    const double v = coarse[j];
    if (std::isnan(v) || v < global.value - 1e-2) continue;
    const double l = coarse[j - 1];
    const double r = coarse[j + 1];
    if (v >= l && v >= r && (v > l || v > r)) candidates.emplace_back(v, grid.t_at(j));
  }
  std::sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  if (candidates.size() > kMaxCandidates) candidates.resize(kMaxCandidates);

  Scan best = global;
  for (const auto& cand : candidates) {
    Scan local{cand.first, cand.second};
    double half = step;
    for (int round = 0; round < kRefineRounds; ++round) {
      const double lo = std::max(-kGridHalfWidth, local.t - half);
      const double hi = std::min(kGridHalfWidth, local.t + half);
      grid.fill(lo, hi, kRefinePoints);
      const Scan s = grid.best();
      if (s.value >= local.value) local = s;
      half = 2.0 * (hi - lo) / static_cast<double>(kRefinePoints - 1);
    }
    if (local.value > best.value) best = local;
  }

  return {k, lambda_of_k(k), std::exp(best.value), logistic(best.t)};
}

double large_potential_exponent(std::int64_t n, double f_n, double h) {
  if (n < 1) throw DomainError("large_potential_exponent: n must be >= 1");
  if (!(f_n > 0.0 && f_n < 1.0 / nm::kE)) throw DomainError("large_potential_exponent: f_n must lie in (0, 1/e)");
  require_positive(h, "large_potential_exponent", "h");
  const double l = std::log(1.0 / f_n);
  return h * static_cast<double>(n) * std::log(l) / l;
}

double large_potential_entropy_exponent(std::int64_t n, double f_n) {
  const PotentialSplit split = c_n(n, f_n);
  const double tail = 1.0 - split.c_n;
  if (!(tail < 0.5)) throw DomainError("large_potential_entropy_exponent: requires 1 - C_n < 1/2");
  return static_cast<double>(n) * nm::binary_entropy(tail);
}

double lambda_caption_approx(double k) {
  require_positive(k, "lambda_caption_approx", "k");
  return 4.0 * (k + 1.0) / 3.0 + 1.0;
}

}  // namespace bbmis::bounds
