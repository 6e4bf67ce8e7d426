#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "bbmis/error.hpp"
#include "bbmis/numerics.hpp"

using namespace bbmis;
using namespace bbmis::numerics;

namespace {

double rel_err(double got, double want) { return std::fabs(got - want) / std::max(std::fabs(want), 1e-300); }

}  // namespace

TEST_SUITE("numerics") {
  TEST_CASE("lambert_w0 examples") {
    CHECK(lambert_w0(0.0) == 0.0);
    CHECK(lambert_w0(kE) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(lambert_w0(1.0) == doctest::Approx(0.5671432904097838).epsilon(1e-13));
    CHECK(lambert_w0(-kInvE) == -1.0);
    CHECK(lambert_w0(kInvE) == doctest::Approx(0.2784645427610738).epsilon(1e-13));
  }

  TEST_CASE("lambert_w0 domain") {
    CHECK_THROWS_AS(lambert_w0(-0.4), DomainError);
    CHECK_THROWS_AS(lambert_w0(std::numeric_limits<double>::quiet_NaN()), DomainError);
    CHECK_THROWS_AS(lambert_w0(std::numeric_limits<double>::infinity()), DomainError);
  }

  TEST_CASE("lambert_w0 satisfies w e^w = x") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> near_branch(-kInvE, 0.0);
    std::uniform_real_distribution<double> log_mag(-300.0, 300.0);
    std::uniform_real_distribution<double> lin(-kInvE, 1e6);
    for (int i = 0; i < 3000; ++i) {
      double x = 0;
      switch (i % 3) {
        case 0: x = near_branch(rng); break;
        case 1: x = std::exp(log_mag(rng)); break;
        default: x = lin(rng); break;
      }
      const double w = lambert_w0(x);
      CHECK(w >= -1.0);
      CHECK(std::fabs(w * std::exp(w) - x) <= 1e-12 * std::max(1.0, std::fabs(x)));
    }
  }

  TEST_CASE("chernoff_phi examples and shape") {
    CHECK(chernoff_phi(0.0) == 0.0);
    CHECK(chernoff_phi(kE - 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(chernoff_phi(1.0) == doctest::Approx(2 * kLn2 - 1).epsilon(1e-14));
    CHECK(chernoff_phi(0.2) == doctest::Approx(0.0187858682).epsilon(1e-9));
    CHECK_THROWS_AS(chernoff_phi(-1e-9), DomainError);
    // Series and closed form meet at the switch point.
    const double below = chernoff_phi(std::nextafter(1e-3, 0.0));
    const double above = chernoff_phi(1e-3);
    CHECK(rel_err(below, above) < 1e-9);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> d(0.0, 50.0);
    double prev = -1;
    for (double x = 0; x < 20; x += 0.01) {
      const double v = chernoff_phi(x);
      CHECK(v > prev);
      prev = v;
    }
    for (int i = 0; i < 1000; ++i) {
      const double a = d(rng), b = d(rng);
      CHECK(chernoff_phi(0.5 * (a + b)) <= 0.5 * (chernoff_phi(a) + chernoff_phi(b)) + 1e-12);
    }
  }

  TEST_CASE("chernoff_phi_inv examples") {
    CHECK(chernoff_phi_inv(0.0) == 0.0);
    CHECK(chernoff_phi_inv(1.0) == doctest::Approx(kE - 1).epsilon(1e-13));
    CHECK(chernoff_phi_inv(2 * kLn2) == doctest::Approx(2.081343).epsilon(1e-6));
    CHECK_THROWS_AS(chernoff_phi_inv(-0.1), DomainError);
  }

  TEST_CASE("chernoff_phi_inv round trips") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> delta(0.0, 1e6);
    std::uniform_real_distribution<double> log_y(-30.0, 13.0);
    for (int i = 0; i < 1000; ++i) {
      const double d = delta(rng);
      CHECK(rel_err(chernoff_phi_inv(chernoff_phi(d)), d) <= 1e-8);
      const double y = std::exp(log_y(rng));
      CHECK(rel_err(chernoff_phi(chernoff_phi_inv(y)), y) <= 1e-10);
    }
  }

  TEST_CASE("h_lambert is the closed form of the inverse") {
    CHECK(h_lambert(2 * kLn2) == doctest::Approx(chernoff_phi_inv(2 * kLn2)).epsilon(1e-10));
    CHECK(h_lambert(1.386294) == doctest::Approx(2.0812).epsilon(1e-4));
    // Continuity at the left end of the domain: the inverse at 1 is e - 1.
    CHECK(h_lambert(1.0 + 1e-8) == doctest::Approx(kE - 1).epsilon(1e-3));
    CHECK_THROWS_AS(h_lambert(1.0), DomainError);
    CHECK_THROWS_AS(h_lambert(0.5), DomainError);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> y(1.0, 1e6);
    for (int i = 0; i < 1000; ++i) {
      double x = y(rng);
      if (x == 1.0) continue;
      CHECK(rel_err(h_lambert(x), chernoff_phi_inv(x)) <= 1e-8);
      CHECK(rel_err(chernoff_phi(h_lambert(x)), x) <= 1e-10);
    }
  }

  TEST_CASE("binary_entropy") {
    CHECK(binary_entropy(0.5) == doctest::Approx(kLn2).epsilon(1e-15));
    CHECK(binary_entropy(0.1) == doctest::Approx(0.3250829734).epsilon(1e-9));
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK_THROWS_AS(binary_entropy(-0.01), DomainError);
    CHECK_THROWS_AS(binary_entropy(1.01), DomainError);
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
      // Dyadic samples make 1 - x exact, so symmetry must hold bit for bit.
      const double x = std::ldexp(std::floor(std::ldexp(u(rng), 40)), -40);
      CHECK(binary_entropy(x) == binary_entropy(1.0 - x));
      CHECK(binary_entropy(x) >= 0.0);
      CHECK(binary_entropy(x) <= kLn2);
    }
  }

  TEST_CASE("log_binomial against exact integers") {
    CHECK(log_binomial(10, 0) == 0.0);
    CHECK(log_binomial(10, 5) == doctest::Approx(std::log(252.0)).epsilon(1e-14));
    CHECK_THROWS_AS(log_binomial(5, 6), DomainError);
    CHECK_THROWS_AS(log_binomial(5, -1), DomainError);
    // Pascal's triangle in exact 64-bit arithmetic (C(60, 30) < 2^63).
    std::vector<std::vector<unsigned long long>> c(61);
    for (int n = 0; n <= 60; ++n) {
      c[n].assign(n + 1, 1);
      for (int i = 1; i < n; ++i) c[n][i] = c[n - 1][i - 1] + c[n - 1][i];
      for (int i = 0; i <= n; ++i) {
        const double exact = static_cast<double>(c[n][i]);
        CHECK(std::fabs(std::exp(log_binomial(n, i)) - exact) <= 1e-9 * exact);
        CHECK(log_binomial(n, i) == log_binomial(n, n - i));
      }
    }
  }

  TEST_CASE("log_sum_exp") {
    CHECK(log_sum_exp(std::vector<double>{}) == -std::numeric_limits<double>::infinity());
    const double inf = std::numeric_limits<double>::infinity();
    CHECK(log_sum_exp(std::vector<double>{-inf, -inf}) == -inf);
    CHECK(log_sum_exp(std::vector<double>{1000.0, 1000.0}) == doctest::Approx(1000.0 + kLn2));
    CHECK(log_sum_exp(std::vector<double>{0.0, -inf}) == 0.0);
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> v(-500, 500);
    for (int t = 0; t < 200; ++t) {
      std::vector<double> xs(1 + t % 17);
      double hi = -inf;
      for (auto& x : xs) hi = std::max(hi, x = v(rng));
      const double s = log_sum_exp(xs);
      CHECK(s >= hi);
      CHECK(s <= hi + std::log(static_cast<double>(xs.size())) + 1e-12);
    }
  }

  TEST_CASE("log_binomial_upper_tail against direct summation") {
    for (int trials : {0, 1, 7, 30}) {
      for (double p : {0.0, 0.1, 0.5, 0.9, 1.0}) {
        for (int t = -1; t <= trials + 1; ++t) {
          double direct = 0;
          for (int j = std::max(t, 0); j <= trials; ++j)
            direct += std::exp(log_binomial(trials, j)) * std::pow(p, j) * std::pow(1 - p, trials - j);
          const double got = std::exp(log_binomial_upper_tail(trials, p, t));
          CHECK(got == doctest::Approx(direct).epsilon(1e-10));
        }
      }
    }
    CHECK_THROWS_AS(log_binomial_upper_tail(5, 1.5, 1), DomainError);
  }

  TEST_CASE("RealInterval") {
    RealInterval r(1.0, 3.0);
    CHECK(r.width() == 2.0);
    CHECK(r.mid() == 2.0);
    CHECK(r.contains(1.0));
    CHECK_FALSE(r.contains(3.5));
    CHECK_THROWS_AS(RealInterval(2.0, 1.0), DomainError);
  }
}
