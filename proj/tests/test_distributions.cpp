#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "rmt/distributions.hpp"
#include "rmt/errors.hpp"
#include "rmt/numeric.hpp"
#include "rmt/random.hpp"
#include "test_util.hpp"

using rmt::RandomStream;

TEST_CASE("parameter validation rejects nonpositive arguments") {
  CHECK_THROWS_AS(rmt::GammaParams(0.0), rmt::parameter_error);
  CHECK_THROWS_AS(rmt::GammaParams(-1.0), rmt::parameter_error);
  CHECK_THROWS_AS(rmt::BetaParams(0.0, 1.0), rmt::parameter_error);
  CHECK_THROWS_AS(rmt::BetaParams(1.0, -2.0), rmt::parameter_error);
  CHECK_THROWS_AS(rmt::DirichletParams(0, 1.0), rmt::parameter_error);
  CHECK_THROWS_AS(rmt::DirichletParams(3, 0.0), rmt::parameter_error);
}

TEST_CASE("gamma sample moments match shape parameter") {
  // Covers both the Marsaglia-Tsang branch (shape >= 1) and the boosted
  // small-shape branch.
  const double shapes[] = {0.5, 1.0, 2.0, 10.0};
  const int n = 1000000;
  for (double a : shapes) {
    CAPTURE(a);
    RandomStream rng(31337, 0);
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
      double x = rmt::sample_gamma(rmt::GammaParams(a), rng);
      CHECK(x > 0.0);
      sum += x;
      sumsq += x * x;
    }
    double mean = sum / n;
    double var = sumsq / n - mean * mean;
    // Gamma(a): mean a, var a, Var(sample var) ~ (2a^2 + 6a)/n.
    CHECK(std::abs(mean - a) < 5.0 * std::sqrt(a / n));
    CHECK(std::abs(var - a) < 5.0 * std::sqrt((2.0 * a * a + 6.0 * a) / n));
  }
}

TEST_CASE("gamma with integer shape matches the Erlang law") {
  RandomStream rng(777, 0);
  const int n = 20000;
  std::vector<double> sample(n);
  for (auto& x : sample) x = rmt::sample_gamma(rmt::GammaParams(3.0), rng);
  double d = testutil::ks_statistic(
      sample, [](double x) { return testutil::erlang_cdf(3, x); });
  // KS ~ 0.84/sqrt(n) typical; 1.95/sqrt(n) is the 0.1% quantile.
  CHECK(d < 1.95 / std::sqrt(double(n)));
}

TEST_CASE("beta sample moments match (2, 6)") {
  RandomStream rng(4242, 0);
  const int n = 1000000;
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < n; ++i) {
    double x = rmt::sample_beta(rmt::BetaParams(2.0, 6.0), rng);
    CHECK(x > 0.0);
    CHECK(x < 1.0);
    sum += x;
    sumsq += x * x;
  }
  double mean = sum / n;
  double var = sumsq / n - mean * mean;
  CHECK(std::abs(mean - 0.25) < 0.002);
  CHECK(std::abs(var - 12.0 / (64.0 * 9.0)) < 5e-4);
}

TEST_CASE("rescaled beta approaches gamma for large second parameter") {
  // b * Beta(3, b) -> Gamma(3) as b grows.
  RandomStream rng(99, 0);
  const double b = 1e5;
  const int n = 20000;
  std::vector<double> sample(n);
  for (auto& x : sample) x = b * rmt::sample_beta(rmt::BetaParams(3.0, b), rng);
  double d = testutil::ks_statistic(
      sample, [](double x) { return testutil::erlang_cdf(3, x); });
  CHECK(d < 0.02);
}

TEST_CASE("dirichlet weights are a simplex point") {
  RandomStream rng(5, 0);
  auto w = rmt::sample_dirichlet(rmt::DirichletParams(100000, 1.0), rng);
  REQUIRE(w.size() == 100000);
  double lo = 1.0, hi = 0.0;
  for (double x : w) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  CHECK(lo > 0.0);
  CHECK(hi < 1.0);
  CHECK(std::abs(rmt::kahan_sum(w) - 1.0) <= 1e-12);
}

TEST_CASE("dirichlet partial sums follow the aggregation beta law") {
  // For Dirichlet(1,...,1) in dimension 100, the sum of the first 30
  // coordinates is Beta(30, 70).
  RandomStream rng(2718, 0);
  const int n = 10000;
  std::vector<double> sample(n);
  for (auto& s : sample) {
    auto w = rmt::sample_dirichlet(rmt::DirichletParams(100, 1.0), rng);
    double t = 0.0;
    for (int k = 0; k < 30; ++k) t += w[k];
    s = t;
  }
  double d = testutil::ks_statistic(
      sample, [](double x) { return testutil::beta_cdf_int(30, 70, x); });
  CHECK(d < 1.95 / std::sqrt(double(n)));
}

TEST_CASE("dirichlet coordinates are exchangeable in the mean") {
  RandomStream rng(11, 0);
  const int reps = 20000, dim = 8;
  double first = 0.0, last = 0.0;
  for (int i = 0; i < reps; ++i) {
    auto w = rmt::sample_dirichlet(rmt::DirichletParams(dim, 2.5), rng);
    first += w.front();
    last += w.back();
  }
  CHECK(std::abs(first / reps - 1.0 / dim) < 0.002);
  CHECK(std::abs(last / reps - 1.0 / dim) < 0.002);
}

TEST_CASE("gamma Fenchel-Legendre transform") {
  const double inf = std::numeric_limits<double>::infinity();
  // Frozen value: 2 * (2 - log 2 - 1).
  CHECK(rmt::gamma_fenchel_legendre(2.0, 4.0) ==
        doctest::Approx(0.6137056388801094).epsilon(1e-15));
  for (double a : {0.5, 1.0, 7.0}) {
    CHECK(rmt::gamma_fenchel_legendre(a, a) == 0.0);
  }
  CHECK(rmt::gamma_fenchel_legendre(1.0, 0.0) == inf);
  CHECK(rmt::gamma_fenchel_legendre(1.0, -3.0) == inf);
  // Strictly convex with minimum at x = shape.
  CHECK(rmt::gamma_fenchel_legendre(3.0, 2.0) > 0.0);
  CHECK(rmt::gamma_fenchel_legendre(3.0, 4.0) > 0.0);
  CHECK(rmt::gamma_fenchel_legendre(3.0, 5.0) >
        rmt::gamma_fenchel_legendre(3.0, 4.0));
  CHECK_THROWS_AS(rmt::gamma_fenchel_legendre(0.0, 1.0), rmt::parameter_error);
}
