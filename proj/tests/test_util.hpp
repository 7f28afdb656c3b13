#pragma once

// Shared helpers for unit tests: one-sample Kolmogorov-Smirnov statistics and
// closed-form reference CDFs built only from lgamma, so they are independent
// of the library code under test.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace testutil {

// One-sample KS statistic against a continuous CDF.
inline double ks_statistic(std::vector<double> sample,
                           const std::function<double(double)>& cdf) {
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    double f = cdf(sample[i]);
    d = std::max(d, f - static_cast<double>(i) / n);
    d = std::max(d, static_cast<double>(i + 1) / n - f);
  }
  return d;
}

// Erlang(k) CDF, unit scale: P(X <= x) = 1 - exp(-x) * sum_{j<k} x^j / j!.
inline double erlang_cdf(int k, double x) {
  if (x <= 0.0) return 0.0;
  double tail = 0.0;
  for (int j = 0; j < k; ++j) {
    tail += std::exp(-x + j * std::log(x) - std::lgamma(j + 1.0));
  }
  return 1.0 - tail;
}

// Beta(k, m) CDF for integer parameters via the binomial tail identity:
// I_x(k, m) = sum_{j=k}^{k+m-1} C(k+m-1, j) x^j (1-x)^(k+m-1-j).
inline double beta_cdf_int(int k, int m, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const int n = k + m - 1;
  double sum = 0.0;
  for (int j = k; j <= n; ++j) {
    double lc = std::lgamma(n + 1.0) - std::lgamma(j + 1.0) -
                std::lgamma(n - j + 1.0);
    sum += std::exp(lc + j * std::log(x) + (n - j) * std::log1p(-x));
  }
  return std::min(1.0, sum);
}

// Standard normal CDF.
inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace testutil
