#include "rmt/rates.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "rmt/errors.hpp"

namespace rmt {

double g(double x) {
  if (!(x > 0.0)) return std::numeric_limits<double>::infinity();
  return x - std::log(x) - 1.0;
}

double f_gauss(double x) {
  double ax = std::abs(x);
  if (ax < 2.0) return std::numeric_limits<double>::infinity();
  double root = std::sqrt(ax * ax - 4.0);
  return 0.5 * ax * root - 2.0 * std::log(0.5 * (ax + root));
}

double rate_ig(const RecursionCoefficients& rc, TailConvention) {
  double total = 0.0;
  for (double dk : rc.d()) total += 0.5 * dk * dk;
  for (double ck : rc.c()) total += g(ck * ck);
  return total;
}

double rate_ig(const RateInputG& input) { return rate_ig(input.coefficients, input.tail); }

double rate_il(const ChainDecomposition& chain, double tau, TailConvention) {
  if (!(tau > 0.0) || !(tau <= 1.0)) {
    throw parameter_error("rate_il tau must lie in (0,1], got " + std::to_string(tau));
  }
  double total = 0.0;
  for (std::size_t k = 0; k < chain.z.size(); ++k) {
    // z_1, z_3, ... at even indices of the 0-based vector.
    total += (k % 2 == 0) ? g(chain.z[k]) : tau * g(chain.z[k] / tau);
  }
  return total;
}

double rate_il(const RateInputL& input) { return rate_il(input.z, input.tau, input.tail); }

double beta_concentration_bound(double a, double b, double eps) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw parameter_error("concentration bound needs a, b > 0");
  }
  if (!(eps > 0.0) || !(eps < 0.5)) {
    throw parameter_error("concentration bound needs eps in (0, 1/2), got " +
                          std::to_string(eps));
  }
  return 4.0 * std::exp(-(eps * eps / 128.0) * (a * a * a + b * b * b) / (a * b));
}

}  // namespace rmt
