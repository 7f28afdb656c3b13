#include "rmt/distributions.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "rmt/errors.hpp"
#include "rmt/numeric.hpp"

namespace rmt {

namespace {

void require_positive_finite(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw parameter_error(std::string(what) + " must be a positive finite real, got " +
                          std::to_string(v));
  }
}

// Marsaglia-Tsang for shape >= 1.
double gamma_shape_ge1(double shape, RandomStream& rng) {
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = rng.normal();
    double t = 1.0 + c * x;
    if (t <= 0.0) continue;
    double v = t * t * t;
    double u = rng.uniform();
    double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

}  // namespace

GammaParams::GammaParams(double shape_in) : shape(shape_in) {
  require_positive_finite(shape, "gamma shape");
}

BetaParams::BetaParams(double alpha_in, double beta_in) : alpha(alpha_in), beta(beta_in) {
  require_positive_finite(alpha, "beta alpha");
  require_positive_finite(beta, "beta beta");
}

DirichletParams::DirichletParams(std::size_t dimension_in, double concentration_in)
    : dimension(dimension_in), concentration(concentration_in) {
  if (dimension == 0) throw parameter_error("dirichlet dimension must be >= 1");
  require_positive_finite(concentration, "dirichlet concentration");
}

double sample_gamma(const GammaParams& params, RandomStream& rng) {
  if (params.shape >= 1.0) return gamma_shape_ge1(params.shape, rng);
  // Boost: if G ~ Gamma(shape+1) and U uniform, G * U^{1/shape} ~ Gamma(shape).
  double g = gamma_shape_ge1(params.shape + 1.0, rng);
  return g * std::pow(rng.uniform(), 1.0 / params.shape);
}

double sample_beta(const BetaParams& params, RandomStream& rng) {
  double y = sample_gamma(GammaParams(params.alpha), rng);
  double z = sample_gamma(GammaParams(params.beta), rng);
  return y / (y + z);
}

std::vector<double> sample_dirichlet(const DirichletParams& params, RandomStream& rng) {
  std::vector<double> g(params.dimension);
  GammaParams shape(params.concentration);
  for (double& v : g) v = sample_gamma(shape, rng);
  double total = kahan_sum(g);
  for (double& v : g) v /= total;
  return g;
}

double gamma_fenchel_legendre(double shape, double x) {
  require_positive_finite(shape, "gamma shape");
  if (!(x > 0.0)) return std::numeric_limits<double>::infinity();
  double r = x / shape;
  return shape * (r - std::log(r) - 1.0);
}

}  // namespace rmt
