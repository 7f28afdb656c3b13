#pragma once

#include <cstddef>
#include <vector>

#include "rmt/random.hpp"

namespace rmt {

struct GammaParams {
  explicit GammaParams(double shape_in);
  double shape;  // unit rate
};

struct BetaParams {
  BetaParams(double alpha_in, double beta_in);
  double alpha;
  double beta;
};

struct DirichletParams {
  DirichletParams(std::size_t dimension_in, double concentration_in);
  std::size_t dimension;
  double concentration;  // symmetric
};

// Unit-rate Gamma(shape), density x^{shape-1} e^{-x} / Gamma(shape).
// Marsaglia-Tsang squeeze-rejection for shape >= 1; shapes below 1 are
// boosted through Gamma(shape+1) * U^{1/shape}.  Exact for every shape > 0.
double sample_gamma(const GammaParams& params, RandomStream& rng);

// Beta(alpha, beta) as Y / (Y + Z) with independent Gammas.
double sample_beta(const BetaParams& params, RandomStream& rng);

// Symmetric Dirichlet: normalized iid Gammas.  The output is normalized with
// a compensated sum so the weights add to 1 to machine precision.
std::vector<double> sample_dirichlet(const DirichletParams& params, RandomStream& rng);

// Fenchel-Legendre transform of the Gamma(shape) log-MGF at x:
// shape * (x/shape - log(x/shape) - 1), +infinity for x <= 0.
double gamma_fenchel_legendre(double shape, double x);

}  // namespace rmt
