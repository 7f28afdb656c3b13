#pragma once

#include "rmt/coefficients.hpp"

namespace rmt {

// g(x) = x - log x - 1 on (0,inf), +infinity elsewhere.  Nonnegative, zero
// only at x = 1.
double g(double x);

// Gaussian edge rate: (|x|/2) sqrt(x^2-4) - 2 log((|x|+sqrt(x^2-4))/2) for
// |x| >= 2 (equals the integral of sqrt(t^2-4) from 2 to |x|), +infinity
// strictly inside (-2,2).
double f_gauss(double x);

// Tail handling for rate sums over finitely many coefficients.  The absent
// tail is pinned at the minimizer, where every term vanishes, so both
// conventions evaluate to the same finite sum; the enum records intent.
enum class TailConvention { MinimizerPadded, Truncated };

struct RateInputG {
  RecursionCoefficients coefficients;
  TailConvention tail = TailConvention::MinimizerPadded;
};

struct RateInputL {
  ChainDecomposition z;
  double tau;  // in (0,1]
  TailConvention tail = TailConvention::MinimizerPadded;
};

// sum_k (1/2) d_k^2 + g(c_k^2); zero exactly at the semicircle coefficients.
double rate_ig(const RateInputG& input);
double rate_ig(const RecursionCoefficients& rc,
               TailConvention tail = TailConvention::MinimizerPadded);

// sum_k g(z_{2k-1}) + tau * g(z_{2k}/tau); zero exactly at the
// Marchenko-Pastur chain (1, tau, 1, tau, ...).
double rate_il(const RateInputL& input);
double rate_il(const ChainDecomposition& chain, double tau,
               TailConvention tail = TailConvention::MinimizerPadded);

// 4 exp(-(eps^2/128) (a^3+b^3)/(ab)) for eps in (0, 1/2): tail bound for
// |Beta(a,b) - a/(a+b)| > eps.
double beta_concentration_bound(double a, double b, double eps);

}  // namespace rmt
