#include "rmt/ensembles.hpp"

#include <cmath>
#include <string>

#include "rmt/distributions.hpp"
#include "rmt/errors.hpp"

namespace rmt {

namespace {

void require_shape_margin(double value, const char* name, std::size_t n, double beta_prime) {
  double floor = (static_cast<double>(n) - 1.0) * beta_prime;
  if (!(value > floor)) {
    throw parameter_error(std::string(name) + "=" + std::to_string(value) +
                          " must exceed (n-1)*beta/2=" + std::to_string(floor) +
                          " at n=" + std::to_string(n));
  }
}

}  // namespace

EnsembleSpec::EnsembleSpec(EnsembleKind kind, double beta, std::size_t n, double a, double b)
    : kind_(kind), beta_(beta), n_(n), a_(a), b_(b) {
  if (!(beta_ > 0.0) || !std::isfinite(beta_)) {
    throw parameter_error("beta must be a positive finite real");
  }
  if (n_ == 0) throw parameter_error("ensemble dimension n must be >= 1");
}

EnsembleSpec EnsembleSpec::jacobi(double beta, std::size_t n, double a, double b) {
  EnsembleSpec spec(EnsembleKind::Jacobi, beta, n, a, b);
  if (!std::isfinite(a) || !std::isfinite(b)) throw parameter_error("jacobi a, b must be finite");
  require_shape_margin(a, "jacobi a", n, spec.beta_prime());
  require_shape_margin(b, "jacobi b", n, spec.beta_prime());
  return spec;
}

EnsembleSpec EnsembleSpec::gaussian(double beta, std::size_t n) {
  return EnsembleSpec(EnsembleKind::Gaussian, beta, n, 0.0, 0.0);
}

EnsembleSpec EnsembleSpec::laguerre(double beta, std::size_t n, double a) {
  EnsembleSpec spec(EnsembleKind::Laguerre, beta, n, a, 0.0);
  if (!std::isfinite(a)) throw parameter_error("laguerre a must be finite");
  require_shape_margin(a, "laguerre a", n, spec.beta_prime());
  return spec;
}

double EnsembleSpec::a() const {
  if (kind_ == EnsembleKind::Gaussian) throw parameter_error("gaussian ensemble has no a");
  return a_;
}

double EnsembleSpec::b() const {
  if (kind_ != EnsembleKind::Jacobi) throw parameter_error("only the jacobi ensemble has b");
  return b_;
}

// Entries come from independent Beta variables p_1..p_{2n-1}:
//   p_{2k-1} ~ Beta(a - (k-1)b', b - (k-1)b'),      k = 1..n
//   p_{2k}   ~ Beta((n-k)b',     a + b - (n+k-1)b'), k = 1..n-1
// with b' = beta/2, chained through
//   d_k = p_{2k-2}(1-p_{2k-3}) + p_{2k-1}(1-p_{2k-2})
//   c_k = sqrt(p_{2k-1}(1-p_{2k-2}) p_{2k}(1-p_{2k-1}))
// and p_0 = p_{-1} = 0.
TridiagonalMatrix sample_jacobi_tridiag(const EnsembleSpec& spec, RandomStream& rng) {
  if (spec.kind() != EnsembleKind::Jacobi) throw parameter_error("spec is not jacobi");
  const std::size_t n = spec.n();
  const double bp = spec.beta_prime();
  const double a = spec.a(), b = spec.b();
  const double nn = static_cast<double>(n);

  // p[j] holds p_{j+1}; drawn in index order so the stream layout is fixed.
  std::vector<double> p(2 * n - 1);
  for (std::size_t j = 1; j <= 2 * n - 1; ++j) {
    double alpha, betap;
    if (j % 2 == 1) {
      double k = static_cast<double>((j + 1) / 2);
      alpha = a - (k - 1.0) * bp;
      betap = b - (k - 1.0) * bp;
    } else {
      double k = static_cast<double>(j / 2);
      alpha = (nn - k) * bp;
      betap = a + b - (nn + k - 1.0) * bp;
    }
    p[j - 1] = sample_beta(BetaParams(alpha, betap), rng);
  }

  auto at = [&](std::ptrdiff_t j) { return j <= 0 ? 0.0 : p[static_cast<std::size_t>(j - 1)]; };
  std::vector<double> diag(n), offdiag(n - 1);
  for (std::size_t k = 1; k <= n; ++k) {
    std::ptrdiff_t j = static_cast<std::ptrdiff_t>(2 * k);
    diag[k - 1] = at(j - 2) * (1.0 - at(j - 3)) + at(j - 1) * (1.0 - at(j - 2));
    if (k < n) {
      offdiag[k - 1] = std::sqrt(at(j - 1) * (1.0 - at(j - 2)) * at(j) * (1.0 - at(j - 1)));
    }
  }
  return TridiagonalMatrix(std::move(diag), std::move(offdiag));
}

// Diagonal iid standard normal; c_k^2 ~ Gamma((n-k)*beta/2).
TridiagonalMatrix sample_gaussian_tridiag(const EnsembleSpec& spec, RandomStream& rng) {
  if (spec.kind() != EnsembleKind::Gaussian) throw parameter_error("spec is not gaussian");
  const std::size_t n = spec.n();
  const double bp = spec.beta_prime();
  std::vector<double> diag(n), offdiag(n - 1);
  for (std::size_t k = 0; k < n; ++k) diag[k] = rng.normal();
  for (std::size_t k = 1; k < n; ++k) {
    double shape = (static_cast<double>(n) - static_cast<double>(k)) * bp;
    offdiag[k - 1] = std::sqrt(sample_gamma(GammaParams(shape), rng));
  }
  return TridiagonalMatrix(std::move(diag), std::move(offdiag));
}

// Entries from independent Gammas z_1..z_{2n-1}:
//   z_{2k-1} ~ Gamma(a - (k-1)b'), z_{2k} ~ Gamma((n-k)b'),
//   d_k = z_{2k-2} + z_{2k-1} (z_0 = 0), c_k = sqrt(z_{2k-1} z_{2k}).
TridiagonalMatrix sample_laguerre_tridiag(const EnsembleSpec& spec, RandomStream& rng) {
  if (spec.kind() != EnsembleKind::Laguerre) throw parameter_error("spec is not laguerre");
  const std::size_t n = spec.n();
  const double bp = spec.beta_prime();
  const double a = spec.a();

  std::vector<double> z(2 * n - 1);
  for (std::size_t j = 1; j <= 2 * n - 1; ++j) {
    double shape = (j % 2 == 1) ? a - (static_cast<double>((j + 1) / 2) - 1.0) * bp
                                : (static_cast<double>(n) - static_cast<double>(j / 2)) * bp;
    z[j - 1] = sample_gamma(GammaParams(shape), rng);
  }

  std::vector<double> diag(n), offdiag(n - 1);
  for (std::size_t k = 1; k <= n; ++k) {
    diag[k - 1] = (k >= 2 ? z[2 * k - 3] : 0.0) + z[2 * k - 2];
    if (k < n) offdiag[k - 1] = std::sqrt(z[2 * k - 2] * z[2 * k - 1]);
  }
  return TridiagonalMatrix(std::move(diag), std::move(offdiag));
}

TridiagonalMatrix sample_tridiagonal(const EnsembleSpec& spec, RandomStream& rng) {
  switch (spec.kind()) {
    case EnsembleKind::Jacobi: return sample_jacobi_tridiag(spec, rng);
    case EnsembleKind::Gaussian: return sample_gaussian_tridiag(spec, rng);
    case EnsembleKind::Laguerre: return sample_laguerre_tridiag(spec, rng);
  }
  throw parameter_error("unknown ensemble kind");
}

TridiagonalMatrix limit_matrix_sc(std::size_t n) {
  if (n == 0) throw parameter_error("limit matrix needs n >= 1");
  return TridiagonalMatrix(std::vector<double>(n, 0.0), std::vector<double>(n - 1, 1.0));
}

TridiagonalMatrix limit_matrix_mp(std::size_t n, double tau) {
  if (n == 0) throw parameter_error("limit matrix needs n >= 1");
  if (!(tau > 0.0) || !(tau <= 1.0)) {
    throw parameter_error("marchenko-pastur tau must lie in (0,1], got " + std::to_string(tau));
  }
  std::vector<double> diag(n, 1.0 + tau);
  diag[0] = 1.0;
  return TridiagonalMatrix(std::move(diag), std::vector<double>(n - 1, std::sqrt(tau)));
}

ScalingRegime::ScalingRegime(Kind kind, double beta, std::size_t n, double a, double b,
                             double sigma, double tau)
    : kind_(kind), beta_(beta), n_(n), a_(a), b_(b), sigma_(sigma), tau_(tau) {
  if (!(beta_ > 0.0) || !std::isfinite(beta_)) throw parameter_error("regime beta must be > 0");
  if (n_ == 0) throw parameter_error("regime n must be >= 1");
  if (!(a_ > 0.0) || !(b_ > 0.0)) throw parameter_error("regime a, b must be > 0");
}

ScalingRegime ScalingRegime::lln1(double tau, double beta, std::size_t n, double a, double b) {
  if (!(tau > 0.0) || !(tau <= 1.0)) throw parameter_error("lln1 tau must lie in (0,1]");
  return ScalingRegime(Kind::LLN1, beta, n, a, b, 0.0, tau);
}

ScalingRegime ScalingRegime::lln2(double sigma, double beta, std::size_t n, double a, double b) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw parameter_error("lln2 sigma must be > 0");
  return ScalingRegime(Kind::LLN2, beta, n, a, b, sigma, 0.0);
}

ScalingRegime ScalingRegime::ldp1(double tau, double beta, std::size_t n, double a, double b) {
  if (!(tau > 0.0) || !(tau <= 1.0)) throw parameter_error("ldp1 tau must lie in (0,1]");
  return ScalingRegime(Kind::LDP1, beta, n, a, b, 0.0, tau);
}

ScalingRegime ScalingRegime::ldp2(double beta, std::size_t n, double a, double b) {
  return ScalingRegime(Kind::LDP2, beta, n, a, b, 0.0, 0.0);
}

double ScalingRegime::scale() const {
  switch (kind_) {
    case Kind::LLN1:
    case Kind::LDP1:
      return b_ / a_;
    case Kind::LLN2: {
      double bp = 0.5 * beta_;
      return (sigma_ + 1.0) *
             std::sqrt(b_ * (1.0 + sigma_) / (sigma_ * static_cast<double>(n_) * bp));
    }
    case Kind::LDP2:
      return 4.0 * std::sqrt(b_ / (static_cast<double>(n_) * beta_));
  }
  throw parameter_error("unknown regime kind");
}

double ScalingRegime::center() const {
  switch (kind_) {
    case Kind::LLN1:
    case Kind::LDP1:
      return 0.0;
    case Kind::LLN2:
      return sigma_ / (sigma_ + 1.0);
    case Kind::LDP2:
      return 0.5;
  }
  throw parameter_error("unknown regime kind");
}

TridiagonalMatrix affine_transform(const TridiagonalMatrix& t, double scale, double center) {
  if (!(scale > 0.0) || !std::isfinite(scale) || !std::isfinite(center)) {
    throw parameter_error("affine transform needs finite scale > 0 and finite center");
  }
  std::vector<double> diag(t.size()), offdiag(t.size() - 1);
  for (std::size_t i = 0; i < t.size(); ++i) diag[i] = scale * (t.diag()[i] - center);
  for (std::size_t i = 0; i + 1 < t.size(); ++i) offdiag[i] = scale * t.offdiag()[i];
  return TridiagonalMatrix(std::move(diag), std::move(offdiag));
}

TridiagonalMatrix rescale_matrix(const TridiagonalMatrix& t, const ScalingRegime& regime) {
  if (t.size() != regime.n()) {
    throw parameter_error("regime n=" + std::to_string(regime.n()) +
                          " does not match matrix size " + std::to_string(t.size()));
  }
  return affine_transform(t, regime.scale(), regime.center());
}

}  // namespace rmt
