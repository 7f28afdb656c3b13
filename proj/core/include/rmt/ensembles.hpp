#pragma once

#include <cstddef>

#include "rmt/random.hpp"
#include "rmt/tridiagonal.hpp"

namespace rmt {

enum class EnsembleKind { Jacobi, Gaussian, Laguerre };

// Parameters of one finite ensemble.  beta > 0; the Jacobi / Laguerre shape
// parameters must exceed (n-1)*beta/2 so that every Beta/Gamma entry in the
// tridiagonal model has positive parameters.
class EnsembleSpec {
 public:
  static EnsembleSpec jacobi(double beta, std::size_t n, double a, double b);
  static EnsembleSpec gaussian(double beta, std::size_t n);
  static EnsembleSpec laguerre(double beta, std::size_t n, double a);

  EnsembleKind kind() const { return kind_; }
  double beta() const { return beta_; }
  double beta_prime() const { return 0.5 * beta_; }
  std::size_t n() const { return n_; }
  double a() const;  // Jacobi, Laguerre
  double b() const;  // Jacobi

 private:
  EnsembleSpec(EnsembleKind kind, double beta, std::size_t n, double a, double b);
  EnsembleKind kind_;
  double beta_;
  std::size_t n_;
  double a_;
  double b_;
};

TridiagonalMatrix sample_jacobi_tridiag(const EnsembleSpec& spec, RandomStream& rng);
TridiagonalMatrix sample_gaussian_tridiag(const EnsembleSpec& spec, RandomStream& rng);
TridiagonalMatrix sample_laguerre_tridiag(const EnsembleSpec& spec, RandomStream& rng);
TridiagonalMatrix sample_tridiagonal(const EnsembleSpec& spec, RandomStream& rng);

// Deterministic limit matrices: free semicircle coefficients (diag 0,
// offdiag 1) and the Marchenko-Pastur(tau) coefficients (diag 1, 1+tau, ...,
// offdiag sqrt(tau)), tau in (0,1].
TridiagonalMatrix limit_matrix_sc(std::size_t n);
TridiagonalMatrix limit_matrix_mp(std::size_t n, double tau);

// Affine spectral rescalings x -> scale * (x - center) used by the limit
// theorems.  LLN1 and LDP1 share the same map (b/a, centered at 0); they are
// kept distinct so downstream reporting knows which regime produced a result.
class ScalingRegime {
 public:
  enum class Kind { LLN1, LLN2, LDP1, LDP2 };

  static ScalingRegime lln1(double tau, double beta, std::size_t n, double a, double b);
  static ScalingRegime lln2(double sigma, double beta, std::size_t n, double a, double b);
  static ScalingRegime ldp1(double tau, double beta, std::size_t n, double a, double b);
  static ScalingRegime ldp2(double beta, std::size_t n, double a, double b);

  Kind kind() const { return kind_; }
  double beta() const { return beta_; }
  std::size_t n() const { return n_; }
  double a() const { return a_; }
  double b() const { return b_; }
  double sigma() const { return sigma_; }
  double tau() const { return tau_; }

  double scale() const;
  double center() const;

 private:
  ScalingRegime(Kind kind, double beta, std::size_t n, double a, double b, double sigma,
                double tau);
  Kind kind_;
  double beta_;
  std::size_t n_;
  double a_;
  double b_;
  double sigma_;
  double tau_;
};

// x -> scale * (x - center) applied to the spectrum: diag -> scale*(diag -
// center), offdiag -> scale * offdiag.  scale must be > 0 to keep the
// off-diagonal sign convention.
TridiagonalMatrix affine_transform(const TridiagonalMatrix& t, double scale, double center);
TridiagonalMatrix rescale_matrix(const TridiagonalMatrix& t, const ScalingRegime& regime);

}  // namespace rmt
