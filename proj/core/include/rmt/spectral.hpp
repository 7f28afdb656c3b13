#pragma once

#include <cstddef>
#include <vector>

#include "rmt/measures.hpp"
#include "rmt/random.hpp"
#include "rmt/tridiagonal.hpp"

namespace rmt {

// Eigenvalues (ascending, deduplicated within 1e-12*(1+||T||_inf)) together
// with the squared first components of the corresponding orthonormal
// eigenvectors.  Weights are normalized to sum to 1 exactly up to roundoff.
struct SpectralDecomposition {
  std::vector<double> eigenvalues;
  std::vector<double> first_components_sq;
};

// Implicit-shift QL iteration specialized to symmetric tridiagonal input,
// accumulating only the first row of the eigenvector matrix (all that is
// needed for spectral weights), so the whole decomposition is O(n^2).
// Decoupled trailing blocks (zero off-diagonal) keep exactly zero weight.
SpectralDecomposition decompose(const TridiagonalMatrix& t);

// Spectral measure at the first coordinate vector: sum_i w_i delta_{lambda_i}.
DiscreteMeasure spectral_measure(const TridiagonalMatrix& t);

// Atom weighting for empirical_measure: uniform 1/n, or independent
// symmetric Dirichlet(beta/2) weights attached to the ascending eigenvalues.
class Weighting {
 public:
  static Weighting uniform() { return Weighting(false, 0.0); }
  static Weighting dirichlet(double beta_prime);
  bool is_dirichlet() const { return dirichlet_; }
  double beta_prime() const { return beta_prime_; }

 private:
  Weighting(bool dirichlet, double beta_prime) : dirichlet_(dirichlet), beta_prime_(beta_prime) {}
  bool dirichlet_;
  double beta_prime_;
};

DiscreteMeasure empirical_measure(const TridiagonalMatrix& t, const Weighting& weighting,
                                  RandomStream* rng = nullptr);

// (T^k)_{11} by k tridiagonal mat-vecs; independent of the eigensolver.
double moment_e1(const TridiagonalMatrix& t, unsigned k);

}  // namespace rmt
