#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "rmt/measures.hpp"
#include "rmt/tridiagonal.hpp"

namespace rmt {

// Three-term recursion coefficients of the orthogonal polynomials of a
// measure: diagonal d_1..d_m and strictly positive off-diagonal c_1..c_{m-1}.
class RecursionCoefficients {
 public:
  RecursionCoefficients(std::vector<double> d, std::vector<double> c);

  std::size_t depth() const { return d_.size(); }
  const std::vector<double>& d() const { return d_; }
  const std::vector<double>& c() const { return c_; }

 private:
  std::vector<double> d_;
  std::vector<double> c_;
};

// z_1..z_{2m-1} of the half-line chain factorization (all >= 0 when the
// measure lives on [0, infinity)), optionally continued to the canonical
// moments p_k in [0,1] for measures on the unit interval.
struct ChainDecomposition {
  std::vector<double> z;
  std::vector<double> p;  // empty unless canonical_moments produced it
};

// Lanczos on diag(atoms) with starting vector (sqrt(w_i)), full
// reorthogonalization (twice) per step.  depth must not exceed the number of
// atoms; an off-diagonal collapsing to zero before reaching depth means the
// iteration lost orthogonality irrecoverably.
RecursionCoefficients lanczos_coefficients(const DiscreteMeasure& m, std::size_t depth);

// z_1 = d_1, z_{2k} = c_k^2 / z_{2k-1}, z_{2k+1} = d_{k+1} - z_{2k}.
// Values in [-1e-12, 0) are clamped to 0; anything more negative, or a
// division by a vanished z, raises support_error (measure not on [0,inf)).
ChainDecomposition z_decomposition(const RecursionCoefficients& rc);

// Continues the z-chain with p_1 = z_1, p_k = z_k / (1 - p_{k-1}); each p_k
// must land in [0,1] (1e-12 clamping), else support_error (not on [0,1]).
ChainDecomposition canonical_moments(const RecursionCoefficients& rc);

TridiagonalMatrix matrix_from_coefficients(const RecursionCoefficients& rc);

// {"d": [...], "c": [...]} plus "z"/"p" when a chain is supplied.
std::string coefficients_to_json(const RecursionCoefficients& rc,
                                 const ChainDecomposition* chain = nullptr);

}  // namespace rmt
