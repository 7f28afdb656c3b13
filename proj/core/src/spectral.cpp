#include "rmt/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "rmt/distributions.hpp"
#include "rmt/errors.hpp"
#include "rmt/numeric.hpp"

namespace rmt {

SpectralDecomposition decompose(const TridiagonalMatrix& t) {
  const std::size_t n = t.size();
  std::vector<double> d = t.diag();
  std::vector<double> e = t.offdiag();
  e.push_back(0.0);
  std::vector<double> z(n, 0.0);
  z[0] = 1.0;

  const double eps = std::numeric_limits<double>::epsilon();
  long budget = 30 * static_cast<long>(n);

  for (std::size_t l = 0; l < n; ++l) {
    for (;;) {
      // Look for a negligible off-diagonal splitting off the block at l.
      std::size_t m = l;
      while (m + 1 < n) {
        double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
        ++m;
      }
      if (m == l) break;
      if (--budget < 0) {
        throw numerical_error("QL iteration exceeded 30n shifts at eigenvalue " +
                              std::to_string(l) + " of n=" + std::to_string(n) +
                              " (|T|_inf=" + std::to_string(t.inf_norm()) + ")");
      }

      // Wilkinson-style implicit shift from the 2x2 at l.
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;

      bool underflow = false;
      for (std::size_t i1 = m; i1 > l; --i1) {
        std::size_t i = i1 - 1;
        double f = s * e[i];
        double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          // Rotation chain annihilated early; recover and resume.
          d[i + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;

        // Apply the rotation to the accumulated first row.
        f = z[i + 1];
        z[i + 1] = s * z[i] + c * f;
        z[i] = c * z[i] - s * f;
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });

  const double merge_tol = 1e-12 * (1.0 + t.inf_norm());
  SpectralDecomposition out;
  out.eigenvalues.reserve(n);
  out.first_components_sq.reserve(n);
  for (std::size_t idx : order) {
    double lambda = d[idx];
    double w = z[idx] * z[idx];
    if (!out.eigenvalues.empty() && lambda - out.eigenvalues.back() <= merge_tol) {
      double wa = out.first_components_sq.back();
      double total = wa + w;
      out.eigenvalues.back() = total > 0.0
                                   ? (wa * out.eigenvalues.back() + w * lambda) / total
                                   : 0.5 * (out.eigenvalues.back() + lambda);
      out.first_components_sq.back() = total;
    } else {
      out.eigenvalues.push_back(lambda);
      out.first_components_sq.push_back(w);
    }
  }

  double total = kahan_sum(out.first_components_sq);
  for (double& w : out.first_components_sq) w /= total;
  return out;
}

DiscreteMeasure spectral_measure(const TridiagonalMatrix& t) {
  SpectralDecomposition dec = decompose(t);
  return DiscreteMeasure(std::move(dec.eigenvalues), std::move(dec.first_components_sq));
}

Weighting Weighting::dirichlet(double beta_prime) {
  if (!(beta_prime > 0.0) || !std::isfinite(beta_prime)) {
    throw parameter_error("dirichlet weighting needs beta/2 > 0");
  }
  return Weighting(true, beta_prime);
}

DiscreteMeasure empirical_measure(const TridiagonalMatrix& t, const Weighting& weighting,
                                  RandomStream* rng) {
  SpectralDecomposition dec = decompose(t);
  const std::size_t n = dec.eigenvalues.size();
  std::vector<double> weights;
  if (weighting.is_dirichlet()) {
    if (rng == nullptr) throw parameter_error("dirichlet weighting needs an RNG stream");
    weights = sample_dirichlet(DirichletParams(n, weighting.beta_prime()), *rng);
  } else {
    weights.assign(n, 1.0 / static_cast<double>(n));
  }
  return DiscreteMeasure(std::move(dec.eigenvalues), std::move(weights));
}

double moment_e1(const TridiagonalMatrix& t, unsigned k) {
  const std::size_t n = t.size();
  std::vector<double> v(n, 0.0), w(n, 0.0);
  v[0] = 1.0;
  for (unsigned step = 0; step < k; ++step) {
    for (std::size_t i = 0; i < n; ++i) {
      double acc = t.diag()[i] * v[i];
      if (i > 0) acc += t.offdiag()[i - 1] * v[i - 1];
      if (i + 1 < n) acc += t.offdiag()[i] * v[i + 1];
      w[i] = acc;
    }
    std::swap(v, w);
  }
  return v[0];
}

}  // namespace rmt
