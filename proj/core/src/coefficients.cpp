#include "rmt/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <json.hpp>

#include "rmt/errors.hpp"

namespace rmt {

namespace {

constexpr double kBoundaryTol = 1e-12;
constexpr double kDivisionFloor = 1e-300;

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

RecursionCoefficients::RecursionCoefficients(std::vector<double> d, std::vector<double> c)
    : d_(std::move(d)), c_(std::move(c)) {
  if (d_.empty()) throw parameter_error("recursion coefficients need depth >= 1");
  if (c_.size() + 1 != d_.size()) {
    throw parameter_error("recursion coefficients need exactly depth-1 off-diagonal entries");
  }
  for (double v : d_) {
    if (!std::isfinite(v)) throw parameter_error("recursion diagonal entry not finite");
  }
  for (double v : c_) {
    if (!std::isfinite(v) || !(v > 0.0)) {
      throw parameter_error("recursion off-diagonal entries must be finite and > 0");
    }
  }
}

RecursionCoefficients lanczos_coefficients(const DiscreteMeasure& m, std::size_t depth) {
  const std::size_t n = m.size();
  if (depth == 0) throw parameter_error("lanczos depth must be >= 1");
  if (depth > n) {
    throw parameter_error("lanczos depth " + std::to_string(depth) + " exceeds atom count " +
                          std::to_string(n));
  }

  const std::vector<double>& x = m.atoms();
  double scale = 1.0;
  for (double xi : x) scale = std::max(scale, std::abs(xi));
  const double breakdown_tol =
      1e3 * static_cast<double>(n) * std::numeric_limits<double>::epsilon() * scale;

  std::vector<std::vector<double>> q;
  q.reserve(depth);
  std::vector<double> q1(n);
  for (std::size_t i = 0; i < n; ++i) q1[i] = std::sqrt(m.weights()[i]);
  double norm = std::sqrt(dot(q1, q1));
  for (double& v : q1) v /= norm;
  q.push_back(std::move(q1));

  std::vector<double> d, c;
  d.reserve(depth);
  c.reserve(depth - 1);

  std::vector<double> u(n);
  for (std::size_t j = 0; j < depth; ++j) {
    const std::vector<double>& qj = q[j];
    for (std::size_t i = 0; i < n; ++i) u[i] = x[i] * qj[i];
    double dj = dot(qj, u);
    d.push_back(dj);
    if (j + 1 == depth) break;

    for (std::size_t i = 0; i < n; ++i) u[i] -= dj * qj[i];
    if (j > 0) {
      for (std::size_t i = 0; i < n; ++i) u[i] -= c[j - 1] * q[j - 1][i];
    }
    // Full reorthogonalization, applied twice ("twice is enough").
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& qi : q) {
        double proj = dot(qi, u);
        for (std::size_t i = 0; i < n; ++i) u[i] -= proj * qi[i];
      }
    }

    double cj = std::sqrt(dot(u, u));
    if (!(cj > breakdown_tol)) {
      throw numerical_error("lanczos breakdown at step " + std::to_string(j + 1) +
                            " of requested depth " + std::to_string(depth) +
                            " (residual " + std::to_string(cj) + ")");
    }
    c.push_back(cj);
    std::vector<double> qn(n);
    for (std::size_t i = 0; i < n; ++i) qn[i] = u[i] / cj;
    q.push_back(std::move(qn));
  }

  return RecursionCoefficients(std::move(d), std::move(c));
}

ChainDecomposition z_decomposition(const RecursionCoefficients& rc) {
  const std::size_t m = rc.depth();
  std::vector<double> z;
  z.reserve(2 * m - 1);

  auto push_checked = [&z](double v, std::size_t index1) {
    if (v < -kBoundaryTol) {
      throw support_error("measure not supported on [0,inf): z_" + std::to_string(index1) +
                          " = " + std::to_string(v));
    }
    z.push_back(v < 0.0 ? 0.0 : v);
  };

  push_checked(rc.d()[0], 1);
  for (std::size_t k = 1; k < m; ++k) {
    double prev = z.back();
    if (prev <= kDivisionFloor) {
      throw support_error("measure not supported on [0,inf): z_" + std::to_string(2 * k - 1) +
                          " vanished but the chain continues");
    }
    push_checked(rc.c()[k - 1] * rc.c()[k - 1] / prev, 2 * k);
    push_checked(rc.d()[k] - z.back(), 2 * k + 1);
  }

  ChainDecomposition out;
  out.z = std::move(z);
  return out;
}

ChainDecomposition canonical_moments(const RecursionCoefficients& rc) {
  ChainDecomposition chain = z_decomposition(rc);
  std::vector<double> p;
  p.reserve(chain.z.size());

  for (std::size_t k = 0; k < chain.z.size(); ++k) {
    double value;
    if (k == 0) {
      value = chain.z[0];
    } else {
      double denom = 1.0 - p.back();
      if (denom <= kDivisionFloor) {
        throw support_error("measure not supported on [0,1]: 1 - p_" + std::to_string(k) +
                            " vanished but the chain continues");
      }
      value = chain.z[k] / denom;
    }
    if (value < -kBoundaryTol || value > 1.0 + kBoundaryTol) {
      throw support_error("measure not supported on [0,1]: p_" + std::to_string(k + 1) + " = " +
                          std::to_string(value));
    }
    p.push_back(std::clamp(value, 0.0, 1.0));
  }

  chain.p = std::move(p);
  return chain;
}

TridiagonalMatrix matrix_from_coefficients(const RecursionCoefficients& rc) {
  return TridiagonalMatrix(rc.d(), rc.c());
}

std::string coefficients_to_json(const RecursionCoefficients& rc, const ChainDecomposition* chain) {
  nlohmann::ordered_json j;
  j["d"] = rc.d();
  j["c"] = rc.c();
  if (chain != nullptr) {
    j["z"] = chain->z;
    if (!chain->p.empty()) j["p"] = chain->p;
  }
  return j.dump();
}

}  // namespace rmt
