#include "rmt/tridiagonal.hpp"

#include <cmath>
#include <string>

#include <json.hpp>

#include "rmt/errors.hpp"

namespace rmt {

TridiagonalMatrix::TridiagonalMatrix(std::vector<double> diag, std::vector<double> offdiag)
    : diag_(std::move(diag)), offdiag_(std::move(offdiag)) {
  if (diag_.empty()) throw parameter_error("tridiagonal matrix needs at least one row");
  if (offdiag_.size() + 1 != diag_.size()) {
    throw parameter_error("tridiagonal matrix needs exactly n-1 off-diagonal entries, got " +
                          std::to_string(offdiag_.size()) + " for n=" +
                          std::to_string(diag_.size()));
  }
  for (double d : diag_) {
    if (!std::isfinite(d)) throw parameter_error("tridiagonal diagonal entry not finite");
  }
  for (double c : offdiag_) {
    if (!std::isfinite(c) || c < 0.0) {
      throw parameter_error("tridiagonal off-diagonal entries must be finite and >= 0");
    }
  }
}

double TridiagonalMatrix::inf_norm() const {
  const std::size_t n = size();
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = std::abs(diag_[i]);
    if (i > 0) row += offdiag_[i - 1];
    if (i + 1 < n) row += offdiag_[i];
    best = std::max(best, row);
  }
  return best;
}

std::string TridiagonalMatrix::to_json() const {
  nlohmann::ordered_json j;
  j["diag"] = diag_;
  j["offdiag"] = offdiag_;
  return j.dump();
}

TridiagonalMatrix TridiagonalMatrix::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw parameter_error(std::string("matrix JSON parse failure: ") + e.what());
  }
  if (!j.contains("diag") || !j.contains("offdiag")) {
    throw parameter_error("matrix JSON must contain \"diag\" and \"offdiag\"");
  }
  return TridiagonalMatrix(j["diag"].get<std::vector<double>>(),
                           j["offdiag"].get<std::vector<double>>());
}

}  // namespace rmt
