#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace rmt {

// Symmetric tridiagonal matrix with nonnegative off-diagonal.  diag has n
// entries, offdiag n-1; both finite.
class TridiagonalMatrix {
 public:
  TridiagonalMatrix(std::vector<double> diag, std::vector<double> offdiag);

  std::size_t size() const { return diag_.size(); }
  const std::vector<double>& diag() const { return diag_; }
  const std::vector<double>& offdiag() const { return offdiag_; }

  // Max absolute row sum; used to scale tolerances.
  double inf_norm() const;

  // {"diag": [...], "offdiag": [...]}
  std::string to_json() const;
  static TridiagonalMatrix from_json(const std::string& text);

 private:
  std::vector<double> diag_;
  std::vector<double> offdiag_;
};

}  // namespace rmt
