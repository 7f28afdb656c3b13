#pragma once

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace rmt {

// Finite probability measure: strictly ascending atoms, nonnegative weights
// summing to 1 within 1e-12.  Immutable after construction.
class DiscreteMeasure {
 public:
  DiscreteMeasure(std::vector<double> atoms, std::vector<double> weights);

  // Sorts (atom, weight) pairs, merges atoms closer than merge_tol (weights
  // added, position at the weight-weighted mean), then validates.
  static DiscreteMeasure from_unsorted(std::vector<double> atoms, std::vector<double> weights,
                                       double merge_tol = 0.0);

  std::size_t size() const { return atoms_.size(); }
  const std::vector<double>& atoms() const { return atoms_; }
  const std::vector<double>& weights() const { return weights_; }
  // cumulative()[i] = sum of weights[0..i]
  const std::vector<double>& cumulative() const { return cumulative_; }

  std::string to_json() const;
  static DiscreteMeasure from_json(const std::string& text);
  void write_csv(std::ostream& out) const;  // header "atom,weight"

 private:
  std::vector<double> atoms_;
  std::vector<double> weights_;
  std::vector<double> cumulative_;
};

// Semicircle on (-2,2) or Marchenko-Pastur(tau), tau in (0,1], on
// ((sqrt(tau)-1)^2, (sqrt(tau)+1)^2).  The MP CDF has no convenient closed
// form; it is evaluated by adaptive Simpson quadrature over a lazily built,
// shared panel table (absolute accuracy ~1e-10 documented below).
class ReferenceLaw {
 public:
  enum class Kind { Semicircle, MarchenkoPastur };

  static ReferenceLaw semicircle();
  static ReferenceLaw marchenko_pastur(double tau);

  Kind kind() const { return kind_; }
  double tau() const;
  double support_min() const { return lo_; }
  double support_max() const { return hi_; }

  double density(double x) const;
  double cdf(double x) const;

 private:
  struct MpTable;
  ReferenceLaw(Kind kind, double tau);
  Kind kind_;
  double tau_;
  double lo_;
  double hi_;
  std::shared_ptr<const MpTable> table_;
};

double cdf(const DiscreteMeasure& m, double x);
double cdf(const ReferenceLaw& law, double x);
double reference_density(const ReferenceLaw& law, double x);

// Exact sup-distance between CDFs.  Discrete-discrete walks the merged atom
// set; discrete-continuous compares left and right limits at every atom.
// The continuous-continuous overload scans a dense grid (only used for
// sanity checks; the scan resolution is 1e5 points over the joint support).
double kolmogorov_distance(const DiscreteMeasure& m1, const DiscreteMeasure& m2);
double kolmogorov_distance(const DiscreteMeasure& m, const ReferenceLaw& law);
double kolmogorov_distance(const ReferenceLaw& law, const DiscreteMeasure& m);
double kolmogorov_distance(const ReferenceLaw& l1, const ReferenceLaw& l2);

}  // namespace rmt
