#include "rmt/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>

#include <json.hpp>

#include "rmt/errors.hpp"
#include "rmt/numeric.hpp"
#include "rmt/quadrature.hpp"

namespace rmt {

namespace {

constexpr double kSumTol = 1e-12;

std::vector<double> running_cumulative(const std::vector<double>& w) {
  std::vector<double> cum(w.size());
  double sum = 0.0, comp = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    double y = w[i] - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    cum[i] = sum;
  }
  return cum;
}

}  // namespace

DiscreteMeasure::DiscreteMeasure(std::vector<double> atoms, std::vector<double> weights)
    : atoms_(std::move(atoms)), weights_(std::move(weights)) {
  if (atoms_.empty()) throw parameter_error("measure needs at least one atom");
  if (atoms_.size() != weights_.size()) {
    throw parameter_error("measure atom/weight lengths differ");
  }
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (!std::isfinite(atoms_[i])) throw parameter_error("measure atom not finite");
    if (!std::isfinite(weights_[i]) || weights_[i] < 0.0) {
      throw parameter_error("measure weights must be finite and >= 0");
    }
    if (i > 0 && !(atoms_[i] > atoms_[i - 1])) {
      throw parameter_error("measure atoms must be strictly ascending");
    }
  }
  cumulative_ = running_cumulative(weights_);
  if (std::abs(cumulative_.back() - 1.0) > kSumTol) {
    throw parameter_error("measure weights sum to " + std::to_string(cumulative_.back()) +
                          ", expected 1 within 1e-12");
  }
}

DiscreteMeasure DiscreteMeasure::from_unsorted(std::vector<double> atoms,
                                               std::vector<double> weights, double merge_tol) {
  if (atoms.size() != weights.size() || atoms.empty()) {
    throw parameter_error("measure atom/weight lengths differ or are empty");
  }
  std::vector<std::size_t> order(atoms.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return atoms[a] < atoms[b]; });

  std::vector<double> xs, ws;
  xs.reserve(atoms.size());
  ws.reserve(atoms.size());
  for (std::size_t idx : order) {
    double x = atoms[idx], w = weights[idx];
    if (!xs.empty() && x - xs.back() <= merge_tol) {
      double total = ws.back() + w;
      xs.back() = total > 0.0 ? (ws.back() * xs.back() + w * x) / total : 0.5 * (xs.back() + x);
      ws.back() = total;
    } else {
      xs.push_back(x);
      ws.push_back(w);
    }
  }
  return DiscreteMeasure(std::move(xs), std::move(ws));
}

std::string DiscreteMeasure::to_json() const {
  nlohmann::ordered_json j;
  j["atoms"] = atoms_;
  j["weights"] = weights_;
  return j.dump();
}

DiscreteMeasure DiscreteMeasure::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw parameter_error(std::string("measure JSON parse failure: ") + e.what());
  }
  if (!j.contains("atoms") || !j.contains("weights")) {
    throw parameter_error("measure JSON must contain \"atoms\" and \"weights\"");
  }
  return DiscreteMeasure(j["atoms"].get<std::vector<double>>(),
                         j["weights"].get<std::vector<double>>());
}

void DiscreteMeasure::write_csv(std::ostream& out) const {
  out << "atom,weight\n";
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    out << format_double(atoms_[i]) << ',' << format_double(weights_[i]) << '\n';
  }
}

// ---------------------------------------------------------------------------

// Marchenko-Pastur CDF table.  In the arcsine variable x = c + r*sin(theta)
// (c = 1+tau, r = 2*sqrt(tau)) the density integrand becomes
//   (2/pi) * cos^2(theta) / (delta + 2*sqrt(tau)*(1 + sin(theta))),
// delta = (1-sqrt(tau))^2, which is smooth and bounded; at tau = 1 the 0/0 at
// the lower edge reduces algebraically to (1 - sin(theta))/pi.  The table
// stores prefix integrals over 512 uniform theta-panels, each integrated
// adaptively to 2e-13, so a CDF query costs one partial-panel integration and
// carries ~1e-10 absolute error.
struct ReferenceLaw::MpTable {
  static constexpr int kPanels = 512;
  double tau;
  double sq;     // sqrt(tau)
  double delta;  // (1-sq)^2
  std::vector<double> prefix;  // prefix[i] = integral over first i panels

  explicit MpTable(double tau_in) : tau(tau_in), sq(std::sqrt(tau_in)) {
    delta = (1.0 - sq) * (1.0 - sq);
    prefix.resize(kPanels + 1);
    prefix[0] = 0.0;
    const double h = std::numbers::pi / kPanels;
    for (int i = 0; i < kPanels; ++i) {
      double a = -0.5 * std::numbers::pi + i * h;
      double b = a + h;
      prefix[i + 1] =
          prefix[i] + adaptive_simpson([this](double t) { return integrand(t); }, a, b, 2e-13);
    }
  }

  double integrand(double theta) const {
    double s = std::sin(theta);
    if (delta == 0.0) return (1.0 - s) / std::numbers::pi;
    double c = std::cos(theta);
    return (2.0 / std::numbers::pi) * c * c / (delta + 2.0 * sq * (1.0 + s));
  }

  double cdf_from_theta(double theta) const {
    const double h = std::numbers::pi / kPanels;
    double offset = (theta + 0.5 * std::numbers::pi) / h;
    int i = std::clamp(static_cast<int>(offset), 0, kPanels - 1);
    double a = -0.5 * std::numbers::pi + i * h;
    return prefix[i] +
           adaptive_simpson([this](double t) { return integrand(t); }, a, theta, 1e-13);
  }
};

ReferenceLaw::ReferenceLaw(Kind kind, double tau) : kind_(kind), tau_(tau) {
  if (kind_ == Kind::Semicircle) {
    lo_ = -2.0;
    hi_ = 2.0;
  } else {
    if (!(tau > 0.0) || !(tau <= 1.0)) {
      throw parameter_error("marchenko-pastur tau must lie in (0,1], got " + std::to_string(tau));
    }
    double sq = std::sqrt(tau);
    lo_ = (sq - 1.0) * (sq - 1.0);
    hi_ = (sq + 1.0) * (sq + 1.0);
    table_ = std::make_shared<const MpTable>(tau);
  }
}

ReferenceLaw ReferenceLaw::semicircle() { return ReferenceLaw(Kind::Semicircle, 0.0); }

ReferenceLaw ReferenceLaw::marchenko_pastur(double tau) {
  return ReferenceLaw(Kind::MarchenkoPastur, tau);
}

double ReferenceLaw::tau() const {
  if (kind_ != Kind::MarchenkoPastur) throw parameter_error("semicircle law has no tau");
  return tau_;
}

double ReferenceLaw::density(double x) const {
  if (x <= lo_ || x >= hi_) return 0.0;
  if (kind_ == Kind::Semicircle) {
    return std::sqrt(4.0 - x * x) / (2.0 * std::numbers::pi);
  }
  return std::sqrt((x - lo_) * (hi_ - x)) / (2.0 * std::numbers::pi * tau_ * x);
}

double ReferenceLaw::cdf(double x) const {
  if (x <= lo_) return 0.0;
  if (x >= hi_) return 1.0;
  if (kind_ == Kind::Semicircle) {
    return 0.5 + x * std::sqrt(4.0 - x * x) / (4.0 * std::numbers::pi) +
           std::asin(0.5 * x) / std::numbers::pi;
  }
  double c = 0.5 * (lo_ + hi_), r = 0.5 * (hi_ - lo_);
  double arg = std::clamp((x - c) / r, -1.0, 1.0);
  return std::clamp(table_->cdf_from_theta(std::asin(arg)), 0.0, 1.0);
}

double cdf(const DiscreteMeasure& m, double x) {
  auto it = std::upper_bound(m.atoms().begin(), m.atoms().end(), x);
  std::size_t idx = static_cast<std::size_t>(it - m.atoms().begin());
  return idx == 0 ? 0.0 : m.cumulative()[idx - 1];
}

double cdf(const ReferenceLaw& law, double x) { return law.cdf(x); }

double reference_density(const ReferenceLaw& law, double x) { return law.density(x); }

double kolmogorov_distance(const DiscreteMeasure& m1, const DiscreteMeasure& m2) {
  const auto& a1 = m1.atoms();
  const auto& a2 = m2.atoms();
  std::size_t i = 0, j = 0;
  double best = 0.0;
  while (i < a1.size() || j < a2.size()) {
    double x1 = i < a1.size() ? a1[i] : std::numeric_limits<double>::infinity();
    double x2 = j < a2.size() ? a2[j] : std::numeric_limits<double>::infinity();
    double x = std::min(x1, x2);
    if (x1 == x) ++i;
    if (x2 == x) ++j;
    double f1 = i == 0 ? 0.0 : m1.cumulative()[i - 1];
    double f2 = j == 0 ? 0.0 : m2.cumulative()[j - 1];
    best = std::max(best, std::abs(f1 - f2));
  }
  return best;
}

double kolmogorov_distance(const DiscreteMeasure& m, const ReferenceLaw& law) {
  double best = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    double f = law.cdf(m.atoms()[i]);
    double before = i == 0 ? 0.0 : m.cumulative()[i - 1];
    double after = m.cumulative()[i];
    best = std::max({best, std::abs(f - before), std::abs(f - after)});
  }
  return best;
}

double kolmogorov_distance(const ReferenceLaw& law, const DiscreteMeasure& m) {
  return kolmogorov_distance(m, law);
}

double kolmogorov_distance(const ReferenceLaw& l1, const ReferenceLaw& l2) {
  double lo = std::min(l1.support_min(), l2.support_min());
  double hi = std::max(l1.support_max(), l2.support_max());
  const int kGrid = 100000;
  double best = 0.0;
  for (int i = 0; i <= kGrid; ++i) {
    double x = lo + (hi - lo) * i / kGrid;
    best = std::max(best, std::abs(l1.cdf(x) - l2.cdf(x)));
  }
  return best;
}

}  // namespace rmt
