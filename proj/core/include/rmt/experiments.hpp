#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rmt/ensembles.hpp"

namespace rmt {

enum class ExperimentKind { Sample, Limit, Rate, Concentration, Findim, Empspectral };
enum class OutputFormat { Csv, Json };

std::string experiment_name(ExperimentKind kind);
ExperimentKind experiment_from_name(const std::string& name);

// Parameter sequence a_n given as ascending polynomial coefficients in n,
// e.g. {0, 2} is a_n = 2n and {5} is the constant 5.
class ParameterSequence {
 public:
  ParameterSequence() = default;
  explicit ParameterSequence(std::vector<double> coeffs);
  bool empty() const { return coeffs_.empty(); }
  const std::vector<double>& coeffs() const { return coeffs_; }
  double operator()(std::size_t n) const;

 private:
  std::vector<double> coeffs_;
};

struct ConcentrationCell {
  double a;
  double b;
  double eps;
};

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::Limit;
  EnsembleKind ensemble = EnsembleKind::Jacobi;
  std::optional<ScalingRegime::Kind> regime;
  double beta = 2.0;
  ParameterSequence a_seq;
  ParameterSequence b_seq;
  double sigma = 1.0;
  double tau = 0.5;
  std::vector<std::size_t> n_grid;
  std::size_t replicas = 1;
  std::uint64_t master_seed = 0;
  std::string output_path;
  OutputFormat output_format = OutputFormat::Csv;
  std::size_t depth = 10;              // rate report Lanczos depth
  std::string findim_part = "ii";      // "i" (vs Gaussian) or "ii" (vs Laguerre)
  std::size_t findim_n = 3;            // fixed small dimension, <= 5
  double findim_a = 5.0;               // fixed shape for part ii
  std::size_t draws = 10000;           // per-side sample count for findim
  std::vector<ConcentrationCell> cells;
  bool include_timings = false;        // adds a wall_ms column; breaks byte-identical reruns

  static ExperimentConfig from_json_text(const std::string& text);
  static ExperimentConfig from_json_file(const std::string& path);
};

// One output table: fixed column schema, data rows first, then per-group
// summary rows marked by the `summary` column.  Cells are null / integer /
// real / text.
struct ExperimentResult {
  using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::string json_override;  // preformatted JSON (sample experiment), if nonempty

  void write_csv(std::ostream& out) const;  // RFC-4180, LF line ends
  void write_json(std::ostream& out) const;
};

// Advisory checks of the limit-theorem hypotheses at the largest n; returned
// rather than printed so callers decide where they go.
std::vector<std::string> hypothesis_warnings(const ExperimentConfig& config);

ExperimentResult run_sample_experiment(const ExperimentConfig& config);
ExperimentResult run_limit_experiment(const ExperimentConfig& config);
ExperimentResult run_rate_report(const ExperimentConfig& config);
ExperimentResult run_concentration_experiment(const ExperimentConfig& config);
ExperimentResult run_findim_experiment(const ExperimentConfig& config);
ExperimentResult run_empspectral_experiment(const ExperimentConfig& config);
ExperimentResult run_experiment(const ExperimentConfig& config);

// Writes to config.output_path in config.output_format; io_error on failure.
void write_result_file(const ExperimentResult& result, const ExperimentConfig& config);

// Exact two-sample Kolmogorov-Smirnov statistic.
double two_sample_ks(std::vector<double> xs, std::vector<double> ys);

}  // namespace rmt
