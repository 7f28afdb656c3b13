#include "rmt/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "rmt/coefficients.hpp"
#include "rmt/distributions.hpp"
#include "rmt/errors.hpp"
#include "rmt/measures.hpp"
#include "rmt/numeric.hpp"
#include "rmt/parallel.hpp"
#include "rmt/rates.hpp"
#include "rmt/spectral.hpp"

namespace rmt {

namespace {

using Cell = ExperimentResult::Cell;

Cell null_cell() { return std::monostate{}; }

double trace_of(const TridiagonalMatrix& t) {
  double s = 0.0;
  for (double d : t.diag()) s += d;
  return s;
}

std::string regime_name(ScalingRegime::Kind kind) {
  switch (kind) {
    case ScalingRegime::Kind::LLN1: return "LLN1";
    case ScalingRegime::Kind::LLN2: return "LLN2";
    case ScalingRegime::Kind::LDP1: return "LDP1";
    case ScalingRegime::Kind::LDP2: return "LDP2";
  }
  throw parameter_error("unknown regime kind");
}

ScalingRegime::Kind regime_from_name(std::string name) {
  std::transform(name.begin(), name.end(), name.begin(), ::toupper);
  if (name == "LLN1") return ScalingRegime::Kind::LLN1;
  if (name == "LLN2") return ScalingRegime::Kind::LLN2;
  if (name == "LDP1") return ScalingRegime::Kind::LDP1;
  if (name == "LDP2") return ScalingRegime::Kind::LDP2;
  throw parameter_error("unknown regime \"" + name + "\" (want LLN1, LLN2, LDP1 or LDP2)");
}

std::string ensemble_name(EnsembleKind kind) {
  switch (kind) {
    case EnsembleKind::Jacobi: return "jacobi";
    case EnsembleKind::Gaussian: return "gaussian";
    case EnsembleKind::Laguerre: return "laguerre";
  }
  throw parameter_error("unknown ensemble kind");
}

EnsembleKind ensemble_from_name(std::string name) {
  std::transform(name.begin(), name.end(), name.begin(), ::tolower);
  if (name == "jacobi") return EnsembleKind::Jacobi;
  if (name == "gaussian") return EnsembleKind::Gaussian;
  if (name == "laguerre") return EnsembleKind::Laguerre;
  throw parameter_error("unknown ensemble \"" + name + "\"");
}

EnsembleSpec make_spec(const ExperimentConfig& config, std::size_t n) {
  switch (config.ensemble) {
    case EnsembleKind::Jacobi:
      return EnsembleSpec::jacobi(config.beta, n, config.a_seq(n), config.b_seq(n));
    case EnsembleKind::Gaussian:
      return EnsembleSpec::gaussian(config.beta, n);
    case EnsembleKind::Laguerre:
      return EnsembleSpec::laguerre(config.beta, n, config.a_seq(n));
  }
  throw parameter_error("unknown ensemble kind");
}

ScalingRegime make_regime(const ExperimentConfig& config, std::size_t n, double a, double b) {
  switch (*config.regime) {
    case ScalingRegime::Kind::LLN1:
      return ScalingRegime::lln1(config.tau, config.beta, n, a, b);
    case ScalingRegime::Kind::LLN2:
      return ScalingRegime::lln2(config.sigma, config.beta, n, a, b);
    case ScalingRegime::Kind::LDP1:
      return ScalingRegime::ldp1(config.tau, config.beta, n, a, b);
    case ScalingRegime::Kind::LDP2:
      return ScalingRegime::ldp2(config.beta, n, a, b);
  }
  throw parameter_error("unknown regime kind");
}

void require_n_grid(const ExperimentConfig& config) {
  if (config.n_grid.empty()) throw parameter_error("n_grid must be nonempty");
  for (std::size_t i = 0; i < config.n_grid.size(); ++i) {
    if (config.n_grid[i] == 0) throw parameter_error("n_grid entries must be >= 1");
    if (i > 0 && config.n_grid[i] <= config.n_grid[i - 1]) {
      throw parameter_error("n_grid must be strictly ascending");
    }
  }
}

// Appends median/mean/q25/q75 summary rows; `fill` writes the group-constant
// prefix cells, value_col receives the statistic, stat_col its name.
void append_summaries(ExperimentResult& result, const std::vector<double>& values,
                      const std::function<std::vector<Cell>()>& row_template,
                      std::size_t value_col, std::size_t summary_col, std::size_t stat_col) {
  if (values.empty()) return;
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  double mean = 0.0;
  for (double v : sorted) mean += v;
  mean /= static_cast<double>(sorted.size());

  const std::pair<const char*, double> stats[] = {
      {"median", quantile_sorted(sorted, 0.5)},
      {"mean", mean},
      {"q25", quantile_sorted(sorted, 0.25)},
      {"q75", quantile_sorted(sorted, 0.75)},
  };
  for (const auto& [name, value] : stats) {
    std::vector<Cell> row = row_template();
    row[value_col] = value;
    row[summary_col] = std::int64_t{1};
    row[stat_col] = std::string(name);
    result.rows.push_back(std::move(row));
  }
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += "\"\"";
    else out += ch;
  }
  out += '"';
  return out;
}

std::string cell_to_csv(const Cell& cell) {
  if (std::holds_alternative<std::monostate>(cell)) return "";
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&cell)) return format_double(*d);
  return csv_escape(std::get<std::string>(cell));
}

}  // namespace

std::string experiment_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Sample: return "sample";
    case ExperimentKind::Limit: return "limit";
    case ExperimentKind::Rate: return "rate";
    case ExperimentKind::Concentration: return "concentration";
    case ExperimentKind::Findim: return "findim";
    case ExperimentKind::Empspectral: return "empspectral";
  }
  throw parameter_error("unknown experiment kind");
}

ExperimentKind experiment_from_name(const std::string& name) {
  std::string lower = name;
  std::transform(lower.begin(), lower.end(), lower.begin(), ::tolower);
  if (lower == "sample") return ExperimentKind::Sample;
  if (lower == "limit") return ExperimentKind::Limit;
  if (lower == "rate") return ExperimentKind::Rate;
  if (lower == "concentration") return ExperimentKind::Concentration;
  if (lower == "findim") return ExperimentKind::Findim;
  if (lower == "empspectral") return ExperimentKind::Empspectral;
  throw parameter_error("unknown experiment \"" + name + "\"");
}

ParameterSequence::ParameterSequence(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw parameter_error("parameter sequence needs at least one coefficient");
  for (double c : coeffs_) {
    if (!std::isfinite(c)) throw parameter_error("parameter sequence coefficient not finite");
  }
}

double ParameterSequence::operator()(std::size_t n) const {
  if (coeffs_.empty()) throw parameter_error("parameter sequence is unset");
  double x = static_cast<double>(n);
  double acc = 0.0;
  for (std::size_t i = coeffs_.size(); i > 0; --i) acc = acc * x + coeffs_[i - 1];
  return acc;
}

// --------------------------------------------------------------------------
// Config parsing

namespace {

ParameterSequence sequence_from_json(const nlohmann::json& v, const char* key) {
  if (v.is_number()) return ParameterSequence({v.get<double>()});
  if (v.is_array()) return ParameterSequence(v.get<std::vector<double>>());
  throw parameter_error(std::string(key) + " must be a number or an array of coefficients");
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw parameter_error(std::string("config parse failure: ") + e.what());
  }
  if (!j.is_object()) throw parameter_error("config must be a JSON object");

  static const std::set<std::string> known = {
      "experiment", "ensemble",  "regime",        "beta",  "a",     "b",
      "sigma",      "tau",       "n_grid",        "n",     "replicas", "master_seed",
      "output_path", "output_format", "depth",    "part",  "draws", "cells",
      "timings",
  };
  for (const auto& item : j.items()) {
    if (known.find(item.key()) == known.end()) {
      throw parameter_error("unknown config key \"" + item.key() + "\"");
    }
  }

  ExperimentConfig config;
  try {
    if (j.contains("experiment")) config.experiment = experiment_from_name(j["experiment"]);
    if (j.contains("ensemble")) config.ensemble = ensemble_from_name(j["ensemble"]);
    if (j.contains("regime")) config.regime = regime_from_name(j["regime"]);
    if (j.contains("beta")) config.beta = j["beta"].get<double>();
    if (j.contains("a")) config.a_seq = sequence_from_json(j["a"], "a");
    if (j.contains("b")) config.b_seq = sequence_from_json(j["b"], "b");
    if (j.contains("sigma")) config.sigma = j["sigma"].get<double>();
    if (j.contains("tau")) config.tau = j["tau"].get<double>();
    if (j.contains("n_grid")) config.n_grid = j["n_grid"].get<std::vector<std::size_t>>();
    if (j.contains("n")) config.findim_n = j["n"].get<std::size_t>();
    if (j.contains("replicas")) config.replicas = j["replicas"].get<std::size_t>();
    if (j.contains("master_seed")) config.master_seed = j["master_seed"].get<std::uint64_t>();
    if (j.contains("output_path")) config.output_path = j["output_path"].get<std::string>();
    if (j.contains("output_format")) {
      std::string f = j["output_format"].get<std::string>();
      std::transform(f.begin(), f.end(), f.begin(), ::tolower);
      if (f == "csv") config.output_format = OutputFormat::Csv;
      else if (f == "json") config.output_format = OutputFormat::Json;
      else throw parameter_error("output_format must be csv or json");
    }
    if (j.contains("depth")) config.depth = j["depth"].get<std::size_t>();
    if (j.contains("part")) {
      config.findim_part = j["part"].get<std::string>();
      if (config.findim_part != "i" && config.findim_part != "ii") {
        throw parameter_error("findim part must be \"i\" or \"ii\"");
      }
    }
    if (j.contains("draws")) config.draws = j["draws"].get<std::size_t>();
    if (j.contains("cells")) {
      for (const auto& cell : j["cells"]) {
        if (!cell.is_array() || cell.size() != 3) {
          throw parameter_error("each concentration cell must be [a, b, eps]");
        }
        config.cells.push_back({cell[0].get<double>(), cell[1].get<double>(),
                                cell[2].get<double>()});
      }
    }
    if (j.contains("timings")) config.include_timings = j["timings"].get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw parameter_error(std::string("config field has wrong type: ") + e.what());
  }

  if (j.contains("a") && config.experiment == ExperimentKind::Findim) {
    if (!j["a"].is_number()) throw parameter_error("findim a must be a fixed number");
    config.findim_a = j["a"].get<double>();
  }

  if (!(config.beta > 0.0) || !std::isfinite(config.beta)) {
    throw parameter_error("beta must be a positive finite real");
  }
  if (config.replicas == 0) throw parameter_error("replicas must be >= 1");
  return config;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open config file " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw io_error("failed reading config file " + path);
  return from_json_text(buffer.str());
}

// --------------------------------------------------------------------------
// Output writers

void ExperimentResult::write_csv(std::ostream& out) const {
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (c > 0) out << ',';
    out << csv_escape(columns[c]);
  }
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out << ',';
      out << cell_to_csv(row[c]);
    }
    out << '\n';
  }
}

void ExperimentResult::write_json(std::ostream& out) const {
  if (!json_override.empty()) {
    out << json_override << '\n';
    return;
  }
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    nlohmann::ordered_json rec;
    for (std::size_t c = 0; c < row.size(); ++c) {
      const Cell& cell = row[c];
      if (std::holds_alternative<std::monostate>(cell)) rec[columns[c]] = nullptr;
      else if (const auto* i = std::get_if<std::int64_t>(&cell)) rec[columns[c]] = *i;
      else if (const auto* d = std::get_if<double>(&cell)) rec[columns[c]] = *d;
      else rec[columns[c]] = std::get<std::string>(cell);
    }
    arr.push_back(std::move(rec));
  }
  out << arr.dump() << '\n';
}

void write_result_file(const ExperimentResult& result, const ExperimentConfig& config) {
  if (config.output_path.empty()) throw io_error("no output path configured");
  std::ofstream out(config.output_path, std::ios::binary);
  if (!out) throw io_error("cannot open output file " + config.output_path);
  if (config.output_format == OutputFormat::Csv) result.write_csv(out);
  else result.write_json(out);
  out.flush();
  if (!out) throw io_error("failed writing output file " + config.output_path);
}

// --------------------------------------------------------------------------
// Hypothesis checks

std::vector<std::string> hypothesis_warnings(const ExperimentConfig& config) {
  std::vector<std::string> warnings;
  if (config.experiment != ExperimentKind::Limit && config.experiment != ExperimentKind::Rate) {
    return warnings;
  }
  if (!config.regime || config.n_grid.empty()) return warnings;
  std::size_t n = config.n_grid.back();
  double nn = static_cast<double>(n);
  double a = config.a_seq(n), b = config.b_seq(n);
  double bp = 0.5 * config.beta;

  auto warn = [&warnings](const std::string& msg) { warnings.push_back(msg); };
  switch (*config.regime) {
    case ScalingRegime::Kind::LLN2: {
      double drift = std::sqrt(b / nn) * (config.sigma - a / b);
      if (std::abs(drift) > 0.1) {
        warn("LLN2 hypothesis: sqrt(b_n/n)(sigma - a_n/b_n) = " + format_double(drift) +
             " at n=" + std::to_string(n) + " is not small");
      }
      if (b / nn < 10.0) warn("LLN2 hypothesis: b_n/n should diverge, got " + format_double(b / nn));
      break;
    }
    case ScalingRegime::Kind::LLN1:
    case ScalingRegime::Kind::LDP1: {
      double tau_hat = bp * nn / a;
      if (std::abs(tau_hat - config.tau) > 0.05) {
        warn("tau hypothesis: beta/2*n/a_n = " + format_double(tau_hat) + " at n=" +
             std::to_string(n) + " is far from tau=" + format_double(config.tau));
      }
      if (a / b > 0.1) warn("hypothesis: b_n should dominate a_n, got a_n/b_n = " +
                            format_double(a / b));
      break;
    }
    case ScalingRegime::Kind::LDP2: {
      double drift = (a - b) / std::sqrt(b * nn);
      if (std::abs(drift) > 0.1) {
        warn("LDP2 hypothesis: (a_n-b_n)/sqrt(b_n n) = " + format_double(drift) +
             " at n=" + std::to_string(n) + " is not small");
      }
      if (b / nn < 10.0) warn("LDP2 hypothesis: b_n/n should diverge, got " +
                              format_double(b / nn));
      break;
    }
  }
  return warnings;
}

// --------------------------------------------------------------------------
// Experiments

double two_sample_ks(std::vector<double> xs, std::vector<double> ys) {
  if (xs.empty() || ys.empty()) throw parameter_error("two_sample_ks needs nonempty samples");
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  std::size_t i = 0, j = 0;
  double best = 0.0;
  const double nx = static_cast<double>(xs.size()), ny = static_cast<double>(ys.size());
  while (i < xs.size() || j < ys.size()) {
    double x1 = i < xs.size() ? xs[i] : std::numeric_limits<double>::infinity();
    double x2 = j < ys.size() ? ys[j] : std::numeric_limits<double>::infinity();
    double x = std::min(x1, x2);
    while (i < xs.size() && xs[i] == x) ++i;
    while (j < ys.size() && ys[j] == x) ++j;
    best = std::max(best, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  return best;
}

ExperimentResult run_sample_experiment(const ExperimentConfig& config) {
  require_n_grid(config);
  ExperimentResult result;
  result.columns = {"experiment", "n", "replica", "stream_index", "k", "diag", "offdiag"};

  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (std::size_t gi = 0; gi < config.n_grid.size(); ++gi) {
    std::size_t n = config.n_grid[gi];
    EnsembleSpec spec = make_spec(config, n);
    for (std::size_t r = 0; r < config.replicas; ++r) {
      std::uint64_t stream = static_cast<std::uint64_t>(gi) * config.replicas + r;
      RandomStream rng(config.master_seed, stream);
      TridiagonalMatrix t = sample_tridiagonal(spec, rng);

      for (std::size_t k = 0; k < n; ++k) {
        std::vector<Cell> row(result.columns.size(), null_cell());
        row[0] = experiment_name(config.experiment);
        row[1] = static_cast<std::int64_t>(n);
        row[2] = static_cast<std::int64_t>(r);
        row[3] = static_cast<std::int64_t>(stream);
        row[4] = static_cast<std::int64_t>(k + 1);
        row[5] = t.diag()[k];
        if (k + 1 < n) row[6] = t.offdiag()[k];
        result.rows.push_back(std::move(row));
      }

      nlohmann::ordered_json rec;
      rec["experiment"] = experiment_name(config.experiment);
      rec["n"] = n;
      rec["replica"] = r;
      rec["stream_index"] = stream;
      rec["matrix"] = nlohmann::ordered_json::parse(t.to_json());
      arr.push_back(std::move(rec));
    }
  }
  result.json_override = arr.dump();
  return result;
}

ExperimentResult run_limit_experiment(const ExperimentConfig& config) {
  require_n_grid(config);
  if (!config.regime) throw parameter_error("limit experiment needs a regime (LLN1 or LLN2)");
  if (*config.regime != ScalingRegime::Kind::LLN1 &&
      *config.regime != ScalingRegime::Kind::LLN2) {
    throw parameter_error("limit experiment regime must be LLN1 or LLN2; use the rate "
                          "experiment for LDP regimes");
  }
  if (config.ensemble != EnsembleKind::Jacobi) {
    throw parameter_error("limit experiment samples the jacobi ensemble");
  }

  const ReferenceLaw law = *config.regime == ScalingRegime::Kind::LLN1
                               ? ReferenceLaw::marchenko_pastur(config.tau)
                               : ReferenceLaw::semicircle();

  ExperimentResult result;
  result.columns = {"experiment", "regime", "n", "replica", "stream_index",
                    "d_K",        "summary", "stat"};
  if (config.include_timings) result.columns.push_back("wall_ms");

  const std::string exp_name = experiment_name(config.experiment);
  const std::string reg_name = regime_name(*config.regime);

  for (std::size_t gi = 0; gi < config.n_grid.size(); ++gi) {
    std::size_t n = config.n_grid[gi];
    EnsembleSpec spec = make_spec(config, n);
    ScalingRegime regime = make_regime(config, n, spec.a(), spec.b());

    std::vector<double> dks(config.replicas);
    std::vector<double> walls(config.replicas);
    parallel_for(config.replicas, [&](std::size_t r) {
      auto t0 = std::chrono::steady_clock::now();
      RandomStream rng(config.master_seed,
                       static_cast<std::uint64_t>(gi) * config.replicas + r);
      TridiagonalMatrix t = sample_jacobi_tridiag(spec, rng);
      DiscreteMeasure mu = spectral_measure(rescale_matrix(t, regime));
      dks[r] = kolmogorov_distance(mu, law);
      walls[r] = std::chrono::duration<double, std::milli>(
                     std::chrono::steady_clock::now() - t0).count();
    });

    for (std::size_t r = 0; r < config.replicas; ++r) {
      std::vector<Cell> row(result.columns.size(), null_cell());
      row[0] = exp_name;
      row[1] = reg_name;
      row[2] = static_cast<std::int64_t>(n);
      row[3] = static_cast<std::int64_t>(r);
      row[4] = static_cast<std::int64_t>(gi * config.replicas + r);
      row[5] = dks[r];
      row[6] = std::int64_t{0};
      row[7] = std::string();
      if (config.include_timings) row[8] = walls[r];
      result.rows.push_back(std::move(row));
    }
    append_summaries(result, dks,
                     [&] {
                       std::vector<Cell> row(result.columns.size(), null_cell());
                       row[0] = exp_name;
                       row[1] = reg_name;
                       row[2] = static_cast<std::int64_t>(n);
                       return row;
                     },
                     5, 6, 7);
  }
  return result;
}

ExperimentResult run_rate_report(const ExperimentConfig& config) {
  require_n_grid(config);
  if (!config.regime) throw parameter_error("rate report needs a regime (LDP1 or LDP2)");
  if (*config.regime != ScalingRegime::Kind::LDP1 &&
      *config.regime != ScalingRegime::Kind::LDP2) {
    throw parameter_error("rate report regime must be LDP1 or LDP2");
  }
  if (config.ensemble != EnsembleKind::Jacobi) {
    throw parameter_error("rate report samples the jacobi ensemble");
  }
  if (config.depth == 0) throw parameter_error("rate report depth must be >= 1");

  ExperimentResult result;
  result.columns = {"experiment", "regime", "n",       "replica", "stream_index", "depth",
                    "speed",      "rate",   "support_error", "summary", "stat"};
  if (config.include_timings) result.columns.push_back("wall_ms");

  const std::string exp_name = experiment_name(config.experiment);
  const std::string reg_name = regime_name(*config.regime);
  const bool ldp2 = *config.regime == ScalingRegime::Kind::LDP2;

  for (std::size_t gi = 0; gi < config.n_grid.size(); ++gi) {
    std::size_t n = config.n_grid[gi];
    if (config.depth > n) {
      throw parameter_error("rate depth " + std::to_string(config.depth) +
                            " exceeds n=" + std::to_string(n));
    }
    EnsembleSpec spec = make_spec(config, n);
    ScalingRegime regime = make_regime(config, n, spec.a(), spec.b());
    double speed = ldp2 ? 0.5 * config.beta * static_cast<double>(n) : spec.a();

    std::vector<double> rates(config.replicas);
    std::vector<char> failed(config.replicas, 0);
    std::vector<double> walls(config.replicas);
    parallel_for(config.replicas, [&](std::size_t r) {
      auto t0 = std::chrono::steady_clock::now();
      RandomStream rng(config.master_seed,
                       static_cast<std::uint64_t>(gi) * config.replicas + r);
      TridiagonalMatrix t = sample_jacobi_tridiag(spec, rng);
      DiscreteMeasure mu = spectral_measure(rescale_matrix(t, regime));
      RecursionCoefficients rc = lanczos_coefficients(mu, config.depth);
      try {
        rates[r] = ldp2 ? rate_ig(rc) : rate_il(z_decomposition(rc), config.tau);
      } catch (const support_error&) {
        failed[r] = 1;
        rates[r] = std::numeric_limits<double>::infinity();
      }
      walls[r] = std::chrono::duration<double, std::milli>(
                     std::chrono::steady_clock::now() - t0).count();
    });

    std::vector<double> finite;
    for (std::size_t r = 0; r < config.replicas; ++r) {
      std::vector<Cell> row(result.columns.size(), null_cell());
      row[0] = exp_name;
      row[1] = reg_name;
      row[2] = static_cast<std::int64_t>(n);
      row[3] = static_cast<std::int64_t>(r);
      row[4] = static_cast<std::int64_t>(gi * config.replicas + r);
      row[5] = static_cast<std::int64_t>(config.depth);
      row[6] = speed;
      if (!failed[r]) {
        row[7] = rates[r];
        finite.push_back(rates[r]);
      }
      row[8] = std::int64_t{failed[r]};
      row[9] = std::int64_t{0};
      row[10] = std::string();
      if (config.include_timings) row[11] = walls[r];
      result.rows.push_back(std::move(row));
    }
    append_summaries(result, finite,
                     [&] {
                       std::vector<Cell> row(result.columns.size(), null_cell());
                       row[0] = exp_name;
                       row[1] = reg_name;
                       row[2] = static_cast<std::int64_t>(n);
                       row[5] = static_cast<std::int64_t>(config.depth);
                       row[6] = speed;
                       return row;
                     },
                     7, 9, 10);
  }
  return result;
}

ExperimentResult run_concentration_experiment(const ExperimentConfig& config) {
  if (config.cells.empty()) {
    throw parameter_error("concentration experiment needs a nonempty cells grid");
  }
  for (const auto& cell : config.cells) {
    beta_concentration_bound(cell.a, cell.b, cell.eps);  // validates the cell
  }

  ExperimentResult result;
  result.columns = {"experiment", "a",     "b",       "eps",  "draws", "stream_index",
                    "empirical",  "bound", "holds",   "summary", "stat"};

  std::vector<double> empirical(config.cells.size());
  parallel_for(config.cells.size(), [&](std::size_t ci) {
    const ConcentrationCell& cell = config.cells[ci];
    RandomStream rng(config.master_seed, ci);
    BetaParams params(cell.a, cell.b);
    const double mean = cell.a / (cell.a + cell.b);
    std::size_t exceed = 0;
    for (std::size_t d = 0; d < config.replicas; ++d) {
      if (std::abs(sample_beta(params, rng) - mean) > cell.eps) ++exceed;
    }
    empirical[ci] = static_cast<double>(exceed) / static_cast<double>(config.replicas);
  });

  for (std::size_t ci = 0; ci < config.cells.size(); ++ci) {
    const ConcentrationCell& cell = config.cells[ci];
    double bound = beta_concentration_bound(cell.a, cell.b, cell.eps);
    std::vector<Cell> row(result.columns.size(), null_cell());
    row[0] = experiment_name(config.experiment);
    row[1] = cell.a;
    row[2] = cell.b;
    row[3] = cell.eps;
    row[4] = static_cast<std::int64_t>(config.replicas);
    row[5] = static_cast<std::int64_t>(ci);
    row[6] = empirical[ci];
    row[7] = bound;
    row[8] = std::int64_t{empirical[ci] <= bound ? 1 : 0};
    row[9] = std::int64_t{0};
    row[10] = std::string();
    result.rows.push_back(std::move(row));
  }
  return result;
}

ExperimentResult run_findim_experiment(const ExperimentConfig& config) {
  require_n_grid(config);
  if (config.findim_n == 0 || config.findim_n > 5) {
    throw parameter_error("findim n must lie in 1..5, got " + std::to_string(config.findim_n));
  }
  if (config.draws < 100) {
    throw parameter_error("findim needs draws >= 100, got " + std::to_string(config.draws));
  }
  const bool part_one = config.findim_part == "i";
  const std::size_t n = config.findim_n;

  ExperimentResult result;
  result.columns = {"experiment", "part", "n",       "N",    "draws", "replica",
                    "stream_index", "ks_distance", "summary", "stat"};
  const std::string exp_name = experiment_name(config.experiment);

  for (std::size_t gi = 0; gi < config.n_grid.size(); ++gi) {
    std::size_t big_n = config.n_grid[gi];
    double bn = static_cast<double>(big_n);

    std::vector<double> ks(config.replicas);
    parallel_for(config.replicas, [&](std::size_t r) {
      RandomStream rng(config.master_seed,
                       static_cast<std::uint64_t>(gi) * config.replicas + r);
      std::vector<double> side_a(config.draws), side_b(config.draws);
      if (part_one) {
        EnsembleSpec jac = EnsembleSpec::jacobi(config.beta, n, config.sigma * bn, bn);
        EnsembleSpec gauss = EnsembleSpec::gaussian(config.beta, n);
        double scale = (config.sigma + 1.0) *
                       std::sqrt(bn * (config.sigma + 1.0) / config.sigma);
        double center = config.sigma / (config.sigma + 1.0);
        for (std::size_t d = 0; d < config.draws; ++d) {
          side_a[d] = scale * (trace_of(sample_jacobi_tridiag(jac, rng)) -
                               static_cast<double>(n) * center);
        }
        for (std::size_t d = 0; d < config.draws; ++d) {
          side_b[d] = trace_of(sample_gaussian_tridiag(gauss, rng));
        }
      } else {
        EnsembleSpec jac = EnsembleSpec::jacobi(config.beta, n, config.findim_a, bn);
        EnsembleSpec lag = EnsembleSpec::laguerre(config.beta, n, config.findim_a);
        for (std::size_t d = 0; d < config.draws; ++d) {
          side_a[d] = bn * trace_of(sample_jacobi_tridiag(jac, rng));
        }
        for (std::size_t d = 0; d < config.draws; ++d) {
          side_b[d] = trace_of(sample_laguerre_tridiag(lag, rng));
        }
      }
      ks[r] = two_sample_ks(std::move(side_a), std::move(side_b));
    });

    for (std::size_t r = 0; r < config.replicas; ++r) {
      std::vector<Cell> row(result.columns.size(), null_cell());
      row[0] = exp_name;
      row[1] = config.findim_part;
      row[2] = static_cast<std::int64_t>(n);
      row[3] = static_cast<std::int64_t>(big_n);
      row[4] = static_cast<std::int64_t>(config.draws);
      row[5] = static_cast<std::int64_t>(r);
      row[6] = static_cast<std::int64_t>(gi * config.replicas + r);
      row[7] = ks[r];
      row[8] = std::int64_t{0};
      row[9] = std::string();
      result.rows.push_back(std::move(row));
    }
    append_summaries(result, ks,
                     [&] {
                       std::vector<Cell> row(result.columns.size(), null_cell());
                       row[0] = exp_name;
                       row[1] = config.findim_part;
                       row[2] = static_cast<std::int64_t>(n);
                       row[3] = static_cast<std::int64_t>(big_n);
                       row[4] = static_cast<std::int64_t>(config.draws);
                       return row;
                     },
                     7, 8, 9);
  }
  return result;
}

ExperimentResult run_empspectral_experiment(const ExperimentConfig& config) {
  require_n_grid(config);

  ExperimentResult result;
  result.columns = {"experiment", "ensemble", "n", "replica", "stream_index",
                    "d_K",        "summary",  "stat"};
  const std::string exp_name = experiment_name(config.experiment);
  const std::string ens_name = ensemble_name(config.ensemble);
  const double bp = 0.5 * config.beta;

  for (std::size_t gi = 0; gi < config.n_grid.size(); ++gi) {
    std::size_t n = config.n_grid[gi];
    EnsembleSpec spec = make_spec(config, n);

    std::vector<double> dks(config.replicas);
    parallel_for(config.replicas, [&](std::size_t r) {
      RandomStream rng(config.master_seed,
                       static_cast<std::uint64_t>(gi) * config.replicas + r);
      TridiagonalMatrix t = sample_tridiagonal(spec, rng);
      SpectralDecomposition dec = decompose(t);
      std::size_t atoms = dec.eigenvalues.size();
      DiscreteMeasure uniform(dec.eigenvalues,
                              std::vector<double>(atoms, 1.0 / static_cast<double>(atoms)));
      DiscreteMeasure weighted(dec.eigenvalues,
                               sample_dirichlet(DirichletParams(atoms, bp), rng));
      dks[r] = kolmogorov_distance(uniform, weighted);
    });

    for (std::size_t r = 0; r < config.replicas; ++r) {
      std::vector<Cell> row(result.columns.size(), null_cell());
      row[0] = exp_name;
      row[1] = ens_name;
      row[2] = static_cast<std::int64_t>(n);
      row[3] = static_cast<std::int64_t>(r);
      row[4] = static_cast<std::int64_t>(gi * config.replicas + r);
      row[5] = dks[r];
      row[6] = std::int64_t{0};
      row[7] = std::string();
      result.rows.push_back(std::move(row));
    }
    append_summaries(result, dks,
                     [&] {
                       std::vector<Cell> row(result.columns.size(), null_cell());
                       row[0] = exp_name;
                       row[1] = ens_name;
                       row[2] = static_cast<std::int64_t>(n);
                       return row;
                     },
                     5, 6, 7);
  }
  return result;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  switch (config.experiment) {
    case ExperimentKind::Sample: return run_sample_experiment(config);
    case ExperimentKind::Limit: return run_limit_experiment(config);
    case ExperimentKind::Rate: return run_rate_report(config);
    case ExperimentKind::Concentration: return run_concentration_experiment(config);
    case ExperimentKind::Findim: return run_findim_experiment(config);
    case ExperimentKind::Empspectral: return run_empspectral_experiment(config);
  }
  throw parameter_error("unknown experiment kind");
}

}  // namespace rmt
