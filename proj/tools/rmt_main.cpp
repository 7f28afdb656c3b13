#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rmt/errors.hpp"
#include "rmt/experiments.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParameter = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

struct Overrides {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<std::size_t> replicas;
  std::optional<std::string> n_grid;
  bool timings = false;
};

std::vector<std::size_t> parse_grid(const std::string& text) {
  std::vector<std::size_t> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw rmt::parameter_error("empty entry in --n-grid");
    std::size_t pos = 0;
    unsigned long long v = std::stoull(item, &pos);
    if (pos != item.size()) throw rmt::parameter_error("bad --n-grid entry \"" + item + "\"");
    grid.push_back(static_cast<std::size_t>(v));
  }
  if (grid.empty()) throw rmt::parameter_error("--n-grid must list at least one n");
  return grid;
}

int run(rmt::ExperimentKind kind, const Overrides& opts) {
  rmt::ExperimentConfig config = rmt::ExperimentConfig::from_json_file(opts.config_path);
  config.experiment = kind;
  if (opts.seed) config.master_seed = *opts.seed;
  if (opts.out) config.output_path = *opts.out;
  if (opts.replicas) config.replicas = *opts.replicas;
  if (opts.n_grid) config.n_grid = parse_grid(*opts.n_grid);
  if (opts.format) {
    if (*opts.format == "csv") config.output_format = rmt::OutputFormat::Csv;
    else if (*opts.format == "json") config.output_format = rmt::OutputFormat::Json;
    else throw rmt::parameter_error("--format must be csv or json");
  }
  if (opts.timings) config.include_timings = true;

  for (const std::string& warning : rmt::hypothesis_warnings(config)) {
    std::cerr << "warning: " << warning << '\n';
  }
  rmt::ExperimentResult result = rmt::run_experiment(config);
  rmt::write_result_file(result, config);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Beta-ensemble simulation and verification experiments"};
  app.require_subcommand(1);

  Overrides opts;
  rmt::ExperimentKind selected = rmt::ExperimentKind::Limit;

  const std::pair<const char*, rmt::ExperimentKind> kinds[] = {
      {"sample", rmt::ExperimentKind::Sample},
      {"limit", rmt::ExperimentKind::Limit},
      {"rate", rmt::ExperimentKind::Rate},
      {"concentration", rmt::ExperimentKind::Concentration},
      {"findim", rmt::ExperimentKind::Findim},
      {"empspectral", rmt::ExperimentKind::Empspectral},
  };
  for (const auto& [name, kind] : kinds) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", opts.config_path, "JSON experiment config")
        ->required();
    sub->add_option("--seed", opts.seed, "override master_seed");
    sub->add_option("--out", opts.out, "override output_path");
    sub->add_option("--format", opts.format, "override output_format (csv|json)");
    sub->add_option("--replicas", opts.replicas, "override replicas");
    sub->add_option("--n-grid", opts.n_grid, "override n_grid, comma separated");
    sub->add_flag("--timings", opts.timings, "append a wall_ms column (not reproducible)");
    rmt::ExperimentKind k = kind;
    sub->callback([&selected, k] { selected = k; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParameter;
  }

  try {
    return run(selected, opts);
  } catch (const rmt::io_error& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return kExitIo;
  } catch (const rmt::numerical_error& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const rmt::support_error& e) {
    std::cerr << "support error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const rmt::parameter_error& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return kExitParameter;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}
