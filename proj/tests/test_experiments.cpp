#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "rmt/errors.hpp"
#include "rmt/experiments.hpp"

using rmt::ExperimentConfig;
using rmt::ExperimentKind;
using rmt::ExperimentResult;
using rmt::ParameterSequence;

namespace {

std::string csv_of(const ExperimentResult& result) {
  std::ostringstream out;
  result.write_csv(out);
  return out.str();
}

std::string json_of(const ExperimentResult& result) {
  std::ostringstream out;
  result.write_json(out);
  return out.str();
}

// Count of data (non-summary) rows, assuming a column named "summary".
std::size_t data_rows(const ExperimentResult& result) {
  std::size_t summary_col = 0;
  while (result.columns[summary_col] != "summary") ++summary_col;
  std::size_t count = 0;
  for (const auto& row : result.rows) {
    if (std::get<std::int64_t>(row[summary_col]) == 0) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("experiment names roundtrip") {
  for (auto kind : {ExperimentKind::Sample, ExperimentKind::Limit, ExperimentKind::Rate,
                    ExperimentKind::Concentration, ExperimentKind::Findim,
                    ExperimentKind::Empspectral}) {
    CHECK(rmt::experiment_from_name(rmt::experiment_name(kind)) == kind);
  }
  CHECK_THROWS_AS(rmt::experiment_from_name("spectralize"), rmt::parameter_error);
}

TEST_CASE("parameter sequences evaluate as polynomials in n") {
  ParameterSequence constant({5.0});
  ParameterSequence linear({0.0, 2.0});
  ParameterSequence quadratic({0.0, 0.0, 1.0});
  CHECK(constant(64) == 5.0);
  CHECK(linear(64) == 128.0);
  CHECK(quadratic(64) == 4096.0);
  CHECK(ParameterSequence({1.0, 2.0, 3.0})(2) == 17.0);
  CHECK_THROWS_AS(ParameterSequence(std::vector<double>{}), rmt::parameter_error);
  CHECK_THROWS_AS(ParameterSequence()(4), rmt::parameter_error);
}

TEST_CASE("config parsing") {
  auto config = ExperimentConfig::from_json_text(R"({
    "experiment": "limit",
    "ensemble": "jacobi",
    "regime": "lln1",
    "beta": 2.0,
    "tau": 0.5,
    "a": [0, 2],
    "b": [0, 0, 1],
    "n_grid": [64, 128],
    "replicas": 20,
    "master_seed": 42,
    "output_path": "out.csv",
    "output_format": "csv"
  })");
  CHECK(config.experiment == ExperimentKind::Limit);
  CHECK(config.regime == rmt::ScalingRegime::Kind::LLN1);
  CHECK(config.tau == 0.5);
  CHECK(config.a_seq(10) == 20.0);
  CHECK(config.b_seq(10) == 100.0);
  CHECK(config.n_grid == std::vector<std::size_t>{64, 128});
  CHECK(config.replicas == 20);
  CHECK(config.master_seed == 42);
  CHECK(config.output_path == "out.csv");

  // Scalars are accepted as constant sequences.
  auto fixed = ExperimentConfig::from_json_text(R"({"a": 7.5, "b": 3})");
  CHECK(fixed.a_seq(999) == 7.5);
  CHECK(fixed.b_seq(999) == 3.0);

  auto findim = ExperimentConfig::from_json_text(
      R"({"experiment": "findim", "part": "i", "n": 4, "a": 5, "draws": 200})");
  CHECK(findim.findim_part == "i");
  CHECK(findim.findim_n == 4);
  CHECK(findim.findim_a == 5.0);
  CHECK(findim.draws == 200);

  auto cells = ExperimentConfig::from_json_text(
      R"({"experiment": "concentration", "cells": [[10, 10, 0.4], [100, 10, 0.1]]})");
  REQUIRE(cells.cells.size() == 2);
  CHECK(cells.cells[1].a == 100.0);
  CHECK(cells.cells[1].eps == 0.1);

  CHECK(ExperimentConfig::from_json_text(R"({"timings": true})").include_timings);
}

TEST_CASE("config parsing rejects malformed input") {
  CHECK_THROWS_AS(ExperimentConfig::from_json_text("not json"), rmt::parameter_error);
  CHECK_THROWS_AS(ExperimentConfig::from_json_text("[1,2]"), rmt::parameter_error);
  CHECK_THROWS_AS(ExperimentConfig::from_json_text(R"({"experiments": "limit"})"),
                  rmt::parameter_error);  // unknown key
  CHECK_THROWS_AS(ExperimentConfig::from_json_text(R"({"regime": "LLN9"})"),
                  rmt::parameter_error);
  CHECK_THROWS_AS(ExperimentConfig::from_json_text(R"({"output_format": "xml"})"),
                  rmt::parameter_error);
  CHECK_THROWS_AS(ExperimentConfig::from_json_text(R"({"beta": -1})"),
                  rmt::parameter_error);
  CHECK_THROWS_AS(ExperimentConfig::from_json_text(R"({"replicas": 0})"),
                  rmt::parameter_error);
  CHECK_THROWS_AS(ExperimentConfig::from_json_text(R"({"a": "2n"})"),
                  rmt::parameter_error);
  CHECK_THROWS_AS(ExperimentConfig::from_json_text(R"({"part": "iii"})"),
                  rmt::parameter_error);
  CHECK_THROWS_AS(ExperimentConfig::from_json_text(
                      R"({"experiment": "findim", "a": [0, 1]})"),
                  rmt::parameter_error);
  CHECK_THROWS_AS(ExperimentConfig::from_json_text(R"({"cells": [[10, 10]]})"),
                  rmt::parameter_error);
  CHECK_THROWS_AS(ExperimentConfig::from_json_file("/no/such/config.json"), rmt::io_error);
}

TEST_CASE("two-sample KS statistic") {
  CHECK(rmt::two_sample_ks({1.0, 2.0, 3.0}, {1.5, 2.5}) == doctest::Approx(1.0 / 3.0));
  CHECK(rmt::two_sample_ks({1.0, 2.0}, {1.0, 2.0}) == 0.0);
  CHECK(rmt::two_sample_ks({0.0}, {5.0}) == 1.0);
  CHECK_THROWS_AS(rmt::two_sample_ks({}, {1.0}), rmt::parameter_error);
}

TEST_CASE("limit experiment schema and determinism") {
  ExperimentConfig config;
  config.experiment = ExperimentKind::Limit;
  config.regime = rmt::ScalingRegime::Kind::LLN1;
  config.tau = 0.5;
  config.a_seq = ParameterSequence({0.0, 2.0});
  config.b_seq = ParameterSequence({0.0, 0.0, 1.0});
  config.n_grid = {8, 16};
  config.replicas = 3;
  config.master_seed = 11;

  auto result = rmt::run_limit_experiment(config);
  CHECK(result.columns == std::vector<std::string>{"experiment", "regime", "n", "replica",
                                                   "stream_index", "d_K", "summary", "stat"});
  CHECK(data_rows(result) == 6);
  CHECK(result.rows.size() == 6 + 2 * 4);

  // Stream indices are globally distinct across the grid.
  CHECK(std::get<std::int64_t>(result.rows[0][4]) == 0);
  auto csv = csv_of(result);
  CHECK(csv.find("median") != std::string::npos);
  CHECK(csv.find("q75") != std::string::npos);
  CHECK(csv.find("LLN1") != std::string::npos);
  CHECK(csv_of(rmt::run_limit_experiment(config)) == csv);

  auto js = nlohmann::json::parse(json_of(result));
  REQUIRE(js.is_array());
  CHECK(js.size() == result.rows.size());
  CHECK(js[0]["d_K"].is_number());
  CHECK(js[6]["replica"].is_null());

  // d_K values are honest distances.
  for (std::size_t r = 0; r < 6; ++r) {
    double v = std::get<double>(result.rows[r][5]);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }

  config.include_timings = true;
  auto timed = rmt::run_limit_experiment(config);
  CHECK(timed.columns.back() == "wall_ms");

  ExperimentConfig bad = config;
  bad.regime = rmt::ScalingRegime::Kind::LDP1;
  CHECK_THROWS_AS(rmt::run_limit_experiment(bad), rmt::parameter_error);
  bad.regime.reset();
  CHECK_THROWS_AS(rmt::run_limit_experiment(bad), rmt::parameter_error);
  ExperimentConfig gauss = config;
  gauss.ensemble = rmt::EnsembleKind::Gaussian;
  CHECK_THROWS_AS(rmt::run_limit_experiment(gauss), rmt::parameter_error);
  ExperimentConfig shuffled = config;
  shuffled.n_grid = {16, 8};
  CHECK_THROWS_AS(rmt::run_limit_experiment(shuffled), rmt::parameter_error);
}

TEST_CASE("rate report") {
  ExperimentConfig config;
  config.experiment = ExperimentKind::Rate;
  config.regime = rmt::ScalingRegime::Kind::LDP1;
  config.tau = 0.5;
  config.a_seq = ParameterSequence({0.0, 2.0});
  config.b_seq = ParameterSequence({0.0, 0.0, 1.0});
  config.n_grid = {8};
  config.replicas = 4;
  config.depth = 4;
  config.master_seed = 3;

  auto result = rmt::run_rate_report(config);
  CHECK(data_rows(result) == 4);
  std::size_t rate_col = 7, flag_col = 8, speed_col = 6;
  CHECK(result.columns[rate_col] == "rate");
  CHECK(result.columns[flag_col] == "support_error");
  for (std::size_t r = 0; r < 4; ++r) {
    CHECK(std::get<double>(result.rows[r][speed_col]) == 16.0);  // a_n = 2n
    if (std::get<std::int64_t>(result.rows[r][flag_col]) == 0) {
      CHECK(std::get<double>(result.rows[r][rate_col]) >= 0.0);
    } else {
      CHECK(std::holds_alternative<std::monostate>(result.rows[r][rate_col]));
    }
  }
  CHECK(csv_of(rmt::run_rate_report(config)) == csv_of(result));

  ExperimentConfig ldp2 = config;
  ldp2.regime = rmt::ScalingRegime::Kind::LDP2;
  ldp2.a_seq = ParameterSequence({0.0, 0.0, 1.0});
  auto r2 = rmt::run_rate_report(ldp2);
  CHECK(std::get<double>(r2.rows[0][speed_col]) == 8.0);  // beta/2 * n

  ExperimentConfig bad = config;
  bad.regime = rmt::ScalingRegime::Kind::LLN1;
  CHECK_THROWS_AS(rmt::run_rate_report(bad), rmt::parameter_error);
  bad = config;
  bad.depth = 0;
  CHECK_THROWS_AS(rmt::run_rate_report(bad), rmt::parameter_error);
  bad = config;
  bad.depth = 9;
  CHECK_THROWS_AS(rmt::run_rate_report(bad), rmt::parameter_error);
}

TEST_CASE("concentration experiment") {
  ExperimentConfig config;
  config.experiment = ExperimentKind::Concentration;
  config.cells = {{10.0, 10.0, 0.4}, {1000.0, 1000.0, 0.1}};
  config.replicas = 2000;
  config.master_seed = 9;

  auto result = rmt::run_concentration_experiment(config);
  REQUIRE(result.rows.size() == 2);
  std::size_t emp_col = 6, bound_col = 7, holds_col = 8;
  CHECK(result.columns[emp_col] == "empirical");
  for (const auto& row : result.rows) {
    double emp = std::get<double>(row[emp_col]);
    double bound = std::get<double>(row[bound_col]);
    CHECK(emp >= 0.0);
    CHECK(emp <= 1.0);
    CHECK(std::get<std::int64_t>(row[holds_col]) == (emp <= bound ? 1 : 0));
  }
  // a = b = 10, eps = 0.4 puts the bound above 1: trivially holds.
  CHECK(std::get<double>(result.rows[0][bound_col]) > 1.0);
  CHECK(std::get<std::int64_t>(result.rows[0][holds_col]) == 1);
  CHECK(csv_of(rmt::run_concentration_experiment(config)) == csv_of(result));

  ExperimentConfig bad = config;
  bad.cells.clear();
  CHECK_THROWS_AS(rmt::run_concentration_experiment(bad), rmt::parameter_error);
  bad.cells = {{10.0, 10.0, 0.6}};
  CHECK_THROWS_AS(rmt::run_concentration_experiment(bad), rmt::parameter_error);
}

TEST_CASE("finite-dimension comparison experiment") {
  ExperimentConfig config;
  config.experiment = ExperimentKind::Findim;
  config.findim_part = "ii";
  config.findim_n = 3;
  config.findim_a = 5.0;
  config.beta = 2.0;
  config.n_grid = {1000};
  config.draws = 400;
  config.replicas = 2;
  config.master_seed = 21;

  auto result = rmt::run_findim_experiment(config);
  CHECK(data_rows(result) == 2);
  std::size_t ks_col = 7;
  CHECK(result.columns[ks_col] == "ks_distance");
  for (std::size_t r = 0; r < 2; ++r) {
    double ks = std::get<double>(result.rows[r][ks_col]);
    CHECK(ks > 0.0);
    CHECK(ks <= 1.0);
  }
  CHECK(csv_of(rmt::run_findim_experiment(config)) == csv_of(result));

  ExperimentConfig part_one = config;
  part_one.findim_part = "i";
  part_one.sigma = 1.0;
  auto r1 = rmt::run_findim_experiment(part_one);
  CHECK(std::get<std::string>(r1.rows[0][1]) == "i");

  ExperimentConfig bad = config;
  bad.draws = 50;
  CHECK_THROWS_AS(rmt::run_findim_experiment(bad), rmt::parameter_error);
  bad = config;
  bad.findim_n = 6;
  CHECK_THROWS_AS(rmt::run_findim_experiment(bad), rmt::parameter_error);
}

TEST_CASE("empirical-vs-spectral weighting experiment") {
  ExperimentConfig config;
  config.experiment = ExperimentKind::Empspectral;
  config.ensemble = rmt::EnsembleKind::Jacobi;
  config.a_seq = ParameterSequence({0.0, 2.0});
  config.b_seq = ParameterSequence({0.0, 2.0});
  config.n_grid = {1};
  config.replicas = 2;
  config.master_seed = 5;

  // A single atom leaves no room for weight disagreement.
  auto degenerate = rmt::run_empspectral_experiment(config);
  CHECK(std::get<double>(degenerate.rows[0][5]) == 0.0);

  config.n_grid = {32};
  auto result = rmt::run_empspectral_experiment(config);
  CHECK(data_rows(result) == 2);
  for (std::size_t r = 0; r < 2; ++r) {
    double d = std::get<double>(result.rows[r][5]);
    CHECK(d > 0.0);
    CHECK(d < 1.0);
  }
  CHECK(csv_of(rmt::run_empspectral_experiment(config)) == csv_of(result));
}

TEST_CASE("sample experiment emits entries and matrices") {
  ExperimentConfig config;
  config.experiment = ExperimentKind::Sample;
  config.ensemble = rmt::EnsembleKind::Laguerre;
  config.a_seq = ParameterSequence({6.0});
  config.n_grid = {3, 5};
  config.replicas = 2;
  config.master_seed = 77;

  auto result = rmt::run_sample_experiment(config);
  CHECK(result.rows.size() == (3 + 5) * 2);
  CHECK(result.columns[4] == "k");

  auto js = nlohmann::json::parse(json_of(result));
  REQUIRE(js.is_array());
  REQUIRE(js.size() == 4);
  CHECK(js[0]["matrix"]["diag"].size() == 3);
  CHECK(js[0]["matrix"]["offdiag"].size() == 2);
  CHECK(js[3]["matrix"]["diag"].size() == 5);
  CHECK(js[3]["stream_index"] == 3);

  CHECK(csv_of(rmt::run_sample_experiment(config)) == csv_of(result));
  CHECK(json_of(rmt::run_sample_experiment(config)) == json_of(result));
}

TEST_CASE("run_experiment dispatches on the configured kind") {
  ExperimentConfig config;
  config.experiment = ExperimentKind::Concentration;
  config.cells = {{10.0, 10.0, 0.4}};
  config.replicas = 100;
  auto result = rmt::run_experiment(config);
  CHECK(std::get<std::string>(result.rows[0][0]) == "concentration");
}

TEST_CASE("result files are written atomically and faithfully") {
  ExperimentConfig config;
  config.experiment = ExperimentKind::Concentration;
  config.cells = {{10.0, 10.0, 0.4}};
  config.replicas = 100;
  auto result = rmt::run_experiment(config);

  config.output_path = "test_experiments_out.csv";
  rmt::write_result_file(result, config);
  std::ifstream in(config.output_path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream content;
  content << in.rdbuf();
  CHECK(content.str() == csv_of(result));
  CHECK(content.str().find('\r') == std::string::npos);
  in.close();
  std::remove(config.output_path.c_str());

  ExperimentConfig bad = config;
  bad.output_path = "/nonexistent-dir-zz/out.csv";
  CHECK_THROWS_AS(rmt::write_result_file(result, bad), rmt::io_error);
  bad.output_path.clear();
  CHECK_THROWS_AS(rmt::write_result_file(result, bad), rmt::io_error);
}

TEST_CASE("hypothesis warnings flag questionable parameter sequences") {
  ExperimentConfig config;
  config.experiment = ExperimentKind::Limit;
  config.regime = rmt::ScalingRegime::Kind::LLN2;
  config.sigma = 1.0;
  config.a_seq = ParameterSequence({0.0, 0.0, 1.0});
  config.b_seq = ParameterSequence({0.0, 0.0, 1.0});
  config.n_grid = {64};
  CHECK(rmt::hypothesis_warnings(config).empty());

  // sigma far from a_n/b_n produces a drift warning.
  ExperimentConfig drift = config;
  drift.a_seq = ParameterSequence({0.0, 2.0});
  CHECK(!rmt::hypothesis_warnings(drift).empty());

  // b_n growing only like n violates b_n/n -> infinity.
  ExperimentConfig slow = config;
  slow.a_seq = ParameterSequence({0.0, 1.0});
  slow.b_seq = ParameterSequence({0.0, 1.0});
  CHECK(!rmt::hypothesis_warnings(slow).empty());

  ExperimentConfig lln1 = config;
  lln1.regime = rmt::ScalingRegime::Kind::LLN1;
  lln1.tau = 0.5;
  lln1.a_seq = ParameterSequence({0.0, 2.0});
  lln1.b_seq = ParameterSequence({0.0, 0.0, 1.0});
  CHECK(rmt::hypothesis_warnings(lln1).empty());
  lln1.tau = 0.9;
  CHECK(!rmt::hypothesis_warnings(lln1).empty());

  // Non-limit experiments never warn.
  ExperimentConfig other = lln1;
  other.experiment = ExperimentKind::Sample;
  CHECK(rmt::hypothesis_warnings(other).empty());
}
