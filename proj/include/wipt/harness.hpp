#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "wipt/channel.hpp"
#include "wipt/oracle.hpp"

namespace wipt {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ExperimentSpec {
  std::string scenario = "custom";   // fig4..fig8 or custom
  SimConfig base;
  std::string sweep_name;            // mu | K_ID | K_EH | B_ID | B_EH
  std::vector<double> sweep_values;
  int trials = 500;
  int parallelism = 1;
  bool enable_oracle = false;
  OracleConfig oracle;
  std::string out_path;

  void validate() const;  // throws ConfigError
};

struct ResultRow {
  std::string scenario;
  std::string sweep_name;
  double sweep_value = 0.0;
  int trials = 0;
  std::string metric;
  double mean = 0.0;
  double stderr_ = 0.0;
};

/// Parses the plain-text key/value spec format (one `key = value` per line,
/// `#` comments, comma-separated lists). Unknown keys and malformed values
/// are reported with their line number.
ExperimentSpec parse_spec_text(const std::string& text);
ExperimentSpec parse_spec_file(const std::string& path);

/// Runs the Monte Carlo sweep. Results are a pure function of (spec, seed);
/// per-point trial seeds derive from (seed, point index, trial index), so the
/// parallelism degree and additional sweep points never perturb results.
std::vector<ResultRow> run_experiment(const ExperimentSpec& spec);

/// Analysis-only predictions for the same sweep points.
std::vector<ResultRow> run_analysis(const ExperimentSpec& spec);

void emit_csv(const std::vector<ResultRow>& table, const std::string& path);
std::string to_csv(const std::vector<ResultRow>& table);
std::vector<ResultRow> parse_csv_text(const std::string& text);

}  // namespace wipt
