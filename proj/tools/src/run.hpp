#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fflab/analysis.hpp"
#include "fflab/weights.hpp"

namespace fflab::cli {

enum class Task { nodes, fekete, fejer, anfun, normality, equivalence, lemma7, lemma8, converge };
enum class Format { json, csv };

enum ExitCode : int { kOk = 0, kConfigError = 2, kNumericalError = 3 };

struct RunConfig {
  Task task = Task::nodes;
  WeightSpec weight;
  std::vector<int> n_list;              // "n" or "n_list"
  std::optional<std::vector<double>> nodes;
  std::vector<double> x_list;           // anfun evaluation points
  std::optional<double> L;
  double d = 3.0;                       // tilde bridge end
  bool induced = false;                 // use w_n instead of w
  int trials = 100;
  int starts = 1;                       // > 1 runs a multi-start probe
  std::uint64_t seed = 1;
  nlohmann::json function = "inverse_quadratic";
  GridSpec grid;
  Format format = Format::json;
};

Task parse_task(const std::string& name);
Format parse_format(const std::string& name);

/// Builds a config from JSON. CLI overrides are applied by the caller.
/// Throws InvalidArgument naming the offending field.
RunConfig parse_config(const nlohmann::json& j);

/// Runs the task and writes the finished report (or a JSON error record) to
/// `out`. Returns 0, 2 (config error) or 3 (numerical failure).
int run(const RunConfig& config, std::ostream& out);

/// Parses `text` and runs; parse errors give exit code 2.
int run_text(const std::string& text, std::optional<std::string> task,
             std::optional<std::string> format, std::optional<std::uint64_t> seed,
             std::ostream& out);

}  // namespace fflab::cli
