#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"fflab: weighted Fekete sets, Fejer constants and Grunwald interpolation"};
  std::string task;
  std::string config_path;
  std::string out_path;
  std::string format;
  std::uint64_t seed = 0;

  app.add_option("task", task,
                 "nodes | fekete | fejer | anfun | normality | equivalence | lemma7 | lemma8 | converge")
      ->required();
  app.add_option("--config", config_path, "JSON run configuration")->required();
  auto* out_opt = app.add_option("--out", out_path, "report path (default: stdout)");
  auto* fmt_opt = app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  auto* seed_opt = app.add_option("--seed", seed, "seed for random starts and trial vectors");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : fflab::cli::kConfigError;
  }

  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "fflab: cannot read config " << config_path << '\n';
    return fflab::cli::kConfigError;
  }
  std::stringstream text;
  text << in.rdbuf();

  std::ostringstream report;
  const int code = fflab::cli::run_text(
      text.str(), task, fmt_opt->count() ? std::optional(format) : std::nullopt,
      seed_opt->count() ? std::optional(seed) : std::nullopt, report);

  if (code != 0) std::cerr << "fflab: " << task << " failed (exit " << code << ")\n";
  if (out_opt->count()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "fflab: cannot write " << out_path << '\n';
      return fflab::cli::kConfigError;
    }
    out << report.str();
  } else {
    std::cout << report.str();
  }
  return code;
}
