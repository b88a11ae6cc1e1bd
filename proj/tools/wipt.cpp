#include <CLI11.hpp>
#include <filesystem>
#include <functional>
#include <iostream>

#include "wipt/harness.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

int with_spec(const std::string& path, const std::function<int(wipt::ExperimentSpec&)>& fn) {
  try {
    wipt::ExperimentSpec spec = wipt::parse_spec_file(path);
    return fn(spec);
  } catch (const wipt::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-user wireless information and power transfer simulator"};
  app.require_subcommand(1);

  std::string spec_path, out_dir;
  long seed = -1;
  int trials = -1;
  int parallel = -1;

  auto* run = app.add_subcommand("run", "Run a Monte Carlo experiment and write CSV results");
  run->add_option("--spec", spec_path, "Experiment spec file")->required();
  run->add_option("--out", out_dir, "Output directory for the CSV");
  run->add_option("--seed", seed, "Override the base RNG seed");
  run->add_option("--trials", trials, "Override trials per sweep point");
  run->add_option("--parallel", parallel, "Override parallelism degree");

  auto* analyze = app.add_subcommand("analyze", "Print analysis-only predictions as CSV");
  analyze->add_option("--spec", spec_path, "Experiment spec file")->required();

  auto* validate = app.add_subcommand("validate", "Validate a spec file");
  validate->add_option("--spec", spec_path, "Experiment spec file")->required();

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    return with_spec(spec_path, [&](wipt::ExperimentSpec& spec) {
      if (seed >= 0) spec.base.seed = static_cast<std::uint64_t>(seed);
      if (trials > 0) spec.trials = trials;
      if (parallel > 0) spec.parallelism = parallel;
      spec.validate();
      const auto table = wipt::run_experiment(spec);
      std::string path = spec.out_path.empty() ? spec.scenario + ".csv" : spec.out_path;
      if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        path = out_dir + "/" + path;
      }
      wipt::emit_csv(table, path);
      std::cout << "wrote " << table.size() << " rows to " << path << "\n";
      return 0;
    });
  }
  if (analyze->parsed()) {
    return with_spec(spec_path, [&](wipt::ExperimentSpec& spec) {
      spec.validate();
      std::cout << wipt::to_csv(wipt::run_analysis(spec));
      return 0;
    });
  }
  return with_spec(spec_path, [&](wipt::ExperimentSpec& spec) {
    spec.validate();
    std::cout << "ok: " << spec.scenario << ", sweep " << spec.sweep_name << " over "
              << spec.sweep_values.size() << " points, " << spec.trials << " trials\n";
    return 0;
  });
}
