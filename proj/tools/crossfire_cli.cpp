// crossfire: run the five-controller traffic-signal comparison.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "crossfire/experiment.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

std::vector<std::uint64_t> parse_seeds(const std::string& csv) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
      throw crossfire::experiment::ConfigError("--seeds", "bad seed '" + item + "'");
    }
    out.push_back(std::stoull(item));
  }
  if (out.empty()) throw crossfire::experiment::ConfigError("--seeds", "no seeds given");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  namespace ex = crossfire::experiment;

  CLI::App app{"Multi-agent traffic signal control experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string seeds;
  std::string controllers;
  int horizon = 0;
  bool no_charts = false;
  auto* run = app.add_subcommand("run", "Run the controller comparison described by a JSON config");
  run->add_option("config", config_path, "Experiment config (JSON)")->required();
  run->add_option("--out", out_dir, "Output directory (overrides output_dir)");
  run->add_option("--seeds", seeds, "Comma-separated seeds, e.g. 42,43");
  run->add_option("--horizon", horizon, "Cycles per run")->check(CLI::PositiveNumber);
  run->add_flag("--no-charts", no_charts, "Skip SVG charts");
  run->add_option("--controllers", controllers, "Subset of fixed,fuzzy,ql,fql,gfql");

  auto* defaults = app.add_subcommand("defaults", "Print the default config with every tunable");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  if (defaults->parsed()) {
    std::cout << ex::default_config_json();
    return 0;
  }

  try {
    auto cfg = ex::load_config(config_path);
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    if (!seeds.empty()) cfg.seeds = parse_seeds(seeds);
    if (horizon > 0) cfg.sim.horizon = horizon;
    if (no_charts) cfg.charts = false;
    if (!controllers.empty()) {
      const double fixed_green = cfg.roster.empty() ? 60.0 : cfg.roster.front().fixed_green;
      cfg.roster.clear();
      for (auto kind : ex::parse_controller_list(controllers)) cfg.roster.push_back({kind, fixed_green});
    }

    const auto result = ex::run_experiment(cfg);
    ex::write_artifacts(result, cfg.output_dir, cfg.charts);
    std::cout << ex::format_summary_table(result.summary);
    std::cout << "wrote " << cfg.output_dir.string() << "\n";
  } catch (const ex::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ex::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
