#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "crossfire/agent.hpp"
#include "crossfire/network_sim.hpp"

namespace crossfire::experiment {

/// Invalid configuration. `where` is a field path ("learning.alpha") or "line L, column C".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string where, const std::string& what)
      : std::runtime_error(where.empty() ? what : where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

/// Unreadable input or unwritable output.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  sim::SimConfig sim;
  std::vector<agent::ControllerSpec> roster;
  std::vector<std::uint64_t> seeds{42, 43, 44, 45, 46};
  std::filesystem::path output_dir = "out";
  bool charts = true;
  std::shared_ptr<const agent::AgentModels> models;
};

/// Parses and fully validates a JSON config; absent fields take defaults.
ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Every tunable with its default value, as a JSON document.
std::string default_config_json();

/// Parses "fixed,fuzzy,ql,fql,gfql"; throws ConfigError on unknown names.
std::vector<agent::ControllerKind> parse_controller_list(std::string_view csv);

struct RunRecord {
  agent::ControllerSpec controller;
  std::uint64_t seed = 0;
  sim::RunResult result;
};

struct ControllerSummary {
  agent::ControllerSpec controller;
  std::vector<double> per_seed_delay;                  // total average delay per seed, s
  double total_average_delay = 0.0;                    // mean over seeds, s
  std::vector<double> series;                          // per-cycle network delay, mean over seeds
  std::optional<double> reduction_vs_fixed_pct;        // mean-over-seeds delay vs fixed_time
  std::vector<std::optional<double>> per_seed_reduction_pct;
};

struct ComparisonSummary {
  std::vector<std::uint64_t> seeds;
  std::vector<ControllerSummary> controllers;  // roster order
};

struct ExperimentResult {
  std::vector<RunRecord> runs;  // roster order, then seed order
  ComparisonSummary summary;
};

/// Worker count from CROSSFIRE_THREADS, else hardware concurrency (at least 1).
unsigned default_worker_count();

/// Runs every (controller, seed) pair, fanned out over `workers` threads. Throws
/// std::logic_error if two controllers saw different volume streams for one seed.
ExperimentResult run_experiment(const ExperimentConfig& config, unsigned workers = default_worker_count());

ComparisonSummary summarize(const std::vector<RunRecord>& runs, const std::vector<agent::ControllerSpec>& roster,
                            const std::vector<std::uint64_t>& seeds);

// ---- reporting ----

struct CycleRow {
  int cycle = 0;
  int intersection = 0;
  int v_ns = 0;
  int v_we = 0;
  double tg_ns = 0.0;
  double delay_s = 0.0;
  double reward = 0.0;
  std::string controller;
  std::uint64_t seed = 0;
};

inline constexpr std::string_view kCycleCsvHeader = "cycle,intersection,v_ns,v_we,tg_ns,delay_s,reward,controller,seed";
inline constexpr std::string_view kSummaryCsvHeader = "controller,seed,total_average_delay_s,reduction_vs_fixed_pct";

std::vector<CycleRow> cycle_rows(const std::vector<RunRecord>& runs);
std::string format_cycles_csv(const std::vector<CycleRow>& rows);
/// Throws std::invalid_argument on malformed input.
std::vector<CycleRow> parse_cycles_csv(std::string_view text);
std::string format_summary_csv(const ComparisonSummary& summary);
std::string format_summary_table(const ComparisonSummary& summary);

/// Trailing mean over up to `window` samples.
std::vector<double> rolling_mean(const std::vector<double>& series, std::size_t window);

inline constexpr std::size_t kChartWindow = 25;
std::string delay_series_svg(const ComparisonSummary& summary, std::size_t window = kChartWindow);
std::string delay_bars_svg(const ComparisonSummary& summary);

/// Writes cycles.csv, summary.csv and (optionally) the two charts. Throws IoError.
void write_artifacts(const ExperimentResult& result, const std::filesystem::path& dir, bool charts);

}  // namespace crossfire::experiment
