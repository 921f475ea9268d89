#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "crossfire/agent.hpp"
#include "crossfire/rng.hpp"

namespace crossfire::sim {

/// Undirected intersection graph.
class Topology {
 public:
  /// Center node 0 linked to peripheral nodes 1..4.
  static Topology star();
  /// Throws std::invalid_argument on self-loops, duplicates, or out-of-range endpoints.
  static Topology from_edges(std::size_t nodes, const std::vector<std::pair<std::size_t, std::size_t>>& edges);

  std::size_t size() const noexcept { return adjacency_.size(); }
  const std::vector<std::size_t>& neighbors(std::size_t node) const { return adjacency_.at(node); }
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;

 private:
  std::vector<std::vector<std::size_t>> adjacency_;
};

struct SimConfig {
  double cycle = 100.0;      // s
  double capacity = 3500.0;  // veh/h
  int horizon = 1000;        // cycles
  std::uint64_t seed = 42;
  int volume_min = 0;        // veh/h, inclusive
  int volume_max = 3500;     // veh/h, inclusive
  Topology topology = Topology::star();

  /// Throws std::invalid_argument describing the first violated constraint.
  void validate() const;
};

struct Volumes {
  int ns = 0;
  int we = 0;
};

struct ExchangeRecord {
  std::size_t neighbor = 0;
  double reward = 0.0;                 // r_j received
  std::optional<double> weight;        // f(i, j), game_fql only
};

struct IntersectionRecord {
  Volumes volumes;
  double green_ns = 0.0;
  double delay = 0.0;
  double reward = 0.0;
  std::vector<ExchangeRecord> received;
};

struct CycleRecord {
  int cycle = 0;  // 1-based
  std::vector<IntersectionRecord> nodes;
  double network_delay = 0.0;  // volume-weighted over intersections
  double running_mean = 0.0;   // mean network delay over cycles 1..cycle
};

struct RunResult {
  std::vector<CycleRecord> cycles;
  double total_average_delay = 0.0;
  std::uint64_t volume_hash = 0;  // FNV-1a over the consumed volume stream

  std::vector<double> delay_series() const;
};

/// Independent uniform draws on [lo, hi] for each approach of each node, NS first.
std::vector<Volumes> generate_volumes(Rng& rng, std::size_t nodes, int lo, int hi);

/// Volume-weighted mean of per-node delays; 0 when the network is empty.
double network_delay(const std::vector<IntersectionRecord>& nodes);

/// Per-node controller assignment. A single entry applies to every node.
using ControllerAssignment = std::vector<agent::ControllerSpec>;

/// Streams: volumes use derive(seed, 0); agent i uses derive(seed, i + 1).
class Network {
 public:
  Network(SimConfig config, const ControllerAssignment& controllers, std::shared_ptr<const agent::AgentModels> models);

  /// Runs one cycle: decide, delay, exchange, observe next volumes, learn.
  CycleRecord step_cycle();

  const std::vector<agent::Agent>& agents() const noexcept { return agents_; }
  const SimConfig& config() const noexcept { return config_; }
  int cycles_run() const noexcept { return cycle_; }

  /// When false, agents learn from their own reward only (exchanges are still recorded).
  void set_exchanges_enabled(bool enabled) noexcept { exchanges_enabled_ = enabled; }

 private:
  SimConfig config_;
  std::shared_ptr<const agent::AgentModels> models_;
  std::vector<agent::Agent> agents_;
  Rng volume_rng_;
  std::vector<Volumes> current_;
  int cycle_ = 0;
  double delay_sum_ = 0.0;
  bool exchanges_enabled_ = true;
};

RunResult run(const SimConfig& config, const ControllerAssignment& controllers,
              std::shared_ptr<const agent::AgentModels> models, bool exchanges_enabled = true);

/// Models with the defaults rebased onto this config's cycle and capacity.
std::shared_ptr<const agent::AgentModels> default_models(const SimConfig& config);

}  // namespace crossfire::sim
