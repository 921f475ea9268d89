#include "crossfire/network_sim.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace crossfire::sim {

Topology Topology::star() { return from_edges(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}}); }

Topology Topology::from_edges(std::size_t nodes, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  if (nodes == 0) throw std::invalid_argument("topology needs at least one node");
  Topology t;
  t.adjacency_.resize(nodes);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (auto [a, b] : edges) {
    if (a >= nodes || b >= nodes) throw std::invalid_argument("edge endpoint out of range");
    if (a == b) throw std::invalid_argument("self-loop at node " + std::to_string(a));
    if (!seen.insert(std::minmax(a, b)).second) {
      throw std::invalid_argument("duplicate edge " + std::to_string(a) + "-" + std::to_string(b));
    }
    t.adjacency_[a].push_back(b);
    t.adjacency_[b].push_back(a);
  }
  for (auto& adj : t.adjacency_) std::sort(adj.begin(), adj.end());
  return t;
}

std::vector<std::pair<std::size_t, std::size_t>> Topology::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < adjacency_.size(); ++a) {
    for (std::size_t b : adjacency_[a]) {
      if (a < b) out.emplace_back(a, b);
    }
  }
  return out;
}

void SimConfig::validate() const {
  if (!(cycle > 0.0) || !std::isfinite(cycle)) throw std::invalid_argument("cycle must be positive");
  if (!(capacity > 0.0) || !std::isfinite(capacity)) throw std::invalid_argument("capacity must be positive");
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (volume_min < 0 || volume_max < volume_min) throw std::invalid_argument("volume range must satisfy 0 <= min <= max");
}

std::vector<double> RunResult::delay_series() const {
  std::vector<double> out;
  out.reserve(cycles.size());
  for (const auto& c : cycles) out.push_back(c.network_delay);
  return out;
}

std::vector<Volumes> generate_volumes(Rng& rng, std::size_t nodes, int lo, int hi) {
  std::vector<Volumes> out(nodes);
  for (auto& v : out) {
    v.ns = static_cast<int>(rng.uniform_int(lo, hi));
    v.we = static_cast<int>(rng.uniform_int(lo, hi));
  }
  return out;
}

double network_delay(const std::vector<IntersectionRecord>& nodes) {
  double weighted = 0.0;
  double volume = 0.0;
  for (const auto& n : nodes) {
    const double v = n.volumes.ns + n.volumes.we;
    weighted += n.delay * v;
    volume += v;
  }
  return volume > 0.0 ? weighted / volume : 0.0;
}

std::shared_ptr<const agent::AgentModels> default_models(const SimConfig& config) {
  auto models = agent::AgentModels::defaults();
  models.cycle = config.cycle;
  models.volume_max = config.capacity;
  return std::make_shared<const agent::AgentModels>(std::move(models));
}

Network::Network(SimConfig config, const ControllerAssignment& controllers,
                 std::shared_ptr<const agent::AgentModels> models)
    : config_(std::move(config)), models_(std::move(models)), volume_rng_(Rng::derive(config_.seed, 0)) {
  config_.validate();
  if (!models_) throw std::invalid_argument("network needs models");
  if (models_->cycle != config_.cycle) throw std::invalid_argument("model cycle differs from simulation cycle");
  const std::size_t n = config_.topology.size();
  if (controllers.size() != 1 && controllers.size() != n) {
    throw std::invalid_argument("controller assignment must have 1 or " + std::to_string(n) + " entries");
  }
  agents_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    agents_.emplace_back(controllers.size() == 1 ? controllers.front() : controllers[i], models_,
                         Rng::derive(config_.seed, i + 1));
  }
  current_ = generate_volumes(volume_rng_, n, config_.volume_min, config_.volume_max);
}

CycleRecord Network::step_cycle() {
  const std::size_t n = agents_.size();
  CycleRecord rec;
  rec.cycle = ++cycle_;
  rec.nodes.resize(n);

  // Every agent decides from this cycle's volumes before any exchange happens.
  std::vector<traffic::PhaseSchedule> schedules;
  schedules.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    schedules.push_back(agents_[i].decide(current_[i].ns, current_[i].we));
  }

  for (std::size_t i = 0; i < n; ++i) {
    auto& node = rec.nodes[i];
    node.volumes = current_[i];
    node.green_ns = schedules[i].green_ns();
    node.delay = traffic::intersection_delay({static_cast<double>(current_[i].ns), config_.capacity},
                                             {static_cast<double>(current_[i].we), config_.capacity}, schedules[i])
                     .intersection;
    node.reward = agents_[i].reward(node.delay);
  }

  const auto next = generate_volumes(volume_rng_, n, config_.volume_min, config_.volume_max);

  std::vector<agent::NeighborExchange> inbox;
  for (std::size_t i = 0; i < n; ++i) {
    inbox.clear();
    for (std::size_t j : config_.topology.neighbors(i)) {
      inbox.push_back({j, rec.nodes[j].green_ns, rec.nodes[j].reward});
    }
    const auto outcome = agents_[i].learn_step(rec.nodes[i].delay,
                                               exchanges_enabled_ ? std::span<const agent::NeighborExchange>(inbox)
                                                                  : std::span<const agent::NeighborExchange>(),
                                               next[i].ns, next[i].we);
    for (const auto& ex : inbox) {
      ExchangeRecord er{ex.sender, ex.reward, std::nullopt};
      for (const auto& nr : outcome.neighbors) {
        if (nr.neighbor == ex.sender) er.weight = nr.weight;
      }
      rec.nodes[i].received.push_back(er);
    }
  }
  current_ = next;

  rec.network_delay = network_delay(rec.nodes);
  delay_sum_ += rec.network_delay;
  rec.running_mean = delay_sum_ / cycle_;
  return rec;
}

namespace {

void fnv1a(std::uint64_t& h, std::uint32_t value) {
  for (int b = 0; b < 4; ++b) {
    h ^= (value >> (8 * b)) & 0xFFu;
    h *= 0x100000001B3ULL;
  }
}

}  // namespace

RunResult run(const SimConfig& config, const ControllerAssignment& controllers,
              std::shared_ptr<const agent::AgentModels> models, bool exchanges_enabled) {
  Network net(config, controllers, std::move(models));
  net.set_exchanges_enabled(exchanges_enabled);
  RunResult out;
  out.cycles.reserve(static_cast<std::size_t>(config.horizon));
  out.volume_hash = 0xCBF29CE484222325ULL;
  for (int k = 0; k < config.horizon; ++k) {
    out.cycles.push_back(net.step_cycle());
    for (const auto& node : out.cycles.back().nodes) {
      fnv1a(out.volume_hash, static_cast<std::uint32_t>(node.volumes.ns));
      fnv1a(out.volume_hash, static_cast<std::uint32_t>(node.volumes.we));
    }
  }
  out.total_average_delay = out.cycles.back().running_mean;
  return out;
}

}  // namespace crossfire::sim
