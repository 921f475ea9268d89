#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "crossfire/fuzzy.hpp"
#include "crossfire/learning.hpp"
#include "crossfire/rng.hpp"
#include "crossfire/traffic_model.hpp"

namespace crossfire::agent {

enum class ControllerKind { fixed_time, fuzzy, q_learning, fuzzy_q_learning, game_fql };

/// Short CLI names: fixed, fuzzy, ql, fql, gfql.
std::string_view short_name(ControllerKind kind) noexcept;
std::optional<ControllerKind> parse_kind(std::string_view name) noexcept;

struct ControllerSpec {
  ControllerKind kind = ControllerKind::fixed_time;
  double fixed_green = 60.0;  // fixed_time only
};

struct LearnerSettings {
  double alpha = 0.5;
  double gamma = 0.7;
  double eta = 0.1;
  learning::UpdateForm form = learning::UpdateForm::standard;
  double epsilon = 0.1;
  double epsilon_decay = 0.995;
  double epsilon_floor = 0.01;
  int volume_bins = 5;
  std::vector<double> candidate_actions{20, 30, 40, 50, 60, 70, 80};
  double convergence_threshold = 1e-4;
};

/// Fuzzy partition of the observed volumes into rule activations.
class StatePartition {
 public:
  explicit StatePartition(std::vector<fuzzy::LinguisticVariable> inputs);

  std::size_t rule_count() const noexcept { return antecedents_.size(); }
  std::vector<double> strengths(double v_ns, double v_we) const;

 private:
  std::vector<fuzzy::LinguisticVariable> inputs_;
  fuzzy::VariableRegistry registry_;
  std::vector<fuzzy::FuzzyRule> antecedents_;
};

/// Immutable models shared by every agent of a run.
struct AgentModels {
  double cycle = traffic::kDefaultCycle;
  double min_green = 20.0;
  double volume_max = traffic::kDefaultCapacity;
  fuzzy::FuzzyInferenceSystem green_fis;
  learning::RewardEvaluator reward;
  learning::WeightEvaluator weight;
  StatePartition partition;
  LearnerSettings learner;

  double max_green() const noexcept { return cycle - min_green; }
  static AgentModels defaults();
};

struct NeighborExchange {
  std::size_t sender = 0;
  double green = 0.0;   // sender's NS green, s
  double reward = 0.0;  // sender's own reward
};

struct LearnOutcome {
  double own_reward = 0.0;
  double total_reward = 0.0;
  std::vector<learning::NeighborReward> neighbors;  // weights filled for game_fql only
};

/// One intersection controller. Call decide() with the cycle's volumes, then
/// learn_step() once the delay, neighbor exchanges, and next volumes are known.
class Agent {
 public:
  Agent(ControllerSpec spec, std::shared_ptr<const AgentModels> models, Rng rng);

  ControllerKind kind() const noexcept { return spec_.kind; }
  bool learns() const noexcept;

  traffic::PhaseSchedule decide(double v_ns, double v_we);

  /// Own reward for `delay` at the volumes passed to the last decide().
  double reward(double delay) const;

  LearnOutcome learn_step(double delay, std::span<const NeighborExchange> exchanges, double next_v_ns,
                          double next_v_we);

  /// True once at least one update happened and the largest value change of the
  /// most recent update is below the convergence threshold.
  bool has_converged() const noexcept;

  double last_green() const noexcept { return last_green_; }
  double observed_volume() const noexcept { return 0.5 * (v_ns_ + v_we_); }
  double epsilon() const noexcept { return epsilon_; }
  std::size_t update_count() const noexcept { return updates_; }
  double last_change() const noexcept { return last_change_; }

  const learning::QTable* q_table() const noexcept { return std::get_if<learning::QTable>(&learner_); }
  const learning::FqlRuleBase* rule_base() const noexcept { return std::get_if<learning::FqlRuleBase>(&learner_); }

  /// Tabular state id for a volume pair.
  std::size_t discretize(double v_ns, double v_we) const;

 private:
  double clamp_green(double green) const;

  ControllerSpec spec_;
  std::shared_ptr<const AgentModels> models_;
  Rng rng_;
  std::variant<std::monostate, learning::QTable, learning::FqlRuleBase> learner_;

  double v_ns_ = 0.0, v_we_ = 0.0;
  double last_green_ = 0.0;
  double epsilon_ = 0.0;
  std::size_t state_ = 0, action_ = 0;
  std::optional<learning::FqlStepRecord> step_;
  std::size_t updates_ = 0;
  double last_change_ = 0.0;
};

}  // namespace crossfire::agent
