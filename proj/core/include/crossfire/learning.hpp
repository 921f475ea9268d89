#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "crossfire/fuzzy.hpp"
#include "crossfire/rng.hpp"

namespace crossfire::learning {

/// `standard` is textbook Q-learning. `literal` applies the printed update verbatim,
/// keeping its extra -Q(s,a) term (or -gamma*Q(s,a) in the neighbor-coupled form).
enum class UpdateForm { standard, literal };

inline constexpr double kRewardLo = -3.0;
inline constexpr double kRewardHi = 3.0;

struct NeighborReward {
  std::size_t neighbor = 0;
  double reward = 0.0;  // r_j, in [-3, 3]
  double weight = 0.0;  // f(i, j), in [0, 1]
};

/// r_i + sum_j f(i,j) r_j. Throws std::domain_error when a weight or reward leaves its range.
double coupled_reward(double own_reward, std::span<const NeighborReward> neighbors);

/// Dense state-action table, zero-initialized.
class QTable {
 public:
  QTable(std::size_t states, std::size_t actions, double alpha = 0.5, double gamma = 0.7,
         UpdateForm form = UpdateForm::standard);

  std::size_t states() const noexcept { return states_; }
  std::size_t actions() const noexcept { return actions_; }
  double alpha() const noexcept { return alpha_; }
  double gamma() const noexcept { return gamma_; }
  UpdateForm form() const noexcept { return form_; }

  double value(std::size_t s, std::size_t a) const { return values_.at(index(s, a)); }
  void set(std::size_t s, std::size_t a, double q) { values_.at(index(s, a)) = q; }
  std::span<const double> row(std::size_t s) const;
  double max_value(std::size_t s) const;
  std::size_t greedy_action(std::size_t s) const;

 private:
  std::size_t index(std::size_t s, std::size_t a) const;

  std::size_t states_, actions_;
  double alpha_, gamma_;
  UpdateForm form_;
  std::vector<double> values_;
};

/// Applies one update and returns the new Q(s, a).
double q_update(QTable& table, std::size_t s, std::size_t a, double reward, std::size_t s_next);

/// Neighbor-coupled update: the reward is replaced by coupled_reward(). With no neighbors
/// and the standard form this is bit-identical to q_update.
double gq_update(QTable& table, std::size_t s, std::size_t a, double own_reward,
                 std::span<const NeighborReward> neighbors, std::size_t s_next);

/// Lowest index among the maxima.
std::size_t argmax(std::span<const double> values);

/// Explores with probability epsilon (uniform over all indices), otherwise greedy.
/// Always consumes one uniform draw, plus one integer draw when exploring.
std::size_t epsilon_greedy(std::span<const double> values, double epsilon, Rng& rng);

/// Per-rule candidate actions a[i, j] with values q[i, j].
class FqlRuleBase {
 public:
  FqlRuleBase(std::vector<std::vector<double>> candidate_actions, double epsilon);
  FqlRuleBase(std::size_t rules, const std::vector<double>& candidate_actions, double epsilon);

  std::size_t rule_count() const noexcept { return actions_.size(); }
  std::size_t action_count() const noexcept { return actions_.front().size(); }
  double action(std::size_t rule, std::size_t j) const { return actions_.at(rule).at(j); }
  double q(std::size_t rule, std::size_t j) const { return q_.at(rule).at(j); }
  void set_q(std::size_t rule, std::size_t j, double value) { q_.at(rule).at(j) = value; }
  std::span<const double> q_row(std::size_t rule) const { return q_.at(rule); }

  double epsilon() const noexcept { return epsilon_; }
  void set_epsilon(double epsilon);

 private:
  std::vector<std::vector<double>> actions_;
  std::vector<std::vector<double>> q_;
  double epsilon_;
};

struct FqlStepRecord {
  std::vector<double> phi;           // normalized firing strengths
  std::vector<std::size_t> chosen;   // action index per rule
  double action = 0.0;               // sum_i phi_i a[i, chosen_i]
  double q_value = 0.0;              // sum_i phi_i q[i, chosen_i]
};

/// Normalizes `strengths` and runs epsilon-greedy per rule. Every rule draws, fired or not,
/// so stream consumption is independent of the inputs. Throws fuzzy::NoRuleFired on zero mass.
FqlStepRecord fql_select(const FqlRuleBase& rb, std::span<const double> strengths, Rng& rng);

struct FqlParams {
  double gamma = 0.7;
  double eta = 0.1;
  UpdateForm form = UpdateForm::standard;
  bool neighbor_coupled = false;  // selects the literal variant: -gamma*Q instead of -Q
};

struct FqlUpdate {
  double td_error = 0.0;
  double max_change = 0.0;
};

/// V(s') = sum_i phi'_i max_j q[i, j]; delta = r + gamma V(s') - Q(s, a);
/// q[i, chosen_i] += eta * delta * phi_i.
FqlUpdate fql_update(FqlRuleBase& rb, const FqlStepRecord& record, double reward,
                     std::span<const double> next_strengths, const FqlParams& params);

/// Normalizes to unit sum; returns an empty vector when all strengths are zero.
std::vector<double> normalize(std::span<const double> strengths);

/// Reward FIS wrapper: inputs "volume" and "delay", clamped to their universes.
class RewardEvaluator {
 public:
  explicit RewardEvaluator(fuzzy::FuzzyInferenceSystem fis);
  double operator()(double volume, double delay) const;
  const fuzzy::FuzzyInferenceSystem& fis() const noexcept { return fis_; }

 private:
  fuzzy::FuzzyInferenceSystem fis_;
};

/// Weight FIS wrapper: inputs "own_green", "neighbor_green", "volume".
class WeightEvaluator {
 public:
  explicit WeightEvaluator(fuzzy::FuzzyInferenceSystem fis);
  double operator()(double own_green, double neighbor_green, double volume) const;
  const fuzzy::FuzzyInferenceSystem& fis() const noexcept { return fis_; }

 private:
  fuzzy::FuzzyInferenceSystem fis_;
};

/// Clamps each named input to its variable's universe, then evaluates with the
/// universe midpoint as the no-rule-fired fallback.
double evaluate_clamped(const fuzzy::FuzzyInferenceSystem& fis, fuzzy::CrispInputs inputs);

}  // namespace crossfire::learning
