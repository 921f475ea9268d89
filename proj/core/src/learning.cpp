#include "crossfire/learning.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace crossfire::learning {

namespace {

void check_unit(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
}

// Shared update kernel. `literal_coef` scales the extra -Q(s,a) term inside the bracket
// of the printed forms; it is unused for the standard form.
double apply_update(QTable& table, std::size_t s, std::size_t a, double reward, std::size_t s_next,
                    double literal_coef) {
  const double q = table.value(s, a);
  const double target = reward + table.gamma() * table.max_value(s_next);
  const double alpha = table.alpha();
  const double updated = table.form() == UpdateForm::standard
                             ? (1.0 - alpha) * q + alpha * target
                             : (1.0 - alpha) * q + alpha * (target - literal_coef * q);
  table.set(s, a, updated);
  return updated;
}

}  // namespace

double coupled_reward(double own_reward, std::span<const NeighborReward> neighbors) {
  double total = own_reward;
  for (const auto& n : neighbors) {
    if (!(n.weight >= 0.0 && n.weight <= 1.0)) {
      throw std::domain_error("neighbor weight " + std::to_string(n.weight) + " outside [0, 1]");
    }
    if (!(n.reward >= kRewardLo && n.reward <= kRewardHi)) {
      throw std::domain_error("neighbor reward " + std::to_string(n.reward) + " outside [-3, 3]");
    }
    total += n.weight * n.reward;
  }
  return total;
}

QTable::QTable(std::size_t states, std::size_t actions, double alpha, double gamma, UpdateForm form)
    : states_(states), actions_(actions), alpha_(alpha), gamma_(gamma), form_(form), values_(states * actions, 0.0) {
  if (states == 0 || actions == 0) throw std::invalid_argument("Q table needs at least one state and action");
  check_unit(alpha, "alpha");
  check_unit(gamma, "gamma");
}

std::size_t QTable::index(std::size_t s, std::size_t a) const {
  if (s >= states_ || a >= actions_) throw std::out_of_range("Q table index out of range");
  return s * actions_ + a;
}

std::span<const double> QTable::row(std::size_t s) const {
  return std::span<const double>(values_).subspan(index(s, 0), actions_);
}

double QTable::max_value(std::size_t s) const {
  auto r = row(s);
  return *std::max_element(r.begin(), r.end());
}

std::size_t QTable::greedy_action(std::size_t s) const { return argmax(row(s)); }

double q_update(QTable& table, std::size_t s, std::size_t a, double reward, std::size_t s_next) {
  return apply_update(table, s, a, reward, s_next, 1.0);
}

double gq_update(QTable& table, std::size_t s, std::size_t a, double own_reward,
                 std::span<const NeighborReward> neighbors, std::size_t s_next) {
  return apply_update(table, s, a, coupled_reward(own_reward, neighbors), s_next, table.gamma());
}

std::size_t argmax(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("argmax of empty range");
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

std::size_t epsilon_greedy(std::span<const double> values, double epsilon, Rng& rng) {
  if (values.empty()) throw std::invalid_argument("epsilon_greedy over empty range");
  if (rng.uniform01() < epsilon) {
    return static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(values.size()) - 1));
  }
  return argmax(values);
}

FqlRuleBase::FqlRuleBase(std::vector<std::vector<double>> candidate_actions, double epsilon)
    : actions_(std::move(candidate_actions)), epsilon_(epsilon) {
  if (actions_.empty()) throw std::invalid_argument("rule base has no rules");
  const std::size_t j = actions_.front().size();
  if (j == 0) throw std::invalid_argument("rules need at least one candidate action");
  for (const auto& row : actions_) {
    if (row.size() != j) throw std::invalid_argument("all rules need the same number of candidate actions");
  }
  check_unit(epsilon, "epsilon");
  q_.assign(actions_.size(), std::vector<double>(j, 0.0));
}

FqlRuleBase::FqlRuleBase(std::size_t rules, const std::vector<double>& candidate_actions, double epsilon)
    : FqlRuleBase(std::vector<std::vector<double>>(rules, candidate_actions), epsilon) {}

void FqlRuleBase::set_epsilon(double epsilon) {
  check_unit(epsilon, "epsilon");
  epsilon_ = epsilon;
}

std::vector<double> normalize(std::span<const double> strengths) {
  double mass = 0.0;
  for (double s : strengths) mass += s;
  if (!(mass > 0.0)) return {};
  std::vector<double> out(strengths.begin(), strengths.end());
  for (double& s : out) s /= mass;
  return out;
}

FqlStepRecord fql_select(const FqlRuleBase& rb, std::span<const double> strengths, Rng& rng) {
  if (strengths.size() != rb.rule_count()) throw std::invalid_argument("strength count differs from rule count");
  FqlStepRecord rec;
  rec.phi = normalize(strengths);
  if (rec.phi.empty()) throw fuzzy::NoRuleFired();
  rec.chosen.resize(rb.rule_count());
  for (std::size_t i = 0; i < rb.rule_count(); ++i) {
    const std::size_t j = epsilon_greedy(rb.q_row(i), rb.epsilon(), rng);
    rec.chosen[i] = j;
    rec.action += rec.phi[i] * rb.action(i, j);
    rec.q_value += rec.phi[i] * rb.q(i, j);
  }
  return rec;
}

FqlUpdate fql_update(FqlRuleBase& rb, const FqlStepRecord& record, double reward,
                     std::span<const double> next_strengths, const FqlParams& params) {
  if (record.phi.size() != rb.rule_count() || record.chosen.size() != rb.rule_count()) {
    throw std::invalid_argument("step record does not match rule base");
  }
  double next_value = 0.0;
  const auto next_phi = normalize(next_strengths);
  for (std::size_t i = 0; i < next_phi.size(); ++i) {
    auto row = rb.q_row(i);
    next_value += next_phi[i] * *std::max_element(row.begin(), row.end());
  }

  FqlUpdate out;
  out.td_error = reward + params.gamma * next_value - record.q_value;
  if (params.form == UpdateForm::literal) {
    out.td_error -= (params.neighbor_coupled ? params.gamma : 1.0) * record.q_value;
  }
  for (std::size_t i = 0; i < rb.rule_count(); ++i) {
    const double change = params.eta * out.td_error * record.phi[i];
    if (change == 0.0) continue;
    rb.set_q(i, record.chosen[i], rb.q(i, record.chosen[i]) + change);
    out.max_change = std::max(out.max_change, std::abs(change));
  }
  return out;
}

double evaluate_clamped(const fuzzy::FuzzyInferenceSystem& fis, fuzzy::CrispInputs inputs) {
  for (const auto& var : fis.inputs()) {
    auto it = inputs.find(var.name());
    if (it != inputs.end()) it->second = std::clamp(it->second, var.lo(), var.hi());
  }
  const auto& out = fis.output();
  return fis.evaluate_or(inputs, 0.5 * (out.lo() + out.hi()));
}

RewardEvaluator::RewardEvaluator(fuzzy::FuzzyInferenceSystem fis) : fis_(std::move(fis)) {
  if (fis_.output().lo() < kRewardLo || fis_.output().hi() > kRewardHi) {
    throw std::invalid_argument("reward output universe must lie within [-3, 3]");
  }
}

double RewardEvaluator::operator()(double volume, double delay) const {
  return evaluate_clamped(fis_, {{"volume", volume}, {"delay", delay}});
}

WeightEvaluator::WeightEvaluator(fuzzy::FuzzyInferenceSystem fis) : fis_(std::move(fis)) {
  if (fis_.output().lo() < 0.0 || fis_.output().hi() > 1.0) {
    throw std::invalid_argument("weight output universe must lie within [0, 1]");
  }
}

double WeightEvaluator::operator()(double own_green, double neighbor_green, double volume) const {
  return evaluate_clamped(fis_, {{"own_green", own_green}, {"neighbor_green", neighbor_green}, {"volume", volume}});
}

}  // namespace crossfire::learning
