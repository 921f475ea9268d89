#include "crossfire/agent.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "crossfire/fis_tables.hpp"

namespace crossfire::agent {

namespace {

constexpr std::array<std::pair<ControllerKind, std::string_view>, 5> kNames{{
    {ControllerKind::fixed_time, "fixed"},
    {ControllerKind::fuzzy, "fuzzy"},
    {ControllerKind::q_learning, "ql"},
    {ControllerKind::fuzzy_q_learning, "fql"},
    {ControllerKind::game_fql, "gfql"},
}};

}  // namespace

std::string_view short_name(ControllerKind kind) noexcept {
  for (const auto& [k, name] : kNames) {
    if (k == kind) return name;
  }
  return "?";
}

std::optional<ControllerKind> parse_kind(std::string_view name) noexcept {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

StatePartition::StatePartition(std::vector<fuzzy::LinguisticVariable> inputs) : inputs_(std::move(inputs)) {
  if (inputs_.size() != 2 || inputs_[0].name() != "v_ns" || inputs_[1].name() != "v_we") {
    throw std::invalid_argument("state partition expects inputs 'v_ns' and 'v_we'");
  }
  for (const auto& var : inputs_) registry_.add(var);
  for (auto& clauses : tables::grid_antecedents(inputs_)) {
    antecedents_.push_back({std::move(clauses), {}});
  }
}

std::vector<double> StatePartition::strengths(double v_ns, double v_we) const {
  const fuzzy::CrispInputs in{{"v_ns", std::clamp(v_ns, inputs_[0].lo(), inputs_[0].hi())},
                              {"v_we", std::clamp(v_we, inputs_[1].lo(), inputs_[1].hi())}};
  std::vector<double> out;
  out.reserve(antecedents_.size());
  for (const auto& rule : antecedents_) out.push_back(fuzzy::fire_strength(rule, in, registry_));
  return out;
}

AgentModels AgentModels::defaults() {
  return AgentModels{
      .green_fis = tables::default_green_fis(),
      .reward = learning::RewardEvaluator(tables::default_reward_fis()),
      .weight = learning::WeightEvaluator(tables::default_weight_fis()),
      .partition = StatePartition(tables::default_fql_inputs()),
      .learner = {},
  };
}

Agent::Agent(ControllerSpec spec, std::shared_ptr<const AgentModels> models, Rng rng)
    : spec_(spec), models_(std::move(models)), rng_(rng) {
  if (!models_) throw std::invalid_argument("agent needs models");
  const auto& m = *models_;
  const auto& ls = m.learner;
  if (!(m.min_green > 0.0 && m.min_green <= 0.5 * m.cycle)) throw std::invalid_argument("min_green outside (0, T/2]");
  if (spec_.kind == ControllerKind::fixed_time && !(spec_.fixed_green > 0.0 && spec_.fixed_green < m.cycle)) {
    throw std::invalid_argument("fixed green time outside (0, T)");
  }
  for (double a : ls.candidate_actions) {
    if (!(a >= m.min_green && a <= m.max_green())) {
      throw std::invalid_argument("candidate action " + std::to_string(a) + " outside the green clamp");
    }
  }
  epsilon_ = ls.epsilon;
  switch (spec_.kind) {
    case ControllerKind::q_learning:
      if (ls.volume_bins < 1) throw std::invalid_argument("volume_bins must be >= 1");
      learner_.emplace<learning::QTable>(static_cast<std::size_t>(ls.volume_bins * ls.volume_bins),
                                         ls.candidate_actions.size(), ls.alpha, ls.gamma, ls.form);
      break;
    case ControllerKind::fuzzy_q_learning:
    case ControllerKind::game_fql:
      learner_.emplace<learning::FqlRuleBase>(m.partition.rule_count(), ls.candidate_actions, ls.epsilon);
      break;
    default:
      break;
  }
}

bool Agent::learns() const noexcept { return !std::holds_alternative<std::monostate>(learner_); }

double Agent::clamp_green(double green) const { return std::clamp(green, models_->min_green, models_->max_green()); }

std::size_t Agent::discretize(double v_ns, double v_we) const {
  const int bins = models_->learner.volume_bins;
  auto bin = [&](double v) {
    const int b = static_cast<int>(std::floor(v / models_->volume_max * bins));
    return static_cast<std::size_t>(std::clamp(b, 0, bins - 1));
  };
  return bin(v_ns) * static_cast<std::size_t>(bins) + bin(v_we);
}

traffic::PhaseSchedule Agent::decide(double v_ns, double v_we) {
  if (!(v_ns >= 0.0 && v_we >= 0.0)) throw std::domain_error("volumes must be nonnegative");
  v_ns_ = v_ns;
  v_we_ = v_we;
  const auto& m = *models_;
  const double fallback = 0.5 * m.cycle;
  double green = fallback;

  switch (spec_.kind) {
    case ControllerKind::fixed_time:
      green = spec_.fixed_green;
      break;
    case ControllerKind::fuzzy:
      green = learning::evaluate_clamped(m.green_fis, {{"v_ns", v_ns}, {"v_we", v_we}});
      break;
    case ControllerKind::q_learning: {
      auto& table = std::get<learning::QTable>(learner_);
      state_ = discretize(v_ns, v_we);
      action_ = learning::epsilon_greedy(table.row(state_), epsilon_, rng_);
      green = m.learner.candidate_actions[action_];
      break;
    }
    case ControllerKind::fuzzy_q_learning:
    case ControllerKind::game_fql: {
      auto& rb = std::get<learning::FqlRuleBase>(learner_);
      rb.set_epsilon(epsilon_);
      try {
        step_ = learning::fql_select(rb, m.partition.strengths(v_ns, v_we), rng_);
        green = step_->action;
      } catch (const fuzzy::NoRuleFired&) {
        step_.reset();
      }
      break;
    }
  }
  last_green_ = clamp_green(green);
  return traffic::PhaseSchedule::make(m.cycle, last_green_);
}

double Agent::reward(double delay) const { return models_->reward(observed_volume(), delay); }

LearnOutcome Agent::learn_step(double delay, std::span<const NeighborExchange> exchanges, double next_v_ns,
                               double next_v_we) {
  if (!(delay >= 0.0)) throw std::domain_error("delay must be nonnegative");
  LearnOutcome out;
  out.own_reward = reward(delay);
  out.total_reward = out.own_reward;
  if (!learns()) return out;

  const auto& m = *models_;
  const auto& ls = m.learner;
  if (spec_.kind == ControllerKind::game_fql) {
    for (const auto& ex : exchanges) {
      out.neighbors.push_back({ex.sender, ex.reward, m.weight(last_green_, ex.green, observed_volume())});
    }
    out.total_reward = learning::coupled_reward(out.own_reward, out.neighbors);
  }

  if (auto* table = std::get_if<learning::QTable>(&learner_)) {
    const double before = table->value(state_, action_);
    const double after = learning::q_update(*table, state_, action_, out.own_reward, discretize(next_v_ns, next_v_we));
    last_change_ = std::abs(after - before);
    ++updates_;
  } else if (auto* rb = std::get_if<learning::FqlRuleBase>(&learner_); rb && step_) {
    const learning::FqlParams params{.gamma = ls.gamma,
                                     .eta = ls.eta,
                                     .form = ls.form,
                                     .neighbor_coupled = spec_.kind == ControllerKind::game_fql};
    last_change_ = learning::fql_update(*rb, *step_, out.total_reward, m.partition.strengths(next_v_ns, next_v_we),
                                        params)
                       .max_change;
    ++updates_;
  }
  if (epsilon_ > ls.epsilon_floor) epsilon_ = std::max(ls.epsilon_floor, epsilon_ * ls.epsilon_decay);
  return out;
}

bool Agent::has_converged() const noexcept {
  return learns() && updates_ > 0 && last_change_ < models_->learner.convergence_threshold;
}

}  // namespace crossfire::agent
