#include "crossfire/fis_tables.hpp"

#include <cstdlib>

namespace crossfire::tables {

using fuzzy::Clause;
using fuzzy::FuzzyRule;
using fuzzy::LinguisticVariable;
using fuzzy::MembershipFunction;

namespace {

const std::vector<std::string> kLevels{"low", "medium", "high"};
const std::vector<std::string> kGreenLevels{"short", "medium", "long"};
const std::vector<std::string> kGreenOut{"very_short", "short", "medium", "long", "very_long"};
const std::vector<std::string> kRewardOut{"very_negative", "negative", "zero", "positive", "very_positive"};

LinguisticVariable three_level(const std::string& name, double lo, double hi, const std::vector<std::string>& labels) {
  const double mid = 0.5 * (lo + hi);
  return LinguisticVariable(name, lo, hi,
                            {{labels[0], MembershipFunction::triangular(lo, lo, mid)},
                             {labels[1], MembershipFunction::triangular(lo, mid, hi)},
                             {labels[2], MembershipFunction::triangular(mid, hi, hi)}});
}

}  // namespace

LinguisticVariable vehicle_variable(const std::string& name) { return three_level(name, 0.0, 3500.0, kLevels); }

LinguisticVariable delay_variable(const std::string& name) { return three_level(name, 0.0, 120.0, kLevels); }

LinguisticVariable green_input_variable(const std::string& name) {
  return three_level(name, 0.0, 100.0, kGreenLevels);
}

LinguisticVariable green_output_variable(const std::string& name) {
  return LinguisticVariable(name, 0.0, 100.0,
                            {{kGreenOut[0], MembershipFunction::trapezoidal(0, 0, 20, 35)},
                             {kGreenOut[1], MembershipFunction::triangular(20, 35, 50)},
                             {kGreenOut[2], MembershipFunction::triangular(35, 50, 65)},
                             {kGreenOut[3], MembershipFunction::triangular(50, 65, 80)},
                             {kGreenOut[4], MembershipFunction::trapezoidal(65, 80, 100, 100)}});
}

LinguisticVariable reward_output_variable(const std::string& name) {
  return LinguisticVariable(name, -3.0, 3.0,
                            {{kRewardOut[0], MembershipFunction::triangular(-3.0, -3.0, -1.5)},
                             {kRewardOut[1], MembershipFunction::triangular(-3.0, -1.5, 0.0)},
                             {kRewardOut[2], MembershipFunction::triangular(-1.5, 0.0, 1.5)},
                             {kRewardOut[3], MembershipFunction::triangular(0.0, 1.5, 3.0)},
                             {kRewardOut[4], MembershipFunction::triangular(1.5, 3.0, 3.0)}});
}

LinguisticVariable weight_output_variable(const std::string& name) { return three_level(name, 0.0, 1.0, kLevels); }

fuzzy::FuzzyInferenceSystem default_green_fis() {
  std::vector<FuzzyRule> rules;
  for (int ns = 0; ns < 3; ++ns) {
    for (int we = 0; we < 3; ++we) {
      rules.push_back({{{"v_ns", kLevels[ns]}, {"v_we", kLevels[we]}}, {"green_ns", kGreenOut[2 + ns - we]}});
    }
  }
  return {{vehicle_variable("v_ns"), vehicle_variable("v_we")}, green_output_variable(), std::move(rules)};
}

fuzzy::FuzzyInferenceSystem default_reward_fis() {
  std::vector<FuzzyRule> rules;
  for (int v = 0; v < 3; ++v) {
    for (int d = 0; d < 3; ++d) {
      rules.push_back({{{"volume", kLevels[v]}, {"delay", kLevels[d]}}, {"reward", kRewardOut[4 - v - d]}});
    }
  }
  return {{vehicle_variable("volume"), delay_variable()}, reward_output_variable(), std::move(rules)};
}

fuzzy::FuzzyInferenceSystem default_weight_fis() {
  std::vector<FuzzyRule> rules;
  for (int own = 0; own < 3; ++own) {
    for (int nb = 0; nb < 3; ++nb) {
      for (int v = 0; v < 3; ++v) {
        const int score = v + std::abs(own - nb);
        const int out = score == 0 ? 0 : (score <= 2 ? 1 : 2);
        rules.push_back({{{"own_green", kGreenLevels[own]}, {"neighbor_green", kGreenLevels[nb]}, {"volume", kLevels[v]}},
                         {"weight", kLevels[out]}});
      }
    }
  }
  return {{green_input_variable("own_green"), green_input_variable("neighbor_green"), vehicle_variable("volume")},
          weight_output_variable(), std::move(rules)};
}

std::vector<LinguisticVariable> default_fql_inputs() { return {vehicle_variable("v_ns"), vehicle_variable("v_we")}; }

std::vector<std::vector<Clause>> grid_antecedents(const std::vector<LinguisticVariable>& inputs) {
  std::vector<std::vector<Clause>> out{{}};
  for (const auto& var : inputs) {
    std::vector<std::vector<Clause>> next;
    for (const auto& prefix : out) {
      for (const auto& term : var.terms()) {
        auto row = prefix;
        row.push_back({var.name(), term.label});
        next.push_back(std::move(row));
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace crossfire::tables
