#pragma once

#include <string>
#include <vector>

#include "crossfire/fuzzy.hpp"

// Shipped membership functions and rule tables. Every table here can be replaced
// from the experiment config; these are the defaults.
namespace crossfire::tables {

/// low / medium / high over [0, 3500] veh/h, triangles peaking at 0, 1750, 3500.
fuzzy::LinguisticVariable vehicle_variable(const std::string& name);

/// low / medium / high over [0, 120] s.
fuzzy::LinguisticVariable delay_variable(const std::string& name = "delay");

/// short / medium / long over [0, 100] s; used as weight-system inputs.
fuzzy::LinguisticVariable green_input_variable(const std::string& name);

/// Five green-duration terms over [0, 100] s peaking at 20, 35, 50, 65, 80.
fuzzy::LinguisticVariable green_output_variable(const std::string& name = "green_ns");

/// Five reward terms over [-3, 3].
fuzzy::LinguisticVariable reward_output_variable(const std::string& name = "reward");

/// low / medium / high over [0, 1].
fuzzy::LinguisticVariable weight_output_variable(const std::string& name = "weight");

/// (v_ns, v_we) -> green_ns. Output term index is 2 + i_ns - i_we, symmetric about 50 s.
fuzzy::FuzzyInferenceSystem default_green_fis();

/// (volume, delay) -> reward. Output term index is 4 - (i_volume + i_delay).
fuzzy::FuzzyInferenceSystem default_reward_fis();

/// (own_green, neighbor_green, volume) -> weight. Score i_volume + |i_own - i_neighbor|
/// maps 0 -> low, 1..2 -> medium, 3..4 -> high.
fuzzy::FuzzyInferenceSystem default_weight_fis();

/// State partition for fuzzy Q-learning: v_ns and v_we vehicle variables.
std::vector<fuzzy::LinguisticVariable> default_fql_inputs();

/// Full Cartesian grid of antecedents over `inputs`, first variable slowest.
std::vector<std::vector<fuzzy::Clause>> grid_antecedents(const std::vector<fuzzy::LinguisticVariable>& inputs);

}  // namespace crossfire::tables
