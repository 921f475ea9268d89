#include "crossfire/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace crossfire::fuzzy {

MembershipFunction::MembershipFunction(double a, double b, double c, double d, bool triangular)
    : a_(a), b_(b), c_(c), d_(d), triangular_(triangular) {
  if (!(std::isfinite(a) && std::isfinite(b) && std::isfinite(c) && std::isfinite(d))) {
    throw std::invalid_argument("membership function parameters must be finite");
  }
  if (!(a <= b && b <= c && c <= d)) {
    throw std::invalid_argument("membership function parameters must be nondecreasing");
  }
}

MembershipFunction MembershipFunction::triangular(double a, double b, double c) {
  if (!(a <= b && b <= c)) throw std::invalid_argument("triangular parameters must satisfy a <= b <= c");
  return {a, b, b, c, true};
}

MembershipFunction MembershipFunction::trapezoidal(double a, double b, double c, double d) {
  return {a, b, c, d, false};
}

double MembershipFunction::degree(double x) const noexcept {
  if (x < a_ || x > d_) return 0.0;
  if (x >= b_ && x <= c_) return 1.0;
  double mu = x < b_ ? (x - a_) / (b_ - a_) : (d_ - x) / (d_ - c_);
  return std::clamp(mu, 0.0, 1.0);
}

double membership_degree(const MembershipFunction& mf, double x) noexcept { return mf.degree(x); }

LinguisticVariable::LinguisticVariable(std::string name, double lo, double hi, std::vector<Term> terms)
    : name_(std::move(name)), lo_(lo), hi_(hi), terms_(std::move(terms)) {
  if (!(lo < hi)) throw std::invalid_argument("variable '" + name_ + "': universe must satisfy lo < hi");
  if (terms_.empty()) throw std::invalid_argument("variable '" + name_ + "': no terms");

  std::set<std::string> labels;
  std::vector<double> breaks{lo_, hi_};
  for (const auto& t : terms_) {
    if (!labels.insert(t.label).second) {
      throw std::invalid_argument("variable '" + name_ + "': duplicate term '" + t.label + "'");
    }
    if (t.mf.support_lo() < lo_ || t.mf.support_hi() > hi_) {
      throw std::invalid_argument("variable '" + name_ + "': term '" + t.label + "' leaves the universe");
    }
    for (double p : {t.mf.support_lo(), t.mf.core_lo(), t.mf.core_hi(), t.mf.support_hi()}) breaks.push_back(p);
  }

  // Positivity of every term is constant between consecutive breakpoints, so
  // checking breakpoints and the midpoints between them decides coverage exactly.
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  auto covered = [&](double x) {
    return std::any_of(terms_.begin(), terms_.end(), [x](const Term& t) { return t.mf.degree(x) > 0.0; });
  };
  for (std::size_t i = 0; i < breaks.size(); ++i) {
    std::vector<double> probes{breaks[i]};
    if (i + 1 < breaks.size()) probes.push_back(0.5 * (breaks[i] + breaks[i + 1]));
    for (double x : probes) {
      if (!covered(x)) {
        throw std::invalid_argument("variable '" + name_ + "': universe point " + std::to_string(x) +
                                    " has no term with positive degree");
      }
    }
  }
}

std::size_t LinguisticVariable::term_index(const std::string& label) const {
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].label == label) return i;
  }
  throw std::invalid_argument("variable '" + name_ + "' has no term '" + label + "'");
}

void VariableRegistry::add(LinguisticVariable var) {
  std::string key = var.name();
  if (!vars_.emplace(key, std::move(var)).second) {
    throw std::invalid_argument("duplicate variable '" + key + "'");
  }
}

const LinguisticVariable& VariableRegistry::get(const std::string& name) const {
  auto it = vars_.find(name);
  if (it == vars_.end()) throw std::invalid_argument("unknown variable '" + name + "'");
  return it->second;
}

double fire_strength(const FuzzyRule& rule, const CrispInputs& inputs, const VariableRegistry& registry) {
  double strength = 1.0;
  for (const auto& clause : rule.antecedent) {
    auto it = inputs.find(clause.variable);
    if (it == inputs.end()) throw std::invalid_argument("missing input variable '" + clause.variable + "'");
    strength = std::min(strength, registry.get(clause.variable).term(clause.term).degree(it->second));
  }
  return strength;
}

double centroid(std::span<const std::pair<double, double>> samples) {
  double num = 0.0;
  double mass = 0.0;
  for (const auto& [x, mu] : samples) {
    num += x * mu;
    mass += mu;
  }
  if (!(mass > 0.0)) throw NoRuleFired();
  return num / mass;
}

FuzzyInferenceSystem::FuzzyInferenceSystem(std::vector<LinguisticVariable> inputs, LinguisticVariable output,
                                           std::vector<FuzzyRule> rules, int samples)
    : inputs_(std::move(inputs)), output_(std::move(output)), rules_(std::move(rules)), samples_(samples) {
  if (rules_.empty()) throw std::invalid_argument("fuzzy system has no rules");
  if (samples_ < 2) throw std::invalid_argument("centroid needs at least two samples");
  for (const auto& var : inputs_) registry_.add(var);
  for (const auto& rule : rules_) {
    if (rule.antecedent.empty()) throw std::invalid_argument("rule with empty antecedent");
    for (const auto& clause : rule.antecedent) registry_.get(clause.variable).term_index(clause.term);
    if (rule.consequent.variable != output_.name()) {
      throw std::invalid_argument("rule consequent names '" + rule.consequent.variable + "', expected '" +
                                  output_.name() + "'");
    }
    consequent_index_.push_back(output_.term_index(rule.consequent.term));
  }
}

std::vector<double> FuzzyInferenceSystem::consequent_levels(const CrispInputs& inputs) const {
  std::vector<double> levels(output_.terms().size(), 0.0);
  for (std::size_t r = 0; r < rules_.size(); ++r) {
    double& level = levels[consequent_index_[r]];
    level = std::max(level, fire_strength(rules_[r], inputs, registry_));
  }
  return levels;
}

double FuzzyInferenceSystem::evaluate(const CrispInputs& inputs) const {
  const auto levels = consequent_levels(inputs);
  if (std::none_of(levels.begin(), levels.end(), [](double l) { return l > 0.0; })) throw NoRuleFired();

  const auto& terms = output_.terms();
  const double step = (output_.hi() - output_.lo()) / (samples_ - 1);
  std::vector<std::pair<double, double>> aggregate(static_cast<std::size_t>(samples_));
  for (int k = 0; k < samples_; ++k) {
    const double x = k + 1 == samples_ ? output_.hi() : output_.lo() + k * step;
    double mu = 0.0;
    for (std::size_t t = 0; t < terms.size(); ++t) {
      if (levels[t] > 0.0) mu = std::max(mu, std::min(levels[t], terms[t].mf.degree(x)));
    }
    aggregate[static_cast<std::size_t>(k)] = {x, mu};
  }
  return std::clamp(centroid(aggregate), output_.lo(), output_.hi());
}

double FuzzyInferenceSystem::evaluate_or(const CrispInputs& inputs, double fallback) const {
  try {
    return evaluate(inputs);
  } catch (const NoRuleFired&) {
    return fallback;
  }
}

double evaluate_mamdani(const FuzzyInferenceSystem& fis, const CrispInputs& inputs) { return fis.evaluate(inputs); }

}  // namespace crossfire::fuzzy
