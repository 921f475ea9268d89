#pragma once

#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace crossfire::fuzzy {

/// Raised when evaluation finds no rule with positive strength.
class NoRuleFired : public std::runtime_error {
 public:
  NoRuleFired() : std::runtime_error("no rule fired") {}
};

/// Piecewise-linear membership function: triangle (a,b,c) or trapezoid (a,b,c,d).
/// A degenerate left or right edge (a == b, c == d) acts as a shoulder.
class MembershipFunction {
 public:
  static MembershipFunction triangular(double a, double b, double c);
  static MembershipFunction trapezoidal(double a, double b, double c, double d);

  double degree(double x) const noexcept;

  bool is_triangular() const noexcept { return triangular_; }
  double support_lo() const noexcept { return a_; }
  double support_hi() const noexcept { return d_; }
  double core_lo() const noexcept { return b_; }
  double core_hi() const noexcept { return c_; }

 private:
  MembershipFunction(double a, double b, double c, double d, bool triangular);

  double a_, b_, c_, d_;
  bool triangular_;
};

struct Term {
  std::string label;
  MembershipFunction mf;
};

class LinguisticVariable {
 public:
  LinguisticVariable(std::string name, double lo, double hi, std::vector<Term> terms);

  const std::string& name() const noexcept { return name_; }
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }

  /// Index of the term with this label; throws std::invalid_argument if absent.
  std::size_t term_index(const std::string& label) const;
  const MembershipFunction& term(const std::string& label) const { return terms_[term_index(label)].mf; }

 private:
  std::string name_;
  double lo_, hi_;
  std::vector<Term> terms_;
};

struct Clause {
  std::string variable;
  std::string term;
};

struct FuzzyRule {
  std::vector<Clause> antecedent;
  Clause consequent;
};

using CrispInputs = std::map<std::string, double, std::less<>>;

/// Looks up variables by name for rule evaluation.
class VariableRegistry {
 public:
  void add(LinguisticVariable var);
  const LinguisticVariable& get(const std::string& name) const;
  bool contains(const std::string& name) const { return vars_.contains(name); }

 private:
  std::map<std::string, LinguisticVariable, std::less<>> vars_;
};

double membership_degree(const MembershipFunction& mf, double x) noexcept;

/// Min-conjunction of the antecedent degrees. Missing inputs throw std::invalid_argument.
double fire_strength(const FuzzyRule& rule, const CrispInputs& inputs, const VariableRegistry& registry);

/// Sum(x * mu) / Sum(mu). Throws NoRuleFired when all mu are zero.
double centroid(std::span<const std::pair<double, double>> samples);

inline constexpr int kCentroidSamples = 1001;

/// Mamdani system: AND = min, implication = clip, aggregation = max, centroid defuzzification.
class FuzzyInferenceSystem {
 public:
  FuzzyInferenceSystem(std::vector<LinguisticVariable> inputs, LinguisticVariable output, std::vector<FuzzyRule> rules,
                       int samples = kCentroidSamples);

  /// Crisp output in [output.lo, output.hi]. Throws NoRuleFired on zero aggregate mass.
  double evaluate(const CrispInputs& inputs) const;

  /// Same as evaluate() but returns `fallback` when no rule fires.
  double evaluate_or(const CrispInputs& inputs, double fallback) const;

  /// Clip level per output term (max over rules sharing that consequent).
  std::vector<double> consequent_levels(const CrispInputs& inputs) const;

  const std::vector<LinguisticVariable>& inputs() const noexcept { return inputs_; }
  const LinguisticVariable& output() const noexcept { return output_; }
  const std::vector<FuzzyRule>& rules() const noexcept { return rules_; }
  int samples() const noexcept { return samples_; }

 private:
  std::vector<LinguisticVariable> inputs_;
  LinguisticVariable output_;
  std::vector<FuzzyRule> rules_;
  VariableRegistry registry_;
  std::vector<std::size_t> consequent_index_;
  int samples_;
};

double evaluate_mamdani(const FuzzyInferenceSystem& fis, const CrispInputs& inputs);

}  // namespace crossfire::fuzzy
