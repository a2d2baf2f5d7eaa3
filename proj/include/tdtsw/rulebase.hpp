#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tdtsw/errors.hpp"
#include "tdtsw/fuzzy_core.hpp"

namespace tdtsw {

/// `<variable> IS <label>`
struct RuleAtom {
  std::string variable;
  std::string label;

  friend bool operator==(const RuleAtom&, const RuleAtom&) = default;
};

inline std::string to_string(const RuleAtom& atom) { return atom.variable + " IS " + atom.label; }

/// IF a1 AND a2 AND ... THEN consequent.
class Rule {
 public:
  Rule(std::string id, std::vector<RuleAtom> antecedents, RuleAtom consequent)
      : id_(std::move(id)), antecedents_(std::move(antecedents)), consequent_(std::move(consequent)) {
    if (!is_identifier(id_)) throw ConfigError("invalid rule id '" + id_ + "'");
    if (antecedents_.empty()) throw ConfigError("rule " + id_ + " has no antecedents");
    for (std::size_t i = 0; i < antecedents_.size(); ++i) {
      if (antecedents_[i].variable == consequent_.variable) {
        throw ConfigError("rule " + id_ + " uses output variable " + consequent_.variable + " as an antecedent");
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (antecedents_[j].variable == antecedents_[i].variable) {
          throw ConfigError("rule " + id_ + " repeats antecedent variable " + antecedents_[i].variable);
        }
      }
    }
  }

  const std::string& id() const { return id_; }
  const std::vector<RuleAtom>& antecedents() const { return antecedents_; }
  const RuleAtom& consequent() const { return consequent_; }

  friend bool operator==(const Rule&, const Rule&) = default;

 private:
  std::string id_;
  std::vector<RuleAtom> antecedents_;
  RuleAtom consequent_;
};

inline std::string to_string(const Rule& rule) {
  std::string text = "IF ";
  for (std::size_t i = 0; i < rule.antecedents().size(); ++i) {
    if (i > 0) text += " AND ";
    text += to_string(rule.antecedents()[i]);
  }
  return text + " THEN " + to_string(rule.consequent());
}

struct VariableDegrees {
  std::string variable;
  MembershipVector degrees;

  friend bool operator==(const VariableDegrees&, const VariableDegrees&) = default;
};

using FuzzifiedInputs = std::vector<VariableDegrees>;

inline const MembershipVector& degrees_of(const FuzzifiedInputs& inputs, std::string_view variable) {
  for (const auto& entry : inputs) {
    if (entry.variable == variable) return entry.degrees;
  }
  throw LookupError("no fuzzified degrees for variable " + std::string(variable));
}

// Conjunction by min over the antecedents.
inline double firing_strength(const Rule& rule, const FuzzifiedInputs& fuzzified) {
  double strength = 1.0;
  for (const auto& atom : rule.antecedents()) {
    const auto& degrees = degrees_of(fuzzified, atom.variable);
    auto degree = degrees.find(atom.label);
    if (!degree) {
      throw LookupError("rule " + rule.id() + ": no degree for " + to_string(atom));
    }
    strength = std::min(strength, *degree);
  }
  return strength;
}

/// Single-output rule base together with the variables it refers to.
class RuleBase {
 public:
  RuleBase(std::vector<LinguisticVariable> inputs, LinguisticVariable output, std::vector<Rule> rules)
      : inputs_(std::move(inputs)), output_(std::move(output)), rules_(std::move(rules)) {
    if (inputs_.empty()) throw ConfigError("rule base needs at least one input variable");
    for (std::size_t i = 0; i < inputs_.size(); ++i) {
      if (inputs_[i].name() == output_.name()) {
        throw ConfigError("variable " + output_.name() + " is declared as both input and output");
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (inputs_[j].name() == inputs_[i].name()) {
          throw ConfigError("duplicate variable " + inputs_[i].name());
        }
      }
    }
    if (rules_.empty()) throw ConfigError("rule base is empty");
    for (std::size_t i = 0; i < rules_.size(); ++i) {
      const Rule& rule = rules_[i];
      for (std::size_t j = 0; j < i; ++j) {
        if (rules_[j].id() == rule.id()) throw ConfigError("duplicate rule id " + rule.id());
      }
      for (const auto& atom : rule.antecedents()) {
        const LinguisticVariable* var = find_input(atom.variable);
        if (var == nullptr) throw LookupError("rule " + rule.id() + ": unknown variable " + atom.variable);
        if (!var->rank_of(atom.label)) {
          throw LookupError("rule " + rule.id() + ": unknown label '" + atom.label + "' for variable " + atom.variable);
        }
      }
      if (rule.consequent().variable != output_.name()) {
        throw ConfigError("rule " + rule.id() + ": consequent variable " + rule.consequent().variable +
                          " is not the output variable " + output_.name());
      }
      if (!output_.rank_of(rule.consequent().label)) {
        throw LookupError("rule " + rule.id() + ": unknown label '" + rule.consequent().label +
                          "' for variable " + output_.name());
      }
    }
  }

  const std::vector<LinguisticVariable>& inputs() const { return inputs_; }
  const LinguisticVariable& output() const { return output_; }
  const std::vector<Rule>& rules() const { return rules_; }

  const LinguisticVariable* find_input(std::string_view name) const {
    for (const auto& var : inputs_) {
      if (var.name() == name) return &var;
    }
    return nullptr;
  }

  const LinguisticVariable& input(std::string_view name) const {
    const auto* var = find_input(name);
    if (var == nullptr) throw LookupError("unknown variable " + std::string(name));
    return *var;
  }

  friend bool operator==(const RuleBase&, const RuleBase&) = default;

 private:
  std::vector<LinguisticVariable> inputs_;
  LinguisticVariable output_;
  std::vector<Rule> rules_;
};

// Rules 1-9: SW follows the higher of the D and T levels.
inline RuleBase default_tdtsw_rules() {
  auto vars = default_tdtsw_variables();
  struct Row {
    const char* d;
    const char* t;
    const char* sw;
  };
  static constexpr Row table[] = {
      {"Low", "Low", "Low"},         {"Low", "Medium", "Medium"},   {"Low", "High", "High"},
      {"Medium", "Low", "Medium"},   {"Medium", "Medium", "Medium"}, {"Medium", "High", "High"},
      {"High", "Low", "High"},       {"High", "Medium", "High"},     {"High", "High", "High"},
  };
  std::vector<Rule> rules;
  int index = 1;
  for (const auto& row : table) {
    rules.emplace_back("R" + std::to_string(index++),
                       std::vector<RuleAtom>{{"D", row.d}, {"T", row.t}}, RuleAtom{"SW", row.sw});
  }
  return RuleBase({vars.democracy, vars.transparency}, vars.wellbeing, std::move(rules));
}

}  // namespace tdtsw
