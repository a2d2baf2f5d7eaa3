#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tdtsw/errors.hpp"
#include "tdtsw/fuzzy_core.hpp"
#include "tdtsw/rulebase.hpp"

namespace tdtsw {

enum class DefuzzMethod { centroid, mean_of_maximum };

inline constexpr std::size_t kDefuzzSamples = 1001;
inline constexpr double kDegreeTolerance = 1e-9;

inline std::string_view to_string(DefuzzMethod method) {
  return method == DefuzzMethod::centroid ? "centroid" : "mom";
}

inline std::optional<DefuzzMethod> parse_defuzz_method(std::string_view text) {
  if (text == "centroid") return DefuzzMethod::centroid;
  if (text == "mom" || text == "mean-of-maximum") return DefuzzMethod::mean_of_maximum;
  return std::nullopt;
}

enum class Color { red, orange, green };

inline std::string_view to_string(Color color) {
  switch (color) {
    case Color::red:
      return "red";
    case Color::orange:
      return "orange";
    case Color::green:
      return "green";
  }
  return "red";
}

// Lowest rank is red, highest is green, everything between is orange.
inline Color color_for_rank(std::size_t rank, std::size_t label_count) {
  if (rank == 0) return Color::red;
  if (rank + 1 >= label_count) return Color::green;
  return Color::orange;
}

struct CrispInput {
  std::string variable;
  double value;

  friend bool operator==(const CrispInput&, const CrispInput&) = default;
};

using CrispInputs = std::vector<CrispInput>;

struct RuleFiring {
  std::string rule_id;
  double degree;

  friend bool operator==(const RuleFiring&, const RuleFiring&) = default;
};

/// Full trace of one evaluation.
struct InferenceResult {
  CrispInputs inputs;
  FuzzifiedInputs fuzzified;
  std::vector<RuleFiring> firings;
  MembershipVector aggregated;
  double crisp = 0.0;
  std::string label;
  Color color = Color::red;

  friend bool operator==(const InferenceResult&, const InferenceResult&) = default;
};

/// Reduce an output envelope to one crisp value by sampling it at `samples`
/// evenly spaced points across the universe.
///
/// Centroid uses trapezoid weights (half weight at both ends). Mean of maximum
/// averages every sample within kDegreeTolerance of the peak.
template <typename Envelope>
  requires std::invocable<const Envelope&, double>
double defuzzify(const Envelope& envelope, const UniverseInterval& universe, DefuzzMethod method,
                 std::size_t samples = kDefuzzSamples) {
  if (samples < 2) throw ConfigError("defuzzification needs at least 2 samples");
  const double lo = universe.lo();
  const double width = universe.hi() - universe.lo();
  const double step_count = static_cast<double>(samples - 1);
  auto position = [&](std::size_t i) {
    return i + 1 == samples ? universe.hi() : lo + width * (static_cast<double>(i) / step_count);
  };

  if (method == DefuzzMethod::centroid) {
    double moment = 0.0;
    double area = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
      const double x = position(i);
      const double weight = (i == 0 || i + 1 == samples) ? 0.5 : 1.0;
      const double mu = static_cast<double>(envelope(x));
      moment += weight * x * mu;
      area += weight * mu;
    }
    if (!(area > 0.0)) throw DegenerateOutputError("output envelope has zero area; no crisp value exists");
    return universe.clamp(moment / area);
  }

  std::vector<double> mu(samples);
  double peak = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    mu[i] = static_cast<double>(envelope(position(i)));
    peak = std::max(peak, mu[i]);
  }
  if (!(peak > 0.0)) throw DegenerateOutputError("output envelope is zero everywhere; no crisp value exists");
  double total = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    if (mu[i] >= peak - kDegreeTolerance) {
      total += position(i);
      ++count;
    }
  }
  return universe.clamp(total / static_cast<double>(count));
}

// Pointwise max over labels of the label's membership function clipped at its
// aggregated degree.
inline auto clipped_envelope(const LinguisticVariable& output, const MembershipVector& aggregated) {
  return [&output, &aggregated](double x) {
    double value = 0.0;
    const auto& terms = output.terms();
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const double clipped = std::min(aggregated.degrees()[i], terms[i].function.degree(x));
      value = std::max(value, clipped);
    }
    return value;
  };
}

// Argmax; ties go to the lower-ranked label.
inline std::string classify_label(const MembershipVector& aggregated, const LinguisticVariable& variable) {
  if (aggregated.empty()) throw ConfigError("cannot classify an empty membership vector");
  std::size_t best = 0;
  double best_degree = -1.0;
  for (const auto& term : variable.terms()) {
    auto degree = aggregated.find(term.label);
    if (!degree) continue;
    if (*degree > best_degree) {
      best_degree = *degree;
      best = *variable.rank_of(term.label);
    }
  }
  if (best_degree < 0.0) throw LookupError("membership vector shares no labels with variable " + variable.name());
  return variable.terms()[best].label;
}

inline InferenceResult infer(const RuleBase& rulebase, const CrispInputs& inputs,
                             DefuzzMethod method = DefuzzMethod::centroid) {
  for (const auto& in : inputs) {
    if (rulebase.find_input(in.variable) == nullptr) throw LookupError("unknown input variable " + in.variable);
  }

  InferenceResult result;
  for (const auto& var : rulebase.inputs()) {
    auto it = std::find_if(inputs.begin(), inputs.end(), [&](const CrispInput& in) { return in.variable == var.name(); });
    if (it == inputs.end()) continue;
    result.inputs.push_back(*it);
    result.fuzzified.push_back({var.name(), fuzzify(var, it->value)});
  }

  const LinguisticVariable& output = rulebase.output();
  std::vector<double> aggregated(output.size(), 0.0);
  for (const auto& rule : rulebase.rules()) {
    for (const auto& atom : rule.antecedents()) {
      auto it = std::find_if(result.inputs.begin(), result.inputs.end(),
                             [&](const CrispInput& in) { return in.variable == atom.variable; });
      if (it == result.inputs.end()) throw LookupError("missing input for variable " + atom.variable);
    }
    const double strength = firing_strength(rule, result.fuzzified);
    result.firings.push_back({rule.id(), strength});
    const std::size_t rank = *output.rank_of(rule.consequent().label);
    aggregated[rank] = std::max(aggregated[rank], strength);
  }
  result.aggregated = MembershipVector(output.labels(), std::move(aggregated));

  result.crisp = defuzzify(clipped_envelope(output, result.aggregated), output.universe(), method);
  result.label = classify_label(result.aggregated, output);
  result.color = color_for_rank(*output.rank_of(result.label), output.size());
  return result;
}

/// Variable -> label -> crisp representative point.
using Representatives = std::map<std::string, std::map<std::string, double, std::less<>>, std::less<>>;

// Membership-function peaks of every input label.
inline Representatives peak_representatives(const RuleBase& rulebase) {
  Representatives reps;
  for (const auto& var : rulebase.inputs()) {
    for (const auto& term : var.terms()) reps[var.name()][term.label] = term.function.peak();
  }
  return reps;
}

struct ScenarioCell {
  std::string id;
  std::string row_label;
  std::string column_label;
  InferenceResult result;

  friend bool operator==(const ScenarioCell&, const ScenarioCell&) = default;
};

/// Row-major grid over the labels of the first two input variables.
struct ScenarioTable {
  std::string row_variable;
  std::string column_variable;
  std::vector<std::string> row_labels;
  std::vector<std::string> column_labels;
  std::vector<ScenarioCell> cells;

  friend bool operator==(const ScenarioTable&, const ScenarioTable&) = default;
};

inline ScenarioTable scenario_grid(const RuleBase& rulebase, const Representatives& representatives,
                                   DefuzzMethod method = DefuzzMethod::centroid) {
  if (rulebase.inputs().size() != 2) {
    throw ConfigError("scenario grid needs exactly two input variables, rule base has " +
                      std::to_string(rulebase.inputs().size()));
  }
  const auto& rows = rulebase.inputs()[0];
  const auto& cols = rulebase.inputs()[1];
  auto point = [&](const LinguisticVariable& var, const std::string& label) {
    auto var_it = representatives.find(var.name());
    if (var_it == representatives.end()) throw ConfigError("no representatives for variable " + var.name());
    auto label_it = var_it->second.find(label);
    if (label_it == var_it->second.end()) {
      throw ConfigError("no representative for " + var.name() + " IS " + label);
    }
    return label_it->second;
  };

  ScenarioTable table{rows.name(), cols.name(), rows.labels(), cols.labels(), {}};
  int index = 1;
  for (const auto& row : rows.terms()) {
    for (const auto& col : cols.terms()) {
      CrispInputs inputs{{rows.name(), point(rows, row.label)}, {cols.name(), point(cols, col.label)}};
      table.cells.push_back({"R" + std::to_string(index++), row.label, col.label, infer(rulebase, inputs, method)});
    }
  }
  return table;
}

}  // namespace tdtsw
