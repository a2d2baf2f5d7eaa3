#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "tdtsw/errors.hpp"
#include "tdtsw/numeric_text.hpp"

namespace tdtsw {

inline bool is_identifier(std::string_view text) {
  if (text.empty()) return false;
  auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(text.front())) return false;
  return std::all_of(text.begin() + 1, text.end(), [&](char c) { return alpha(c) || digit(c); });
}

/// Closed numeric range a linguistic variable is defined over.
class UniverseInterval {
 public:
  UniverseInterval(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi)) throw ConfigError("universe bounds must be finite");
    if (!(lo < hi)) throw ConfigError("universe requires lo < hi, got [" + format_shortest(lo) + ", " + format_shortest(hi) + "]");
  }

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double clamp(double x) const { return std::clamp(x, lo_, hi_); }
  bool contains(double x) const { return x >= lo_ && x <= hi_; }

  friend bool operator==(const UniverseInterval&, const UniverseInterval&) = default;

 private:
  double lo_;
  double hi_;
};

inline UniverseInterval unit_universe() { return {0.0, 1.0}; }

/// Piecewise-linear membership function: a triangle (a, b, c) or a
/// trapezoid (a, b, c, d). Triangles are stored as trapezoids with b == c.
class MembershipFunction {
 public:
  enum class Shape { triangular, trapezoidal };

  static MembershipFunction triangular(double a, double b, double c) {
    return MembershipFunction(Shape::triangular, {a, b, b, c});
  }
  static MembershipFunction trapezoidal(double a, double b, double c, double d) {
    return MembershipFunction(Shape::trapezoidal, {a, b, c, d});
  }

  Shape shape() const { return shape_; }

  // Breakpoints as written: three for a triangle, four for a trapezoid.
  std::vector<double> breakpoints() const {
    if (shape_ == Shape::triangular) return {points_[0], points_[1], points_[3]};
    return {points_[0], points_[1], points_[2], points_[3]};
  }

  // Left foot, core start, core end, right foot.
  const std::array<double, 4>& corners() const { return points_; }

  // Midpoint of the plateau where the degree is 1.
  double peak() const { return 0.5 * (points_[1] + points_[2]); }

  // Degree at x without clamping; zero outside [a, d].
  double degree(double x) const {
    const auto [a, b, c, d] = points_;
    if (x < a || x > d) return 0.0;
    if (x >= b && x <= c) return 1.0;
    if (x < b) return (x - a) / (b - a);
    return (d - x) / (d - c);
  }

  // Smallest positive gap between consecutive breakpoints (Lipschitz bound is its inverse).
  std::optional<double> min_positive_gap() const {
    std::optional<double> best;
    for (std::size_t i = 0; i + 1 < points_.size(); ++i) {
      double gap = points_[i + 1] - points_[i];
      if (gap > 0.0 && (!best || gap < *best)) best = gap;
    }
    return best;
  }

  void validate_against(const UniverseInterval& universe) const {
    for (double p : points_) {
      if (!universe.contains(p)) {
        throw ConfigError("breakpoint " + format_shortest(p) + " lies outside the universe [" +
                          format_shortest(universe.lo()) + ", " + format_shortest(universe.hi()) + "]");
      }
    }
  }

  friend bool operator==(const MembershipFunction&, const MembershipFunction&) = default;

 private:
  MembershipFunction(Shape shape, std::array<double, 4> points) : shape_(shape), points_(points) {
    for (double p : points_) {
      if (!std::isfinite(p)) throw ConfigError("membership breakpoints must be finite");
    }
    if (!std::is_sorted(points_.begin(), points_.end())) {
      throw ConfigError("membership breakpoints must be non-decreasing");
    }
  }

  Shape shape_;
  std::array<double, 4> points_;
};

// Degree of membership of x, after clamping x into the universe.
inline double membership(const MembershipFunction& mf, double x, const UniverseInterval& universe) {
  if (!std::isfinite(x)) throw DomainError("membership input must be finite");
  return mf.degree(universe.clamp(x));
}

struct Term {
  std::string label;
  MembershipFunction function;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Named variable over a universe with ordered, labeled membership functions.
/// Term order is the label ranking: index 0 is the lowest.
class LinguisticVariable {
 public:
  LinguisticVariable(std::string name, UniverseInterval universe, std::vector<Term> terms)
      : name_(std::move(name)), universe_(universe), terms_(std::move(terms)) {
    if (!is_identifier(name_)) throw ConfigError("invalid variable name '" + name_ + "'");
    if (terms_.empty()) throw ConfigError("variable " + name_ + " needs at least one term");
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (!is_identifier(terms_[i].label)) {
        throw ConfigError("invalid label '" + terms_[i].label + "' for variable " + name_);
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (terms_[j].label == terms_[i].label) {
          throw ConfigError("duplicate label '" + terms_[i].label + "' for variable " + name_);
        }
      }
      terms_[i].function.validate_against(universe_);
    }
  }

  const std::string& name() const { return name_; }
  const UniverseInterval& universe() const { return universe_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  std::optional<std::size_t> rank_of(std::string_view label) const {
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (terms_[i].label == label) return i;
    }
    return std::nullopt;
  }

  const Term& term(std::string_view label) const {
    auto rank = rank_of(label);
    if (!rank) throw LookupError("unknown label '" + std::string(label) + "' for variable " + name_);
    return terms_[*rank];
  }

  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) out.push_back(t.label);
    return out;
  }

  friend bool operator==(const LinguisticVariable&, const LinguisticVariable&) = default;

 private:
  std::string name_;
  UniverseInterval universe_;
  std::vector<Term> terms_;
};

/// Label -> degree, one entry per term of the source variable, in term order.
class MembershipVector {
 public:
  MembershipVector() = default;
  MembershipVector(std::vector<std::string> labels, std::vector<double> degrees)
      : labels_(std::move(labels)), degrees_(std::move(degrees)) {
    if (labels_.size() != degrees_.size()) throw ConfigError("membership vector size mismatch");
    for (double d : degrees_) {
      if (!(d >= 0.0 && d <= 1.0)) throw DomainError("membership degree outside [0, 1]");
    }
  }

  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<double>& degrees() const { return degrees_; }
  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }

  std::optional<double> find(std::string_view label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (labels_[i] == label) return degrees_[i];
    }
    return std::nullopt;
  }

  double at(std::string_view label) const {
    auto d = find(label);
    if (!d) throw LookupError("no degree for label '" + std::string(label) + "'");
    return *d;
  }

  double sum() const {
    double total = 0.0;
    for (double d : degrees_) total += d;
    return total;
  }

  friend bool operator==(const MembershipVector&, const MembershipVector&) = default;

 private:
  std::vector<std::string> labels_;
  std::vector<double> degrees_;
};

inline MembershipVector fuzzify(const LinguisticVariable& var, double x) {
  std::vector<double> degrees;
  degrees.reserve(var.size());
  for (const auto& term : var.terms()) degrees.push_back(membership(term.function, x, var.universe()));
  return {var.labels(), std::move(degrees)};
}

// Low / Medium / High Ruspini partition over [0, 1].
inline std::vector<Term> default_terms() {
  return {
      {"Low", MembershipFunction::triangular(0.0, 0.0, 0.5)},
      {"Medium", MembershipFunction::triangular(0.0, 0.5, 1.0)},
      {"High", MembershipFunction::triangular(0.5, 1.0, 1.0)},
  };
}

struct TdtswVariables {
  LinguisticVariable democracy;
  LinguisticVariable transparency;
  LinguisticVariable wellbeing;
};

inline TdtswVariables default_tdtsw_variables() {
  return {
      LinguisticVariable("D", unit_universe(), default_terms()),
      LinguisticVariable("T", unit_universe(), default_terms()),
      LinguisticVariable("SW", unit_universe(), default_terms()),
  };
}

}  // namespace tdtsw
