#pragma once

// Propositional encoding of the axiom (aDTSW), postulate (pDTSW) and theorem
// (tDTSW) systems. Decorated symbols ("SW up", "Trust up", probabilistic "~P"
// consequents) are separate atoms; the formulas only express implication
// structure between them.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tdtsw/errors.hpp"

namespace tdtsw::logic {

enum class Atom {
  D,
  T,
  SW,
  I,
  A,
  C_part,
  R,
  E_engage,
  RD,
  C_content,
  Trust,
  EG,
  SW_up,
  SW_upup,
  Trust_up,
  P_SW_up,
  P_Trust_up,
  P_EG,
};

inline constexpr std::array<std::pair<Atom, std::string_view>, 18> kAtomNames{{
    {Atom::D, "D"},
    {Atom::T, "T"},
    {Atom::SW, "SW"},
    {Atom::I, "I"},
    {Atom::A, "A"},
    {Atom::C_part, "C_part"},
    {Atom::R, "R"},
    {Atom::E_engage, "E_engage"},
    {Atom::RD, "RD"},
    {Atom::C_content, "C_content"},
    {Atom::Trust, "Trust"},
    {Atom::EG, "EG"},
    {Atom::SW_up, "SW_up"},
    {Atom::SW_upup, "SW_upup"},
    {Atom::Trust_up, "Trust_up"},
    {Atom::P_SW_up, "P_SW_up"},
    {Atom::P_Trust_up, "P_Trust_up"},
    {Atom::P_EG, "P_EG"},
}};

inline std::string_view name(Atom atom) {
  for (const auto& [a, n] : kAtomNames) {
    if (a == atom) return n;
  }
  return "?";
}

inline std::optional<Atom> atom_from_name(std::string_view text) {
  for (const auto& [a, n] : kAtomNames) {
    if (n == text) return a;
  }
  return std::nullopt;
}

// Orders atoms by name so listings come out lexicographically.
struct ByName {
  bool operator()(Atom lhs, Atom rhs) const { return name(lhs) < name(rhs); }
};

using AtomSet = std::set<Atom, ByName>;
using Assignment = std::map<Atom, bool, ByName>;

class Formula {
 public:
  enum class Kind { atom, negation, conjunction, disjunction, implication };

  static Formula var(Atom atom) { return Formula(Kind::atom, atom, nullptr, nullptr); }

  static Formula negation(Formula f) {
    return Formula(Kind::negation, Atom::D, std::make_shared<const Formula>(std::move(f)), nullptr);
  }

  static Formula binary(Kind kind, Formula lhs, Formula rhs) {
    return Formula(kind, Atom::D, std::make_shared<const Formula>(std::move(lhs)),
                   std::make_shared<const Formula>(std::move(rhs)));
  }

  Kind kind() const { return kind_; }
  Atom atom() const { return atom_; }
  const Formula& lhs() const { return *lhs_; }
  const Formula& rhs() const { return *rhs_; }

  friend bool operator==(const Formula& a, const Formula& b) {
    if (a.kind_ != b.kind_) return false;
    switch (a.kind_) {
      case Kind::atom:
        return a.atom_ == b.atom_;
      case Kind::negation:
        return *a.lhs_ == *b.lhs_;
      default:
        return *a.lhs_ == *b.lhs_ && *a.rhs_ == *b.rhs_;
    }
  }

 private:
  Formula(Kind kind, Atom atom, std::shared_ptr<const Formula> lhs, std::shared_ptr<const Formula> rhs)
      : kind_(kind), atom_(atom), lhs_(std::move(lhs)), rhs_(std::move(rhs)) {}

  Kind kind_;
  Atom atom_;
  std::shared_ptr<const Formula> lhs_;
  std::shared_ptr<const Formula> rhs_;
};

inline Formula var(Atom a) { return Formula::var(a); }
inline Formula operator!(Formula f) { return Formula::negation(std::move(f)); }
inline Formula operator&&(Formula p, Formula q) {
  return Formula::binary(Formula::Kind::conjunction, std::move(p), std::move(q));
}
inline Formula operator||(Formula p, Formula q) {
  return Formula::binary(Formula::Kind::disjunction, std::move(p), std::move(q));
}
inline Formula implies(Formula p, Formula q) {
  return Formula::binary(Formula::Kind::implication, std::move(p), std::move(q));
}

// Left-nested conjunction of a non-empty list.
inline Formula conjunction(std::vector<Formula> parts) {
  if (parts.empty()) throw ConfigError("conjunction of zero formulas");
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = std::move(acc) && parts[i];
  return acc;
}

// Top-level conjuncts of a left- or right-nested conjunction.
inline std::vector<Formula> conjuncts(const Formula& f) {
  if (f.kind() != Formula::Kind::conjunction) return {f};
  auto out = conjuncts(f.lhs());
  auto right = conjuncts(f.rhs());
  out.insert(out.end(), right.begin(), right.end());
  return out;
}

inline std::string to_string(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::atom:
      return std::string(name(f.atom()));
    case Formula::Kind::negation:
      return "!" + to_string(f.lhs());
    case Formula::Kind::conjunction:
      return "(" + to_string(f.lhs()) + " & " + to_string(f.rhs()) + ")";
    case Formula::Kind::disjunction:
      return "(" + to_string(f.lhs()) + " | " + to_string(f.rhs()) + ")";
    case Formula::Kind::implication:
      return "(" + to_string(f.lhs()) + " -> " + to_string(f.rhs()) + ")";
  }
  return {};
}

inline void collect_atoms(const Formula& f, AtomSet& out) {
  switch (f.kind()) {
    case Formula::Kind::atom:
      out.insert(f.atom());
      return;
    case Formula::Kind::negation:
      collect_atoms(f.lhs(), out);
      return;
    default:
      collect_atoms(f.lhs(), out);
      collect_atoms(f.rhs(), out);
  }
}

inline AtomSet atoms(const Formula& f) {
  AtomSet out;
  collect_atoms(f, out);
  return out;
}

// Classical two-valued semantics; p -> q is !p | q.
inline bool eval(const Formula& f, const Assignment& a) {
  switch (f.kind()) {
    case Formula::Kind::atom: {
      auto it = a.find(f.atom());
      if (it == a.end()) throw LookupError("assignment has no value for atom " + std::string(name(f.atom())));
      return it->second;
    }
    case Formula::Kind::negation:
      return !eval(f.lhs(), a);
    case Formula::Kind::conjunction:
      return eval(f.lhs(), a) && eval(f.rhs(), a);
    case Formula::Kind::disjunction:
      return eval(f.lhs(), a) || eval(f.rhs(), a);
    case Formula::Kind::implication:
      return !eval(f.lhs(), a) || eval(f.rhs(), a);
  }
  return false;
}

enum class System { adtsw, pdtsw, tdtsw };

inline std::optional<System> parse_system(std::string_view text) {
  if (text == "adtsw") return System::adtsw;
  if (text == "pdtsw") return System::pdtsw;
  if (text == "tdtsw") return System::tdtsw;
  return std::nullopt;
}

inline std::string_view to_string(System s) {
  switch (s) {
    case System::adtsw:
      return "adtsw";
    case System::pdtsw:
      return "pdtsw";
    case System::tdtsw:
      return "tdtsw";
  }
  return {};
}

inline constexpr int kPostulateCount = 14;

// Individual postulate formulas, 1-based.
inline Formula postulate(int id) {
  using enum Atom;
  switch (id) {
    case 1:
      return implies(var(D), var(T) && var(SW));
    case 2:
      return implies(var(T), var(I));
    case 3:
      return implies(var(I), var(A));
    case 4:
      return implies(var(I) && var(A), var(E_engage));
    case 5:
      return implies(var(D) && var(A), var(RD));
    case 6:
      return implies(var(D), var(SW_up) && var(C_content));
    case 7:
      return implies(var(T), var(SW_up));
    case 8:
      return implies(var(R), var(D) && var(T));
    case 9:
      return implies(var(D) && var(T), var(SW_upup));
    case 10:
      return implies(var(T), var(Trust_up));
    case 11:
      return implies(var(T) && var(Trust), var(EG));
    case 12:
      return implies(var(D) && var(T), var(P_SW_up));
    case 13:
      return implies(var(T), var(P_Trust_up));
    case 14:
      return implies(var(T) && var(Trust), var(P_EG));
    default:
      throw LookupError("unknown postulate " + std::to_string(id) + " (expected 1.." +
                        std::to_string(kPostulateCount) + ")");
  }
}

inline bool check_postulate(int id, const Assignment& a) { return eval(postulate(id), a); }

inline Formula build_formula(System system) {
  using enum Atom;
  switch (system) {
    case System::adtsw:
      // Relationships 9-16 repeat 1-8 and are dropped.
      return conjunction({
          implies(var(D), var(T)),
          implies(var(T), var(I)),
          implies(var(I), var(A)),
          implies(var(I), var(C_part)),
          implies(var(A) && var(C_part), var(D)),
          implies(var(D), var(SW)),
          implies(var(T), var(SW)),
          implies(var(R), var(D) && var(T)),
      });
    case System::pdtsw:
      return conjunction({
          implies(var(D), var(T) && var(SW)),
          implies(var(T), var(I)),
          implies(var(I), var(A)),
          implies(var(I) && var(A), var(E_engage)),
          implies(var(D) && var(A), var(RD)),
          implies(var(D), var(SW_up) && var(C_content)),
          implies(var(T), var(SW_up)),
          implies(var(R), var(D) && var(T)),
          implies(var(D) && var(T), var(SW_upup)),
          implies(var(T), var(Trust_up)),
          implies(var(T) && var(Trust), var(EG)),
          implies(var(D) && var(T), var(P_SW_up)),
          implies(var(T), var(P_Trust_up)),
          implies(var(T) && var(Trust), var(P_EG)),
      });
    case System::tdtsw:
      // "SW up, not P" in the theorem listing maps to the same atom as "SW up ~P".
      return conjunction({
          var(D),
          implies(var(T), var(I)),
          implies(var(I), var(A)),
          implies(var(I) && var(A), var(E_engage)),
          implies(var(D) && var(A), var(RD)),
          implies(var(D), var(SW_up) && var(C_content)),
          implies(var(T), var(SW_up)),
          implies(var(R), var(D) && var(T)),
          implies(var(D) && var(T), var(SW_upup)),
          implies(var(T), var(Trust_up)),
          implies(var(T) && var(Trust), var(EG)),
          implies(var(D) && var(T), var(P_SW_up)),
      });
  }
  throw LookupError("unknown formula system");
}

inline constexpr std::size_t kMaxEnumerationAtoms = 16;

struct ModelSet {
  std::vector<Atom> atoms;  // lexicographic by name
  std::uint64_t count = 0;
  std::uint64_t total = 0;  // 2^atoms
  std::vector<Assignment> listing;  // filled only when requested
};

// The i-th assignment over `atoms` in lexicographic order: the first atom is
// the most significant bit, so index 0 is all-false.
inline Assignment assignment_at(const std::vector<Atom>& atoms, std::uint64_t index) {
  Assignment a;
  const std::size_t n = atoms.size();
  for (std::size_t k = 0; k < n; ++k) a[atoms[k]] = ((index >> (n - 1 - k)) & 1U) != 0;
  return a;
}

/// Exhaustive enumeration of the satisfying assignments of `f`.
inline ModelSet models(const Formula& f, bool with_listing = false) {
  const AtomSet set = atoms(f);
  if (set.size() > kMaxEnumerationAtoms) {
    throw CapacityError("formula has " + std::to_string(set.size()) + " atoms; enumeration is limited to " +
                        std::to_string(kMaxEnumerationAtoms));
  }
  ModelSet out;
  out.atoms.assign(set.begin(), set.end());
  out.total = std::uint64_t{1} << out.atoms.size();
  for (std::uint64_t i = 0; i < out.total; ++i) {
    Assignment a = assignment_at(out.atoms, i);
    if (eval(f, a)) {
      ++out.count;
      if (with_listing) out.listing.push_back(std::move(a));
    }
  }
  return out;
}

// `Name=0|1` pairs separated by commas.
inline Assignment parse_assignment(std::string_view text) {
  Assignment a;
  while (!text.empty()) {
    const auto comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected NAME=0|1, got '" + std::string(item) + "'");
    const std::string_view key = item.substr(0, eq);
    const std::string_view value = item.substr(eq + 1);
    auto atom = atom_from_name(key);
    if (!atom) throw LookupError("unknown atom '" + std::string(key) + "'");
    if (value != "0" && value != "1") {
      throw ConfigError("value for " + std::string(key) + " must be 0 or 1, got '" + std::string(value) + "'");
    }
    if (a.contains(*atom)) throw ConfigError("atom " + std::string(key) + " assigned twice");
    a[*atom] = value == "1";
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return a;
}

inline std::string to_string(const Assignment& a) {
  std::string text;
  for (const auto& [atom, value] : a) {
    if (!text.empty()) text += ',';
    text += name(atom);
    text += value ? "=1" : "=0";
  }
  return text;
}

}  // namespace tdtsw::logic
