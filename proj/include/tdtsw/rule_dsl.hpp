#pragma once

// Line-oriented text format for fuzzy rule bases (.rules files):
//
//   universe <lo> <hi>
//   var <Name>: <Label> = tri(a,b,c) | trap(a,b,c,d) [, <Label> = ...]*
//   out <Name>: ...
//   rule <Id>: IF <Var> IS <Label> [AND <Var> IS <Label>]* THEN <OutVar> IS <Label>
//
// '#' starts a comment that runs to end of line. Keywords are uppercase and
// case-sensitive. Columns in diagnostics are 1-based byte offsets.

#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tdtsw/errors.hpp"
#include "tdtsw/fuzzy_core.hpp"
#include "tdtsw/numeric_text.hpp"
#include "tdtsw/rulebase.hpp"

namespace tdtsw {

struct ParseDiagnostic {
  enum class Severity { error, warning };

  Severity severity = Severity::error;
  std::string message;
  std::size_t line = 0;
  std::size_t column = 0;

  friend bool operator==(const ParseDiagnostic&, const ParseDiagnostic&) = default;
};

inline std::string to_string(const ParseDiagnostic& d, std::string_view source = {}) {
  std::ostringstream out;
  if (!source.empty()) out << source << ':';
  out << d.line << ':' << d.column << ": "
      << (d.severity == ParseDiagnostic::Severity::error ? "error" : "warning") << ": " << d.message;
  return out.str();
}

struct ParseResult {
  std::optional<RuleBase> rulebase;
  std::vector<ParseDiagnostic> diagnostics;

  bool ok() const { return rulebase.has_value(); }

  std::vector<ParseDiagnostic> errors() const {
    std::vector<ParseDiagnostic> out;
    for (const auto& d : diagnostics) {
      if (d.severity == ParseDiagnostic::Severity::error) out.push_back(d);
    }
    return out;
  }
};

class ParseError : public Error {
 public:
  ParseError(std::vector<ParseDiagnostic> diagnostics, const std::string& source)
      : Error(summary(diagnostics, source)), diagnostics_(std::move(diagnostics)) {}

  const std::vector<ParseDiagnostic>& diagnostics() const { return diagnostics_; }

 private:
  static std::string summary(const std::vector<ParseDiagnostic>& diagnostics, const std::string& source) {
    std::string text;
    for (const auto& d : diagnostics) {
      if (d.severity != ParseDiagnostic::Severity::error) continue;
      if (!text.empty()) text += '\n';
      text += to_string(d, source);
    }
    return text.empty() ? "parse failed" : text;
  }

  std::vector<ParseDiagnostic> diagnostics_;
};

namespace dsl_detail {

struct Position {
  std::size_t line = 0;
  std::size_t column = 0;
};

struct Token {
  enum class Kind { identifier, number, colon, equals, comma, lparen, rparen };
  Kind kind;
  std::string text;
  std::size_t column;
};

struct LineError {
  std::size_t column;
  std::string message;
};

inline std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  auto ident_start = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
  auto ident_char = [&](char c) { return ident_start(c) || (c >= '0' && c <= '9'); };
  auto number_start = [](char c) { return (c >= '0' && c <= '9') || c == '-' || c == '+' || c == '.'; };
  auto number_char = [](char c) {
    return (c >= '0' && c <= '9') || c == '-' || c == '+' || c == '.' || c == 'e' || c == 'E';
  };
  while (i < line.size()) {
    const char c = line[i];
    if (c == ' ' || c == '\t') {
      ++i;
      continue;
    }
    const std::size_t column = i + 1;
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < line.size() && ident_char(line[j])) ++j;
      tokens.push_back({Token::Kind::identifier, std::string(line.substr(i, j - i)), column});
      i = j;
    } else if (number_start(c)) {
      std::size_t j = i + 1;
      while (j < line.size() && number_char(line[j])) ++j;
      tokens.push_back({Token::Kind::number, std::string(line.substr(i, j - i)), column});
      i = j;
    } else {
      Token::Kind kind;
      switch (c) {
        case ':':
          kind = Token::Kind::colon;
          break;
        case '=':
          kind = Token::Kind::equals;
          break;
        case ',':
          kind = Token::Kind::comma;
          break;
        case '(':
          kind = Token::Kind::lparen;
          break;
        case ')':
          kind = Token::Kind::rparen;
          break;
        default:
          throw LineError{column, "unexpected character '" + std::string(1, c) + "'"};
      }
      tokens.push_back({kind, std::string(1, c), column});
      ++i;
    }
  }
  return tokens;
}

class Cursor {
 public:
  Cursor(std::vector<Token> tokens, std::size_t end_column) : tokens_(std::move(tokens)), end_column_(end_column) {}

  bool at_end() const { return index_ >= tokens_.size(); }
  const Token* peek() const { return at_end() ? nullptr : &tokens_[index_]; }
  std::size_t column() const { return at_end() ? end_column_ : tokens_[index_].column; }

  const Token& expect(Token::Kind kind, std::string_view what) {
    if (at_end() || tokens_[index_].kind != kind) fail_expected(what);
    return tokens_[index_++];
  }

  const Token& expect_keyword(std::string_view keyword) {
    if (at_end() || tokens_[index_].kind != Token::Kind::identifier || tokens_[index_].text != keyword) {
      fail_expected("'" + std::string(keyword) + "'");
    }
    return tokens_[index_++];
  }

  bool accept(Token::Kind kind) {
    if (!at_end() && tokens_[index_].kind == kind) {
      ++index_;
      return true;
    }
    return false;
  }

  bool accept_keyword(std::string_view keyword) {
    if (!at_end() && tokens_[index_].kind == Token::Kind::identifier && tokens_[index_].text == keyword) {
      ++index_;
      return true;
    }
    return false;
  }

  double expect_number() {
    const Token& token = expect(Token::Kind::number, "a number");
    auto value = parse_real(token.text);
    if (!value || !std::isfinite(*value)) throw LineError{token.column, "invalid number '" + token.text + "'"};
    return *value;
  }

  void expect_end() {
    if (!at_end()) {
      throw LineError{tokens_[index_].column, "unexpected '" + tokens_[index_].text + "' at end of declaration"};
    }
  }

  [[noreturn]] void fail_expected(std::string_view what) const {
    std::string found = at_end() ? "end of line" : "'" + tokens_[index_].text + "'";
    throw LineError{column(), "expected " + std::string(what) + ", found " + found};
  }

 private:
  std::vector<Token> tokens_;
  std::size_t index_ = 0;
  std::size_t end_column_;
};

struct TermDecl {
  std::string label;
  Position label_pos;
  std::string shape;
  Position shape_pos;
  std::vector<double> points;
  std::vector<Position> point_pos;
};

struct VariableDecl {
  std::string name;
  Position name_pos;
  Position keyword_pos;
  std::vector<TermDecl> terms;
};

struct AtomDecl {
  std::string variable;
  Position variable_pos;
  std::string label;
  Position label_pos;
};

struct RuleDecl {
  std::string id;
  Position id_pos;
  std::vector<AtomDecl> antecedents;
  AtomDecl consequent;
};

struct UniverseDecl {
  double lo;
  double hi;
  Position pos;
  Position lo_pos;
};

struct Document {
  std::vector<UniverseDecl> universes;
  std::vector<VariableDecl> inputs;
  std::vector<VariableDecl> outputs;
  std::vector<RuleDecl> rules;
  std::size_t line_count = 0;
};

inline bool is_keyword(std::string_view text) {
  return text == "IF" || text == "IS" || text == "AND" || text == "THEN";
}

inline Position at(std::size_t line, const Token& token) { return {line, token.column}; }

inline VariableDecl parse_variable(Cursor& cursor, std::size_t line, Position keyword_pos) {
  VariableDecl decl;
  decl.keyword_pos = keyword_pos;
  const Token& name = cursor.expect(Token::Kind::identifier, "a variable name");
  if (is_keyword(name.text)) throw LineError{name.column, "'" + name.text + "' is a reserved word"};
  decl.name = name.text;
  decl.name_pos = at(line, name);
  cursor.expect(Token::Kind::colon, "':'");
  do {
    TermDecl term;
    const Token& label = cursor.expect(Token::Kind::identifier, "a label");
    if (is_keyword(label.text)) throw LineError{label.column, "'" + label.text + "' is a reserved word"};
    term.label = label.text;
    term.label_pos = at(line, label);
    cursor.expect(Token::Kind::equals, "'='");
    const Token& shape = cursor.expect(Token::Kind::identifier, "'tri' or 'trap'");
    if (shape.text != "tri" && shape.text != "trap") {
      throw LineError{shape.column, "unknown membership shape '" + shape.text + "' (expected tri or trap)"};
    }
    term.shape = shape.text;
    term.shape_pos = at(line, shape);
    cursor.expect(Token::Kind::lparen, "'('");
    do {
      term.point_pos.push_back({line, cursor.column()});
      term.points.push_back(cursor.expect_number());
    } while (cursor.accept(Token::Kind::comma));
    const std::size_t wanted = term.shape == "tri" ? 3 : 4;
    if (term.points.size() != wanted) {
      throw LineError{shape.column, term.shape + " takes " + std::to_string(wanted) + " breakpoints, got " +
                                        std::to_string(term.points.size())};
    }
    cursor.expect(Token::Kind::rparen, "')'");
    decl.terms.push_back(std::move(term));
  } while (cursor.accept(Token::Kind::comma));
  cursor.expect_end();
  return decl;
}

inline AtomDecl parse_atom(Cursor& cursor, std::size_t line) {
  AtomDecl atom;
  if (const Token* next = cursor.peek(); next != nullptr && is_keyword(next->text)) {
    cursor.fail_expected("a variable name");
  }
  const Token& var = cursor.expect(Token::Kind::identifier, "a variable name");
  atom.variable = var.text;
  atom.variable_pos = at(line, var);
  cursor.expect_keyword("IS");
  const Token& label = cursor.expect(Token::Kind::identifier, "a label");
  atom.label = label.text;
  atom.label_pos = at(line, label);
  return atom;
}

inline RuleDecl parse_rule(Cursor& cursor, std::size_t line) {
  RuleDecl rule;
  const Token& id = cursor.expect(Token::Kind::identifier, "a rule id");
  rule.id = id.text;
  rule.id_pos = at(line, id);
  cursor.expect(Token::Kind::colon, "':'");
  cursor.expect_keyword("IF");
  rule.antecedents.push_back(parse_atom(cursor, line));
  while (cursor.accept_keyword("AND")) rule.antecedents.push_back(parse_atom(cursor, line));
  cursor.expect_keyword("THEN");
  rule.consequent = parse_atom(cursor, line);
  cursor.expect_end();
  return rule;
}

inline void parse_line(std::string_view text, std::size_t line, Document& doc) {
  Cursor cursor(tokenize(text), text.size() + 1);
  const Token& keyword = cursor.expect(Token::Kind::identifier, "a declaration");
  const Position keyword_pos = at(line, keyword);
  if (keyword.text == "universe") {
    UniverseDecl decl{};
    decl.pos = keyword_pos;
    decl.lo_pos = {line, cursor.column()};
    decl.lo = cursor.expect_number();
    decl.hi = cursor.expect_number();
    cursor.expect_end();
    doc.universes.push_back(decl);
  } else if (keyword.text == "var") {
    doc.inputs.push_back(parse_variable(cursor, line, keyword_pos));
  } else if (keyword.text == "out") {
    doc.outputs.push_back(parse_variable(cursor, line, keyword_pos));
  } else if (keyword.text == "rule") {
    doc.rules.push_back(parse_rule(cursor, line));
  } else {
    throw LineError{keyword.column, "unknown declaration '" + keyword.text + "'"};
  }
}

class Checker {
 public:
  explicit Checker(std::vector<ParseDiagnostic>& diagnostics) : diagnostics_(diagnostics) {}

  void error(Position pos, std::string message) {
    diagnostics_.push_back({ParseDiagnostic::Severity::error, std::move(message), pos.line, pos.column});
    ++errors_;
  }
  void warning(Position pos, std::string message) {
    diagnostics_.push_back({ParseDiagnostic::Severity::warning, std::move(message), pos.line, pos.column});
  }
  std::size_t errors() const { return errors_; }

 private:
  std::vector<ParseDiagnostic>& diagnostics_;
  std::size_t errors_ = 0;
};

inline std::optional<LinguisticVariable> build_variable(const VariableDecl& decl, const UniverseInterval& universe,
                                                        Checker& check) {
  const std::size_t before = check.errors();
  std::vector<Term> terms;
  for (std::size_t i = 0; i < decl.terms.size(); ++i) {
    const TermDecl& term = decl.terms[i];
    for (std::size_t j = 0; j < i; ++j) {
      if (decl.terms[j].label == term.label) {
        check.error(term.label_pos, "duplicate label '" + term.label + "' for variable " + decl.name);
      }
    }
    bool term_ok = true;
    for (std::size_t k = 0; k < term.points.size(); ++k) {
      if (!universe.contains(term.points[k])) {
        check.error(term.point_pos[k], "breakpoint " + format_shortest(term.points[k]) +
                                           " lies outside the universe [" + format_shortest(universe.lo()) + ", " +
                                           format_shortest(universe.hi()) + "]");
        term_ok = false;
      }
      if (k > 0 && term.points[k] < term.points[k - 1]) {
        check.error(term.point_pos[k], "breakpoints out of order in '" + term.label + "': " +
                                           format_shortest(term.points[k]) + " < " +
                                           format_shortest(term.points[k - 1]));
        term_ok = false;
      }
    }
    if (!term_ok) continue;
    const auto& p = term.points;
    terms.push_back({term.label, term.shape == "tri" ? MembershipFunction::triangular(p[0], p[1], p[2])
                                                     : MembershipFunction::trapezoidal(p[0], p[1], p[2], p[3])});
  }
  if (check.errors() != before) return std::nullopt;
  return LinguisticVariable(decl.name, universe, std::move(terms));
}

}  // namespace dsl_detail

/// Parse a .rules document. Every error and warning carries a line and column;
/// a rule base is produced only when there are no errors.
inline ParseResult parse(std::string_view text) {
  using namespace dsl_detail;
  ParseResult result;
  Checker check(result.diagnostics);
  Document doc;

  std::size_t line_number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    const bool last = end == std::string_view::npos;
    if (last) end = text.size();
    if (last && start == end && line_number > 0) break;
    ++line_number;
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    bool blank = line.find_first_not_of(" \t") == std::string_view::npos;
    if (!blank) {
      try {
        parse_line(line, line_number, doc);
      } catch (const LineError& e) {
        check.error({line_number, e.column}, e.message);
      }
    }
    if (last) break;
    start = end + 1;
  }
  doc.line_count = line_number;
  const Position eof{std::max<std::size_t>(line_number, 1), 1};

  std::optional<UniverseInterval> universe;
  if (doc.universes.empty()) {
    check.error(eof, "missing 'universe' declaration");
  } else {
    for (std::size_t i = 1; i < doc.universes.size(); ++i) {
      check.error(doc.universes[i].pos, "duplicate 'universe' declaration");
    }
    const auto& u = doc.universes.front();
    if (!(u.lo < u.hi)) {
      check.error(u.lo_pos, "universe requires lo < hi");
    } else {
      universe.emplace(u.lo, u.hi);
    }
  }

  if (doc.outputs.empty()) check.error(eof, "missing 'out' declaration");
  for (std::size_t i = 1; i < doc.outputs.size(); ++i) {
    check.error(doc.outputs[i].keyword_pos, "duplicate 'out' declaration (exactly one output is allowed)");
  }
  if (doc.inputs.empty()) check.error(eof, "no input variables declared");

  std::vector<const VariableDecl*> all_vars;
  for (const auto& v : doc.inputs) all_vars.push_back(&v);
  if (!doc.outputs.empty()) all_vars.push_back(&doc.outputs.front());
  for (std::size_t i = 0; i < all_vars.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (all_vars[j]->name == all_vars[i]->name) {
        check.error(all_vars[i]->name_pos, "duplicate variable " + all_vars[i]->name);
        break;
      }
    }
  }

  const VariableDecl* out_decl = doc.outputs.empty() ? nullptr : &doc.outputs.front();
  auto find_decl = [&](std::string_view name) -> const VariableDecl* {
    for (const auto* v : all_vars) {
      if (v->name == name) return v;
    }
    return nullptr;
  };
  auto has_label = [](const VariableDecl& v, std::string_view label) {
    for (const auto& t : v.terms) {
      if (t.label == label) return true;
    }
    return false;
  };

  if (doc.rules.empty()) check.error(eof, "rule base is empty");
  for (std::size_t i = 0; i < doc.rules.size(); ++i) {
    const RuleDecl& rule = doc.rules[i];
    for (std::size_t j = 0; j < i; ++j) {
      if (doc.rules[j].id == rule.id) {
        check.error(rule.id_pos, "duplicate rule id " + rule.id);
        break;
      }
    }
    for (std::size_t k = 0; k < rule.antecedents.size(); ++k) {
      const AtomDecl& atom = rule.antecedents[k];
      const VariableDecl* var = find_decl(atom.variable);
      if (var == nullptr) {
        check.error(atom.variable_pos, "unknown variable " + atom.variable);
        continue;
      }
      if (var == out_decl) {
        check.error(atom.variable_pos, "output variable " + atom.variable + " cannot appear in a rule antecedent");
        continue;
      }
      for (std::size_t j = 0; j < k; ++j) {
        if (rule.antecedents[j].variable == atom.variable) {
          check.error(atom.variable_pos, "variable " + atom.variable + " appears twice in rule " + rule.id);
        }
      }
      if (!has_label(*var, atom.label)) {
        check.error(atom.label_pos, "unknown label '" + atom.label + "' for variable " + atom.variable);
      }
    }
    const AtomDecl& cons = rule.consequent;
    const VariableDecl* cons_var = find_decl(cons.variable);
    if (cons_var == nullptr) {
      check.error(cons.variable_pos, "unknown variable " + cons.variable);
    } else if (cons_var != out_decl) {
      check.error(cons.variable_pos, "rule consequent " + cons.variable + " is not the output variable" +
                                         (out_decl ? " " + out_decl->name : std::string{}));
    } else if (!has_label(*cons_var, cons.label)) {
      check.error(cons.label_pos, "unknown label '" + cons.label + "' for variable " + cons.variable);
    }
  }

  for (const auto& v : doc.inputs) {
    bool used = false;
    for (const auto& rule : doc.rules) {
      for (const auto& atom : rule.antecedents) used = used || atom.variable == v.name;
    }
    if (!used) check.warning(v.name_pos, "input variable " + v.name + " is not used by any rule");
  }

  if (!universe) return result;
  std::vector<LinguisticVariable> inputs;
  std::optional<LinguisticVariable> output;
  for (const auto& v : doc.inputs) {
    if (auto built = build_variable(v, *universe, check)) inputs.push_back(std::move(*built));
  }
  if (out_decl != nullptr) output = build_variable(*out_decl, *universe, check);

  if (check.errors() > 0 || !output) return result;

  std::vector<Rule> rules;
  for (const auto& r : doc.rules) {
    std::vector<RuleAtom> antecedents;
    for (const auto& a : r.antecedents) antecedents.push_back({a.variable, a.label});
    rules.emplace_back(r.id, std::move(antecedents), RuleAtom{r.consequent.variable, r.consequent.label});
  }
  try {
    result.rulebase.emplace(std::move(inputs), std::move(*output), std::move(rules));
  } catch (const Error& e) {
    check.error(eof, e.what());
  }
  return result;
}

inline RuleBase parse_or_throw(std::string_view text, const std::string& source = {}) {
  ParseResult result = parse(text);
  if (!result.ok()) throw ParseError(std::move(result.diagnostics), source);
  return std::move(*result.rulebase);
}

namespace dsl_detail {

inline std::string print_terms(const LinguisticVariable& var) {
  std::string text = var.name() + ":";
  for (std::size_t i = 0; i < var.terms().size(); ++i) {
    const Term& term = var.terms()[i];
    text += i == 0 ? " " : ", ";
    text += term.label;
    text += term.function.shape() == MembershipFunction::Shape::triangular ? " = tri(" : " = trap(";
    const auto points = term.function.breakpoints();
    for (std::size_t k = 0; k < points.size(); ++k) {
      if (k > 0) text += ',';
      text += format_shortest(points[k]);
    }
    text += ')';
  }
  return text;
}

}  // namespace dsl_detail

/// Canonical text: universe, inputs, output, then rules in rule-base order.
/// Numbers use the shortest round-trip decimal form.
inline std::string print_canonical(const RuleBase& rulebase) {
  const UniverseInterval& universe = rulebase.output().universe();
  for (const auto& var : rulebase.inputs()) {
    if (!(var.universe() == universe)) {
      throw ConfigError("canonical form needs one shared universe; variable " + var.name() + " differs");
    }
  }
  std::string text = "universe " + format_shortest(universe.lo()) + " " + format_shortest(universe.hi()) + "\n";
  for (const auto& var : rulebase.inputs()) text += "var " + dsl_detail::print_terms(var) + "\n";
  text += "out " + dsl_detail::print_terms(rulebase.output()) + "\n";
  for (const auto& rule : rulebase.rules()) text += "rule " + rule.id() + ": " + to_string(rule) + "\n";
  return text;
}

// Contents of data/tdtsw.rules: Rules 1-9 over the default Low/Medium/High partition.
inline constexpr std::string_view kBundledRules =
    R"(# tDTSW rule base: Social Wellbeing (SW) from Democracy (D) and Transparency (T).
universe 0 1
var D: Low = tri(0,0,0.5), Medium = tri(0,0.5,1), High = tri(0.5,1,1)
var T: Low = tri(0,0,0.5), Medium = tri(0,0.5,1), High = tri(0.5,1,1)
out SW: Low = tri(0,0,0.5), Medium = tri(0,0.5,1), High = tri(0.5,1,1)
rule R1: IF D IS Low AND T IS Low THEN SW IS Low
rule R2: IF D IS Low AND T IS Medium THEN SW IS Medium
rule R3: IF D IS Low AND T IS High THEN SW IS High
rule R4: IF D IS Medium AND T IS Low THEN SW IS Medium
rule R5: IF D IS Medium AND T IS Medium THEN SW IS Medium
rule R6: IF D IS Medium AND T IS High THEN SW IS High
rule R7: IF D IS High AND T IS Low THEN SW IS High
rule R8: IF D IS High AND T IS Medium THEN SW IS High
rule R9: IF D IS High AND T IS High THEN SW IS High
)";

}  // namespace tdtsw
