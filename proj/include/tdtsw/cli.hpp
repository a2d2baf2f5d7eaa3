#pragma once

// Command-line front end. dispatch() takes the arguments after the program
// name and writes results to `out`, diagnostics to `err`.
//
// Exit codes: 0 success, 1 usage error, 2 rule-file or CSV parse error,
// 3 domain error.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tdtsw/axioms.hpp"
#include "tdtsw/batch.hpp"
#include "tdtsw/errors.hpp"
#include "tdtsw/inference.hpp"
#include "tdtsw/relations.hpp"
#include "tdtsw/report.hpp"
#include "tdtsw/rule_dsl.hpp"

namespace tdtsw::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kParse = 2, kDomain = 3 };

// Raised for unreadable input files; reported like a parse failure.
class InputError : public Error {
 public:
  using Error::Error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// --rules, then $TDTSW_RULES, then the bundled rule base.
inline RuleBase load_rules(const std::string& flag, std::ostream& err) {
  std::string path = flag;
  if (path.empty()) {
    if (const char* env = std::getenv("TDTSW_RULES"); env != nullptr) path = env;
  }
  std::string text = path.empty() ? std::string(kBundledRules) : read_file(path);
  const std::string source = path.empty() ? "<bundled tdtsw.rules>" : path;
  ParseResult parsed = parse(text);
  for (const auto& d : parsed.diagnostics) {
    if (d.severity == ParseDiagnostic::Severity::warning) err << to_string(d, source) << '\n';
  }
  if (!parsed.ok()) throw ParseError(std::move(parsed.diagnostics), source);
  return std::move(*parsed.rulebase);
}

inline DefuzzMethod defuzz_from(const std::string& text) {
  auto method = parse_defuzz_method(text);
  if (!method) throw ConfigError("unknown defuzzification method '" + text + "' (expected centroid or mom)");
  return *method;
}

inline void write_output(const std::string& path, const std::string& content, std::ostream& out) {
  if (path == "-") {
    out << content;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw InputError("cannot write " + path);
  file << content;
}

inline void print_estimate_row(std::ostream& out, const char* name, const Estimate& e) {
  out << name << ' ' << format_shortest(e.mean) << ' ' << format_shortest(e.standard_error) << ' '
      << format_shortest(e.ci_low) << ' ' << format_shortest(e.ci_high) << '\n';
}

inline report::Json estimate_json(const Estimate& e) {
  report::Json j = report::Json::object();
  j["mean"] = e.mean;
  j["standard_error"] = e.standard_error;
  j["ci_low"] = e.ci_low;
  j["ci_high"] = e.ci_high;
  return j;
}

inline int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fuzzy Democracy/Transparency -> Social Wellbeing toolkit", "tdtsw"};
  app.require_subcommand(1);

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate one (D, T) pair and print the inference trace");
  std::optional<double> eval_d;
  std::optional<double> eval_t;
  std::vector<std::string> eval_set;
  std::string eval_rules;
  std::string eval_defuzz = "centroid";
  std::string eval_format = "table";
  eval_cmd->add_option("--d", eval_d, "Democracy score");
  eval_cmd->add_option("--t", eval_t, "Transparency score");
  eval_cmd->add_option("--set", eval_set, "Extra input as NAME=VALUE (repeatable)");
  eval_cmd->add_option("--rules", eval_rules, "Rule file (default: $TDTSW_RULES or bundled)");
  eval_cmd->add_option("--defuzz", eval_defuzz, "centroid | mom")->check(CLI::IsMember({"centroid", "mom"}));
  eval_cmd->add_option("--format", eval_format, "json | table")->check(CLI::IsMember({"json", "table"}));

  // grid
  auto* grid_cmd = app.add_subcommand("grid", "Evaluate every label pairing (R1..R9) at the label peaks");
  std::string grid_rules;
  std::string grid_defuzz = "centroid";
  std::string grid_format = "table";
  grid_cmd->add_option("--rules", grid_rules, "Rule file (default: $TDTSW_RULES or bundled)");
  grid_cmd->add_option("--defuzz", grid_defuzz, "centroid | mom")->check(CLI::IsMember({"centroid", "mom"}));
  grid_cmd->add_option("--format", grid_format, "table | json | svg")
      ->check(CLI::IsMember({"table", "json", "svg"}));

  // batch
  auto* batch_cmd = app.add_subcommand("batch", "Score a CSV of id,d,t rows");
  std::string batch_input;
  std::string batch_output;
  std::string batch_rules;
  std::string batch_defuzz = "centroid";
  unsigned batch_jobs = 1;
  batch_cmd->add_option("--input", batch_input, "Input CSV (header id,d,t)")->required();
  batch_cmd->add_option("--output", batch_output, "Output CSV, or - for stdout")->required();
  batch_cmd->add_option("--rules", batch_rules, "Rule file (default: $TDTSW_RULES or bundled)");
  batch_cmd->add_option("--defuzz", batch_defuzz, "centroid | mom")->check(CLI::IsMember({"centroid", "mom"}));
  batch_cmd->add_option("--jobs", batch_jobs, "Worker threads")->check(CLI::Range(1u, 1024u));

  // relations
  auto* rel_cmd = app.add_subcommand("relations", "Governance equations, deterministic or Monte Carlo");
  Coefficients coef;
  std::optional<double> eff_alpha;
  std::optional<double> eff_beta;
  std::optional<double> eff_gamma;
  std::optional<double> rel_d;
  std::optional<double> rel_t;
  std::uint64_t mc_n = 0;
  std::uint64_t mc_seed = 0;
  std::string dist_d;
  std::string dist_t;
  unsigned mc_workers = 0;
  std::string rel_format = "table";
  rel_cmd->add_option("--alpha", coef.alpha, "alpha")->required();
  rel_cmd->add_option("--beta", coef.beta, "beta")->required();
  rel_cmd->add_option("--gamma", coef.gamma, "gamma")->required();
  rel_cmd->add_option("--delta", coef.delta, "delta (trust)")->required();
  rel_cmd->add_option("--eff-alpha", eff_alpha, "alpha for the effectiveness equation (default: --alpha)");
  rel_cmd->add_option("--eff-beta", eff_beta, "beta for the effectiveness equation (default: --beta)");
  rel_cmd->add_option("--eff-gamma", eff_gamma, "gamma for the effectiveness equation (default: --gamma)");
  auto* d_opt = rel_cmd->add_option("--d", rel_d, "Democracy level");
  auto* t_opt = rel_cmd->add_option("--t", rel_t, "Transparency level");
  auto* mc_opt = rel_cmd->add_option("--mc", mc_n, "Monte Carlo sample count");
  auto* seed_opt = rel_cmd->add_option("--seed", mc_seed, "Monte Carlo seed");
  auto* dd_opt = rel_cmd->add_option("--dist-d", dist_d, "point:v | uniform:lo,hi | tri:a,b,c");
  auto* dt_opt = rel_cmd->add_option("--dist-t", dist_t, "point:v | uniform:lo,hi | tri:a,b,c");
  auto* workers_opt = rel_cmd->add_option("--workers", mc_workers, "Monte Carlo worker threads (0 = all cores)");
  rel_cmd->add_option("--format", rel_format, "json | table")->check(CLI::IsMember({"json", "table"}));
  d_opt->needs(t_opt);
  t_opt->needs(d_opt);
  mc_opt->needs(seed_opt, dd_opt, dt_opt);
  for (auto* o : {seed_opt, dd_opt, dt_opt, workers_opt}) o->needs(mc_opt);
  for (auto* o : {d_opt, t_opt}) o->excludes(mc_opt);

  // axioms
  auto* ax_cmd = app.add_subcommand("axioms", "Evaluate or count models of aDTSW / pDTSW / tDTSW");
  std::string ax_formula;
  std::string ax_check;
  bool ax_models = false;
  bool ax_list = false;
  ax_cmd->add_option("--formula", ax_formula, "adtsw | pdtsw | tdtsw")
      ->required()
      ->check(CLI::IsMember({"adtsw", "pdtsw", "tdtsw"}));
  auto* check_opt = ax_cmd->add_option("--check", ax_check, "Assignment NAME=0|1,...");
  auto* models_opt = ax_cmd->add_flag("--models", ax_models, "Count satisfying assignments");
  auto* list_opt = ax_cmd->add_flag("--list", ax_list, "List satisfying assignments (with --models)");
  check_opt->excludes(models_opt);
  list_opt->needs(models_opt);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (eval_cmd->parsed()) {
      RuleBase rules = load_rules(eval_rules, err);
      CrispInputs inputs;
      if (eval_d) inputs.push_back({"D", *eval_d});
      if (eval_t) inputs.push_back({"T", *eval_t});
      for (const auto& item : eval_set) {
        const auto eq = item.find('=');
        auto value = eq == std::string::npos ? std::nullopt : parse_real(std::string_view(item).substr(eq + 1));
        if (!value) throw ConfigError("--set expects NAME=VALUE, got '" + item + "'");
        inputs.push_back({item.substr(0, eq), *value});
      }
      InferenceResult result = infer(rules, inputs, defuzz_from(eval_defuzz));
      if (eval_format == "json") {
        out << report::to_json(result).dump(2) << '\n';
      } else {
        out << report::to_table(result, rules.output().name());
      }
      return kOk;
    }

    if (grid_cmd->parsed()) {
      RuleBase rules = load_rules(grid_rules, err);
      ScenarioTable table = scenario_grid(rules, peak_representatives(rules), defuzz_from(grid_defuzz));
      if (grid_format == "json") {
        out << report::to_json(table).dump(2) << '\n';
      } else if (grid_format == "svg") {
        out << report::to_svg(table, rules.output().name());
      } else {
        out << report::to_table(table, rules.output().name());
      }
      return kOk;
    }

    if (batch_cmd->parsed()) {
      RuleBase rules = load_rules(batch_rules, err);
      const std::string text = read_file(batch_input);
      batch::BatchInput input;
      try {
        input = batch::parse_rows(text);
      } catch (const batch::CsvError& e) {
        err << batch_input << ':' << e.line() << ':' << e.column() << ": error: " << e.what() << '\n';
        return kParse;
      }
      write_output(batch_output, batch::score_csv(rules, input, defuzz_from(batch_defuzz), batch_jobs), out);
      return kOk;
    }

    if (rel_cmd->parsed()) {
      EquationCoefficients coefs = EquationCoefficients::shared(coef);
      if (eff_alpha) coefs.effectiveness.alpha = *eff_alpha;
      if (eff_beta) coefs.effectiveness.beta = *eff_beta;
      if (eff_gamma) coefs.effectiveness.gamma = *eff_gamma;

      if (rel_d) {
        StateEvaluation eval = evaluate_state(*rel_d, *rel_t, coefs);
        for (const auto& w : eval.warnings) err << "warning: " << w << '\n';
        const auto& s = eval.state;
        if (rel_format == "json") {
          report::Json j = report::Json::object();
          j["d"] = s.d;
          j["t"] = s.t;
          j["w"] = s.w;
          j["c"] = s.c;
          j["e"] = s.e;
          out << j.dump(2) << '\n';
        } else {
          out << "D " << format_shortest(s.d) << "\nT " << format_shortest(s.t) << "\nW " << format_shortest(s.w)
              << "\nC " << format_shortest(s.c) << "\nE " << format_shortest(s.e) << '\n';
        }
        return kOk;
      }
      if (mc_opt->count() == 0) {
        err << "relations: give either --d and --t, or --mc with --seed, --dist-d and --dist-t\n";
        return kUsage;
      }
      DistributionSpec dists{Distribution::parse(dist_d), Distribution::parse(dist_t)};
      MonteCarloReport rep =
          expectations_mc(dists, coefs.welfare, coefs.trust, coefs.effectiveness, mc_n, mc_seed, mc_workers);
      for (const auto& [name, e] : {std::pair{"W", rep.w}, std::pair{"C", rep.c}, std::pair{"E", rep.e}}) {
        if (e.mean < 0.0 || e.mean > 1.0) {
          err << "warning: E[" << name << "] = " << format_shortest(e.mean)
              << " lies outside [0, 1]; consider rescaling the coefficients\n";
        }
      }
      if (rel_format == "json") {
        report::Json j = report::Json::object();
        j["n"] = rep.n;
        j["seed"] = rep.seed;
        j["w"] = estimate_json(rep.w);
        j["c"] = estimate_json(rep.c);
        j["e"] = estimate_json(rep.e);
        out << j.dump(2) << '\n';
      } else {
        out << "n " << rep.n << "\nseed " << rep.seed << "\nquantity mean std_error ci_low ci_high\n";
        print_estimate_row(out, "W", rep.w);
        print_estimate_row(out, "C", rep.c);
        print_estimate_row(out, "E", rep.e);
      }
      return kOk;
    }

    if (ax_cmd->parsed()) {
      const logic::System system = *logic::parse_system(ax_formula);
      const logic::Formula formula = logic::build_formula(system);
      if (check_opt->count() > 0) {
        const logic::Assignment assignment = logic::parse_assignment(ax_check);
        std::string missing;
        for (const logic::Atom atom : logic::atoms(formula)) {
          if (!assignment.contains(atom)) missing += (missing.empty() ? "" : ",") + std::string(logic::name(atom));
        }
        if (!missing.empty()) throw LookupError("assignment has no value for " + missing);
        const bool value = logic::eval(formula, assignment);
        out << ax_formula << ": " << (value ? "true" : "false") << '\n';
        if (!value) {
          for (const auto& part : logic::conjuncts(formula)) {
            if (!logic::eval(part, assignment)) out << "violated: " << logic::to_string(part) << '\n';
          }
        }
        return kOk;
      }
      if (!ax_models) {
        err << "axioms: give --check NAME=0|1,... or --models\n";
        return kUsage;
      }
      const logic::ModelSet set = logic::models(formula, ax_list);
      out << "models: " << set.count << " / " << set.total << '\n';
      for (const auto& a : set.listing) out << logic::to_string(a) << '\n';
      return kOk;
    }
  } catch (const ParseError& e) {
    err << e.what() << '\n';
    return kParse;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kParse;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kDomain;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << '\n';
    return kDomain;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace tdtsw::cli
