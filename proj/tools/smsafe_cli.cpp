#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "smsafe/grounder.hpp"
#include "smsafe/harness.hpp"
#include "smsafe/prenex.hpp"
#include "smsafe/safety.hpp"
#include "smsafe/sm_engine.hpp"
#include "smsafe/text_io.hpp"

namespace {

using namespace smsafe;

enum Exit { kOk = 0, kViolation = 1, kUsage = 2, kBudget = 3 };

struct Options {
  std::string formula;
  bool json = false;
  bool open = false;
  std::vector<std::string> constants;
  bool herbrand = false;
  std::size_t universe = 0;
  bool all_const_maps = false;
  bool injective = false;
  bool dedupe = false;
  bool simplify = false;
  bool allow_partial = false;
  std::string corpus = SMSAFE_DEFAULT_CORPUS;
  std::size_t max_constants = 3;
  std::uint64_t budget = 0;
  bool force = false;
  bool sequential = false;
  std::string suite;
};

Budget budget_of(const Options& o) {
  Budget b = Budget::from_environment();
  if (o.budget > 0) b.candidates = o.budget;
  return b;
}

std::string show_tuple(const ElementTuple& t) {
  std::string s = "(";
  for (std::size_t k = 0; k < t.size(); ++k) s += (k ? "," : "") + t[k];
  return s + ")";
}

std::string show_model(const Interpretation& i) {
  std::ostringstream out;
  out << "universe {";
  for (std::size_t k = 0; k < i.universe.size(); ++k) out << (k ? "," : "") << i.universe[k];
  out << "}";
  for (const auto& [c, e] : i.constants) {
    if (c != e) out << "; " << c << "->" << e;
  }
  for (const auto& [p, ext] : i.predicates) {
    out << "; " << p << " = {";
    bool first = true;
    for (const auto& t : ext) {
      out << (first ? "" : ", ") << (t.empty() ? "()" : show_tuple(t));
      first = false;
    }
    out << "}";
  }
  return out.str();
}

int cmd_parse(const Options& o) {
  const Formula f = parse(o.formula, o.open ? ParseMode::Formula : ParseMode::Sentence);
  if (o.json) {
    nlohmann::json j;
    j["formula"] = print(f);
    j["signature"] = to_json(signature_of(f));
    j["freeVariables"] = free_variables(f);
    j["prenex"] = is_prenex(f);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << print(f) << "\n";
  }
  return kOk;
}

int cmd_prenex(const Options& o) {
  const PrenexSentence s = to_prenex(parse(o.formula));
  if (o.json) {
    nlohmann::json j;
    j["prenex"] = print(s.to_formula());
    j["matrix"] = print(s.matrix);
    j["prefix"] = nlohmann::json::array();
    for (const auto& qv : s.prefix) {
      j["prefix"].push_back({{"quantifier", qv.quantifier == Quantifier::Forall ? "forall" : "exists"},
                             {"variable", qv.variable}});
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << print(s.to_formula()) << "\n";
  }
  return kOk;
}

int cmd_safety(const Options& o) {
  const Formula f = parse(o.formula);
  const PrenexSentence s = to_prenex(f);
  const SafetyReport r = is_safe(s);
  if (o.json) {
    nlohmann::json j = to_json(r);
    j["prenex"] = print(s.to_formula());
    std::cout << j.dump(2) << "\n";
    return kOk;
  }
  std::cout << to_string(r.verdict) << "\n";
  for (const auto& [var, ve] : r.per_variable) {
    for (const auto& ev : ve.occurrences) {
      std::cout << "  " << var << " at " << ev.occurrence.to_string() << ": " << ev.justification() << "\n";
    }
  }
  for (const auto& w : r.warnings) std::cout << "  warning: " << w << "\n";
  return kOk;
}

int cmd_ground(const Options& o) {
  const Formula f = parse(o.formula);
  const ConstantSet c = o.constants.empty() ? ConstantSet(signature_of(f).constants) : ConstantSet(o.constants);
  const Formula g = ground(to_prenex(f), c, {o.allow_partial, o.simplify});
  if (o.json) {
    nlohmann::json j;
    j["constants"] = c.names();
    j["ground"] = print(g);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << print(g) << "\n";
  }
  return kOk;
}

int cmd_sm(const Options& o) {
  const Formula f = parse(o.formula);
  Scope scope;
  scope.herbrand = o.herbrand || o.universe == 0;
  scope.universe_size = o.universe;
  scope.all_const_maps = o.all_const_maps;
  scope.extra_constants = o.constants;
  scope.dedupe_isomorphic = o.dedupe;
  scope.budget = budget_of(o);
  const auto models = stable_models(f, scope);
  if (o.json) {
    std::cout << serialize_models(models) << "\n";
  } else {
    std::cout << models.size() << " stable model" << (models.size() == 1 ? "" : "s") << "\n";
    for (const auto& m : models) std::cout << "  " << show_model(m) << "\n";
  }
  return kOk;
}

int cmd_characterize(const Options& o) {
  const Characterization ch = characterize(parse(o.formula), budget_of(o));
  if (o.json) {
    nlohmann::json j;
    j["case"] = ch.case_number;
    j["constants"] = ch.constants.names();
    j["g"] = print(ch.g);
    j["spp"] = print(ch.spp);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "case " << ch.case_number << "\n";
    std::cout << "G: " << print(ch.g) << "\n";
    std::cout << "SPP: " << print(ch.spp) << "\n";
  }
  return kOk;
}

int cmd_verify(const Options& o) {
  const Corpus corpus = load_corpus(o.corpus);
  VerificationScope scope;
  if (o.universe > 0) scope.max_universe = o.universe;
  scope.max_constants = o.max_constants;
  scope.all_const_maps = !o.injective;
  scope.budget = budget_of(o);
  scope.force = o.force;
  scope.parallel = !o.sequential;
  const VerificationReport r = verify(o.suite, corpus, scope);
  std::cerr << "runtime: " << r.runtime_seconds << " s\n";
  if (o.json) {
    std::cout << to_json(r).dump(2) << "\n";
  } else {
    std::cout << r.suite << ": " << (r.passed() ? "PASS" : "FAIL") << " (" << r.entries_checked() << " entries, "
              << r.instances_checked() << " instances)\n";
    for (const auto& e : r.entries) {
      std::cout << "  " << e.entry << ": ";
      switch (e.status) {
        case EntryStatus::Ok:
          std::cout << "ok";
          break;
        case EntryStatus::Violation:
          std::cout << "VIOLATION";
          break;
        case EntryStatus::Skipped:
          std::cout << "skipped";
          break;
        case EntryStatus::Unsupported:
          std::cout << "unsupported";
          break;
      }
      if (!e.note.empty()) std::cout << " (" << e.note << ")";
      std::cout << "\n";
    }
    for (const auto& cx : r.counterexamples()) std::cout << to_json(cx).dump() << "\n";
  }
  return r.passed() ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Safety, grounding and stable models of first-order sentences"};
  app.require_subcommand(1);
  Options o;
  int (*handler)(const Options&) = nullptr;

  auto formula_command = [&](const std::string& name, const std::string& help, int (*fn)(const Options&)) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("formula", o.formula, "Sentence in the text syntax")->required();
    sub->add_flag("--json", o.json, "JSON output");
    sub->callback([&handler, fn] { handler = fn; });
    return sub;
  };

  formula_command("parse", "Parse and print a formula", cmd_parse)
      ->add_flag("--open", o.open, "Allow free variables");
  formula_command("prenex", "Prenex normal form", cmd_prenex);
  formula_command("safety", "Classify as safe, semiSafeOnly or unsafe", cmd_safety);
  {
    auto* sub = formula_command("ground", "Ground over a constant set", cmd_ground);
    sub->add_option("--constants", o.constants, "Constant set (default: constants of the sentence)")->delimiter(',');
    sub->add_flag("--simplify", o.simplify, "Simplify the result");
    sub->add_flag("--allow-partial", o.allow_partial, "Permit a set missing constants of the sentence");
  }
  {
    auto* sub = formula_command("sm", "Enumerate stable models", cmd_sm);
    sub->add_flag("--herbrand", o.herbrand, "Herbrand interpretations (default unless --universe is given)");
    sub->add_option("--universe", o.universe, "Universe size of general interpretations");
    sub->add_flag("--all-const-maps", o.all_const_maps, "Let constants share elements");
    sub->add_option("--constants", o.constants, "Additional object constants")->delimiter(',');
    sub->add_flag("--dedupe", o.dedupe, "Keep one model per isomorphism class");
    sub->add_option("--budget", o.budget, "Candidate budget");
  }
  {
    auto* sub = formula_command("characterize", "Variable-free characterization of a safe sentence", cmd_characterize);
    sub->add_option("--budget", o.budget, "Family budget");
  }
  {
    CLI::App* sub = app.add_subcommand("verify", "Run a verification suite over a corpus");
    sub->add_option("suite", o.suite, "Suite name")->required()->check(CLI::IsMember(suite_names()));
    sub->add_option("--corpus", o.corpus, "Corpus file");
    sub->add_option("--universe", o.universe, "Largest universe size (default 3)");
    sub->add_option("--max-constants", o.max_constants, "Skip entries with more object constants");
    sub->add_flag("--injective", o.injective, "Only injective constant maps");
    sub->add_option("--budget", o.budget, "Candidate budget");
    sub->add_flag("--force", o.force, "Ignore the suite's verdict precondition");
    sub->add_flag("--sequential", o.sequential, "Check entries one at a time");
    sub->add_flag("--json", o.json, "JSON report");
    sub->callback([&handler] { handler = cmd_verify; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  try {
    return handler(o);
  } catch (const BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const ParseError& e) {
    std::cerr << "parse error at " << e.line() << ":" << e.column() << ": " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
