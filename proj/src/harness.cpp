#include "smsafe/harness.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <future>
#include <sstream>

#include "smsafe/grounder.hpp"
#include "smsafe/sm_engine.hpp"
#include "smsafe/text_io.hpp"

namespace smsafe {

// ---------------------------------------------------------------- corpus

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::set<std::string> tags_of(const CorpusEntry& e) {
  std::set<std::string> tags;
  if (is_prenex(e.formula)) tags.insert("prenex");
  if (is_quantifier_free(e.formula)) tags.insert("quantifier-free");
  if (is_variable_free(e.formula)) tags.insert("variable-free");
  const Signature sig = signature_of(e.formula);
  bool propositional = true;
  for (const auto& [p, arity] : sig.predicates) propositional = propositional && arity == 0;
  if (propositional) tags.insert("propositional");
  if (sig.constants.empty()) tags.insert("constant-free");
  return tags;
}

}  // namespace

Corpus parse_corpus(std::string_view text) {
  Corpus corpus;
  std::set<std::string> names;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;

    const auto t1 = line.find('\t');
    const auto t2 = t1 == std::string_view::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string_view::npos) {
      throw CorpusError("line " + std::to_string(line_no) + ": expected name TAB verdict TAB formula");
    }
    CorpusEntry e;
    e.line = line_no;
    e.name = trim(line.substr(0, t1));
    const std::string verdict = trim(line.substr(t1 + 1, t2 - t1 - 1));
    e.text = trim(line.substr(t2 + 1));
    if (e.name.empty()) throw CorpusError("line " + std::to_string(line_no) + ": empty entry name");
    if (!names.insert(e.name).second) {
      throw CorpusError("line " + std::to_string(line_no) + ": duplicate entry name '" + e.name + "'");
    }
    const auto v = verdict_from_string(verdict);
    if (!v) throw CorpusError("line " + std::to_string(line_no) + ": unknown verdict '" + verdict + "'");
    e.expected = *v;
    try {
      e.formula = parse(e.text);
    } catch (const ParseError& err) {
      throw CorpusError("line " + std::to_string(line_no) + ": " + err.what());
    }
    e.prenex = to_prenex(e.formula);
    e.computed = is_safe(e.prenex).verdict;
    e.tags = tags_of(e);
    corpus.entries.push_back(std::move(e));
  }
  return corpus;
}

Corpus load_corpus(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError("cannot open corpus file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_corpus(ss.str());
}

std::vector<const CorpusEntry*> verdict_mismatches(const Corpus& corpus) {
  std::vector<const CorpusEntry*> out;
  for (const auto& e : corpus.entries) {
    if (e.expected != e.computed) out.push_back(&e);
  }
  return out;
}

// ---------------------------------------------------------- counterexamples

namespace {

std::vector<Element> fresh_elements(const Interpretation& i, std::size_t k) {
  std::set<Element> used(i.universe.begin(), i.universe.end());
  std::vector<Element> out;
  for (std::size_t n = 1; out.size() < k; ++n) {
    Element w = "w" + std::to_string(n);
    if (!used.contains(w)) out.push_back(w);
  }
  return out;
}

Interpretation extend_by(const Interpretation& i, std::size_t k) {
  const auto ws = fresh_elements(i, k);
  return extend(i, std::set<Element>(ws.begin(), ws.end()));
}

// Names each assigned element by a fresh constant.
std::pair<Formula, Interpretation> bind(const Formula& f, const Interpretation& i,
                                        const std::map<std::string, Element>& assignment) {
  std::set<std::string> used = signature_of(f).constants;
  for (const auto& [c, e] : i.constants) used.insert(c);
  std::map<std::string, Term> sigma;
  Interpretation j = i;
  for (const auto& [x, e] : assignment) {
    std::string c = "var_" + x;
    while (used.contains(c)) c += "_";
    used.insert(c);
    sigma.emplace(x, Term::constant(c));
    j.constants[c] = e;
  }
  return {substitute(f, sigma), j};
}

}  // namespace

bool replay(const Counterexample& cx) {
  const Interpretation& i = cx.interpretation;
  auto aux = [&](const std::string& key) {
    auto it = cx.aux.find(key);
    if (it == cx.aux.end()) throw Error("counterexample lacks auxiliary formula '" + key + "'");
    return it->second;
  };
  if (cx.kind == "stable-vs-spp") return is_stable(cx.formula, i) && !holds(aux("spp"), i);
  if (cx.kind == "grounding-equivalence") {
    return holds(aux("spp"), i) && holds(cx.formula, i) != holds(aux("ground"), i);
  }
  if (cx.kind == "stable-mismatch") return is_stable(cx.formula, i) != is_stable(aux("ground"), i);
  if (cx.kind == "characterization-mismatch") {
    return is_stable(cx.formula, i) != holds(Formula::conj(aux("g"), aux("spp")), i);
  }
  if (cx.kind == "extension-mismatch") {
    return is_stable(cx.formula, i) != is_stable(cx.formula, extend_by(i, cx.extra_elements));
  }
  if (cx.kind == "invalid-implication") {
    const auto [f, j] = bind(cx.formula, i, cx.assignment);
    return !holds(f, j, cx.valuation ? &*cx.valuation : nullptr);
  }
  if (cx.kind == "negative-splitting") {
    const Formula g = aux("negative");
    const Formula both = Formula::conj(cx.formula, g);
    Vocabulary v(signature_of(both));
    for (const auto& [c, e] : i.constants) v.add_constant(c);
    std::set<std::string> preds;
    for (const auto& [p, arity] : signature_of(both).predicates) preds.insert(p);
    const Structure s = to_structure(i, v);
    const bool lhs = StabilityChecker(both, v, preds).is_stable(s);
    return lhs != (StabilityChecker(cx.formula, v, preds).is_stable(s) && holds(g, i));
  }
  throw Error("unknown counterexample kind '" + cx.kind + "'");
}

nlohmann::json to_json(const Counterexample& cx) {
  nlohmann::json j;
  j["suite"] = cx.suite;
  j["entry"] = cx.entry;
  j["kind"] = cx.kind;
  j["formula"] = print(cx.formula);
  j["aux"] = nlohmann::json::object();
  for (const auto& [k, f] : cx.aux) j["aux"][k] = print(f);
  j["interpretation"] = to_json(cx.interpretation);
  j["valuation"] = cx.valuation ? to_json(*cx.valuation) : nlohmann::json(nullptr);
  j["assignment"] = cx.assignment;
  j["extraElements"] = cx.extra_elements;
  j["description"] = cx.description;
  return j;
}

// ------------------------------------------------------------------ report

std::uint64_t VerificationReport::instances_checked() const {
  std::uint64_t n = 0;
  for (const auto& e : entries) n += e.instances;
  return n;
}

std::size_t VerificationReport::entries_checked() const {
  std::size_t n = 0;
  for (const auto& e : entries) n += e.status == EntryStatus::Ok || e.status == EntryStatus::Violation;
  return n;
}

std::vector<Counterexample> VerificationReport::counterexamples() const {
  std::vector<Counterexample> out;
  for (const auto& e : entries) {
    if (e.counterexample) out.push_back(*e.counterexample);
  }
  return out;
}

bool VerificationReport::passed() const {
  for (const auto& e : entries) {
    if ((e.status == EntryStatus::Violation) != e.expect_violation) return false;
  }
  return true;
}

namespace {

std::string status_name(EntryStatus s) {
  switch (s) {
    case EntryStatus::Ok:
      return "ok";
    case EntryStatus::Violation:
      return "violation";
    case EntryStatus::Skipped:
      return "skipped";
    case EntryStatus::Unsupported:
      return "unsupported";
  }
  return "ok";
}

}  // namespace

nlohmann::json to_json(const VerificationReport& report) {
  nlohmann::json j;
  j["suite"] = report.suite;
  j["passed"] = report.passed();
  j["entriesChecked"] = report.entries_checked();
  j["instancesChecked"] = report.instances_checked();
  j["entries"] = nlohmann::json::array();
  for (const auto& e : report.entries) {
    nlohmann::json o;
    o["name"] = e.entry;
    o["status"] = status_name(e.status);
    o["instances"] = e.instances;
    if (e.expect_violation) o["expectViolation"] = true;
    if (!e.note.empty()) o["note"] = e.note;
    j["entries"].push_back(std::move(o));
  }
  j["counterexamples"] = nlohmann::json::array();
  for (const auto& cx : report.counterexamples()) j["counterexamples"].push_back(to_json(cx));
  return j;
}

// ------------------------------------------------------------------ suites

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"prop1",  "prop2",  "prop3",  "prop4",    "prop5",
                                              "lemma1", "lemma2", "lemma3", "negsplit", "counterexamples"};
  return names;
}

Formula double_negation_counterexample() { return parse("forall X (not not p(X, a))"); }

Formula de_counterexample() { return parse("forall X (((X = a | X = b) -> p(X)) | ((X = a | X = b) -> q(X)))"); }

namespace {

struct Check {
  const VerificationScope& scope;
  EntryResult& result;
  std::string suite;

  ConstantMaps maps() const { return scope.all_const_maps ? ConstantMaps::All : ConstantMaps::Injective; }

  // Visits structures of size 1..max_universe; stops at the first violation.
  // The callback returns true when the structure violates the property.
  void structures(const Vocabulary& v, const std::function<bool(const Structure&)>& violated) {
    for (std::size_t n = 1; n <= scope.max_universe; ++n) {
      scope.budget.check(count_structures(v, n, maps()), "structure enumeration");
      const bool done = !for_each_structure(v, n, maps(), [&](const Structure& s) {
        ++result.instances;
        return !violated(s);
      });
      if (done) return;
    }
  }

  Counterexample counterexample(const std::string& kind, const Formula& f, const Structure& s, const Vocabulary& v) {
    Counterexample cx;
    cx.suite = suite;
    cx.entry = result.entry;
    cx.kind = kind;
    cx.formula = f;
    cx.interpretation = to_interpretation(s, v, default_element_names(s.size));
    return cx;
  }

  void violation(Counterexample cx) {
    result.status = EntryStatus::Violation;
    result.counterexample = std::move(cx);
  }
};

Vocabulary vocabulary_of(std::initializer_list<Formula> fs, const ConstantSet& extra = {}) {
  Signature sig;
  for (const auto& f : fs) sig.merge(signature_of(f));
  Vocabulary v(sig);
  for (const auto& c : extra) v.add_constant(c);
  return v;
}

// c(F), and c(F) with one fresh constant; c(F) alone is skipped when empty.
std::vector<ConstantSet> constant_variants(const Formula& f) {
  const auto cs = signature_of(f).constants;
  std::vector<ConstantSet> out;
  if (!cs.empty()) out.emplace_back(cs);
  out.push_back(ConstantSet(cs).with(fresh_constant(cs)));
  return out;
}

void prop1(Check& ck, const CorpusEntry& e) {
  const Formula& f = e.formula;
  const Formula spp = spp_formula(signature_of(f), ConstantSet(signature_of(f).constants));
  const Vocabulary v = vocabulary_of({f});
  const StabilityChecker checker(f, v, ck.scope.budget);
  const Evaluator spp_eval(spp, v);
  ck.structures(v, [&](const Structure& s) {
    if (!checker.is_stable(s) || spp_eval(s)) return false;
    auto cx = ck.counterexample("stable-vs-spp", f, s, v);
    cx.aux["spp"] = spp;
    cx.description = "stable model violating the small predicate property";
    ck.violation(std::move(cx));
    return true;
  });
}

void grounding_equivalence(Check& ck, const Formula& f, const PrenexSentence& s, const ConstantSet& c) {
  const Formula g = ground(s, c);
  const Formula spp = spp_formula(signature_of(f), c);
  const Vocabulary v = vocabulary_of({f, g, spp}, c);
  const Evaluator fe(f, v);
  const Evaluator ge(g, v);
  const Evaluator se(spp, v);
  ck.structures(v, [&](const Structure& st) {
    if (!se(st) || fe(st) == ge(st)) return false;
    auto cx = ck.counterexample("grounding-equivalence", f, st, v);
    cx.aux["ground"] = g;
    cx.aux["spp"] = spp;
    cx.description = "model of the small predicate property where the sentence and its grounding disagree";
    ck.violation(std::move(cx));
    return true;
  });
}

void prop2(Check& ck, const CorpusEntry& e) {
  for (const auto& c : constant_variants(e.formula)) {
    if (ck.result.status == EntryStatus::Violation) return;
    grounding_equivalence(ck, e.prenex.to_formula(), e.prenex, c);
  }
}

void prop3(Check& ck, const CorpusEntry& e) {
  const Formula f = e.prenex.to_formula();
  for (const auto& c : constant_variants(f)) {
    if (ck.result.status == EntryStatus::Violation) return;
    const Formula g = ground(e.prenex, c);
    const Vocabulary v = vocabulary_of({f, g}, c);
    const StabilityChecker fc(f, v, ck.scope.budget);
    const StabilityChecker gc(g, v, ck.scope.budget);
    ck.structures(v, [&](const Structure& s) {
      if (fc.is_stable(s) == gc.is_stable(s)) return false;
      auto cx = ck.counterexample("stable-mismatch", f, s, v);
      cx.aux["ground"] = g;
      cx.description = "interpretation stable for exactly one of the sentence and its grounding";
      ck.violation(std::move(cx));
      return true;
    });
  }
}

void prop4(Check& ck, const CorpusEntry& e) {
  const Formula f = e.prenex.to_formula();
  Characterization ch;
  try {
    ch = characterize(f, ck.scope.budget);
  } catch (const UnsupportedError& err) {
    ck.result.status = EntryStatus::Unsupported;
    ck.result.note = err.what();
    return;
  }
  const Formula rhs = Formula::conj(ch.g, ch.spp);
  const Vocabulary v = vocabulary_of({f, rhs});
  const StabilityChecker fc(f, v, ck.scope.budget);
  const Evaluator re(rhs, v);
  ck.result.note = "case " + std::to_string(ch.case_number);
  ck.structures(v, [&](const Structure& s) {
    if (fc.is_stable(s) == re(s)) return false;
    auto cx = ck.counterexample("characterization-mismatch", f, s, v);
    cx.aux["g"] = ch.g;
    cx.aux["spp"] = ch.spp;
    cx.description = "stability disagrees with the variable-free characterization";
    ck.violation(std::move(cx));
    return true;
  });
}

void prop5(Check& ck, const CorpusEntry& e) {
  const Formula f = e.prenex.to_formula();
  const Vocabulary v = vocabulary_of({f});
  const StabilityChecker fc(f, v, ck.scope.budget);
  ck.structures(v, [&](const Structure& s) {
    const bool base = fc.is_stable(s);
    for (std::size_t extra = 1; extra <= 2; ++extra) {
      if (fc.is_stable(extend(s, v, extra)) == base) continue;
      auto cx = ck.counterexample("extension-mismatch", f, s, v);
      cx.extra_elements = extra;
      cx.description = "stability changes when the universe grows by " + std::to_string(extra) + " element(s)";
      ck.violation(std::move(cx));
      return true;
    }
    return false;
  });
}

// ∀x (u_p(x) → p(x)) for every predicate, with binders avoiding `reserved`.
Formula below(const std::map<std::string, std::size_t>& preds, const std::map<std::string, std::string>& mirror,
              const std::set<std::string>& reserved) {
  std::vector<Formula> parts;
  for (const auto& [p, arity] : preds) {
    FreshNames names(reserved);
    std::vector<Term> xs;
    std::vector<std::string> vars;
    for (std::size_t j = 0; j < arity; ++j) {
      vars.push_back(names.next());
      xs.push_back(Term::variable(vars.back()));
    }
    Formula part = Formula::implies(Formula::atom(mirror.at(p), xs), Formula::atom(p, xs));
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) part = Formula::forall(*it, part);
    parts.push_back(part);
  }
  return conjoin(parts);
}

std::map<std::string, Element> assignment_map(const std::vector<std::string>& vars, std::span<const std::size_t> a,
                                              const std::vector<Element>& names) {
  std::map<std::string, Element> out;
  for (std::size_t k = 0; k < vars.size(); ++k) out[vars[k]] = names[a[k]];
  return out;
}

void lemma1(Check& ck, const CorpusEntry& e) {
  const Formula& m = e.prenex.matrix;
  const StarFormula st = star(m);
  const auto preds = signature_of(m).predicates;
  const Formula implication =
      Formula::implies(Formula::conj(below(preds, st.mirror, all_variable_names(m)), st.starred), m);
  const Vocabulary v = vocabulary_of({m});
  Vocabulary sv = v;
  std::vector<std::size_t> mirror_of(v.predicates().size());
  for (std::size_t p = 0; p < v.predicates().size(); ++p) {
    mirror_of[p] = sv.add_predicate(st.mirror.at(v.predicates()[p].name), v.predicates()[p].arity);
  }
  const Evaluator me(m, sv);
  const Evaluator se(st.starred, sv);
  const auto& vars = me.free_variables();

  // Atoms of the matrix as (predicate, argument encodings).
  std::vector<std::pair<std::size_t, std::vector<std::ptrdiff_t>>> atoms;
  std::function<void(const Formula&)> collect = [&](const Formula& f) {
    if (f.kind() == Connective::Pred) {
      std::vector<std::ptrdiff_t> args;
      for (const auto& t : f.terms()) {
        if (t.is_variable()) {
          args.push_back(std::find(vars.begin(), vars.end(), t.name) - vars.begin());
        } else {
          args.push_back(-static_cast<std::ptrdiff_t>(*v.constant_index(t.name)) - 1);
        }
      }
      atoms.emplace_back(*v.predicate_index(f.name()), std::move(args));
    } else if (f.is_binary()) {
      collect(f.left());
      collect(f.right());
    }
  };
  collect(m);

  ck.structures(v, [&](const Structure& s) {
    Structure ext = s;
    for (std::size_t k = s.relations.size(); k < sv.predicates().size(); ++k) {
      ext.relations.emplace_back(relation_size(s.size, sv.predicates()[k].arity), 0);
    }
    bool violated = false;
    for_each_assignment(vars.size(), s.size, [&](std::span<const std::size_t> a) {
      // Only true atoms the matrix reads under this assignment matter for u.
      std::set<std::pair<std::size_t, std::size_t>> relevant;
      for (const auto& [p, args] : atoms) {
        std::size_t idx = 0;
        for (auto arg : args) {
          idx = idx * s.size + (arg >= 0 ? a[static_cast<std::size_t>(arg)] : s.constants[static_cast<std::size_t>(-arg - 1)]);
        }
        if (s.relations[p][idx]) relevant.emplace(mirror_of[p], idx);
      }
      const std::vector<std::pair<std::size_t, std::size_t>> bits(relevant.begin(), relevant.end());
      for (std::size_t k = v.predicates().size(); k < sv.predicates().size(); ++k) {
        std::fill(ext.relations[k].begin(), ext.relations[k].end(), 0);
      }
      const std::uint64_t total = power_of_two(bits.size());
      ck.scope.budget.check(total, "valuation enumeration");
      const bool m_true = me(ext, a);
      for (std::uint64_t mask = 0; mask < total; ++mask) {
        for (std::size_t b = 0; b < bits.size(); ++b) ext.relations[bits[b].first][bits[b].second] = mask >> b & 1U;
        if (!m_true && se(ext, a)) {
          auto cx = ck.counterexample("invalid-implication", implication, s, v);
          const auto names = default_element_names(s.size);
          cx.assignment = assignment_map(vars, a, names);
          const Interpretation ui = to_interpretation(ext, sv, names);
          PredicateValuation u;
          for (const auto& [p, mname] : st.mirror) u.relations[mname] = ui.predicates.at(mname);
          cx.valuation = std::move(u);
          cx.description = "valuation below the extensions satisfying the starred formula but not the formula";
          ck.violation(std::move(cx));
          violated = true;
          return false;
        }
      }
      return true;
    });
    return violated;
  });
}

// F*(e_c) for a quantifier-free F.
Formula star_of_e(const Formula& m, const ConstantSet& c) {
  const StarFormula st = star(m);
  const auto e = e_c_expressions(signature_of(m), c);
  std::map<std::string, PredicateExpression> exprs;
  for (const auto& [p, mname] : st.mirror) exprs.emplace(mname, e.at(p));
  return substitute_pred_exprs(st.starred, exprs);
}

void open_validity(Check& ck, const Formula& implication, const std::string& description) {
  const Vocabulary v = vocabulary_of({implication});
  const Evaluator ev(implication, v);
  const auto& vars = ev.free_variables();
  ck.structures(v, [&](const Structure& s) {
    bool violated = false;
    for_each_assignment(vars.size(), s.size, [&](std::span<const std::size_t> a) {
      if (ev(s, a)) return true;
      auto cx = ck.counterexample("invalid-implication", implication, s, v);
      cx.assignment = assignment_map(vars, a, default_element_names(s.size));
      cx.description = description;
      ck.violation(std::move(cx));
      violated = true;
      return false;
    });
    return violated;
  });
}

void lemma2(Check& ck, const CorpusEntry& e) {
  const Formula& m = e.prenex.matrix;
  const auto rv = restricted_vars(m);
  const std::vector<std::string> vars(rv.begin(), rv.end());
  for (const auto& c : constant_variants(m)) {
    if (ck.result.status == EntryStatus::Violation) return;
    open_validity(ck, Formula::implies(star_of_e(m, c), in_formula(vars, c)),
                  "starred formula under e_c holds while a restricted variable names no constant of c");
  }
  if (signature_of(m).constants.empty() && ck.result.status != EntryStatus::Violation) {
    open_validity(ck, Formula::implies(star_of_e(m, ConstantSet{}), in_formula(vars, ConstantSet{})),
                  "starred formula under e_c holds for the empty constant set");
  }
}

void lemma3(Check& ck, const CorpusEntry& e) {
  const Formula& m = e.prenex.matrix;
  const auto ns = non_semi_safe_vars(m);
  const std::vector<std::string> vars(ns.begin(), ns.end());
  auto check = [&](const ConstantSet& c) {
    open_validity(ck, Formula::implies(Formula::conj(m, in_formula(vars, c)), star_of_e(m, c)),
                  "formula and in_c(NS) hold while the starred formula under e_c fails");
  };
  for (const auto& c : constant_variants(m)) {
    if (ck.result.status == EntryStatus::Violation) return;
    check(c);
  }
  if (signature_of(m).constants.empty() && ck.result.status != EntryStatus::Violation) check(ConstantSet{});
}

void negative_splitting(Check& ck, const Formula& f, const Formula& g, const std::string& label) {
  const Formula both = Formula::conj(f, g);
  const Vocabulary v = vocabulary_of({both});
  std::set<std::string> preds;
  for (const auto& [p, arity] : signature_of(both).predicates) preds.insert(p);
  const StabilityChecker bc(both, v, preds, ck.scope.budget);
  const StabilityChecker fc(f, v, preds, ck.scope.budget);
  const Evaluator ge(g, v);
  ck.structures(v, [&](const Structure& s) {
    if (bc.is_stable(s) == (fc.is_stable(s) && ge(s))) return false;
    auto cx = ck.counterexample("negative-splitting", f, s, v);
    cx.aux["negative"] = g;
    cx.description = "conjoining the negative formula " + label + " does not commute with stability";
    ck.violation(std::move(cx));
    return true;
  });
}

void negsplit(Check& ck, const CorpusEntry& e) {
  const Formula& f = e.formula;
  const Signature sig = signature_of(f);
  std::vector<std::pair<Formula, Formula>> cases;
  const NegativeSplit split = split_negative(f);
  if (!split.negative_part.is_top() && !split.core.is_top()) cases.emplace_back(split.core, split.negative_part);
  const Formula spp = spp_formula(sig, ConstantSet(sig.constants));
  if (!spp.is_top()) cases.emplace_back(f, spp);
  if (!sig.predicates.empty()) {
    const auto& [p, arity] = *sig.predicates.begin();
    FreshNames names;
    std::vector<std::string> vars;
    std::vector<Term> xs;
    for (std::size_t j = 0; j < arity; ++j) {
      vars.push_back(names.next());
      xs.push_back(Term::variable(vars.back()));
    }
    Formula body = Formula::atom(p, xs);
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = Formula::exists(*it, body);
    cases.emplace_back(f, Formula::neg(body));
  }
  for (const auto& [core, g] : cases) {
    if (ck.result.status == EntryStatus::Violation) return;
    if (!is_negative(g)) throw Error("internal: splitting candidate is not negative");
    negative_splitting(ck, core, g, print(g));
  }
}

using EntryCheck = void (*)(Check&, const CorpusEntry&);

struct SuiteSpec {
  EntryCheck check;
  /// Verdicts admitted without --force.
  std::set<Verdict> admitted;
};

const std::map<std::string, SuiteSpec>& suites() {
  static const std::map<std::string, SuiteSpec> table{
      {"prop1", {prop1, {Verdict::Safe, Verdict::SemiSafeOnly}}},
      {"prop2", {prop2, {Verdict::Safe}}},
      {"prop3", {prop3, {Verdict::Safe}}},
      {"prop4", {prop4, {Verdict::Safe}}},
      {"prop5", {prop5, {Verdict::Safe}}},
      {"lemma1", {lemma1, {Verdict::Safe, Verdict::SemiSafeOnly, Verdict::Unsafe}}},
      {"lemma2", {lemma2, {Verdict::Safe, Verdict::SemiSafeOnly, Verdict::Unsafe}}},
      {"lemma3", {lemma3, {Verdict::Safe, Verdict::SemiSafeOnly, Verdict::Unsafe}}},
      {"negsplit", {negsplit, {Verdict::Safe, Verdict::SemiSafeOnly, Verdict::Unsafe}}},
  };
  return table;
}

std::string verdict_note(Verdict v) { return "verdict " + to_string(v) + " is outside the suite's precondition"; }

template <class Job>
std::vector<EntryResult> run_jobs(std::vector<Job> jobs, bool parallel) {
  std::vector<EntryResult> out;
  if (!parallel) {
    for (auto& j : jobs) out.push_back(j());
    return out;
  }
  std::vector<std::future<EntryResult>> futures;
  for (auto& j : jobs) futures.push_back(std::async(std::launch::async, std::move(j)));
  for (auto& fu : futures) out.push_back(fu.get());
  return out;
}

VerificationReport counterexample_suite(const VerificationScope& scope) {
  VerificationReport report;
  report.suite = "counterexamples";

  EntryResult dn;
  dn.entry = "double_negation";
  dn.expect_violation = true;
  {
    Check ck{scope, dn, report.suite};
    const Formula f = double_negation_counterexample();
    grounding_equivalence(ck, f, to_prenex(f), ConstantSet{"a"});
  }
  if (dn.status != EntryStatus::Violation) dn.note = "no model of the small predicate property separates F from its grounding";
  report.entries.push_back(std::move(dn));

  EntryResult de;
  de.entry = "de_disjunction";
  {
    Check ck{scope, de, report.suite};
    const Formula f = de_counterexample();
    grounding_equivalence(ck, f, to_prenex(f), ConstantSet{"a", "b"});
  }
  de.note = de.status == EntryStatus::Violation
                ? "unexpected classical violation"
                : "classical equivalence confirmed; the intuitionistic failure is not testable on finite classical models";
  report.entries.push_back(std::move(de));
  return report;
}

}  // namespace

VerificationReport verify(const std::string& suite, const Corpus& corpus, const VerificationScope& scope) {
  const auto start = std::chrono::steady_clock::now();
  if (suite == "counterexamples") {
    auto r = counterexample_suite(scope);
    r.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
  }
  auto it = suites().find(suite);
  if (it == suites().end()) throw Error("unknown suite '" + suite + "'");
  const auto mismatches = verdict_mismatches(corpus);
  if (!mismatches.empty()) {
    const auto* e = mismatches.front();
    throw CorpusError("line " + std::to_string(e->line) + ": entry '" + e->name + "' is expected " +
                      to_string(e->expected) + " but classifies as " + to_string(e->computed));
  }
  const SuiteSpec& spec = it->second;

  std::vector<std::function<EntryResult()>> jobs;
  for (const auto& entry : corpus.entries) {
    jobs.emplace_back([&spec, &entry, &scope, &suite]() {
      EntryResult r;
      r.entry = entry.name;
      if (!scope.force && !spec.admitted.contains(entry.computed)) {
        r.status = EntryStatus::Skipped;
        r.note = verdict_note(entry.computed);
        return r;
      }
      if (signature_of(entry.formula).constants.size() > scope.max_constants) {
        r.status = EntryStatus::Skipped;
        r.note = "more object constants than --max-constants";
        return r;
      }
      Check ck{scope, r, suite};
      spec.check(ck, entry);
      return r;
    });
  }
  VerificationReport report;
  report.suite = suite;
  report.entries = run_jobs(std::move(jobs), scope.parallel);
  report.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace smsafe
