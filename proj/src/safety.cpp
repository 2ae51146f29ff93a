#include "smsafe/safety.hpp"

#include <algorithm>

namespace smsafe {

std::set<std::string> restricted_vars(const Formula& f) {
  switch (f.kind()) {
    case Connective::Bot:
    case Connective::Implies:
      return {};
    case Connective::Eq: {
      const Term& l = f.terms()[0];
      const Term& r = f.terms()[1];
      if (l.is_variable() && r.is_variable()) return {};
      std::set<std::string> out;
      if (l.is_variable()) out.insert(l.name);
      if (r.is_variable()) out.insert(r.name);
      return out;
    }
    case Connective::Pred: {
      std::set<std::string> out;
      for (const Term& t : f.terms()) {
        if (t.is_variable()) out.insert(t.name);
      }
      return out;
    }
    case Connective::And: {
      auto out = restricted_vars(f.left());
      auto r = restricted_vars(f.right());
      out.insert(r.begin(), r.end());
      return out;
    }
    case Connective::Or: {
      auto l = restricted_vars(f.left());
      auto r = restricted_vars(f.right());
      std::set<std::string> out;
      std::set_intersection(l.begin(), l.end(), r.begin(), r.end(), std::inserter(out, out.end()));
      return out;
    }
    case Connective::Forall:
    case Connective::Exists:
      break;
  }
  throw Error("restricted variables are defined for quantifier-free formulas only");
}

bool weakly_restricted(const Formula& f, const std::string& var, WeakMode mode) {
  Formula replaced =
      replace_atoms_by_bot(f, [&](const Formula& atom) { return restricted_vars(atom).contains(var); });
  Formula s = simplify(replaced);
  return mode == WeakMode::Positive ? s.is_top() : s.is_bot();
}

namespace {

// Innermost implication on the path to `atom_path` that has the occurrence
// in its consequent and restricts `var` in its antecedent.
std::optional<OccurrencePath> find_guard(const Formula& m, const OccurrencePath& atom_path, const std::string& var) {
  for (std::size_t len = atom_path.steps.size(); len-- > 0;) {
    OccurrencePath q;
    q.steps.assign(atom_path.steps.begin(), atom_path.steps.begin() + static_cast<std::ptrdiff_t>(len));
    const Formula s = subformula_at(m, q);
    if (s.kind() == Connective::Implies && atom_path.steps[len] == 1 && restricted_vars(s.left()).contains(var)) {
      return q;
    }
  }
  return std::nullopt;
}

}  // namespace

std::set<std::string> non_semi_safe_vars(const Formula& f) {
  std::set<std::string> out;
  for (const auto& occ : variable_occurrences(f)) {
    const OccurrencePath atom = occ.path.parent();
    if (!polarity(f, atom).strictly_positive) continue;
    if (!find_guard(f, atom, occ.variable)) out.insert(occ.variable);
  }
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Safe:
      return "safe";
    case Verdict::SemiSafeOnly:
      return "semiSafeOnly";
    case Verdict::Unsafe:
      return "unsafe";
  }
  return "unsafe";
}

std::optional<Verdict> verdict_from_string(const std::string& s) {
  if (s == "safe") return Verdict::Safe;
  if (s == "semiSafeOnly") return Verdict::SemiSafeOnly;
  if (s == "unsafe") return Verdict::Unsafe;
  return std::nullopt;
}

std::string OccurrenceEvidence::justification() const {
  std::string out;
  if (strictly_positive) {
    out += guard ? "strictly positive, guarded by implication at " + guard->to_string()
                 : "VIOLATION: strictly positive and unguarded";
  } else {
    out += "not strictly positive";
  }
  out += "; ";
  if (witness) {
    out += std::string(witness_positive ? "positive" : "negative") + " subformula at " + witness->to_string() +
           (witness_mode == WeakMode::Positive ? " positively" : " negatively") + " weakly restricts it";
  } else {
    out += "VIOLATION: no subformula with the required polarity weakly restricts it";
  }
  return out;
}

bool is_semi_safe(const PrenexSentence& s) {
  const auto ns = non_semi_safe_vars(s.matrix);
  for (const auto& qv : s.prefix) {
    if (ns.contains(qv.variable)) return false;
  }
  return true;
}

SafetyReport is_safe(const PrenexSentence& s) {
  SafetyReport report;
  const Formula& m = s.matrix;
  std::map<std::string, Quantifier> quantifier_of;
  for (const auto& qv : s.prefix) {
    quantifier_of[qv.variable] = qv.quantifier;
    report.per_variable[qv.variable].quantifier = qv.quantifier;
  }

  std::map<std::pair<OccurrencePath, std::string>, std::pair<bool, bool>> weak_cache;
  auto weak = [&](const OccurrencePath& q, const std::string& var) {
    auto key = std::make_pair(q, var);
    auto it = weak_cache.find(key);
    if (it != weak_cache.end()) return it->second;
    const Formula sub = subformula_at(m, q);
    auto val = std::make_pair(weakly_restricted(sub, var, WeakMode::Positive),
                              weakly_restricted(sub, var, WeakMode::Negative));
    weak_cache.emplace(key, val);
    return val;
  };

  bool semi_safe = true;
  bool safe = true;
  for (const auto& occ : variable_occurrences(m)) {
    auto qit = quantifier_of.find(occ.variable);
    if (qit == quantifier_of.end()) {
      throw Error("variable '" + occ.variable + "' is not bound by the prefix");
    }
    const Quantifier q = qit->second;
    const OccurrencePath atom = occ.path.parent();
    OccurrenceEvidence ev;
    ev.occurrence = occ.path;
    ev.strictly_positive = polarity(m, atom).strictly_positive;
    if (ev.strictly_positive) ev.guard = find_guard(m, atom, occ.variable);

    for (std::size_t len = atom.steps.size() + 1; len-- > 0;) {
      OccurrencePath anc;
      anc.steps.assign(atom.steps.begin(), atom.steps.begin() + static_cast<std::ptrdiff_t>(len));
      const bool positive = polarity(m, anc).positive;
      const auto [pos_weak, neg_weak] = weak(anc, occ.variable);
      // Universal: positive & positively weak, or negative & negatively weak.
      // Existential: the polarities are swapped.
      const bool want_positive_mode = (q == Quantifier::Forall) == positive;
      const bool ok = want_positive_mode ? pos_weak : neg_weak;
      if (ok) {
        ev.witness = anc;
        ev.witness_positive = positive;
        ev.witness_mode = want_positive_mode ? WeakMode::Positive : WeakMode::Negative;
        break;
      }
    }
    semi_safe = semi_safe && ev.semi_safe();
    safe = safe && ev.safe();
    report.per_variable[occ.variable].occurrences.push_back(std::move(ev));
  }

  for (const auto& qv : s.prefix) {
    if (report.per_variable[qv.variable].occurrences.empty()) {
      report.warnings.push_back("variable " + qv.variable + " is quantified vacuously");
    }
  }
  report.verdict = !semi_safe ? Verdict::Unsafe : (safe ? Verdict::Safe : Verdict::SemiSafeOnly);
  return report;
}

SafetyReport classify(const Formula& sentence) { return is_safe(to_prenex(sentence)); }

nlohmann::json to_json(const SafetyReport& report) {
  nlohmann::json j;
  j["verdict"] = to_string(report.verdict);
  j["variables"] = nlohmann::json::object();
  for (const auto& [var, ve] : report.per_variable) {
    nlohmann::json v;
    v["quantifier"] = ve.quantifier == Quantifier::Forall ? "forall" : "exists";
    v["occurrences"] = nlohmann::json::array();
    for (const auto& ev : ve.occurrences) {
      nlohmann::json o;
      o["path"] = ev.occurrence.steps;
      o["strictlyPositive"] = ev.strictly_positive;
      o["guard"] = ev.guard ? nlohmann::json(ev.guard->steps) : nlohmann::json(nullptr);
      if (ev.witness) {
        o["witness"] = {{"path", ev.witness->steps},
                        {"polarity", ev.witness_positive ? "positive" : "negative"},
                        {"weakRestriction", ev.witness_mode == WeakMode::Positive ? "positive" : "negative"}};
      } else {
        o["witness"] = nullptr;
      }
      o["semiSafe"] = ev.semi_safe();
      o["safe"] = ev.safe();
      o["justification"] = ev.justification();
      v["occurrences"].push_back(std::move(o));
    }
    j["variables"][var] = std::move(v);
  }
  j["warnings"] = report.warnings;
  return j;
}

}  // namespace smsafe
