#include "smsafe/grounder.hpp"

#include <algorithm>

namespace smsafe {

ConstantSet::ConstantSet(std::vector<std::string> names) {
  for (auto& n : names) {
    if (std::find(names_.begin(), names_.end(), n) == names_.end()) names_.push_back(std::move(n));
  }
}

ConstantSet::ConstantSet(const std::set<std::string>& names) : names_(names.begin(), names.end()) {}

bool ConstantSet::contains(const std::string& c) const {
  return std::find(names_.begin(), names_.end(), c) != names_.end();
}

bool ConstantSet::contains_all(const std::set<std::string>& cs) const {
  return std::all_of(cs.begin(), cs.end(), [&](const std::string& c) { return contains(c); });
}

ConstantSet ConstantSet::with(const std::string& c) const {
  auto names = names_;
  names.push_back(c);
  return ConstantSet(std::move(names));
}

std::string fresh_constant(const std::set<std::string>& used) {
  for (char ch = 'a'; ch <= 'z'; ++ch) {
    if (!used.contains(std::string(1, ch))) return std::string(1, ch);
  }
  for (std::size_t i = 1;; ++i) {
    std::string c = "k" + std::to_string(i);
    if (!used.contains(c)) return c;
  }
}

Formula in_formula(std::span<const std::string> vars, const ConstantSet& c) {
  std::vector<Formula> conjuncts;
  for (const auto& x : vars) {
    std::vector<Formula> disjuncts;
    for (const auto& k : c) disjuncts.push_back(Formula::equals(Term::variable(x), Term::constant(k)));
    conjuncts.push_back(disjoin(disjuncts));
  }
  if (c.empty() && !vars.empty()) return Formula::bot();
  return conjoin(conjuncts);
}

namespace {

std::vector<std::string> parameter_names(std::size_t arity) {
  std::vector<std::string> xs;
  for (std::size_t i = 1; i <= arity; ++i) xs.push_back("X" + std::to_string(i));
  return xs;
}

std::vector<Term> as_terms(const std::vector<std::string>& xs) {
  std::vector<Term> ts;
  for (const auto& x : xs) ts.push_back(Term::variable(x));
  return ts;
}

}  // namespace

Formula spp_formula(const Signature& sig, const ConstantSet& c) {
  std::vector<Formula> parts;
  for (const auto& [p, arity] : sig.predicates) {
    if (arity == 0) continue;
    const auto xs = parameter_names(arity);
    Formula f = Formula::implies(Formula::atom(p, as_terms(xs)), in_formula(xs, c));
    for (auto it = xs.rbegin(); it != xs.rend(); ++it) f = Formula::forall(*it, f);
    parts.push_back(std::move(f));
  }
  return normalize_bound_variables(conjoin(parts));
}

std::map<std::string, PredicateExpression> e_c_expressions(const Signature& sig, const ConstantSet& c) {
  std::map<std::string, PredicateExpression> out;
  for (const auto& [p, arity] : sig.predicates) {
    const auto xs = parameter_names(arity);
    Formula atom = Formula::atom(p, as_terms(xs));
    Formula body = arity == 0 ? atom : Formula::conj(atom, in_formula(xs, c));
    out.emplace(p, PredicateExpression{xs, body});
  }
  return out;
}

namespace {

Formula ground_rec(std::span<const QuantifiedVariable> prefix, const Formula& matrix, const ConstantSet& c) {
  if (prefix.empty()) return matrix;
  std::vector<Formula> parts;
  parts.reserve(c.size());
  for (const auto& k : c) {
    parts.push_back(ground_rec(prefix.subspan(1), substitute_term(matrix, prefix.front().variable, Term::constant(k)), c));
  }
  return prefix.front().quantifier == Quantifier::Forall ? conjoin(parts) : disjoin(parts);
}

}  // namespace

Formula ground(const PrenexSentence& s, const ConstantSet& c, GroundOptions options) {
  if (c.empty()) throw GroundingError("grounding needs a nonempty constant set");
  if (!options.allow_partial_constants) {
    const auto needed = signature_of(s.matrix).constants;
    for (const auto& k : needed) {
      if (!c.contains(k)) throw GroundingError("constant set does not contain '" + k + "' occurring in the sentence");
    }
  }
  Formula g = ground_rec(s.prefix, s.matrix, c);
  return options.simplify ? simplify(g) : g;
}

}  // namespace smsafe
