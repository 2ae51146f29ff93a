#include "smsafe/formula.hpp"

#include <algorithm>
#include <optional>
#include <utility>

namespace smsafe {

struct Formula::Node {
  Connective kind = Connective::Bot;
  std::string name;
  std::vector<Term> terms;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
  std::size_t size = 1;
};

Formula::Formula() : node_(nullptr) {
  static const auto bot = std::make_shared<const Node>();
  node_ = bot;
}

Formula Formula::bot() { return Formula(); }

Formula Formula::top() { return implies(bot(), bot()); }

Formula Formula::atom(std::string predicate, std::vector<Term> args) {
  auto n = std::make_shared<Node>();
  n->kind = Connective::Pred;
  n->name = std::move(predicate);
  n->terms = std::move(args);
  return Formula(std::move(n));
}

Formula Formula::equals(Term lhs, Term rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Connective::Eq;
  n->terms = {std::move(lhs), std::move(rhs)};
  return Formula(std::move(n));
}

Formula Formula::binary(Connective op, Formula lhs, Formula rhs) {
  if (op != Connective::And && op != Connective::Or && op != Connective::Implies) {
    throw Error("binary: not a binary connective");
  }
  auto n = std::make_shared<Node>();
  n->kind = op;
  n->size = 1 + lhs.node_->size + rhs.node_->size;
  n->lhs = std::move(lhs.node_);
  n->rhs = std::move(rhs.node_);
  return Formula(std::move(n));
}

Formula Formula::conj(Formula lhs, Formula rhs) { return binary(Connective::And, std::move(lhs), std::move(rhs)); }
Formula Formula::disj(Formula lhs, Formula rhs) { return binary(Connective::Or, std::move(lhs), std::move(rhs)); }
Formula Formula::implies(Formula lhs, Formula rhs) {
  return binary(Connective::Implies, std::move(lhs), std::move(rhs));
}
Formula Formula::neg(Formula f) { return implies(std::move(f), bot()); }
Formula Formula::iff(Formula lhs, Formula rhs) { return conj(implies(lhs, rhs), implies(rhs, lhs)); }

Formula Formula::quantified(Connective quantifier, std::string var, Formula body) {
  if (quantifier != Connective::Forall && quantifier != Connective::Exists) {
    throw Error("quantified: not a quantifier");
  }
  auto n = std::make_shared<Node>();
  n->kind = quantifier;
  n->name = std::move(var);
  n->size = 1 + body.node_->size;
  n->lhs = std::move(body.node_);
  return Formula(std::move(n));
}

Formula Formula::forall(std::string var, Formula body) {
  return quantified(Connective::Forall, std::move(var), std::move(body));
}
Formula Formula::exists(std::string var, Formula body) {
  return quantified(Connective::Exists, std::move(var), std::move(body));
}

Connective Formula::kind() const noexcept { return node_->kind; }

bool Formula::is_atomic() const noexcept { return kind() == Connective::Pred || kind() == Connective::Eq; }

bool Formula::is_binary() const noexcept {
  return kind() == Connective::And || kind() == Connective::Or || kind() == Connective::Implies;
}

bool Formula::is_quantifier() const noexcept { return kind() == Connective::Forall || kind() == Connective::Exists; }

bool Formula::is_top() const noexcept {
  return kind() == Connective::Implies && node_->lhs->kind == Connective::Bot && node_->rhs->kind == Connective::Bot;
}

bool Formula::is_negation() const noexcept {
  return kind() == Connective::Implies && node_->rhs->kind == Connective::Bot && !is_top();
}

const std::string& Formula::name() const noexcept { return node_->name; }
const std::vector<Term>& Formula::terms() const noexcept { return node_->terms; }

Formula Formula::left() const {
  if (!node_->lhs) throw PathError("formula has no left operand");
  return Formula(node_->lhs);
}

Formula Formula::right() const {
  if (!node_->rhs) throw PathError("formula has no right operand");
  return Formula(node_->rhs);
}

std::size_t Formula::size() const { return node_->size; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const Formula::Node* x = a.node_.get();
  const Formula::Node* y = b.node_.get();
  if (x->kind != y->kind || x->size != y->size || x->name != y->name || x->terms != y->terms) return false;
  if (static_cast<bool>(x->lhs) && !(Formula(x->lhs) == Formula(y->lhs))) return false;
  if (static_cast<bool>(x->rhs) && !(Formula(x->rhs) == Formula(y->rhs))) return false;
  return true;
}

Formula conjoin(const std::vector<Formula>& parts) {
  if (parts.empty()) return Formula::top();
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = Formula::conj(acc, parts[i]);
  return acc;
}

Formula disjoin(const std::vector<Formula>& parts) {
  if (parts.empty()) return Formula::bot();
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = Formula::disj(acc, parts[i]);
  return acc;
}

void Signature::merge(const Signature& other) {
  constants.insert(other.constants.begin(), other.constants.end());
  for (const auto& [p, arity] : other.predicates) {
    auto [it, inserted] = predicates.emplace(p, arity);
    if (!inserted && it->second != arity) {
      throw ArityError("predicate '" + p + "' used with arities " + std::to_string(it->second) + " and " +
                       std::to_string(arity));
    }
  }
}

namespace {

void collect_signature(const Formula& f, Signature& sig) {
  switch (f.kind()) {
    case Connective::Bot:
      return;
    case Connective::Pred: {
      auto [it, inserted] = sig.predicates.emplace(f.name(), f.terms().size());
      if (!inserted && it->second != f.terms().size()) {
        throw ArityError("predicate '" + f.name() + "' used with arities " + std::to_string(it->second) + " and " +
                         std::to_string(f.terms().size()));
      }
      [[fallthrough]];
    }
    case Connective::Eq:
      for (const Term& t : f.terms()) {
        if (!t.is_variable()) sig.constants.insert(t.name);
      }
      return;
    case Connective::And:
    case Connective::Or:
    case Connective::Implies:
      collect_signature(f.left(), sig);
      collect_signature(f.right(), sig);
      return;
    case Connective::Forall:
    case Connective::Exists:
      collect_signature(f.body(), sig);
      return;
  }
}

void collect_free(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (f.kind()) {
    case Connective::Bot:
      return;
    case Connective::Pred:
    case Connective::Eq:
      for (const Term& t : f.terms()) {
        if (t.is_variable() && !bound.contains(t.name)) out.insert(t.name);
      }
      return;
    case Connective::And:
    case Connective::Or:
    case Connective::Implies:
      collect_free(f.left(), bound, out);
      collect_free(f.right(), bound, out);
      return;
    case Connective::Forall:
    case Connective::Exists: {
      const bool fresh = bound.insert(f.name()).second;
      collect_free(f.body(), bound, out);
      if (fresh) bound.erase(f.name());
      return;
    }
  }
}

void collect_names(const Formula& f, std::set<std::string>& out) {
  if (f.is_atomic()) {
    for (const Term& t : f.terms()) {
      if (t.is_variable()) out.insert(t.name);
    }
  } else if (f.is_binary()) {
    collect_names(f.left(), out);
    collect_names(f.right(), out);
  } else if (f.is_quantifier()) {
    out.insert(f.name());
    collect_names(f.body(), out);
  }
}

}  // namespace

Signature signature_of(const Formula& f) {
  Signature sig;
  collect_signature(f, sig);
  return sig;
}

std::set<std::string> free_variables(const Formula& f) {
  std::set<std::string> bound;
  std::set<std::string> out;
  collect_free(f, bound, out);
  return out;
}

std::set<std::string> all_variable_names(const Formula& f) {
  std::set<std::string> out;
  collect_names(f, out);
  return out;
}

bool is_sentence(const Formula& f) { return free_variables(f).empty(); }

bool is_quantifier_free(const Formula& f) {
  if (f.is_quantifier()) return false;
  if (f.is_binary()) return is_quantifier_free(f.left()) && is_quantifier_free(f.right());
  return true;
}

bool is_variable_free(const Formula& f) { return all_variable_names(f).empty(); }

Formula universal_closure(const Formula& f) {
  const auto vars = free_variables(f);
  Formula out = f;
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) out = Formula::forall(*it, out);
  return out;
}

std::string FreshNames::next() {
  for (;;) {
    std::string candidate = stem_ + std::to_string(++counter_);
    if (!reserved_.contains(candidate)) {
      reserved_.insert(candidate);
      return candidate;
    }
  }
}

namespace {

Formula rename_bound(const Formula& f, std::map<std::string, std::string>& env, FreshNames& fresh) {
  switch (f.kind()) {
    case Connective::Bot:
      return f;
    case Connective::Pred:
    case Connective::Eq: {
      std::vector<Term> terms = f.terms();
      bool changed = false;
      for (Term& t : terms) {
        if (!t.is_variable()) continue;
        if (auto it = env.find(t.name); it != env.end() && it->second != t.name) {
          t.name = it->second;
          changed = true;
        }
      }
      if (!changed) return f;
      return f.kind() == Connective::Pred ? Formula::atom(f.name(), std::move(terms))
                                          : Formula::equals(terms[0], terms[1]);
    }
    case Connective::And:
    case Connective::Or:
    case Connective::Implies: {
      Formula l = rename_bound(f.left(), env, fresh);
      Formula r = rename_bound(f.right(), env, fresh);
      return Formula::binary(f.kind(), std::move(l), std::move(r));
    }
    case Connective::Forall:
    case Connective::Exists: {
      const std::string name = fresh.next();
      std::optional<std::string> saved;
      if (auto it = env.find(f.name()); it != env.end()) saved = it->second;
      env[f.name()] = name;
      Formula body = rename_bound(f.body(), env, fresh);
      if (saved) {
        env[f.name()] = *saved;
      } else {
        env.erase(f.name());
      }
      return Formula::quantified(f.kind(), name, std::move(body));
    }
  }
  return f;
}

}  // namespace

Formula normalize_bound_variables(const Formula& f) {
  FreshNames fresh(free_variables(f));
  std::map<std::string, std::string> env;
  return rename_bound(f, env, fresh);
}

namespace {

bool alpha_rec(const Formula& a, const Formula& b, std::map<std::string, std::size_t>& ea,
               std::map<std::string, std::size_t>& eb, std::size_t depth) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Connective::Bot:
      return true;
    case Connective::Pred:
    case Connective::Eq: {
      if (a.name() != b.name() || a.terms().size() != b.terms().size()) return false;
      for (std::size_t i = 0; i < a.terms().size(); ++i) {
        const Term& s = a.terms()[i];
        const Term& t = b.terms()[i];
        if (s.kind != t.kind) return false;
        if (!s.is_variable()) {
          if (s.name != t.name) return false;
          continue;
        }
        auto is = ea.find(s.name);
        auto it = eb.find(t.name);
        if ((is == ea.end()) != (it == eb.end())) return false;
        if (is == ea.end()) {
          if (s.name != t.name) return false;
        } else if (is->second != it->second) {
          return false;
        }
      }
      return true;
    }
    case Connective::And:
    case Connective::Or:
    case Connective::Implies:
      return alpha_rec(a.left(), b.left(), ea, eb, depth) && alpha_rec(a.right(), b.right(), ea, eb, depth);
    case Connective::Forall:
    case Connective::Exists: {
      auto save_a = ea.find(a.name()) != ea.end() ? std::optional<std::size_t>(ea[a.name()]) : std::nullopt;
      auto save_b = eb.find(b.name()) != eb.end() ? std::optional<std::size_t>(eb[b.name()]) : std::nullopt;
      ea[a.name()] = depth;
      eb[b.name()] = depth;
      const bool ok = alpha_rec(a.body(), b.body(), ea, eb, depth + 1);
      if (save_a) ea[a.name()] = *save_a; else ea.erase(a.name());
      if (save_b) eb[b.name()] = *save_b; else eb.erase(b.name());
      return ok;
    }
  }
  return false;
}

}  // namespace

bool alpha_equivalent(const Formula& a, const Formula& b) {
  std::map<std::string, std::size_t> ea;
  std::map<std::string, std::size_t> eb;
  return alpha_rec(a, b, ea, eb, 0);
}

namespace {

Formula subst_rec(const Formula& f, const std::map<std::string, Term>& sigma) {
  if (sigma.empty()) return f;
  switch (f.kind()) {
    case Connective::Bot:
      return f;
    case Connective::Pred:
    case Connective::Eq: {
      std::vector<Term> terms = f.terms();
      bool changed = false;
      for (Term& t : terms) {
        if (!t.is_variable()) continue;
        if (auto it = sigma.find(t.name); it != sigma.end()) {
          t = it->second;
          changed = true;
        }
      }
      if (!changed) return f;
      return f.kind() == Connective::Pred ? Formula::atom(f.name(), std::move(terms))
                                          : Formula::equals(terms[0], terms[1]);
    }
    case Connective::And:
    case Connective::Or:
    case Connective::Implies:
      return Formula::binary(f.kind(), subst_rec(f.left(), sigma), subst_rec(f.right(), sigma));
    case Connective::Forall:
    case Connective::Exists: {
      std::map<std::string, Term> inner = sigma;
      inner.erase(f.name());
      const auto body_free = free_variables(f.body());
      bool captures = false;
      for (const auto& [var, t] : inner) {
        if (body_free.contains(var) && t.is_variable() && t.name == f.name()) captures = true;
      }
      if (!captures) return Formula::quantified(f.kind(), f.name(), subst_rec(f.body(), inner));
      std::set<std::string> reserved = all_variable_names(f.body());
      for (const auto& [var, t] : inner) {
        reserved.insert(var);
        if (t.is_variable()) reserved.insert(t.name);
      }
      const std::string renamed = FreshNames(std::move(reserved)).next();
      inner[f.name()] = Term::variable(renamed);
      return Formula::quantified(f.kind(), renamed, subst_rec(f.body(), inner));
    }
  }
  return f;
}

}  // namespace

Formula substitute(const Formula& f, const std::map<std::string, Term>& sigma) { return subst_rec(f, sigma); }

Formula substitute_term(const Formula& f, const std::string& var, const Term& t) {
  return subst_rec(f, {{var, t}});
}

namespace {

Formula subst_pred_rec(const Formula& g, const std::map<std::string, PredicateExpression>& exprs,
                       const std::set<std::string>& protect) {
  switch (g.kind()) {
    case Connective::Bot:
    case Connective::Eq:
      return g;
    case Connective::Pred: {
      auto it = exprs.find(g.name());
      if (it == exprs.end()) return g;
      const PredicateExpression& e = it->second;
      if (e.params.size() != g.terms().size()) {
        throw ArityError("predicate expression for '" + g.name() + "' has " + std::to_string(e.params.size()) +
                         " parameters but the atom has " + std::to_string(g.terms().size()) + " arguments");
      }
      std::map<std::string, Term> sigma;
      for (std::size_t i = 0; i < e.params.size(); ++i) sigma.emplace(e.params[i], g.terms()[i]);
      return substitute(e.body, sigma);
    }
    case Connective::And:
    case Connective::Or:
    case Connective::Implies:
      return Formula::binary(g.kind(), subst_pred_rec(g.left(), exprs, protect),
                             subst_pred_rec(g.right(), exprs, protect));
    case Connective::Forall:
    case Connective::Exists: {
      if (!protect.contains(g.name())) {
        return Formula::quantified(g.kind(), g.name(), subst_pred_rec(g.body(), exprs, protect));
      }
      std::set<std::string> reserved = all_variable_names(g.body());
      reserved.insert(protect.begin(), protect.end());
      const std::string renamed = FreshNames(std::move(reserved)).next();
      Formula body = substitute_term(g.body(), g.name(), Term::variable(renamed));
      return Formula::quantified(g.kind(), renamed, subst_pred_rec(body, exprs, protect));
    }
  }
  return g;
}

}  // namespace

Formula substitute_pred_exprs(const Formula& g, const std::map<std::string, PredicateExpression>& exprs) {
  std::set<std::string> protect;
  for (const auto& [p, e] : exprs) {
    std::set<std::string> params(e.params.begin(), e.params.end());
    for (const auto& v : free_variables(e.body)) {
      if (!params.contains(v)) protect.insert(v);
    }
  }
  return subst_pred_rec(g, exprs, protect);
}

OccurrencePath OccurrencePath::child(std::size_t selector) const {
  OccurrencePath p = *this;
  p.steps.push_back(selector);
  return p;
}

OccurrencePath OccurrencePath::parent() const {
  if (steps.empty()) throw PathError("root path has no parent");
  OccurrencePath p = *this;
  p.steps.pop_back();
  return p;
}

bool OccurrencePath::is_prefix_of(const OccurrencePath& other) const {
  return steps.size() <= other.steps.size() && std::equal(steps.begin(), steps.end(), other.steps.begin());
}

std::string OccurrencePath::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(steps[i]);
  }
  return s + "]";
}

namespace {

// Walks `path`; returns the last formula node reached and whether the path
// ends on a term of that node.
std::pair<Formula, bool> walk(const Formula& f, const OccurrencePath& path, Polarity* pol) {
  Formula cur = f;
  for (std::size_t i = 0; i < path.steps.size(); ++i) {
    const std::size_t s = path.steps[i];
    if (cur.is_atomic()) {
      if (i + 1 != path.steps.size() || s >= cur.terms().size()) {
        throw PathError("path " + path.to_string() + " runs past an atom");
      }
      return {cur, true};
    }
    if (cur.is_binary()) {
      if (s > 1) throw PathError("path " + path.to_string() + ": selector out of range");
      if (cur.kind() == Connective::Implies && s == 0 && pol) {
        ++pol->antecedent_depth;
      }
      cur = s == 0 ? cur.left() : cur.right();
    } else if (cur.is_quantifier()) {
      if (s != 0) throw PathError("path " + path.to_string() + ": selector out of range");
      cur = cur.body();
    } else {
      throw PathError("path " + path.to_string() + " runs past ⊥");
    }
  }
  return {cur, false};
}

}  // namespace

Polarity polarity(const Formula& f, const OccurrencePath& path) {
  Polarity pol;
  walk(f, path, &pol);
  pol.positive = pol.antecedent_depth % 2 == 0;
  pol.strictly_positive = pol.antecedent_depth == 0;
  return pol;
}

Formula subformula_at(const Formula& f, const OccurrencePath& path) {
  auto [node, is_term] = walk(f, path, nullptr);
  if (is_term) throw PathError("path " + path.to_string() + " addresses a term, not a subformula");
  return node;
}

bool addresses_term(const Formula& f, const OccurrencePath& path) { return walk(f, path, nullptr).second; }

namespace {

void collect_occurrences(const Formula& f, OccurrencePath& path, std::vector<VariableOccurrence>& out) {
  if (f.is_atomic()) {
    for (std::size_t i = 0; i < f.terms().size(); ++i) {
      if (f.terms()[i].is_variable()) out.push_back({f.terms()[i].name, path.child(i)});
    }
  } else if (f.is_binary()) {
    path.steps.push_back(0);
    collect_occurrences(f.left(), path, out);
    path.steps.back() = 1;
    collect_occurrences(f.right(), path, out);
    path.steps.pop_back();
  } else if (f.is_quantifier()) {
    path.steps.push_back(0);
    collect_occurrences(f.body(), path, out);
    path.steps.pop_back();
  }
}

}  // namespace

std::vector<VariableOccurrence> variable_occurrences(const Formula& f) {
  std::vector<VariableOccurrence> out;
  OccurrencePath path;
  collect_occurrences(f, path, out);
  return out;
}

Formula replace_atoms_by_bot(const Formula& f, const std::function<bool(const Formula&)>& pred) {
  if (f.is_atomic()) return pred(f) ? Formula::bot() : f;
  if (f.is_binary()) {
    return Formula::binary(f.kind(), replace_atoms_by_bot(f.left(), pred), replace_atoms_by_bot(f.right(), pred));
  }
  if (f.is_quantifier()) return Formula::quantified(f.kind(), f.name(), replace_atoms_by_bot(f.body(), pred));
  return f;
}

}  // namespace smsafe
