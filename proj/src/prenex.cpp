#include "smsafe/prenex.hpp"

#include <set>

namespace smsafe {

Formula PrenexSentence::to_formula() const {
  Formula f = matrix;
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) {
    f = it->quantifier == Quantifier::Forall ? Formula::forall(it->variable, f) : Formula::exists(it->variable, f);
  }
  return f;
}

namespace {

Quantifier dual(Quantifier q) { return q == Quantifier::Forall ? Quantifier::Exists : Quantifier::Forall; }

Quantifier from_connective(Connective c) { return c == Connective::Forall ? Quantifier::Forall : Quantifier::Exists; }

PrenexSentence split_prefix(const Formula& f) {
  PrenexSentence s;
  Formula cur = f;
  while (cur.is_quantifier()) {
    s.prefix.push_back({from_connective(cur.kind()), cur.name()});
    cur = cur.body();
  }
  s.matrix = cur;
  return s;
}

PrenexSentence pull(const Formula& f) {
  if (f.is_quantifier()) {
    PrenexSentence inner = pull(f.body());
    inner.prefix.insert(inner.prefix.begin(), {from_connective(f.kind()), f.name()});
    return inner;
  }
  if (!f.is_binary()) return {{}, f};
  PrenexSentence l = pull(f.left());
  PrenexSentence r = pull(f.right());
  if (f.kind() == Connective::Implies) {
    for (auto& qv : l.prefix) qv.quantifier = dual(qv.quantifier);
  }
  PrenexSentence out;
  out.prefix = std::move(l.prefix);
  out.prefix.insert(out.prefix.end(), r.prefix.begin(), r.prefix.end());
  out.matrix = Formula::binary(f.kind(), l.matrix, r.matrix);
  return out;
}

}  // namespace

bool is_prenex(const Formula& f) {
  PrenexSentence s = split_prefix(f);
  if (!is_quantifier_free(s.matrix)) return false;
  std::set<std::string> seen;
  for (const auto& qv : s.prefix) {
    if (!seen.insert(qv.variable).second) return false;
  }
  return true;
}

PrenexSentence to_prenex(const Formula& f) {
  if (is_prenex(f)) return split_prefix(f);
  return pull(normalize_bound_variables(f));
}

Formula simplify(const Formula& f) {
  switch (f.kind()) {
    case Connective::Bot:
    case Connective::Pred:
    case Connective::Eq:
      return f;
    case Connective::Forall:
    case Connective::Exists:
      throw Error("simplify expects a quantifier-free formula");
    case Connective::And: {
      Formula l = simplify(f.left());
      Formula r = simplify(f.right());
      if (l.is_bot() || r.is_bot()) return Formula::bot();
      if (l.is_top()) return r;
      if (r.is_top()) return l;
      return Formula::conj(l, r);
    }
    case Connective::Or: {
      Formula l = simplify(f.left());
      Formula r = simplify(f.right());
      if (l.is_bot()) return r;
      if (r.is_bot()) return l;
      if (l.is_top() || r.is_top()) return Formula::top();
      return Formula::disj(l, r);
    }
    case Connective::Implies: {
      Formula l = simplify(f.left());
      Formula r = simplify(f.right());
      if (l.is_bot() || r.is_top()) return Formula::top();
      if (l.is_top()) return r;
      return Formula::implies(l, r);
    }
  }
  return f;
}

}  // namespace smsafe
