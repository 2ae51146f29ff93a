#include <algorithm>

#include "smsafe/sm_engine.hpp"

namespace smsafe {

namespace {

GroundAtom ground_atom(const Formula& f) {
  GroundAtom a{f.name(), {}};
  for (const auto& t : f.terms()) {
    if (t.is_variable()) throw Error("reduct oracle needs a variable-free formula");
    a.second.push_back(t.name);
  }
  return a;
}

bool satisfies(const AtomSet& x, const Formula& f) {
  switch (f.kind()) {
    case Connective::Bot:
      return false;
    case Connective::Pred:
      return x.contains(ground_atom(f));
    case Connective::Eq:
      if (f.terms()[0].is_variable() || f.terms()[1].is_variable()) {
        throw Error("reduct oracle needs a variable-free formula");
      }
      return f.terms()[0].name == f.terms()[1].name;
    case Connective::And:
      return satisfies(x, f.left()) && satisfies(x, f.right());
    case Connective::Or:
      return satisfies(x, f.left()) || satisfies(x, f.right());
    case Connective::Implies:
      return !satisfies(x, f.left()) || satisfies(x, f.right());
    case Connective::Forall:
    case Connective::Exists:
      break;
  }
  throw Error("reduct oracle needs a quantifier-free formula");
}

// Every maximal subformula not satisfied by x becomes ⊥.
Formula reduct(const AtomSet& x, const Formula& f) {
  if (!satisfies(x, f)) return Formula::bot();
  if (!f.is_binary()) return f;
  return Formula::binary(f.kind(), reduct(x, f.left()), reduct(x, f.right()));
}

void collect_atoms(const Formula& f, AtomSet& out) {
  if (f.kind() == Connective::Pred) {
    out.insert(ground_atom(f));
  } else if (f.is_binary()) {
    collect_atoms(f.left(), out);
    collect_atoms(f.right(), out);
  } else if (f.is_quantifier()) {
    throw Error("reduct oracle needs a quantifier-free formula");
  }
}

AtomSet subset(const std::vector<GroundAtom>& atoms, std::uint64_t mask) {
  AtomSet s;
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    if (mask >> k & 1U) s.insert(atoms[k]);
  }
  return s;
}

}  // namespace

std::vector<AtomSet> reduct_stable_models(const Formula& g, Budget budget) {
  if (!is_variable_free(g)) throw Error("reduct oracle needs a variable-free formula");
  AtomSet all;
  collect_atoms(g, all);
  const std::vector<GroundAtom> atoms(all.begin(), all.end());
  if (atoms.size() >= 32) throw BudgetError("too many ground atoms for the reduct oracle");
  const std::uint64_t total = std::uint64_t{1} << atoms.size();
  budget.check(total, "reduct oracle");

  std::vector<AtomSet> out;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    const AtomSet x = subset(atoms, mask);
    if (!satisfies(x, g)) continue;
    const Formula r = reduct(x, g);
    bool minimal = true;
    // Proper submasks of mask.
    for (std::uint64_t sub = (mask - 1) & mask; minimal && sub != mask; sub = (sub - 1) & mask) {
      if (satisfies(subset(atoms, sub), r)) minimal = false;
      if (sub == 0) break;
    }
    if (minimal) out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace smsafe
