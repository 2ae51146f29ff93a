#include "smsafe/sm_engine.hpp"

#include <algorithm>
#include <numeric>

#include "smsafe/text_io.hpp"

namespace smsafe {

Formula star_with(const Formula& f, const std::map<std::string, std::string>& mirror) {
  switch (f.kind()) {
    case Connective::Bot:
    case Connective::Eq:
      return f;
    case Connective::Pred: {
      auto it = mirror.find(f.name());
      return it == mirror.end() ? f : Formula::atom(it->second, f.terms());
    }
    case Connective::And:
    case Connective::Or:
      return Formula::binary(f.kind(), star_with(f.left(), mirror), star_with(f.right(), mirror));
    case Connective::Implies:
      return Formula::conj(Formula::implies(star_with(f.left(), mirror), star_with(f.right(), mirror)), f);
    case Connective::Forall:
    case Connective::Exists:
      return Formula::quantified(f.kind(), f.name(), star_with(f.body(), mirror));
  }
  return f;
}

StarFormula star(const Formula& f) {
  const auto preds = signature_of(f).predicates;
  StarFormula s;
  s.original = f;
  std::set<std::string> taken;
  for (const auto& [p, arity] : preds) taken.insert(p);
  for (const auto& [p, arity] : preds) {
    std::string m = "u_" + p;
    while (taken.contains(m)) m += "_";
    taken.insert(m);
    s.mirror.emplace(p, m);
  }
  s.starred = star_with(f, s.mirror);
  return s;
}

namespace {

Vocabulary vocabulary_for(const Formula& f, const Interpretation& i) {
  Vocabulary v(signature_of(f));
  for (const auto& [c, e] : i.constants) v.add_constant(c);
  return v;
}

}  // namespace

bool holds(const Formula& f, const Interpretation& i, const PredicateValuation* u) {
  Interpretation j = i;
  if (u) {
    for (const auto& [p, ext] : u->relations) j.predicates[p] = ext;
  }
  Vocabulary v = vocabulary_for(f, j);
  for (const auto& [p, ext] : j.predicates) {
    if (!ext.empty()) v.add_predicate(p, ext.begin()->size());
  }
  return Evaluator(f, v)(to_structure(j, v));
}

bool holds_star(const StarFormula& s, const Interpretation& i, const PredicateValuation& u) {
  PredicateValuation renamed;
  for (const auto& [p, ext] : u.relations) {
    auto it = s.mirror.find(p);
    if (it == s.mirror.end()) throw Error("valuation names '" + p + "', which the formula does not mirror");
    renamed.relations[it->second] = ext;
  }
  for (const auto& [p, m] : s.mirror) renamed.relations.try_emplace(m);
  return holds(s.starred, i, &renamed);
}

namespace {

std::set<std::string> predicates_of(const Formula& f) {
  std::set<std::string> out;
  for (const auto& [p, arity] : signature_of(f).predicates) out.insert(p);
  return out;
}

}  // namespace

StabilityChecker::StabilityChecker(const Formula& f, const Vocabulary& vocab, Budget budget)
    : StabilityChecker(f, vocab, predicates_of(f), budget) {}

StabilityChecker::StabilityChecker(const Formula& f, const Vocabulary& vocab, const std::set<std::string>& minimized,
                                   Budget budget)
    : vocab_(vocab), star_vocab_(vocab), formula_(f, vocab), starred_(Formula::bot(), Vocabulary{}), budget_(budget) {
  std::set<std::string> taken;
  for (const auto& p : vocab.predicates()) taken.insert(p.name);
  star_.original = f;
  for (const auto& p : minimized) {
    auto idx = vocab_.predicate_index(p);
    if (!idx) throw Error("minimized predicate '" + p + "' is not in the vocabulary");
    std::string m = "u_" + p;
    while (taken.contains(m)) m += "_";
    taken.insert(m);
    star_.mirror.emplace(p, m);
    minimized_.push_back(*idx);
    mirror_index_.push_back(star_vocab_.add_predicate(m, vocab_.predicates()[*idx].arity));
  }
  star_.starred = star_with(f, star_.mirror);
  starred_ = Evaluator(star_.starred, star_vocab_);
}

bool StabilityChecker::is_stable(const Structure& s) const {
  std::optional<Structure> unused;
  return is_stable(s, unused);
}

bool StabilityChecker::is_stable(const Structure& s, std::optional<Structure>& witness) const {
  witness.reset();
  if (!formula_(s)) return false;
  Structure ext = s;
  for (std::size_t k = ext.relations.size(); k < star_vocab_.predicates().size(); ++k) {
    ext.relations.emplace_back(relation_size(s.size, star_vocab_.predicates()[k].arity), 0);
  }
  // Candidate bits: the true tuples of minimized predicates, as mirror slots.
  std::vector<std::pair<std::size_t, std::size_t>> bits;
  for (std::size_t k = 0; k < minimized_.size(); ++k) {
    const auto& rel = s.relations[minimized_[k]];
    for (std::size_t idx = 0; idx < rel.size(); ++idx) {
      if (rel[idx]) bits.emplace_back(mirror_index_[k], idx);
    }
  }
  if (bits.empty()) return true;
  const std::uint64_t candidates = power_of_two(bits.size()) - 1;
  budget_.check(candidates, "stability check");
  for (std::uint64_t mask = 0; mask < candidates; ++mask) {
    if (mask != 0) {
      for (const auto& [p, idx] : bits) {
        auto& bit = ext.relations[p][idx];
        if (bit) {
          bit = 0;
        } else {
          bit = 1;
          break;
        }
      }
    }
    if (starred_(ext)) {
      Structure w = s;
      for (std::size_t k = 0; k < minimized_.size(); ++k) w.relations[minimized_[k]] = ext.relations[mirror_index_[k]];
      witness = std::move(w);
      return false;
    }
  }
  return true;
}

StabilityResult check_stable(const Formula& f, const Interpretation& i, Budget budget) {
  Vocabulary v = vocabulary_for(f, i);
  StabilityChecker checker(f, v, budget);
  const Structure s = to_structure(i, v);
  StabilityResult r;
  r.holds = checker.holds(s);
  if (!r.holds) return r;
  std::optional<Structure> w;
  r.stable = checker.is_stable(s, w);
  if (w) {
    const Interpretation wi = to_interpretation(*w, v, i.universe);
    PredicateValuation u;
    for (const auto& [p, m] : checker.star_formula().mirror) u.relations[p] = wi.predicates.at(p);
    r.witness = std::move(u);
  }
  return r;
}

bool is_stable(const Formula& f, const Interpretation& i, Budget budget) { return check_stable(f, i, budget).stable; }

std::vector<std::size_t> canonical_key(const Structure& s) {
  std::vector<std::size_t> perm(s.size);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::size_t> best;
  do {
    std::vector<std::size_t> key;
    for (std::size_t c : s.constants) key.push_back(perm[c]);
    for (const auto& rel : s.relations) {
      std::size_t arity = 0;
      while (relation_size(s.size, arity) < rel.size()) ++arity;
      std::vector<std::uint8_t> out(rel.size(), 0);
      for (std::size_t idx = 0; idx < rel.size(); ++idx) {
        if (!rel[idx]) continue;
        auto t = tuple_at(idx, arity, s.size);
        for (auto& a : t) a = perm[a];
        out[tuple_index(t, s.size)] = 1;
      }
      key.insert(key.end(), out.begin(), out.end());
    }
    if (best.empty() || key < best) best = std::move(key);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::vector<Interpretation> stable_models(const Formula& f, const Scope& scope) {
  Vocabulary v(signature_of(f));
  for (const auto& c : scope.extra_constants) v.add_constant(c);
  std::size_t n = scope.universe_size;
  ConstantMaps maps = scope.all_const_maps ? ConstantMaps::All : ConstantMaps::Injective;
  std::vector<Element> names;
  if (scope.herbrand) {
    if (v.constants().empty()) throw Error("Herbrand universe is empty: the formula has no object constants");
    n = v.constants().size();
    maps = ConstantMaps::Identity;
    names = v.constants();
  } else {
    if (n == 0) throw Error("universe size must be positive");
    names = default_element_names(n);
  }
  scope.budget.check(count_structures(v, n, maps), "structure enumeration");
  StabilityChecker checker(f, v, scope.budget);

  std::vector<std::pair<std::string, Interpretation>> found;
  std::vector<std::vector<std::size_t>> keys;
  for_each_structure(v, n, maps, [&](const Structure& s) {
    if (checker.is_stable(s)) {
      Interpretation i = to_interpretation(s, v, names);
      std::string key = to_json(i).dump();
      found.emplace_back(std::move(key), std::move(i));
      if (scope.dedupe_isomorphic) keys.push_back(canonical_key(s));
    }
    return true;
  });

  std::vector<std::size_t> order(found.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return found[a].first < found[b].first; });
  std::vector<Interpretation> out;
  std::set<std::vector<std::size_t>> seen;
  for (std::size_t k : order) {
    if (scope.dedupe_isomorphic && !seen.insert(keys[k]).second) continue;
    out.push_back(std::move(found[k].second));
  }
  return out;
}

Interpretation extend(const Interpretation& base, const std::set<Element>& extra) {
  Interpretation out = base;
  for (const auto& e : extra) {
    if (std::find(base.universe.begin(), base.universe.end(), e) != base.universe.end()) {
      throw Error("element '" + e + "' already belongs to the universe");
    }
    out.universe.push_back(e);
  }
  return out;
}

namespace {

bool negative_in(const Formula& f, bool in_antecedent) {
  switch (f.kind()) {
    case Connective::Bot:
    case Connective::Eq:
      return true;
    case Connective::Pred:
      return in_antecedent;
    case Connective::And:
    case Connective::Or:
      return negative_in(f.left(), in_antecedent) && negative_in(f.right(), in_antecedent);
    case Connective::Implies:
      return negative_in(f.left(), true) && negative_in(f.right(), in_antecedent);
    case Connective::Forall:
    case Connective::Exists:
      return negative_in(f.body(), in_antecedent);
  }
  return false;
}

void flatten_conjunction(const Formula& f, std::vector<Formula>& out) {
  if (f.kind() == Connective::And) {
    flatten_conjunction(f.left(), out);
    flatten_conjunction(f.right(), out);
  } else {
    out.push_back(f);
  }
}

}  // namespace

bool is_negative(const Formula& f) { return negative_in(f, false); }

NegativeSplit split_negative(const Formula& f) {
  std::vector<Formula> parts;
  flatten_conjunction(f, parts);
  std::vector<Formula> core;
  std::vector<Formula> negative;
  for (auto& p : parts) (is_negative(p) ? negative : core).push_back(p);
  return {conjoin(core), conjoin(negative)};
}

AtomSet atoms_of(const Interpretation& i) {
  AtomSet out;
  for (const auto& [p, ext] : i.predicates) {
    for (const auto& t : ext) out.emplace(p, t);
  }
  return out;
}

}  // namespace smsafe
