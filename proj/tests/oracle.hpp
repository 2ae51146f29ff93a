// Brute-force reference implementations used as test oracles. They work on
// Interpretation values directly and share no evaluation code with the
// library.
#ifndef SMSAFE_TESTS_ORACLE_HPP
#define SMSAFE_TESTS_ORACLE_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "smsafe/formula.hpp"
#include "smsafe/interpretation.hpp"

namespace oracle {

using smsafe::Connective;
using smsafe::Element;
using smsafe::ElementTuple;
using smsafe::Formula;
using smsafe::Interpretation;
using Env = std::map<std::string, Element>;
using Relations = std::map<std::string, std::set<ElementTuple>>;

inline Element value(const smsafe::Term& t, const Interpretation& i, const Env& env) {
  return t.is_variable() ? env.at(t.name) : i.constants.at(t.name);
}

inline ElementTuple args(const Formula& f, const Interpretation& i, const Env& env) {
  ElementTuple t;
  for (const auto& a : f.terms()) t.push_back(value(a, i, env));
  return t;
}

inline bool in(const Relations& r, const std::string& p, const ElementTuple& t) {
  auto it = r.find(p);
  return it != r.end() && it->second.contains(t);
}

// `u` replaces the extensions of the predicates it names.
inline bool holds(const Formula& f, const Interpretation& i, const Env& env = {}, const Relations* u = nullptr) {
  switch (f.kind()) {
    case Connective::Bot:
      return false;
    case Connective::Eq:
      return value(f.terms()[0], i, env) == value(f.terms()[1], i, env);
    case Connective::Pred:
      if (u && u->contains(f.name())) return in(*u, f.name(), args(f, i, env));
      return in(i.predicates, f.name(), args(f, i, env));
    case Connective::And:
      return holds(f.left(), i, env, u) && holds(f.right(), i, env, u);
    case Connective::Or:
      return holds(f.left(), i, env, u) || holds(f.right(), i, env, u);
    case Connective::Implies:
      return !holds(f.left(), i, env, u) || holds(f.right(), i, env, u);
    case Connective::Forall:
    case Connective::Exists: {
      const bool all = f.kind() == Connective::Forall;
      Env e = env;
      for (const auto& d : i.universe) {
        e[f.name()] = d;
        if (holds(f.body(), i, e, u) != all) return !all;
      }
      return all;
    }
  }
  return false;
}

// F*(u) evaluated by its recursive definition, without building F*.
inline bool holds_star(const Formula& f, const Interpretation& i, const Relations& u, const Env& env = {}) {
  switch (f.kind()) {
    case Connective::Bot:
    case Connective::Eq:
      return holds(f, i, env);
    case Connective::Pred:
      return in(u, f.name(), args(f, i, env));
    case Connective::And:
      return holds_star(f.left(), i, u, env) && holds_star(f.right(), i, u, env);
    case Connective::Or:
      return holds_star(f.left(), i, u, env) || holds_star(f.right(), i, u, env);
    case Connective::Implies:
      return (!holds_star(f.left(), i, u, env) || holds_star(f.right(), i, u, env)) && holds(f, i, env);
    case Connective::Forall:
    case Connective::Exists: {
      const bool all = f.kind() == Connective::Forall;
      Env e = env;
      for (const auto& d : i.universe) {
        e[f.name()] = d;
        if (holds_star(f.body(), i, u, e) != all) return !all;
      }
      return all;
    }
  }
  return false;
}

inline void collect_predicates(const Formula& f, std::map<std::string, std::size_t>& out) {
  switch (f.kind()) {
    case Connective::Pred:
      out.emplace(f.name(), f.terms().size());
      return;
    case Connective::Bot:
    case Connective::Eq:
      return;
    default:
      collect_predicates(f.left(), out);
      if (f.is_binary()) collect_predicates(f.right(), out);
  }
}

inline std::map<std::string, std::size_t> predicates(const Formula& f) {
  std::map<std::string, std::size_t> out;
  collect_predicates(f, out);
  return out;
}

// SM[F] read off the definition: F holds and no u < p satisfies F*(u).
// `minimized` defaults to the predicates of F.
inline bool is_stable(const Formula& f, const Interpretation& i,
                      std::map<std::string, std::size_t> minimized = {}) {
  if (!holds(f, i)) return false;
  if (minimized.empty()) minimized = predicates(f);
  std::vector<std::pair<std::string, ElementTuple>> bits;
  for (const auto& [p, arity] : minimized) {
    auto it = i.predicates.find(p);
    if (it == i.predicates.end()) continue;
    for (const auto& t : it->second) bits.emplace_back(p, t);
  }
  const std::uint64_t full = (std::uint64_t{1} << bits.size()) - 1;
  for (std::uint64_t mask = 0; mask < full; ++mask) {
    Relations u;
    for (const auto& [p, arity] : minimized) u[p];
    for (std::size_t k = 0; k < bits.size(); ++k) {
      if (mask >> k & 1) u[bits[k].first].insert(bits[k].second);
    }
    if (holds_star(f, i, u)) return false;
  }
  return true;
}

inline std::vector<ElementTuple> tuples(const std::vector<Element>& universe, std::size_t arity) {
  std::vector<ElementTuple> out{{}};
  for (std::size_t k = 0; k < arity; ++k) {
    std::vector<ElementTuple> next;
    for (const auto& t : out) {
      for (const auto& d : universe) {
        auto u = t;
        u.push_back(d);
        next.push_back(std::move(u));
      }
    }
    out = std::move(next);
  }
  return out;
}

inline std::vector<Element> element_names(std::size_t n) {
  std::vector<Element> out;
  for (std::size_t k = 1; k <= n; ++k) out.push_back("e" + std::to_string(k));
  return out;
}

// Every interpretation of the given symbols over e1..en, constants mapped
// arbitrarily. Every listed predicate gets an entry, possibly empty.
inline void for_each_interpretation(const std::set<std::string>& constants,
                                    const std::map<std::string, std::size_t>& preds, std::size_t n,
                                    const std::function<void(const Interpretation&)>& visit) {
  Interpretation base;
  base.universe = element_names(n);
  std::vector<std::string> cs(constants.begin(), constants.end());
  std::vector<std::pair<std::string, ElementTuple>> cells;
  for (const auto& [p, arity] : preds) {
    base.predicates[p];
    for (auto& t : tuples(base.universe, arity)) cells.emplace_back(p, std::move(t));
  }
  std::function<void(std::size_t)> assign = [&](std::size_t k) {
    if (k < cs.size()) {
      for (const auto& d : base.universe) {
        base.constants[cs[k]] = d;
        assign(k + 1);
      }
      return;
    }
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cells.size()); ++mask) {
      Interpretation i = base;
      for (std::size_t b = 0; b < cells.size(); ++b) {
        if (mask >> b & 1) i.predicates[cells[b].first].insert(cells[b].second);
      }
      visit(i);
    }
  };
  assign(0);
}

// Drops empty extensions so that interpretations compare by content.
inline Interpretation normalized(Interpretation i) {
  std::erase_if(i.predicates, [](const auto& kv) { return kv.second.empty(); });
  return i;
}

// Random formulas over a fixed small vocabulary: nullary p q r, unary s,
// binary t, constants a b, variables X Y. Leaves are capped by `atoms`.
struct Generator {
  std::mt19937 rng;
  bool variables = false;
  bool quantifiers = false;

  explicit Generator(std::uint32_t seed) : rng(seed) {}

  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

  smsafe::Term term() {
    static const char* consts[] = {"a", "b"};
    static const char* vars[] = {"X", "Y"};
    if (variables && pick(2) == 0) return smsafe::Term::variable(vars[pick(2)]);
    return smsafe::Term::constant(consts[pick(2)]);
  }

  Formula leaf() {
    switch (pick(8)) {
      case 0:
        return Formula::atom("p");
      case 1:
        return Formula::atom("q");
      case 2:
        return Formula::atom("r");
      case 3:
      case 4:
        return Formula::atom("s", {term()});
      case 5:
        return Formula::atom("t", {term(), term()});
      case 6:
        return Formula::equals(term(), term());
      default:
        return Formula::bot();
    }
  }

  Formula formula(std::size_t atoms) {
    if (atoms <= 1) {
      Formula f = leaf();
      if (pick(4) == 0) f = Formula::neg(f);
      return f;
    }
    if (quantifiers && pick(4) == 0) {
      static const char* vars[] = {"X", "Y"};
      const std::string v = vars[pick(2)];
      return pick(2) ? Formula::forall(v, formula(atoms)) : Formula::exists(v, formula(atoms));
    }
    const std::size_t l = 1 + pick(atoms - 1);
    static const Connective ops[] = {Connective::And, Connective::Or, Connective::Implies};
    return Formula::binary(ops[pick(3)], formula(l), formula(atoms - l));
  }
};

}  // namespace oracle

#endif
