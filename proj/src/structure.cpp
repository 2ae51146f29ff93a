#include "smsafe/structure.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

namespace smsafe {

Budget Budget::from_environment() {
  Budget b;
  if (const char* env = std::getenv("SMSAFE_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) b.candidates = v;
  }
  return b;
}

void Budget::check(std::uint64_t count, const std::string& what) const {
  if (count > candidates) {
    throw BudgetError(what + ": " + (count == std::numeric_limits<std::uint64_t>::max() ? std::string("more than 2^64")
                                                                                      : std::to_string(count)) +
                      " candidates exceed the budget of " + std::to_string(candidates));
  }
}

std::uint64_t power_of_two(std::size_t bits) {
  return bits >= 64 ? std::numeric_limits<std::uint64_t>::max() : std::uint64_t{1} << bits;
}

namespace {

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

}  // namespace

Vocabulary::Vocabulary(const Signature& sig) { merge(sig); }

std::size_t Vocabulary::add_constant(const std::string& name) {
  auto it = constant_index_.find(name);
  if (it != constant_index_.end()) return it->second;
  constants_.push_back(name);
  constant_index_.emplace(name, constants_.size() - 1);
  return constants_.size() - 1;
}

std::size_t Vocabulary::add_predicate(const std::string& name, std::size_t arity) {
  auto it = predicate_index_.find(name);
  if (it != predicate_index_.end()) {
    if (predicates_[it->second].arity != arity) {
      throw ArityError("predicate '" + name + "' used with arities " + std::to_string(predicates_[it->second].arity) +
                       " and " + std::to_string(arity));
    }
    return it->second;
  }
  predicates_.push_back({name, arity});
  predicate_index_.emplace(name, predicates_.size() - 1);
  return predicates_.size() - 1;
}

void Vocabulary::merge(const Signature& sig) {
  for (const auto& c : sig.constants) add_constant(c);
  for (const auto& [p, arity] : sig.predicates) add_predicate(p, arity);
}

std::optional<std::size_t> Vocabulary::constant_index(const std::string& name) const {
  auto it = constant_index_.find(name);
  if (it == constant_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Vocabulary::predicate_index(const std::string& name) const {
  auto it = predicate_index_.find(name);
  if (it == predicate_index_.end()) return std::nullopt;
  return it->second;
}

std::size_t relation_size(std::size_t universe, std::size_t arity) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < arity; ++i) r *= universe;
  return r;
}

std::size_t tuple_index(std::span<const std::size_t> tuple, std::size_t universe) {
  std::size_t idx = 0;
  for (std::size_t a : tuple) idx = idx * universe + a;
  return idx;
}

std::vector<std::size_t> tuple_at(std::size_t index, std::size_t arity, std::size_t universe) {
  std::vector<std::size_t> t(arity);
  for (std::size_t j = arity; j-- > 0;) {
    t[j] = index % universe;
    index /= universe;
  }
  return t;
}

Structure empty_structure(const Vocabulary& vocab, std::size_t size) {
  Structure s;
  s.size = size;
  s.constants.assign(vocab.constants().size(), 0);
  for (const auto& p : vocab.predicates()) s.relations.emplace_back(relation_size(size, p.arity), 0);
  return s;
}

Structure extend(const Structure& s, const Vocabulary& vocab, std::size_t extra) {
  Structure out = empty_structure(vocab, s.size + extra);
  out.constants = s.constants;
  for (std::size_t p = 0; p < vocab.predicates().size(); ++p) {
    const std::size_t arity = vocab.predicates()[p].arity;
    for (std::size_t idx = 0; idx < s.relations[p].size(); ++idx) {
      if (!s.relations[p][idx]) continue;
      out.relations[p][tuple_index(tuple_at(idx, arity, s.size), out.size)] = 1;
    }
  }
  return out;
}

Structure to_structure(const Interpretation& i, const Vocabulary& vocab) {
  std::map<Element, std::size_t> index;
  for (std::size_t k = 0; k < i.universe.size(); ++k) {
    if (!index.emplace(i.universe[k], k).second) throw Error("element '" + i.universe[k] + "' listed twice");
  }
  auto element = [&](const Element& e) {
    auto it = index.find(e);
    if (it == index.end()) throw Error("element '" + e + "' is not in the universe");
    return it->second;
  };
  Structure s = empty_structure(vocab, i.universe.size());
  for (std::size_t c = 0; c < vocab.constants().size(); ++c) {
    auto it = i.constants.find(vocab.constants()[c]);
    if (it == i.constants.end()) throw Error("constant '" + vocab.constants()[c] + "' is not interpreted");
    s.constants[c] = element(it->second);
  }
  for (std::size_t p = 0; p < vocab.predicates().size(); ++p) {
    auto it = i.predicates.find(vocab.predicates()[p].name);
    if (it == i.predicates.end()) continue;
    for (const auto& tuple : it->second) {
      if (tuple.size() != vocab.predicates()[p].arity) {
        throw ArityError("tuple of wrong arity for predicate '" + vocab.predicates()[p].name + "'");
      }
      std::vector<std::size_t> t;
      for (const auto& e : tuple) t.push_back(element(e));
      s.relations[p][tuple_index(t, s.size)] = 1;
    }
  }
  return s;
}

Interpretation to_interpretation(const Structure& s, const Vocabulary& vocab, const std::vector<Element>& names) {
  Interpretation i;
  i.universe = names;
  for (std::size_t c = 0; c < vocab.constants().size(); ++c) i.constants[vocab.constants()[c]] = names[s.constants[c]];
  for (std::size_t p = 0; p < vocab.predicates().size(); ++p) {
    auto& ext = i.predicates[vocab.predicates()[p].name];
    for (std::size_t idx = 0; idx < s.relations[p].size(); ++idx) {
      if (!s.relations[p][idx]) continue;
      ElementTuple t;
      for (std::size_t a : tuple_at(idx, vocab.predicates()[p].arity, s.size)) t.push_back(names[a]);
      ext.insert(std::move(t));
    }
  }
  return i;
}

std::vector<Element> default_element_names(std::size_t n) {
  std::vector<Element> names;
  for (std::size_t k = 1; k <= n; ++k) names.push_back("e" + std::to_string(k));
  return names;
}

Evaluator::Evaluator(const Formula& f, const Vocabulary& vocab) {
  const auto fv = smsafe::free_variables(f);
  free_.assign(fv.begin(), fv.end());
  std::map<std::string, std::size_t> scope;
  for (const auto& x : free_) scope[x] = slots_++;
  root_ = compile(f, vocab, scope);
}

std::size_t Evaluator::compile(const Formula& f, const Vocabulary& vocab, std::map<std::string, std::size_t>& scope) {
  Node n;
  n.kind = f.kind();
  auto term = [&](const Term& t) -> std::ptrdiff_t {
    if (t.is_variable()) return static_cast<std::ptrdiff_t>(scope.at(t.name));
    auto c = vocab.constant_index(t.name);
    if (!c) throw Error("constant '" + t.name + "' is not in the vocabulary");
    return -static_cast<std::ptrdiff_t>(*c) - 1;
  };
  switch (f.kind()) {
    case Connective::Bot:
      break;
    case Connective::Pred: {
      auto p = vocab.predicate_index(f.name());
      if (!p) throw Error("predicate '" + f.name() + "' is not in the vocabulary");
      if (vocab.predicates()[*p].arity != f.terms().size()) throw ArityError("arity mismatch for '" + f.name() + "'");
      n.pred = *p;
      for (const auto& t : f.terms()) n.args.push_back(term(t));
      break;
    }
    case Connective::Eq:
      for (const auto& t : f.terms()) n.args.push_back(term(t));
      break;
    case Connective::And:
    case Connective::Or:
    case Connective::Implies:
      n.lhs = compile(f.left(), vocab, scope);
      n.rhs = compile(f.right(), vocab, scope);
      break;
    case Connective::Forall:
    case Connective::Exists: {
      n.slot = slots_++;
      auto saved = scope.find(f.name());
      std::optional<std::size_t> previous;
      if (saved != scope.end()) previous = saved->second;
      scope[f.name()] = n.slot;
      n.lhs = compile(f.body(), vocab, scope);
      if (previous) {
        scope[f.name()] = *previous;
      } else {
        scope.erase(f.name());
      }
      break;
    }
  }
  nodes_.push_back(std::move(n));
  return nodes_.size() - 1;
}

bool Evaluator::operator()(const Structure& s) const {
  if (!free_.empty()) throw Error("formula has free variables; an assignment is required");
  std::vector<std::size_t> env(slots_, 0);
  return eval(root_, s, env);
}

bool Evaluator::operator()(const Structure& s, std::span<const std::size_t> assignment) const {
  if (assignment.size() != free_.size()) throw Error("assignment does not match the free variables");
  std::vector<std::size_t> env(slots_, 0);
  std::copy(assignment.begin(), assignment.end(), env.begin());
  return eval(root_, s, env);
}

bool Evaluator::eval(std::size_t node, const Structure& s, std::vector<std::size_t>& env) const {
  const Node& n = nodes_[node];
  auto value = [&](std::ptrdiff_t a) {
    return a >= 0 ? env[static_cast<std::size_t>(a)] : s.constants[static_cast<std::size_t>(-a - 1)];
  };
  switch (n.kind) {
    case Connective::Bot:
      return false;
    case Connective::Pred: {
      std::size_t idx = 0;
      for (auto a : n.args) idx = idx * s.size + value(a);
      return s.relations[n.pred][idx] != 0;
    }
    case Connective::Eq:
      return value(n.args[0]) == value(n.args[1]);
    case Connective::And:
      return eval(n.lhs, s, env) && eval(n.rhs, s, env);
    case Connective::Or:
      return eval(n.lhs, s, env) || eval(n.rhs, s, env);
    case Connective::Implies:
      return !eval(n.lhs, s, env) || eval(n.rhs, s, env);
    case Connective::Forall:
      for (std::size_t e = 0; e < s.size; ++e) {
        env[n.slot] = e;
        if (!eval(n.lhs, s, env)) return false;
      }
      return true;
    case Connective::Exists:
      for (std::size_t e = 0; e < s.size; ++e) {
        env[n.slot] = e;
        if (eval(n.lhs, s, env)) return true;
      }
      return false;
  }
  return false;
}

namespace {

std::size_t relation_bits(const Vocabulary& vocab, std::size_t n) {
  std::size_t bits = 0;
  for (const auto& p : vocab.predicates()) bits += relation_size(n, p.arity);
  return bits;
}

std::uint64_t count_constant_maps(std::size_t k, std::size_t n, ConstantMaps maps) {
  switch (maps) {
    case ConstantMaps::Identity:
      return k == n ? 1 : 0;
    case ConstantMaps::Injective: {
      if (k > n) return 0;
      std::uint64_t r = 1;
      for (std::size_t i = 0; i < k; ++i) r = saturating_mul(r, n - i);
      return r;
    }
    case ConstantMaps::All: {
      std::uint64_t r = 1;
      for (std::size_t i = 0; i < k; ++i) r = saturating_mul(r, n);
      return r;
    }
  }
  return 0;
}

// Lexicographic successor; false after the last map.
bool next_constant_map(std::vector<std::size_t>& m, std::size_t n, ConstantMaps maps) {
  if (maps == ConstantMaps::Identity) return false;
  for (;;) {
    std::size_t i = m.size();
    while (i > 0) {
      --i;
      if (++m[i] < n) break;
      m[i] = 0;
      if (i == 0) return false;
    }
    if (m.empty()) return false;
    if (maps == ConstantMaps::All) return true;
    std::vector<std::uint8_t> seen(n, 0);
    bool injective = true;
    for (std::size_t v : m) {
      if (seen[v]) {
        injective = false;
        break;
      }
      seen[v] = 1;
    }
    if (injective) return true;
  }
}

bool is_injective(const std::vector<std::size_t>& m, std::size_t n) {
  std::vector<std::uint8_t> seen(n, 0);
  for (std::size_t v : m) {
    if (seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

}  // namespace

std::uint64_t count_structures(const Vocabulary& vocab, std::size_t n, ConstantMaps maps) {
  return saturating_mul(count_constant_maps(vocab.constants().size(), n, maps), power_of_two(relation_bits(vocab, n)));
}

bool for_each_structure(const Vocabulary& vocab, std::size_t n, ConstantMaps maps,
                        const std::function<bool(const Structure&)>& visit) {
  const std::size_t k = vocab.constants().size();
  if (n == 0) throw Error("universe must be nonempty");
  if (count_constant_maps(k, n, maps) == 0) return true;
  const std::size_t bits = relation_bits(vocab, n);
  if (bits >= 64) throw BudgetError("too many relation bits to enumerate");

  Structure s = empty_structure(vocab, n);
  std::vector<std::size_t> m(k, 0);
  if (maps == ConstantMaps::Identity) {
    for (std::size_t c = 0; c < k; ++c) m[c] = c;
  } else if (maps == ConstantMaps::Injective && !is_injective(m, n)) {
    if (!next_constant_map(m, n, maps)) return true;
  }
  // Flat (predicate, index) list, least significant first.
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t p = 0; p < s.relations.size(); ++p) {
    for (std::size_t idx = 0; idx < s.relations[p].size(); ++idx) slots.emplace_back(p, idx);
  }
  for (;;) {
    s.constants = m;
    for (auto& r : s.relations) std::fill(r.begin(), r.end(), 0);
    const std::uint64_t total = std::uint64_t{1} << bits;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
      if (mask != 0) {
        // Binary increment: clear trailing ones, set the next bit.
        for (std::size_t b = 0; b < bits; ++b) {
          auto& bit = s.relations[slots[b].first][slots[b].second];
          if (bit) {
            bit = 0;
          } else {
            bit = 1;
            break;
          }
        }
      }
      if (!visit(s)) return false;
    }
    if (!next_constant_map(m, n, maps)) return true;
  }
}

bool for_each_assignment(std::size_t vars, std::size_t n,
                         const std::function<bool(std::span<const std::size_t>)>& visit) {
  if (n == 0) return true;
  std::vector<std::size_t> a(vars, 0);
  for (;;) {
    if (!visit(a)) return false;
    std::size_t i = vars;
    for (;;) {
      if (i == 0) return true;
      --i;
      if (++a[i] < n) break;
      a[i] = 0;
    }
  }
}

}  // namespace smsafe
