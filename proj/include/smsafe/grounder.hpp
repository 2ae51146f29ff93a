#ifndef SMSAFE_GROUNDER_HPP
#define SMSAFE_GROUNDER_HPP

#include <initializer_list>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "smsafe/formula.hpp"
#include "smsafe/prenex.hpp"

namespace smsafe {

class GroundingError : public Error {
 public:
  using Error::Error;
};

/// Finite set of object constants with a fixed iteration order. The order
/// decides operand order in generated conjunctions and disjunctions.
class ConstantSet {
 public:
  ConstantSet() = default;
  /// Keeps first occurrences, in order.
  explicit ConstantSet(std::vector<std::string> names);
  ConstantSet(std::initializer_list<std::string> names) : ConstantSet(std::vector<std::string>(names)) {}
  /// Sorted order.
  explicit ConstantSet(const std::set<std::string>& names);

  bool empty() const noexcept { return names_.empty(); }
  std::size_t size() const noexcept { return names_.size(); }
  bool contains(const std::string& c) const;
  bool contains_all(const std::set<std::string>& cs) const;
  ConstantSet with(const std::string& c) const;

  auto begin() const { return names_.begin(); }
  auto end() const { return names_.end(); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  friend bool operator==(const ConstantSet&, const ConstantSet&) = default;

 private:
  std::vector<std::string> names_;
};

/// A constant name not in `used`: a, ..., z, then k1, k2, ...
std::string fresh_constant(const std::set<std::string>& used);

/// ⋀_j ⋁_{c} xj = c. No variables gives ⊤; an empty set with variables gives ⊥.
Formula in_formula(std::span<const std::string> vars, const ConstantSet& c);

/// ⋀_p ∀x (p(x) → in_c(x)) over predicates of positive arity, in name order.
Formula spp_formula(const Signature& sig, const ConstantSet& c);

/// λx (p(x) ∧ in_c(x)) for every predicate; λ().p for nullary ones.
std::map<std::string, PredicateExpression> e_c_expressions(const Signature& sig, const ConstantSet& c);

struct GroundOptions {
  /// Permit a constant set that misses constants of the sentence.
  bool allow_partial_constants = false;
  /// Run simplify on the result.
  bool simplify = false;
};

/// Ground_c: ∀ becomes a conjunction and ∃ a disjunction over `c`.
Formula ground(const PrenexSentence& s, const ConstantSet& c, GroundOptions options = {});

}  // namespace smsafe

#endif
