#ifndef SMSAFE_INTERPRETATION_HPP
#define SMSAFE_INTERPRETATION_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

namespace smsafe {

using Element = std::string;
using ElementTuple = std::vector<Element>;

/// A finite classical interpretation. Equality is identity on elements.
/// A nullary predicate is true iff its extension holds the empty tuple.
struct Interpretation {
  std::vector<Element> universe;
  std::map<std::string, Element> constants;
  std::map<std::string, std::set<ElementTuple>> predicates;

  friend bool operator==(const Interpretation&, const Interpretation&) = default;
};

/// Denotations of the second-order variables of the SM transform, keyed by
/// the predicate constant they mirror.
struct PredicateValuation {
  std::map<std::string, std::set<ElementTuple>> relations;

  friend bool operator==(const PredicateValuation&, const PredicateValuation&) = default;
};

/// The extension of `base` to a universe enlarged by `extra` fresh elements.
/// Throws Error if an element already belongs to the universe.
Interpretation extend(const Interpretation& base, const std::set<Element>& extra);

}  // namespace smsafe

#endif
