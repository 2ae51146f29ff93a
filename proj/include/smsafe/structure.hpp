#ifndef SMSAFE_STRUCTURE_HPP
#define SMSAFE_STRUCTURE_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "smsafe/formula.hpp"
#include "smsafe/interpretation.hpp"

namespace smsafe {

class BudgetError : public Error {
 public:
  using Error::Error;
};

/// Cap on the number of candidates a single enumeration may visit. Applies
/// separately to candidate structures and to candidate valuations u < p.
struct Budget {
  std::uint64_t candidates = std::uint64_t{1} << 20;

  /// Default, overridden by SMSAFE_BUDGET when that is a positive integer.
  static Budget from_environment();
  /// Throws BudgetError when `count` exceeds the cap.
  void check(std::uint64_t count, const std::string& what) const;
};

/// 2^bits, saturating at UINT64_MAX.
std::uint64_t power_of_two(std::size_t bits);

struct PredicateSymbol {
  std::string name;
  std::size_t arity = 0;
};

/// Indexed symbols for compact structures.
class Vocabulary {
 public:
  Vocabulary() = default;
  explicit Vocabulary(const Signature& sig);

  std::size_t add_constant(const std::string& name);
  /// Throws ArityError if the name is known with another arity.
  std::size_t add_predicate(const std::string& name, std::size_t arity);
  void merge(const Signature& sig);

  std::optional<std::size_t> constant_index(const std::string& name) const;
  std::optional<std::size_t> predicate_index(const std::string& name) const;
  const std::vector<std::string>& constants() const noexcept { return constants_; }
  const std::vector<PredicateSymbol>& predicates() const noexcept { return predicates_; }

 private:
  std::vector<std::string> constants_;
  std::vector<PredicateSymbol> predicates_;
  std::map<std::string, std::size_t> constant_index_;
  std::map<std::string, std::size_t> predicate_index_;
};

/// Interpretation over the universe {0, ..., size-1}. The bit of tuple
/// (a1, ..., am) sits at a1*size^(m-1) + ... + am.
struct Structure {
  std::size_t size = 0;
  std::vector<std::size_t> constants;
  std::vector<std::vector<std::uint8_t>> relations;

  friend bool operator==(const Structure&, const Structure&) = default;
};

std::size_t relation_size(std::size_t universe, std::size_t arity);
std::size_t tuple_index(std::span<const std::size_t> tuple, std::size_t universe);
std::vector<std::size_t> tuple_at(std::size_t index, std::size_t arity, std::size_t universe);

/// All-false structure with every constant denoting element 0.
Structure empty_structure(const Vocabulary& vocab, std::size_t size);

/// Same denotations over `extra` additional elements.
Structure extend(const Structure& s, const Vocabulary& vocab, std::size_t extra);

/// Missing predicates read as empty; a missing constant or a foreign element
/// throws Error.
Structure to_structure(const Interpretation& i, const Vocabulary& vocab);
Interpretation to_interpretation(const Structure& s, const Vocabulary& vocab, const std::vector<Element>& names);
/// e1, ..., en
std::vector<Element> default_element_names(std::size_t n);

/// Classical evaluation of a formula compiled against a vocabulary.
class Evaluator {
 public:
  /// Throws Error when the formula uses a symbol outside `vocab`.
  Evaluator(const Formula& f, const Vocabulary& vocab);

  /// Free variables in name order; an assignment lists their elements.
  const std::vector<std::string>& free_variables() const noexcept { return free_; }
  bool operator()(const Structure& s) const;
  bool operator()(const Structure& s, std::span<const std::size_t> assignment) const;

 private:
  struct Node {
    Connective kind = Connective::Bot;
    std::size_t pred = 0;
    // Variable slot when >= 0, constant -(index+1) otherwise.
    std::vector<std::ptrdiff_t> args;
    std::size_t slot = 0;
    std::size_t lhs = 0;
    std::size_t rhs = 0;
  };

  std::size_t compile(const Formula& f, const Vocabulary& vocab, std::map<std::string, std::size_t>& scope);
  bool eval(std::size_t node, const Structure& s, std::vector<std::size_t>& env) const;

  std::vector<Node> nodes_;
  std::size_t root_ = 0;
  std::size_t slots_ = 0;
  std::vector<std::string> free_;
};

enum class ConstantMaps { All, Injective, Identity };

/// Constant maps times relation assignments for universe size n.
std::uint64_t count_structures(const Vocabulary& vocab, std::size_t n, ConstantMaps maps);

/// Visits every structure of size n in a fixed order: constant maps in
/// lexicographic order, then relation bits as a binary counter. Returns false
/// if the callback stopped the enumeration by returning false. Identity maps
/// require n to equal the number of constants.
bool for_each_structure(const Vocabulary& vocab, std::size_t n, ConstantMaps maps,
                        const std::function<bool(const Structure&)>& visit);

/// Every assignment of n elements to `vars` variables.
bool for_each_assignment(std::size_t vars, std::size_t n,
                         const std::function<bool(std::span<const std::size_t>)>& visit);

}  // namespace smsafe

#endif
