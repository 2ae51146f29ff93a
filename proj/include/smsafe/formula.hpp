#ifndef SMSAFE_FORMULA_HPP
#define SMSAFE_FORMULA_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace smsafe {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A predicate constant is used with two different arities, or a substitution
/// does not match the arity of its target.
class ArityError : public Error {
 public:
  using Error::Error;
};

/// An occurrence path does not address a node of the formula.
class PathError : public Error {
 public:
  using Error::Error;
};

struct Term {
  enum class Kind : std::uint8_t { Variable, Constant };

  Kind kind = Kind::Constant;
  std::string name;

  static Term variable(std::string name) { return {Kind::Variable, std::move(name)}; }
  static Term constant(std::string name) { return {Kind::Constant, std::move(name)}; }

  bool is_variable() const noexcept { return kind == Kind::Variable; }

  friend auto operator<=>(const Term&, const Term&) = default;
};

enum class Connective : std::uint8_t { Bot, Pred, Eq, And, Or, Implies, Forall, Exists };

/// Immutable first-order formula without function symbols.
///
/// Only the primitive connectives are represented; negation, truth and the
/// biconditional are built as abbreviations (¬F is F→⊥, ⊤ is ⊥→⊥, F↔G is
/// (F→G)∧(G→F)). Copies share structure.
class Formula {
 public:
  Formula();  // ⊥

  static Formula bot();
  static Formula top();
  static Formula atom(std::string predicate, std::vector<Term> args = {});
  static Formula equals(Term lhs, Term rhs);
  static Formula conj(Formula lhs, Formula rhs);
  static Formula disj(Formula lhs, Formula rhs);
  static Formula implies(Formula lhs, Formula rhs);
  static Formula neg(Formula f);
  static Formula iff(Formula lhs, Formula rhs);
  static Formula forall(std::string var, Formula body);
  static Formula exists(std::string var, Formula body);
  static Formula quantified(Connective quantifier, std::string var, Formula body);
  static Formula binary(Connective op, Formula lhs, Formula rhs);

  Connective kind() const noexcept;
  bool is_atomic() const noexcept;
  bool is_binary() const noexcept;
  bool is_quantifier() const noexcept;
  bool is_bot() const noexcept { return kind() == Connective::Bot; }
  /// Structurally ⊥→⊥.
  bool is_top() const noexcept;
  /// Structurally F→⊥ (and not ⊤).
  bool is_negation() const noexcept;

  /// Predicate name for atoms, bound variable for quantifiers, empty otherwise.
  const std::string& name() const noexcept;
  /// Arguments of a predicate atom, or the two sides of an equality.
  const std::vector<Term>& terms() const noexcept;
  Formula left() const;
  Formula right() const;
  Formula body() const { return left(); }

  std::size_t size() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Left-nested conjunction; the empty conjunction is ⊤.
Formula conjoin(const std::vector<Formula>& parts);
/// Left-nested disjunction; the empty disjunction is ⊥.
Formula disjoin(const std::vector<Formula>& parts);

struct Signature {
  std::set<std::string> constants;
  std::map<std::string, std::size_t> predicates;

  /// Adds the symbols of `other`; throws ArityError on a conflicting arity.
  void merge(const Signature& other);
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Object and predicate constants occurring in `f`.
Signature signature_of(const Formula& f);

std::set<std::string> free_variables(const Formula& f);
/// Every variable name occurring in `f`, bound or free, including binders.
std::set<std::string> all_variable_names(const Formula& f);
bool is_sentence(const Formula& f);
bool is_quantifier_free(const Formula& f);
bool is_variable_free(const Formula& f);

/// Universal closure over the free variables, in sorted order.
Formula universal_closure(const Formula& f);

/// Generates names X1, X2, ... skipping reserved ones.
class FreshNames {
 public:
  explicit FreshNames(std::set<std::string> reserved = {}, std::string stem = "X")
      : reserved_(std::move(reserved)), stem_(std::move(stem)) {}
  std::string next();
  void reserve(const std::string& name) { reserved_.insert(name); }

 private:
  std::set<std::string> reserved_;
  std::string stem_;
  std::size_t counter_ = 0;
};

/// Renames every bound variable to X1, X2, ... in binding (pre-)order,
/// avoiding the free variables of `f`. The result has pairwise distinct
/// bound variables.
Formula normalize_bound_variables(const Formula& f);

/// Equality up to renaming of bound variables.
bool alpha_equivalent(const Formula& a, const Formula& b);

/// Simultaneous capture-avoiding substitution of terms for free variables.
Formula substitute(const Formula& f, const std::map<std::string, Term>& sigma);
Formula substitute_term(const Formula& f, const std::string& var, const Term& t);

/// λ params . body
struct PredicateExpression {
  std::vector<std::string> params;
  Formula body;
};

/// Replaces every atom p(t...) with p in `exprs` by body[params := t...],
/// renaming bound variables of `g` that would capture free variables of a body.
Formula substitute_pred_exprs(const Formula& g, const std::map<std::string, PredicateExpression>& exprs);

/// Child selectors from the root: 0/1 for the operands of a binary
/// connective, 0 for a quantifier body, and the argument index for the terms
/// of an atom (a path ending there addresses a term occurrence).
struct OccurrencePath {
  std::vector<std::size_t> steps;

  OccurrencePath child(std::size_t selector) const;
  OccurrencePath parent() const;
  bool is_prefix_of(const OccurrencePath& other) const;
  std::string to_string() const;
  friend auto operator<=>(const OccurrencePath&, const OccurrencePath&) = default;
};

struct Polarity {
  bool positive = true;
  bool strictly_positive = true;
  /// Number of implications whose antecedent contains the occurrence.
  std::size_t antecedent_depth = 0;
};

Polarity polarity(const Formula& f, const OccurrencePath& path);

/// The subformula addressed by a path. Throws PathError for term paths.
Formula subformula_at(const Formula& f, const OccurrencePath& path);
bool addresses_term(const Formula& f, const OccurrencePath& path);

struct VariableOccurrence {
  std::string variable;
  OccurrencePath path;  // term path
};

/// Occurrences of variables as atom arguments, in left-to-right order.
/// Binder positions of quantifiers are not occurrences.
std::vector<VariableOccurrence> variable_occurrences(const Formula& f);

/// Replaces each atom (predicate or equality) satisfying `pred` by ⊥.
Formula replace_atoms_by_bot(const Formula& f, const std::function<bool(const Formula&)>& pred);

}  // namespace smsafe

#endif
