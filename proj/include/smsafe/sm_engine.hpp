#ifndef SMSAFE_SM_ENGINE_HPP
#define SMSAFE_SM_ENGINE_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "smsafe/formula.hpp"
#include "smsafe/grounder.hpp"
#include "smsafe/interpretation.hpp"
#include "smsafe/prenex.hpp"
#include "smsafe/structure.hpp"

namespace smsafe {

class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// F*(u) with one mirror predicate u_p per predicate p of F.
struct StarFormula {
  Formula original;
  Formula starred;
  /// p -> name of its mirror.
  std::map<std::string, std::string> mirror;
};

StarFormula star(const Formula& f);
/// Star transform with caller-chosen mirror names.
Formula star_with(const Formula& f, const std::map<std::string, std::string>& mirror);

/// Classical satisfaction. Relations in `u` override or supply the
/// extensions of the predicates they name.
bool holds(const Formula& f, const Interpretation& i, const PredicateValuation* u = nullptr);
/// Satisfaction of F*(u) where `u` is keyed by the mirrored predicates.
bool holds_star(const StarFormula& s, const Interpretation& i, const PredicateValuation& u);

struct StabilityResult {
  bool holds = false;
  bool stable = false;
  /// Some u < p satisfying F*(u), when the formula holds but is not stable.
  std::optional<PredicateValuation> witness;
};

/// Stability checks against a fixed vocabulary. Only the predicates of the
/// formula are minimized; candidate valuations range over proper subsets of
/// their extensions, smallest binary counter value first.
class StabilityChecker {
 public:
  StabilityChecker(const Formula& f, const Vocabulary& vocab, Budget budget = Budget::from_environment());
  /// Minimizes the listed predicates instead, which must be in `vocab`.
  StabilityChecker(const Formula& f, const Vocabulary& vocab, const std::set<std::string>& minimized,
                   Budget budget = Budget::from_environment());

  bool holds(const Structure& s) const { return formula_(s); }
  bool is_stable(const Structure& s) const;
  /// Witness relations are reported in place of the minimized predicates.
  bool is_stable(const Structure& s, std::optional<Structure>& witness) const;

  const StarFormula& star_formula() const noexcept { return star_; }
  const Vocabulary& vocabulary() const noexcept { return vocab_; }

 private:
  StarFormula star_;
  Vocabulary vocab_;
  Vocabulary star_vocab_;
  Evaluator formula_;
  Evaluator starred_;
  std::vector<std::size_t> minimized_;
  std::vector<std::size_t> mirror_index_;
  Budget budget_;
};

StabilityResult check_stable(const Formula& f, const Interpretation& i, Budget budget = Budget::from_environment());
bool is_stable(const Formula& f, const Interpretation& i, Budget budget = Budget::from_environment());

struct Scope {
  /// Universe = constants of the formula plus extra_constants, each naming
  /// itself. Otherwise universe {e1, ..., en} with n = universe_size.
  bool herbrand = false;
  std::size_t universe_size = 1;
  /// All constant maps, including collisions; injective maps otherwise.
  bool all_const_maps = true;
  std::vector<std::string> extra_constants;
  bool dedupe_isomorphic = false;
  Budget budget = Budget::from_environment();
};

/// Stable models within the scope, sorted by their JSON serialization.
std::vector<Interpretation> stable_models(const Formula& f, const Scope& scope);

/// Lexicographically least relabeling key of a structure.
std::vector<std::size_t> canonical_key(const Structure& s);

/// Same denotations over a larger universe.
Interpretation extend(const Interpretation& base, const std::set<Element>& extra);

/// Every predicate occurrence lies in the antecedent of an implication.
bool is_negative(const Formula& f);

struct NegativeSplit {
  Formula core;
  Formula negative_part;
};

/// Sorts the top-level conjuncts into non-negative and negative ones.
NegativeSplit split_negative(const Formula& f);

using GroundAtom = std::pair<std::string, std::vector<std::string>>;
using AtomSet = std::set<GroundAtom>;

/// Stable models of a variable-free formula by the reduct definition, read
/// over Herbrand interpretations: X qualifies iff X satisfies g and no
/// proper subset of X satisfies the reduct of g relative to X.
std::vector<AtomSet> reduct_stable_models(const Formula& g, Budget budget = Budget::from_environment());

/// Herbrand interpretation as the set of true atoms.
AtomSet atoms_of(const Interpretation& i);

struct Characterization {
  /// Variable-free G with SM[F] equivalent to G ∧ spp.
  Formula g;
  Formula spp;
  ConstantSet constants;
  /// 1: no object constants, 2: variable-free input, 3: grounded first.
  int case_number = 0;
};

/// Requires a safe sentence. The family count is charged against `budget`.
Characterization characterize(const Formula& sentence, Budget budget = Budget::from_environment());

}  // namespace smsafe

#endif
