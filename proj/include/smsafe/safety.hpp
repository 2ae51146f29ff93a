#ifndef SMSAFE_SAFETY_HPP
#define SMSAFE_SAFETY_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "smsafe/formula.hpp"
#include "smsafe/prenex.hpp"

namespace smsafe {

/// RV(F) for a quantifier-free formula.
std::set<std::string> restricted_vars(const Formula& f);

enum class WeakMode { Positive, Negative };

/// Replaces every atom restricting `var` by ⊥ and simplifies; positive mode
/// asks for ⊤, negative mode for ⊥.
bool weakly_restricted(const Formula& f, const std::string& var, WeakMode mode);

/// NS(F): variables with a strictly positive occurrence that lies in no
/// implication G→H whose antecedent G restricts the variable.
std::set<std::string> non_semi_safe_vars(const Formula& f);

enum class Verdict { Safe, SemiSafeOnly, Unsafe };

std::string to_string(Verdict v);
std::optional<Verdict> verdict_from_string(const std::string& s);

/// Evidence for one variable occurrence of the matrix. Paths are relative to
/// the matrix; polarity inside the matrix equals polarity in the sentence.
struct OccurrenceEvidence {
  OccurrencePath occurrence;
  bool strictly_positive = false;
  /// Innermost implication G→H containing a strictly positive occurrence
  /// with the variable restricted in G.
  std::optional<OccurrencePath> guard;
  /// Innermost subformula satisfying condition (a)/(b) of safety.
  std::optional<OccurrencePath> witness;
  bool witness_positive = false;
  WeakMode witness_mode = WeakMode::Positive;

  bool semi_safe() const { return !strictly_positive || guard.has_value(); }
  bool safe() const { return semi_safe() && witness.has_value(); }
  std::string justification() const;
};

struct VariableEvidence {
  Quantifier quantifier = Quantifier::Forall;
  std::vector<OccurrenceEvidence> occurrences;
};

struct SafetyReport {
  Verdict verdict = Verdict::Unsafe;
  std::map<std::string, VariableEvidence> per_variable;
  std::vector<std::string> warnings;

  bool semi_safe() const { return verdict != Verdict::Unsafe; }
};

bool is_semi_safe(const PrenexSentence& s);

/// Full classification with evidence for every variable occurrence.
SafetyReport is_safe(const PrenexSentence& s);

/// Classifies the prenex form of an arbitrary sentence.
SafetyReport classify(const Formula& sentence);

nlohmann::json to_json(const SafetyReport& report);

}  // namespace smsafe

#endif
