#ifndef SMSAFE_HARNESS_HPP
#define SMSAFE_HARNESS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "smsafe/formula.hpp"
#include "smsafe/interpretation.hpp"
#include "smsafe/prenex.hpp"
#include "smsafe/safety.hpp"
#include "smsafe/structure.hpp"

namespace smsafe {

class CorpusError : public Error {
 public:
  using Error::Error;
};

struct CorpusEntry {
  std::string name;
  Verdict expected = Verdict::Unsafe;
  std::string text;
  std::size_t line = 0;
  Formula formula;
  PrenexSentence prenex;
  Verdict computed = Verdict::Unsafe;
  /// prenex, quantifier-free, variable-free, propositional, constant-free
  std::set<std::string> tags;
};

struct Corpus {
  std::vector<CorpusEntry> entries;
};

/// One entry per line: name TAB expected-verdict TAB formula. Lines starting
/// with # and blank lines are skipped. Throws CorpusError with the line
/// number on malformed lines or unparsable formulas.
Corpus parse_corpus(std::string_view text);
Corpus load_corpus(const std::string& path);

/// Entries whose computed verdict differs from the expected one.
std::vector<const CorpusEntry*> verdict_mismatches(const Corpus& corpus);

struct VerificationScope {
  std::size_t max_universe = 3;
  /// Entries with more object constants are skipped.
  std::size_t max_constants = 3;
  bool all_const_maps = true;
  Budget budget = Budget::from_environment();
  /// Run the suite on every entry regardless of its verdict.
  bool force = false;
  bool parallel = true;
};

/// Self-contained reproduction data for a violated property.
struct Counterexample {
  std::string suite;
  std::string entry;
  /// stable-vs-spp, grounding-equivalence, stable-mismatch,
  /// characterization-mismatch, extension-mismatch, invalid-implication,
  /// negative-splitting
  std::string kind;
  Formula formula;
  std::map<std::string, Formula> aux;
  Interpretation interpretation;
  std::optional<PredicateValuation> valuation;
  /// Free-variable assignment for open formulas.
  std::map<std::string, Element> assignment;
  std::size_t extra_elements = 0;
  std::string description;
};

/// Re-checks the violation with the generic engine entry points. True iff
/// the violation reproduces.
bool replay(const Counterexample& cx);

nlohmann::json to_json(const Counterexample& cx);

enum class EntryStatus { Ok, Violation, Skipped, Unsupported };

struct EntryResult {
  std::string entry;
  EntryStatus status = EntryStatus::Ok;
  std::uint64_t instances = 0;
  std::string note;
  /// The check succeeds by finding a violation.
  bool expect_violation = false;
  std::optional<Counterexample> counterexample;
};

struct VerificationReport {
  std::string suite;
  std::vector<EntryResult> entries;
  double runtime_seconds = 0;

  std::uint64_t instances_checked() const;
  std::size_t entries_checked() const;
  std::vector<Counterexample> counterexamples() const;
  bool passed() const;
};

/// Runtime is left out so that reports are reproducible byte for byte.
nlohmann::json to_json(const VerificationReport& report);

/// prop1 ... prop5, lemma1 ... lemma3, negsplit, counterexamples
const std::vector<std::string>& suite_names();

/// Throws CorpusError when an expected verdict disagrees with the computed
/// one, and Error for an unknown suite.
VerificationReport verify(const std::string& suite, const Corpus& corpus, const VerificationScope& scope);

/// The sentence of the double-negation counterexample and its constant set.
Formula double_negation_counterexample();
/// The disjunction used against the DE rule; only its classical
/// consequences are testable.
Formula de_counterexample();

}  // namespace smsafe

#endif
