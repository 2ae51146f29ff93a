#ifndef SMSAFE_TEXT_IO_HPP
#define SMSAFE_TEXT_IO_HPP

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "smsafe/formula.hpp"
#include "smsafe/interpretation.hpp"

namespace smsafe {

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

enum class ParseMode { Sentence, Formula };

/// Parses the concrete syntax:
///
///   formula := iff
///   iff     := impl ("<->" impl)*          left associative
///   impl    := disj ("->" impl)?           right associative
///   disj    := conj ("|" conj)*
///   conj    := unary ("&" unary)*
///   unary   := "not" unary | ("forall"|"exists") VAR+ unary | primary
///   primary := "false" | "true" | PRED ("(" term ("," term)* ")")?
///            | term ("="|"!=") term | "(" formula ")"
///
/// Variables start with an uppercase letter, constants and predicates with a
/// lowercase one. Bound variables are renamed X1, X2, ... in binding order.
/// In Sentence mode free variables are rejected.
Formula parse(std::string_view text, ParseMode mode = ParseMode::Sentence);

/// Minimal-parenthesis rendering with ¬, ⊤, ↔ and ≠ resugared. Bound variables
/// are renamed X1, X2, ... in binding order.
std::string print(const Formula& f);

nlohmann::json to_json(const Interpretation& i);
Interpretation interpretation_from_json(const nlohmann::json& j);
nlohmann::json to_json(const PredicateValuation& u);
PredicateValuation valuation_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Signature& sig);

/// Compact JSON array of models, each with sorted arrays, sorted by its own
/// serialization. Independent of the order of `models`.
std::string serialize_models(std::span<const Interpretation> models);

}  // namespace smsafe

#endif
