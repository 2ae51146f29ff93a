#ifndef SMSAFE_PRENEX_HPP
#define SMSAFE_PRENEX_HPP

#include <string>
#include <utility>
#include <vector>

#include "smsafe/formula.hpp"

namespace smsafe {

enum class Quantifier { Forall, Exists };

struct QuantifiedVariable {
  Quantifier quantifier;
  std::string variable;
  friend bool operator==(const QuantifiedVariable&, const QuantifiedVariable&) = default;
};

/// Q1 x1 ... Qn xn M with distinct xi and quantifier-free M.
struct PrenexSentence {
  std::vector<QuantifiedVariable> prefix;
  Formula matrix;

  Formula to_formula() const;
  friend bool operator==(const PrenexSentence&, const PrenexSentence&) = default;
};

/// True if `f` is a block of quantifiers over distinct variables followed by
/// a quantifier-free formula.
bool is_prenex(const Formula& f);

/// Classically equivalent prenex form. Already-prenex input is split
/// verbatim. Otherwise bound variables are renamed X1, X2, ..., operands are
/// prenexed recursively and their prefixes are pulled out left operand
/// first; quantifiers leaving an antecedent are dualized.
PrenexSentence to_prenex(const Formula& f);

/// Normal form under the rewrites
///   ¬⊥↦⊤  ¬⊤↦⊥  ⊥∧F↦⊥  F∧⊥↦⊥  ⊤∧F↦F  F∧⊤↦F  ⊥∨F↦F  F∨⊥↦F  ⊤∨F↦⊤  F∨⊤↦⊤
///   ⊥→F↦⊤  F→⊤↦⊤  ⊤→F↦F
/// applied innermost first. Throws Error on quantified input.
Formula simplify(const Formula& f);

}  // namespace smsafe

#endif
