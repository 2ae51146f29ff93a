#include <functional>

#include "oracle.hpp"
#include "smsafe/formula.hpp"
#include "support.hpp"

using namespace smsafe;

namespace {

void atom_paths(const Formula& f, const OccurrencePath& at, std::vector<OccurrencePath>& out) {
  if (f.kind() == Connective::Pred || f.kind() == Connective::Eq) {
    out.push_back(at);
    return;
  }
  if (f.kind() == Connective::Bot) return;
  atom_paths(f.left(), at.child(0), out);
  if (f.is_binary()) atom_paths(f.right(), at.child(1), out);
}

}  // namespace

TEST_SUITE("formula") {
  TEST_CASE("sugar is stored in primitive form") {
    CHECK(Formula::neg(Formula::atom("p")) == Formula::implies(Formula::atom("p"), Formula::bot()));
    CHECK(Formula::top() == Formula::implies(Formula::bot(), Formula::bot()));
    const auto p = Formula::atom("p"), q = Formula::atom("q");
    CHECK(Formula::iff(p, q) == Formula::conj(Formula::implies(p, q), Formula::implies(q, p)));
  }

  TEST_CASE("signature extraction") {
    Signature s = signature_of(S("p(a) & forall X (p(X) -> q(X))"));
    CHECK(s.constants == std::set<std::string>{"a"});
    CHECK(s.predicates == std::map<std::string, std::size_t>{{"p", 1}, {"q", 1}});

    CHECK(signature_of(Formula::bot()) == Signature{});

    s = signature_of(S("exists X Y (not (q(X) & q(Y) & X != Y) -> p)"));
    CHECK(s.constants.empty());
    CHECK(s.predicates == std::map<std::string, std::size_t>{{"p", 0}, {"q", 1}});
  }

  TEST_CASE("arity conflicts") {
    CHECK_THROWS_AS(S("p(a) & p"), Error);
    Signature a{{}, {{"p", 1}}};
    CHECK_THROWS_AS(a.merge(Signature{{}, {{"p", 2}}}), ArityError);
  }

  TEST_CASE("polarity of occurrences") {
    const Formula f = S("not (exists X Y (q(X) & q(Y) & X != Y)) -> p");
    int q_atoms = 0;
    for (const auto& occ : variable_occurrences(f)) {
      const OccurrencePath atom = occ.path.parent();
      if (subformula_at(f, atom).name() != "q") continue;
      ++q_atoms;
      const Polarity pol = polarity(f, atom);
      CHECK(pol.positive);
      CHECK_FALSE(pol.strictly_positive);
    }
    CHECK(q_atoms == 2);
    const Polarity p = polarity(f, OccurrencePath{{1}});
    CHECK(p.positive);
    CHECK(p.strictly_positive);

    const Polarity root = polarity(f, OccurrencePath{});
    CHECK(root.positive);
    CHECK(root.strictly_positive);
    CHECK_THROWS_AS(subformula_at(f, OccurrencePath{{7}}), PathError);
  }

  TEST_CASE("term substitution") {
    CHECK(alpha_equivalent(substitute_term(F("forall Y p(X, Y)"), "X", Term::constant("a")), S("forall Y p(a, Y)")));
    CHECK(substitute_term(F("p(X) -> q(X)"), "X", Term::constant("c")) == S("p(c) -> q(c)"));
    const Formula closed = S("forall X p(X)");
    CHECK(substitute_term(closed, "X", Term::constant("a")) == closed);
  }

  TEST_CASE("substitution avoids capture") {
    const Formula g = F("forall Y (p(Y) & q(X))");
    const Formula out = substitute_term(g, "X", Term::variable("Y"));
    CHECK(free_variables(out) == std::set<std::string>{"Y"});
  }

  TEST_CASE("predicate expression substitution") {
    const Formula g = S("p(a) | p(b)");
    CHECK(substitute_pred_exprs(g, {{"p", {{"Y"}, F("X = Y")}}}) == F("X = a | X = b"));
    CHECK(substitute_pred_exprs(S("p(a)"), {{"p", {{"X"}, Formula::bot()}}}) == Formula::bot());
    CHECK(substitute_pred_exprs(S("p(c)"), {{"p", {{"X"}, F("p(X) & X = c")}}}) == S("p(c) & c = c"));
    CHECK_THROWS_AS(substitute_pred_exprs(g, {{"p", {{"X", "Y"}, F("X = Y")}}}), Error);
  }

  TEST_CASE("expression substitution renames capturing binders") {
    const Formula g = S("forall X p(X)");
    const Formula out = substitute_pred_exprs(g, {{"p", {{"Y"}, F("Y = Z")}}});
    CHECK(free_variables(out) == std::set<std::string>{"Z"});
  }

  TEST_CASE("substituting a constant adds at most that constant") {
    oracle::Generator gen(7);
    gen.variables = true;
    gen.quantifiers = true;
    for (int k = 0; k < 300; ++k) {
      const Formula f = gen.formula(1 + gen.pick(6));
      const auto before = signature_of(f).constants;
      auto after = signature_of(substitute_term(f, "X", Term::constant("k"))).constants;
      after.erase("k");
      CHECK(std::includes(before.begin(), before.end(), after.begin(), after.end()));
    }
  }

  TEST_CASE("wrapping in an antecedent flips polarity") {
    oracle::Generator gen(11);
    gen.variables = true;
    for (int k = 0; k < 200; ++k) {
      const Formula f = gen.formula(1 + gen.pick(6));
      const Formula wrapped = Formula::implies(f, Formula::atom("z"));
      std::vector<OccurrencePath> paths;
      atom_paths(f, {}, paths);
      for (const auto& path : paths) {
        OccurrencePath outer{{0}};
        outer.steps.insert(outer.steps.end(), path.steps.begin(), path.steps.end());
        CHECK(polarity(wrapped, outer).positive != polarity(f, path).positive);
        CHECK_FALSE(polarity(wrapped, outer).strictly_positive);
      }
    }
  }

  TEST_CASE("identity expressions change nothing") {
    oracle::Generator gen(13);
    gen.variables = true;
    gen.quantifiers = true;
    for (int k = 0; k < 200; ++k) {
      const Formula f = gen.formula(1 + gen.pick(6));
      const Formula out = substitute_pred_exprs(
          f, {{"s", {{"V"}, Formula::atom("s", {Term::variable("V")})}},
              {"t", {{"V", "W"}, Formula::atom("t", {Term::variable("V"), Term::variable("W")})}}});
      CHECK(alpha_equivalent(out, f));
    }
  }

  TEST_CASE("bound variable normalization") {
    const Formula f = Formula::conj(Formula::forall("X", F("p(X)")), Formula::forall("X", F("q(X)")));
    const Formula n = normalize_bound_variables(f);
    CHECK(alpha_equivalent(n, f));
    CHECK(n.left().name() != n.right().name());
    CHECK_FALSE(alpha_equivalent(S("forall X p(X)"), S("exists X p(X)")));
  }

  TEST_CASE("closure and variable queries") {
    const Formula f = F("p(X) -> q(Y)");
    CHECK(free_variables(f) == std::set<std::string>{"X", "Y"});
    CHECK(is_sentence(universal_closure(f)));
    CHECK(is_quantifier_free(f));
    CHECK_FALSE(is_variable_free(f));
    CHECK(is_variable_free(S("p(a) -> q")));
  }
}
