#include "oracle.hpp"
#include "smsafe/sm_engine.hpp"
#include "smsafe/text_io.hpp"
#include "support.hpp"

using namespace smsafe;

TEST_SUITE("text_io") {
  TEST_CASE("parse") {
    const Formula x = Formula::forall(
        "X1", Formula::implies(Formula::neg(Formula::atom("q", {Term::variable("X1")})),
                               Formula::atom("p", {Term::variable("X1")})));
    CHECK(alpha_equivalent(S("forall X (not q(X) -> p(X))"), x));
    CHECK(S("true") == Formula::implies(Formula::bot(), Formula::bot()));
    CHECK(S("false") == Formula::bot());

    const Formula ten = S("exists X Y (not (q(X) & q(Y) & X != Y) -> p)");
    CHECK(ten.kind() == Connective::Exists);
    CHECK(ten.body().kind() == Connective::Exists);
    CHECK(ten.body().body().kind() == Connective::Implies);
    CHECK(ten.body().body().right() == Formula::atom("p"));
  }

  TEST_CASE("precedence and associativity") {
    CHECK(S("p -> q -> r") == S("p -> (q -> r)"));
    CHECK(S("p | q & r") == S("p | (q & r)"));
    CHECK(S("not p & q") == S("(not p) & q"));
    CHECK(S("p <-> q | r") == S("p <-> (q | r)"));
    CHECK(S("a != b") == S("not (a = b)"));
  }

  TEST_CASE("parse errors") {
    CHECK_THROWS_AS(S("p(X)"), ParseError);
    CHECK_THROWS_AS(S("p &"), ParseError);
    CHECK_THROWS_AS(S("forall x p"), ParseError);
    CHECK_NOTHROW(F("p(X)"));
    try {
      S("p &\n  q(");
      FAIL("no error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
  }

  TEST_CASE("print") {
    CHECK(print(Formula::implies(Formula::atom("p"), Formula::bot())) == "not p");
    CHECK(print(Formula::conj(Formula::atom("p"), Formula::disj(Formula::atom("q"), Formula::atom("r")))) ==
          "p & (q | r)");
    const Formula f = Formula::forall("X", Formula::implies(Formula::atom("p", {Term::variable("X")}),
                                                            Formula::atom("q", {Term::variable("X")})));
    CHECK(print(f) == "forall X1 (p(X1) -> q(X1))");
  }

  TEST_CASE("round trip on random formulas") {
    oracle::Generator gen(3);
    gen.variables = true;
    gen.quantifiers = true;
    for (int k = 0; k < 500; ++k) {
      const Formula f = gen.formula(1 + gen.pick(8));
      const std::string text = print(f);
      INFO(text);
      CHECK(alpha_equivalent(F(text), f));
    }
  }

  TEST_CASE("model serialization") {
    CHECK(serialize_models({}) == "[]");
    Interpretation i{{"a"}, {{"a", "a"}}, {{"q", {{"a"}}}, {"p", {{"a"}}}}};
    std::vector<Interpretation> one{i};
    CHECK(serialize_models(one) ==
          R"([{"constants":{"a":"a"},"predicates":{"p":[["a"]],"q":[["a"]]},"universe":["a"]}])");
    Interpretation j = i;
    j.predicates["q"].clear();
    std::vector<Interpretation> two{i, j}, owt{j, i};
    CHECK(serialize_models(two) == serialize_models(owt));
    CHECK(interpretation_from_json(to_json(i)) == i);
  }
}
