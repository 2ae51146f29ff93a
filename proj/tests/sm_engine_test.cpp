#include "oracle.hpp"
#include "smsafe/grounder.hpp"
#include "smsafe/sm_engine.hpp"
#include "support.hpp"

using namespace smsafe;

namespace {

using Models = std::set<std::string>;

Models keys(const std::vector<Interpretation>& ms) {
  Models out;
  for (const auto& m : ms) out.insert(to_json(oracle::normalized(m)).dump());
  return out;
}

Interpretation herbrand(std::vector<std::string> constants, std::map<std::string, std::set<ElementTuple>> preds) {
  Interpretation i;
  i.universe = constants;
  for (const auto& c : constants) i.constants[c] = c;
  i.predicates = std::move(preds);
  return i;
}

Scope herbrand_scope(std::vector<std::string> extra = {}) {
  Scope s;
  s.herbrand = true;
  s.extra_constants = std::move(extra);
  return s;
}

AtomSet atoms(std::initializer_list<const char*> names) {
  AtomSet out;
  for (const char* n : names) out.emplace(n, std::vector<std::string>{});
  return out;
}

}  // namespace

TEST_SUITE("sm_engine") {
  TEST_CASE("star transform") {
    const Formula f = S("p(a) & forall X (p(X) -> q(X))");
    CHECK(alpha_equivalent(star_with(f, {{"p", "u"}, {"q", "v"}}),
                           S("u(a) & forall X ((u(X) -> v(X)) & (p(X) -> q(X)))")));
    CHECK(star_with(S("a = b"), {{"p", "u"}}) == S("a = b"));
    CHECK(star_with(Formula::bot(), {}) == Formula::bot());
    const StarFormula s = star(S("p & u_p"));
    CHECK(s.mirror.at("p") != "u_p");
    CHECK(s.mirror.at("p") != s.mirror.at("u_p"));
  }

  TEST_CASE("classical satisfaction") {
    Interpretation i{{"e1", "e2"}, {{"a", "e1"}}, {{"p", {{"e1"}}}}};
    CHECK(holds(S("a = a"), i));
    CHECK(holds(S("forall X (p(X) -> X = a)"), i));
    i.predicates["p"].insert({"e2"});
    CHECK_FALSE(holds(S("forall X (p(X) -> X = a)"), i));
    PredicateValuation u{{{"p", {{"e1"}}}}};
    CHECK(holds(S("forall X (p(X) -> X = a)"), i, &u));
  }

  TEST_CASE("worked example has one Herbrand stable model") {
    const Formula f = S("p(a) & forall X (p(X) -> q(X))");
    int stable = 0;
    oracle::for_each_interpretation({}, {{"p", 1}, {"q", 1}}, 1, [&](Interpretation i) {
      i.universe = {"a"};
      for (auto& [p, ext] : i.predicates) {
        std::set<ElementTuple> renamed;
        for (const auto& t : ext) renamed.insert({"a"});
        ext = renamed;
      }
      i.constants["a"] = "a";
      const bool expected = i.predicates["p"].size() == 1 && i.predicates["q"].size() == 1;
      CHECK(is_stable(f, i) == expected);
      stable += expected;
    });
    CHECK(stable == 1);
    const auto models = stable_models(f, herbrand_scope());
    REQUIRE(models.size() == 1);
    CHECK(models[0] == herbrand({"a"}, {{"p", {{"a"}}}, {"q", {{"a"}}}}));
  }

  TEST_CASE("default negation rule makes p total and q empty") {
    const Formula f = S("forall X (not q(X) -> p(X))");
    for (std::size_t n = 1; n <= 3; ++n) {
      oracle::for_each_interpretation({}, {{"p", 1}, {"q", 1}}, n, [&](const Interpretation& i) {
        const bool expected = i.predicates.at("p").size() == n && i.predicates.at("q").empty();
        CHECK(is_stable(f, i) == expected);
      });
    }
  }

  TEST_CASE("falsity has no stable models") {
    Scope s;
    s.universe_size = 2;
    CHECK(stable_models(Formula::bot(), s).empty());
    CHECK_FALSE(is_stable(Formula::bot(), herbrand({"a"}, {})));
    CHECK_THROWS_AS(stable_models(S("p"), herbrand_scope()), Error);
  }

  TEST_CASE("the two rules differ at Herbrand scope") {
    const auto a = stable_models(S("forall X (not q(X) -> p(X))"), herbrand_scope({"a"}));
    const auto b = stable_models(S("forall X (not p(X) -> q(X))"), herbrand_scope({"a"}));
    REQUIRE(a.size() == 1);
    REQUIRE(b.size() == 1);
    CHECK(atoms_of(a[0]) == AtomSet{{"p", {"a"}}});
    CHECK(atoms_of(b[0]) == AtomSet{{"q", {"a"}}});
  }

  TEST_CASE("stability witness") {
    const Formula f = S("forall X (not q(X) -> p(X))");
    const Interpretation i{{"e1"}, {}, {{"p", {{"e1"}}}, {"q", {{"e1"}}}}};
    const StabilityResult r = check_stable(f, i);
    CHECK(r.holds);
    CHECK_FALSE(r.stable);
    REQUIRE(r.witness);
    PredicateValuation u = *r.witness;
    CHECK(oracle::holds_star(f, i, u.relations));
    CHECK(u.relations != i.predicates);
  }

  TEST_CASE("engine agrees with the reference definition") {
    oracle::Generator gen(53);
    gen.variables = true;
    gen.quantifiers = true;
    int stable = 0;
    for (int k = 0; k < 120; ++k) {
      const Formula f = universal_closure(gen.formula(1 + gen.pick(5)));
      const Signature sig = signature_of(f);
      INFO(print(f));
      oracle::for_each_interpretation(sig.constants, sig.predicates, 1 + k % 2, [&](const Interpretation& i) {
        const bool expected = oracle::is_stable(f, i);
        CHECK(is_stable(f, i) == expected);
        stable += expected;
      });
    }
    CHECK(stable > 0);
  }

  TEST_CASE("reduct examples") {
    CHECK(reduct_stable_models(S("p & (p -> q)")) == std::vector<AtomSet>{atoms({"p", "q"})});
    CHECK(reduct_stable_models(S("not p -> q")) == std::vector<AtomSet>{atoms({"q"})});
    const auto lem = reduct_stable_models(S("p | not p"));
    CHECK(std::set<AtomSet>(lem.begin(), lem.end()) == std::set<AtomSet>{atoms({}), atoms({"p"})});
    CHECK(reduct_stable_models(S("not not p -> p")).size() == 2);
    CHECK(reduct_stable_models(S("(p | not p) & (q | not q)")).size() == 4);
    CHECK(reduct_stable_models(S("(p -> q) & (q -> p) & (not p -> p)")).empty());
    CHECK(reduct_stable_models(S("(not p -> q) & (not q -> p)")).size() == 2);
  }

  TEST_CASE("extension") {
    const Interpretation i{{"e1"}, {{"a", "e1"}}, {{"p", {{"e1"}}}}};
    const Interpretation e = extend(i, {"e2", "e3"});
    CHECK(e.universe.size() == 3);
    CHECK(e.constants == i.constants);
    CHECK(e.predicates == i.predicates);
    CHECK_THROWS_AS(extend(i, {"e1"}), Error);
  }

  TEST_CASE("negative formulas") {
    CHECK(is_negative(S("not q")));
    CHECK(is_negative(S("a = b")));
    CHECK(is_negative(S("(p -> q) -> false")));
    CHECK_FALSE(is_negative(S("p")));
    CHECK_FALSE(is_negative(S("not p -> q")));
    const NegativeSplit s = split_negative(S("p & not q"));
    CHECK(s.core == S("p"));
    CHECK(s.negative_part == S("not q"));
  }

  TEST_CASE("conjoining a negative formula commutes with SM") {
    oracle::Generator gen(59);
    gen.variables = true;
    gen.quantifiers = true;
    for (int k = 0; k < 80; ++k) {
      const Formula core = universal_closure(gen.formula(1 + gen.pick(4)));
      const Formula neg = universal_closure(Formula::neg(gen.formula(1 + gen.pick(3))));
      const Formula both = Formula::conj(core, neg);
      const Signature sig = signature_of(both);
      const auto minimized = oracle::predicates(both);
      INFO(print(both));
      oracle::for_each_interpretation(sig.constants, sig.predicates, 1 + k % 2, [&](const Interpretation& i) {
        CHECK(oracle::is_stable(both, i) ==
              (oracle::is_stable(core, i, minimized) && oracle::holds(neg, i)));
        CHECK(is_stable(both, i) == oracle::is_stable(both, i));
      });
    }
  }

  TEST_CASE("isomorphic models are merged on request") {
    const Formula f = S("forall X ((not q(X) -> p(X)) & (not p(X) -> q(X)))");
    Scope s;
    s.universe_size = 2;
    CHECK(stable_models(f, s).size() == 4);
    s.dedupe_isomorphic = true;
    CHECK(stable_models(f, s).size() == 3);
  }

  TEST_CASE("stable models are sorted and deterministic") {
    const Formula f = S("(not p(a) -> p(b)) & (not p(b) -> p(a))");
    const auto m = stable_models(f, herbrand_scope());
    CHECK(m.size() == 2);
    CHECK(serialize_models(m) == serialize_models(stable_models(f, herbrand_scope())));
    CHECK(to_json(m[0]).dump() < to_json(m[1]).dump());
  }

  TEST_CASE("budget is enforced") {
    Scope s;
    s.universe_size = 3;
    s.budget = Budget{100};
    CHECK_THROWS_AS(stable_models(S("forall X Y (p(X, Y) | not p(X, Y))"), s), BudgetError);
  }

  TEST_CASE("characterization of the worked example") {
    const Formula f = S("p(a) & forall X (p(X) -> q(X))");
    const Characterization ch = characterize(f);
    CHECK(is_variable_free(ch.g));
    const Formula eight = S("forall X ((p(X) <-> X = a) & (q(X) <-> p(X)))");
    const Formula gs = Formula::conj(ch.g, ch.spp);
    for (std::size_t n = 1; n <= 3; ++n) {
      oracle::for_each_interpretation({"a"}, {{"p", 1}, {"q", 1}}, n, [&](const Interpretation& i) {
        CHECK(oracle::holds(gs, i) == oracle::holds(eight, i));
        CHECK(oracle::holds(gs, i) == oracle::is_stable(f, i));
      });
    }
  }

  TEST_CASE("characterization of a propositional formula") {
    const Formula f = S("p & not q");
    const Characterization ch = characterize(f);
    oracle::for_each_interpretation({}, {{"p", 0}, {"q", 0}}, 1, [&](const Interpretation& i) {
      CHECK(oracle::holds(Formula::conj(ch.g, ch.spp), i) == oracle::is_stable(f, i));
    });
    const Characterization bot = characterize(Formula::bot());
    CHECK(simplify(bot.g) == Formula::bot());
    CHECK_THROWS_AS(characterize(S("forall X (not q(X) -> p(X))")), Error);
  }
}
