#include "oracle.hpp"
#include "smsafe/structure.hpp"
#include "support.hpp"

using namespace smsafe;

TEST_SUITE("structure") {
  TEST_CASE("tuple indexing") {
    CHECK(relation_size(3, 2) == 9);
    CHECK(relation_size(3, 0) == 1);
    const std::vector<std::size_t> t{2, 1};
    CHECK(tuple_index(t, 3) == 7);
    CHECK(tuple_at(7, 2, 3) == t);
    for (std::size_t idx = 0; idx < 27; ++idx) CHECK(tuple_index(tuple_at(idx, 3, 3), 3) == idx);
  }

  TEST_CASE("vocabulary") {
    Vocabulary v(signature_of(S("p(a) & q")));
    CHECK(v.constant_index("a") == 0u);
    CHECK_FALSE(v.predicate_index("r"));
    CHECK(v.add_predicate("p", 1) == *v.predicate_index("p"));
    CHECK_THROWS_AS(v.add_predicate("p", 2), ArityError);
  }

  TEST_CASE("budget") {
    Budget b{10};
    CHECK_NOTHROW(b.check(10, "x"));
    CHECK_THROWS_AS(b.check(11, "x"), BudgetError);
    CHECK(power_of_two(10) == 1024u);
  }

  TEST_CASE("enumeration counts") {
    Vocabulary v(signature_of(S("p(a, b) & q")));
    for (std::size_t n = 1; n <= 3; ++n) {
      for (ConstantMaps maps : {ConstantMaps::All, ConstantMaps::Injective}) {
        std::uint64_t seen = 0;
        std::set<std::vector<std::size_t>> const_maps;
        for_each_structure(v, n, maps, [&](const Structure& s) {
          ++seen;
          const_maps.insert(s.constants);
          return true;
        });
        CHECK(seen == count_structures(v, n, maps));
        const std::size_t expected_maps = maps == ConstantMaps::All ? n * n : n * (n - 1);
        CHECK(const_maps.size() == expected_maps);
        CHECK(seen == expected_maps * (std::uint64_t{1} << (n * n + 1)));
      }
    }
    std::uint64_t stopped = 0;
    CHECK_FALSE(for_each_structure(v, 2, ConstantMaps::All, [&](const Structure&) { return ++stopped < 5; }));
    CHECK(stopped == 5);
  }

  TEST_CASE("evaluator agrees with the reference evaluator") {
    oracle::Generator gen(47);
    gen.variables = true;
    gen.quantifiers = true;
    for (int k = 0; k < 120; ++k) {
      const Formula f = universal_closure(gen.formula(1 + gen.pick(6)));
      const Signature sig = signature_of(f);
      Vocabulary v(sig);
      const Evaluator eval(f, v);
      const std::size_t n = 1 + k % 2;
      const auto names = default_element_names(n);
      oracle::for_each_interpretation(sig.constants, sig.predicates, n, [&](const Interpretation& i) {
        CHECK(eval(to_structure(i, v)) == oracle::holds(f, i));
        CHECK(to_interpretation(to_structure(i, v), v, names) == i);
      });
    }
  }

  TEST_CASE("evaluation under an assignment") {
    const Formula f = F("p(X) & not p(Y)");
    Vocabulary v(signature_of(f));
    const Evaluator eval(f, v);
    CHECK(eval.free_variables() == std::vector<std::string>{"X", "Y"});
    Structure s = empty_structure(v, 2);
    s.relations[0][0] = 1;
    const std::vector<std::size_t> xy{0, 1}, yx{1, 0};
    CHECK(eval(s, xy));
    CHECK_FALSE(eval(s, yx));
  }

  TEST_CASE("structure extension keeps denotations") {
    Vocabulary v(signature_of(S("p(a)")));
    Structure s = empty_structure(v, 2);
    s.constants = {1};
    s.relations[0] = {0, 1};
    const Structure e = extend(s, v, 2);
    CHECK(e.size == 4);
    CHECK(e.constants == s.constants);
    CHECK(e.relations[0] == std::vector<std::uint8_t>{0, 1, 0, 0});
  }
}
