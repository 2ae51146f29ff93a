#include "smsafe/harness.hpp"
#include "support.hpp"

using namespace smsafe;

namespace {

const Corpus& shipped() {
  static const Corpus corpus = load_corpus(SMSAFE_TEST_CORPUS);
  return corpus;
}

VerificationScope small_scope() {
  VerificationScope s;
  s.max_universe = 2;
  return s;
}

}  // namespace

TEST_SUITE("harness") {
  TEST_CASE("corpus parsing") {
    const Corpus c = parse_corpus("# comment\n\nfirst\tsafe\tp(a)\nsecond\tunsafe\tforall X p(X)\n");
    REQUIRE(c.entries.size() == 2);
    CHECK(c.entries[0].name == "first");
    CHECK(c.entries[0].line == 3);
    CHECK(c.entries[1].expected == Verdict::Unsafe);
    CHECK(c.entries[0].tags.contains("variable-free"));
    CHECK(c.entries[1].tags.contains("prenex"));
    CHECK(c.entries[1].tags.contains("constant-free"));
    CHECK_FALSE(c.entries[1].tags.contains("quantifier-free"));
  }

  TEST_CASE("malformed corpus lines") {
    CHECK_THROWS_AS(parse_corpus("x\tsafe\n"), CorpusError);
    CHECK_THROWS_AS(parse_corpus("x\tmaybe\tp\n"), CorpusError);
    CHECK_THROWS_AS(parse_corpus("ok\tsafe\tp\nx\tsafe\tp &\n"), CorpusError);
    try {
      parse_corpus("ok\tsafe\tp\nx\tsafe\tp &\n");
    } catch (const CorpusError& e) {
      CHECK(std::string(e.what()).find("2") != std::string::npos);
    }
    CHECK_THROWS_AS(load_corpus("/nonexistent/corpus.cor"), Error);
  }

  TEST_CASE("shipped corpus verdicts") {
    CHECK(verdict_mismatches(shipped()).empty());
    std::size_t semi = 0, safe = 0;
    for (const auto& e : shipped().entries) {
      semi += e.computed != Verdict::Unsafe;
      safe += e.computed == Verdict::Safe;
    }
    CHECK(semi >= 15);
    CHECK(safe >= 10);
  }

  TEST_CASE("a wrong expected verdict stops verification") {
    const Corpus c = parse_corpus("x\tsafe\tforall X (not q(X) -> p(X))\n");
    CHECK(verdict_mismatches(c).size() == 1);
    CHECK_THROWS_AS(verify("prop1", c, small_scope()), CorpusError);
    CHECK_THROWS_AS(verify("prop9", shipped(), small_scope()), Error);
  }

  TEST_CASE("suites skip entries outside their precondition") {
    const Corpus c = parse_corpus("u\tunsafe\tforall X (not q(X) -> p(X))\ns\tsafe\tp(a)\n");
    const VerificationReport r = verify("prop3", c, small_scope());
    REQUIRE(r.entries.size() == 2);
    CHECK(r.entries[0].status == EntryStatus::Skipped);
    CHECK(r.entries[1].status == EntryStatus::Ok);
    CHECK(r.passed());
  }

  TEST_CASE("forcing unsafe entries exposes replayable violations") {
    const Corpus c = parse_corpus("u\tunsafe\tforall X (not q(X) -> p(X))\n");
    VerificationScope s = small_scope();
    s.force = true;
    const VerificationReport r = verify("prop3", c, s);
    CHECK_FALSE(r.passed());
    const auto cxs = r.counterexamples();
    REQUIRE(cxs.size() == 1);
    CHECK(cxs[0].kind == "stable-mismatch");
    CHECK(replay(cxs[0]));
    CHECK(to_json(cxs[0])["entry"] == "u");
  }

  TEST_CASE("double negation counterexample") {
    const VerificationReport r = verify("counterexamples", shipped(), small_scope());
    CHECK(r.passed());
    const auto cxs = r.counterexamples();
    REQUIRE(cxs.size() == 1);
    const Counterexample& cx = cxs[0];
    CHECK(cx.entry == "double_negation");
    CHECK(cx.kind == "grounding-equivalence");
    CHECK(cx.interpretation.universe.size() >= 2);
    CHECK(replay(cx));
    Counterexample broken = cx;
    broken.interpretation.predicates["p"].clear();
    CHECK_FALSE(replay(broken));
  }

  TEST_CASE("reports are deterministic") {
    VerificationScope parallel = small_scope(), sequential = small_scope();
    sequential.parallel = false;
    for (const char* suite : {"prop1", "lemma2"}) {
      const std::string a = to_json(verify(suite, shipped(), parallel)).dump();
      const std::string b = to_json(verify(suite, shipped(), sequential)).dump();
      CHECK(a == b);
    }
  }

  TEST_CASE("budget overruns are reported, not hidden") {
    VerificationScope s = small_scope();
    s.budget = Budget{4};
    CHECK_THROWS_AS(verify("prop1", shipped(), s), BudgetError);
  }
}
