#include "smsafe/safety.hpp"
#include "smsafe/sm_engine.hpp"

namespace smsafe {

namespace {

std::vector<std::vector<Term>> tuples_over(const ConstantSet& c, std::size_t arity) {
  std::vector<std::vector<Term>> out{{}};
  for (std::size_t j = 0; j < arity; ++j) {
    std::vector<std::vector<Term>> next;
    for (const auto& t : out) {
      for (const auto& k : c) {
        auto u = t;
        u.push_back(Term::constant(k));
        next.push_back(std::move(u));
      }
    }
    out = std::move(next);
  }
  return out;
}

Formula tuple_equal(const std::vector<Term>& a, const std::vector<Term>& b) {
  std::vector<Formula> parts;
  for (std::size_t j = 0; j < a.size(); ++j) parts.push_back(Formula::equals(a[j], b[j]));
  return conjoin(parts);
}

struct PredicateSpace {
  std::string name;
  std::string mirror;
  std::size_t arity = 0;
  std::vector<std::vector<Term>> tuples;
};

// G for a variable-free f, minimizing `preds` over tuples of `c`.
Formula characterize_ground(const Formula& f, const std::map<std::string, std::size_t>& preds, const ConstantSet& c,
                            const Budget& budget) {
  std::set<std::string> taken;
  for (const auto& [p, a] : preds) taken.insert(p);
  std::map<std::string, std::string> mirror;
  std::vector<PredicateSpace> spaces;
  std::size_t bits = 0;
  for (const auto& [p, arity] : preds) {
    std::string m = "u_" + p;
    while (taken.contains(m)) m += "_";
    taken.insert(m);
    mirror.emplace(p, m);
    spaces.push_back({p, m, arity, tuples_over(c, arity)});
    bits += spaces.back().tuples.size();
  }
  if (bits >= 64) throw BudgetError("characterization: too many predicate families");
  budget.check(power_of_two(bits), "characterization families");
  const Formula starred = star_with(f, mirror);

  std::vector<Formula> disjuncts;
  const std::uint64_t families = std::uint64_t{1} << bits;
  for (std::uint64_t family = 0; family < families; ++family) {
    std::size_t bit = 0;
    std::map<std::string, PredicateExpression> exprs;
    std::vector<Formula> le;
    std::vector<Formula> eq;
    for (const auto& sp : spaces) {
      std::vector<const std::vector<Term>*> chosen;
      for (const auto& t : sp.tuples) {
        if (family >> bit++ & 1U) chosen.push_back(&t);
      }
      std::vector<std::string> params;
      std::vector<Term> xs;
      for (std::size_t j = 1; j <= sp.arity; ++j) {
        params.push_back("X" + std::to_string(j));
        xs.push_back(Term::variable(params.back()));
      }
      std::vector<Formula> body;
      for (const auto* t : chosen) {
        body.push_back(tuple_equal(xs, *t));
        le.push_back(Formula::atom(sp.name, *t));
      }
      exprs.emplace(sp.mirror, PredicateExpression{params, disjoin(body)});
      for (const auto& d : sp.tuples) {
        std::vector<Formula> same;
        for (const auto* t : chosen) same.push_back(tuple_equal(d, *t));
        eq.push_back(Formula::implies(Formula::atom(sp.name, d), disjoin(same)));
      }
    }
    const Formula instance = substitute_pred_exprs(starred, exprs);
    disjuncts.push_back(conjoin({conjoin(le), Formula::neg(conjoin(eq)), instance}));
  }
  return simplify(Formula::conj(f, Formula::neg(disjoin(disjuncts))));
}

// Drops quantifiers whose variable does not occur in the matrix.
PrenexSentence drop_vacuous(const PrenexSentence& s) {
  const auto fv = free_variables(s.matrix);
  PrenexSentence out;
  out.matrix = s.matrix;
  for (const auto& qv : s.prefix) {
    if (fv.contains(qv.variable)) out.prefix.push_back(qv);
  }
  return out;
}

}  // namespace

Characterization characterize(const Formula& sentence, Budget budget) {
  const PrenexSentence s = to_prenex(sentence);
  const SafetyReport report = is_safe(s);
  if (report.verdict != Verdict::Safe) {
    throw Error("characterization needs a safe sentence; this one is " + to_string(report.verdict));
  }
  const Signature sig = signature_of(s.matrix);
  Characterization out;
  out.constants = ConstantSet(sig.constants);
  out.spp = spp_formula(sig, out.constants);

  if (s.prefix.empty()) {
    out.case_number = 2;
    out.g = characterize_ground(s.matrix, sig.predicates, out.constants, budget);
  } else if (sig.constants.empty()) {
    out.case_number = 1;
    // Under SPP with no constants every atom of positive arity is false.
    PrenexSentence reduced;
    reduced.prefix = s.prefix;
    reduced.matrix = simplify(
        replace_atoms_by_bot(s.matrix, [](const Formula& atom) { return atom.kind() == Connective::Pred && !atom.terms().empty(); }));
    reduced = drop_vacuous(reduced);
    if (!reduced.prefix.empty()) {
      throw UnsupportedError("no object constants and variables survive the removal of non-nullary atoms");
    }
    out.g = characterize_ground(reduced.matrix, sig.predicates, out.constants, budget);
  } else {
    out.case_number = 3;
    const Formula grounded = ground(s, out.constants);
    out.g = characterize_ground(grounded, sig.predicates, out.constants, budget);
  }
  return out;
}

}  // namespace smsafe
