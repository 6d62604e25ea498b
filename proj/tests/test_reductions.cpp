#include <doctest.h>

#include "testutil.hpp"

using namespace shaclcqa;
using testutil::Rng;

namespace {

CnfLiteral pos(std::size_t v) { return CnfLiteral{v, false}; }
CnfLiteral neg(std::size_t v) { return CnfLiteral{v, true}; }

CnfFormula f(std::vector<std::string> vars, std::vector<CnfClause> clauses) {
  return CnfFormula{std::move(vars), std::move(clauses)};
}

Verdict run(const GeneratedInstance& inst, std::size_t budget = 64) {
  CqaRequest r;
  r.query = inst.query;
  r.mapping = inst.mapping;
  r.order = inst.order;
  r.semantics = inst.semantics;
  return answer_cqa(inst.psi, r, budget).verdict;
}

Verdict run_with(const GeneratedInstance& inst, const char* query, Semantics s,
                 std::size_t budget = 64) {
  CqaRequest r;
  r.query = parse_query(query);
  r.mapping = inst.mapping;
  r.order = inst.order;
  r.semantics = s;
  return answer_cqa(inst.psi, r, budget).verdict;
}

CnfFormula random_formula(Rng& rng, std::size_t vars, std::size_t clauses) {
  CnfFormula phi;
  for (std::size_t i = 1; i <= vars; ++i) phi.variables.push_back("x" + std::to_string(i));
  for (std::size_t j = 0; j < clauses; ++j) {
    CnfClause c;
    for (CnfLiteral& l : c.lits) {
      l.var = rng.below(vars);
      l.negated = rng.flip();
    }
    phi.clauses.push_back(c);
  }
  return phi;
}

}  // namespace

TEST_CASE("gen_sat basics") {
  // (x ∨ x ∨ x): satisfiable
  CnfFormula phi = f({"x"}, {CnfClause{{pos(0), pos(0), pos(0)}}});
  GeneratedInstance inst = gen_sat(phi);
  CHECK(nodes_of(inst.psi.graph).size() == 2 * 1 + 1 + 2);
  CHECK(oracle_sat(phi));
  CHECK(run(inst) == Verdict::Yes);

  // (x)(¬x): unsatisfiable; the dual query under AR answers yes
  CnfFormula uns = f({"x"}, {CnfClause{{pos(0), pos(0), pos(0)}},
                             CnfClause{{neg(0), neg(0), neg(0)}}});
  GeneratedInstance inst2 = gen_sat(uns);
  CHECK_FALSE(oracle_sat(uns));
  CHECK(run(inst2) == Verdict::No);
  CHECK(run_with(inst2, "{ F(?x) }", Semantics::AR) == Verdict::Yes);

  CnfFormula two = f({"x1", "x2"}, {CnfClause{{pos(0), neg(1), pos(1)}},
                                    CnfClause{{neg(0), neg(0), pos(1)}}});
  CHECK(nodes_of(gen_sat(two).psi.graph).size() == 2 * 2 + 2 + 2);
}

TEST_CASE("gen_sat always admits repairs") {
  Rng rng(5);
  for (int round = 0; round < 10; ++round) {
    CnfFormula phi = random_formula(rng, 2, 1 + rng.below(2));
    GeneratedInstance inst = gen_sat(phi);
    CHECK_FALSE(enumerate_repairs(inst.psi, 64).empty());
  }
}

TEST_CASE("gen_sat hinted and unhinted agree on the smallest instances") {
  for (bool negated : {false, true}) {
    CnfFormula phi = f({"x"}, {CnfClause{{CnfLiteral{0, negated}, pos(0), pos(0)}}});
    GeneratedInstance inst = gen_sat(phi);
    ProblemInstance unhinted =
        make_problem_instance(inst.psi.graph, inst.psi.doc, inst.psi.hyps);
    CHECK(enumerate_repairs(inst.psi, 64) == enumerate_repairs(unhinted, 64));
  }
}

TEST_CASE("gen_cardminsat") {
  // only model sets x1 true
  CnfFormula must = f({"x1"}, {CnfClause{{pos(0), pos(0), pos(0)}}});
  CHECK(oracle_cardminsat(must, 0));
  CHECK(run(gen_cardminsat(must, 0)) == Verdict::Yes);

  // tautology: the minimal model sets x1 false
  CnfFormula taut = f({"x1"}, {CnfClause{{pos(0), neg(0), pos(0)}}});
  CHECK_FALSE(oracle_cardminsat(taut, 0));
  CHECK(run(gen_cardminsat(taut, 0)) == Verdict::No);

  // unsatisfiable: every cardinality-minimal repair keeps e false
  CnfFormula uns = f({"x1"}, {CnfClause{{pos(0), pos(0), pos(0)}},
                              CnfClause{{neg(0), neg(0), neg(0)}}});
  GeneratedInstance inst = gen_cardminsat(uns, 0);
  CHECK(run(inst) == Verdict::No);
  CHECK(run_with(inst, "{ F(?x) }", Semantics::AR) == Verdict::Yes);

  // two variables: x1 true in a minimum model of (x1 ∨ x2) with forced x1?
  CnfFormula pick = f({"x1", "x2"}, {CnfClause{{pos(0), pos(1), pos(1)}}});
  // minimum models: {x1} and {x2}, both of size 1, so x1 is in one of them
  CHECK(oracle_cardminsat(pick, 0));
  CHECK(run(gen_cardminsat(pick, 0)) == Verdict::Yes);

  CnfFormula forced2 = f({"x1", "x2"}, {CnfClause{{pos(1), pos(1), pos(1)}}});
  // minimal model is {x2}; x1 stays false
  CHECK_FALSE(oracle_cardminsat(forced2, 0));
  CHECK(run(gen_cardminsat(forced2, 0)) == Verdict::No);
}

TEST_CASE("gen_qbf2") {
  // φ = (x ∨ y ∨ y): x=false,y=false falsifies, y=true fixes it for both x;
  // so every X assignment extends — no ∃X∀Y¬φ
  QbfInstance ext{{"x1"}, {"y1"},
                  f({"x1", "y1"}, {CnfClause{{pos(0), pos(1), pos(1)}}})};
  CHECK_FALSE(oracle_qbf2(ext));
  GeneratedInstance i1 = gen_qbf2(ext);
  CHECK(run(i1) == Verdict::No);
  CHECK(run_with(i1, "{ T(?x) }", Semantics::AR) == Verdict::Yes);

  // φ = (x ∨ x ∨ x) ∧ (y ∨ y ∨ y): choosing x=false cannot be extended
  QbfInstance wins{{"x1"}, {"y1"},
                   f({"x1", "y1"}, {CnfClause{{pos(0), pos(0), pos(0)}},
                                    CnfClause{{pos(1), pos(1), pos(1)}}})};
  CHECK(oracle_qbf2(wins));
  CHECK(run(gen_qbf2(wins)) == Verdict::Yes);

  // matrix satisfied by Y alone for either x: no winning x
  QbfInstance easy{{"x1"}, {"y1"},
                   f({"x1", "y1"}, {CnfClause{{pos(1), pos(1), pos(1)}}})};
  CHECK_FALSE(oracle_qbf2(easy));
  CHECK(run(gen_qbf2(easy)) == Verdict::No);
}

TEST_CASE("gen_coloring2") {
  // path of 3 vertices: two leaves, any leaf coloring extends
  ColoringInstance path3{{"v1", "v2", "v3"}, {{0, 1}, {1, 2}}};
  CHECK_FALSE(oracle_coloring2(path3));
  GeneratedInstance p = gen_coloring2(path3);
  CHECK(run(p) == Verdict::No);

  // star with three leaves: coloring the leaves with three distinct colors
  // strands the center
  ColoringInstance star{{"v1", "v2", "v3", "v4"}, {{0, 1}, {0, 2}, {0, 3}}};
  CHECK(oracle_coloring2(star));
  GeneratedInstance s = gen_coloring2(star);
  CHECK(run(s) == Verdict::Yes);

  // triangle plus pendant
  ColoringInstance tp{{"v1", "v2", "v3", "v4"}, {{0, 1}, {1, 2}, {0, 2}, {0, 3}}};
  CHECK(oracle_coloring2(tp) == (run(gen_coloring2(tp)) == Verdict::Yes));

  // the projected-BGP AR variant answers the complement
  for (const ColoringInstance& g : {path3, star, tp}) {
    GeneratedInstance inst = gen_coloring2(g);
    Query pi_empty{inst.query.pattern->right, std::vector<std::uint32_t>{}};
    CqaRequest r;
    r.query = pi_empty;
    r.mapping = Mapping{};
    r.order = inst.order;
    r.semantics = Semantics::AR;
    CHECK((answer_cqa(inst.psi, r, 64).verdict == Verdict::Yes) ==
          !oracle_coloring2(g));
  }

  CHECK_THROWS_AS(gen_coloring2(ColoringInstance{{"v1", "v2"}, {{0, 1}}}),
                  MalformedGraphError);
  CHECK_THROWS_AS(gen_coloring2(ColoringInstance{{"v1", "v2", "v3"},
                                                 {{0, 1}, {1, 2}, {0, 2}}}),
                  MalformedGraphError);
}

TEST_CASE("gen_listpair_sat") {
  CnfFormula unsat = f({"p1a"}, {CnfClause{{pos(0), pos(0), pos(0)}},
                                 CnfClause{{neg(0), neg(0), neg(0)}}});
  CnfFormula sat = f({"p1b"}, {CnfClause{{pos(0), pos(0), pos(0)}}});

  PairList yes{{{unsat, sat}}};
  CHECK(oracle_listpair(yes));
  CHECK(run(gen_listpair_sat(yes)) == Verdict::Yes);

  PairList no{{{sat, unsat}}};
  // needs disjoint variables
  no.pairs[0].first = f({"p1c"}, {CnfClause{{pos(0), pos(0), pos(0)}}});
  no.pairs[0].second = f({"p1d"}, {CnfClause{{pos(0), pos(0), pos(0)}},
                                   CnfClause{{neg(0), neg(0), neg(0)}}});
  CHECK_FALSE(oracle_listpair(no));
  CHECK(run(gen_listpair_sat(no)) == Verdict::No);

  // two pairs, outcome independent of their order
  CnfFormula u2 = f({"q1"}, {CnfClause{{pos(0), pos(0), pos(0)}},
                             CnfClause{{neg(0), neg(0), neg(0)}}});
  CnfFormula s2 = f({"q2"}, {CnfClause{{pos(0), pos(0), pos(0)}}});
  CnfFormula s3 = f({"q3"}, {CnfClause{{pos(0), neg(0), pos(0)}}});
  CnfFormula s4 = f({"q4"}, {CnfClause{{pos(0), pos(0), pos(0)}}});
  PairList ab{{{u2, s2}, {s3, s4}}};
  PairList ba{{{s3, s4}, {u2, s2}}};
  CHECK(oracle_listpair(ab));
  CHECK(run(gen_listpair_sat(ab)) == Verdict::Yes);
  CHECK(run(gen_listpair_sat(ba)) == Verdict::Yes);

  CHECK_THROWS_AS(gen_listpair_sat(PairList{{{sat, sat}}}), Error);
}

TEST_CASE("oracle corner cases") {
  CHECK(oracle_sat(f({"x"}, {CnfClause{{pos(0), pos(0), pos(0)}}})));
  CHECK_FALSE(oracle_cardminsat(f({"x1"}, {CnfClause{{pos(0), neg(0), pos(0)}}}), 0));
  // single edge: both endpoints are leaves; Player 1 colors them equal
  CHECK(oracle_coloring2(ColoringInstance{{"v1", "v2"}, {{0, 1}}}));

  CnfFormula big;
  for (int i = 0; i < 11; ++i) big.variables.push_back("x" + std::to_string(i));
  big.clauses.push_back(CnfClause{{pos(0), pos(1), pos(2)}});
  CHECK_THROWS_AS(oracle_sat(big), SizeExceededError);
  ColoringInstance big_g{{"a1", "a2", "a3", "a4", "a5", "a6", "a7"}, {}};
  CHECK_THROWS_AS(oracle_coloring2(big_g), SizeExceededError);
}

TEST_CASE("sat round trips on random formulas") {
  Rng rng(99);
  for (int round = 0; round < 12; ++round) {
    CnfFormula phi = random_formula(rng, 2, 1 + rng.below(2));
    GeneratedInstance inst = gen_sat(phi);
    CHECK((run(inst) == Verdict::Yes) == oracle_sat(phi));
    CHECK((run_with(inst, "{ F(?x) }", Semantics::AR) == Verdict::Yes) ==
          !oracle_sat(phi));
  }
}
