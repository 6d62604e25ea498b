// Acceptance suite: one criterion per command-line argument (1-9, or "all").
// Prints one PASS/FAIL line per criterion and exits nonzero on any failure.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "testutil.hpp"

using namespace shaclcqa;
using testutil::Rng;

namespace {

int failures = 0;

struct Criterion {
  int id;
  const char* summary;
  std::function<bool(std::string&)> body;
};

Mapping mu(std::initializer_list<std::pair<const char*, const char*>> bs) {
  std::vector<std::pair<std::uint32_t, Node>> v;
  for (auto [var, node] : bs) v.emplace_back(intern(var), make_node(node));
  return Mapping(std::move(v));
}

Verdict decide(const ProblemInstance& psi, const Query& q, const Mapping& m,
               PreferenceOrder o, Semantics s, std::size_t budget = 64,
               bool max_mode = false) {
  CqaRequest r;
  r.query = q;
  r.mapping = m;
  r.order = o;
  r.semantics = s;
  r.max_mode = max_mode;
  return (max_mode ? answer_mcqa(psi, r, budget) : answer_cqa(psi, r, budget)).verdict;
}

bool expect(bool cond, const char* what, std::string& detail) {
  if (!cond && detail.empty()) detail = what;
  return cond;
}

// --- criterion 1: Example-1 validation ---

bool criterion1(std::string& detail) {
  DataGraph g = testutil::example_graph();
  bool ok = true;
  ok &= expect(!validates(g, testutil::example_shapes()),
               "Studshape targets must not validate", detail);
  ShapesDoc prof = parse_shapes_doc(testutil::kExampleShapesProfTarget);
  std::optional<Assignment> witness = find_validating_assignment(g, prof);
  ok &= expect(witness.has_value(), "Profshape(Lea) must validate", detail);
  if (witness) {
    auto has = [&](const char* n) {
      return std::binary_search(witness->labels.begin(), witness->labels.end(),
                                ShapeAtom{intern("Profshape"), make_node(n)});
    };
    ok &= expect(has("Lea") && has("Ann"), "witness must label Lea and Ann", detail);
  }
  return ok;
}

// --- criterion 2: Example-2 preferred repairs, unhinted ---

bool criterion2(std::string& detail) {
  ProblemInstance psi = testutil::example_psi();  // no hints
  Repair r1{DataGraph({Atom::prop("enrolledIn", "John", "c1")}),
            DataGraph({Atom::prop("id", "Ben", "ID1")})};
  Repair r2{DataGraph({Atom::prop("enrolledIn", "John", "c1")}),
            DataGraph({Atom::prop("id", "Ben", "ID2")})};
  Repair r3{testutil::example_hyps(), DataGraph({Atom::prop("id", "Ben", "ID1")})};
  Repair r4{testutil::example_hyps(), DataGraph({Atom::prop("id", "Ben", "ID2")})};
  bool ok = true;
  for (PreferenceOrder o : {PreferenceOrder::Subset, PreferenceOrder::Card}) {
    std::vector<Repair> pref = preferred_repairs(psi, o);
    ok &= expect(pref.size() == 2 && pref[0] == r1 && pref[1] == r2,
                 "preferred repairs must be exactly {R1, R2}", detail);
  }
  ok &= expect(is_repair(psi, r3) && is_repair(psi, r4),
               "R3 and R4 must still be repairs", detail);
  return ok;
}

// --- criterion 3: Example-3 outcomes under all three orders ---

bool criterion3(std::string& detail) {
  ProblemInstance psi = testutil::example_psi();
  Query q = parse_query("{ Student(?x), id(?x,?y) }");
  Query q2 = parse_query("{ Student(?x) } OPT { id(?x,?y) }");
  Mapping mu1 = mu({{"x", "John"}, {"y", "ID3"}});
  Mapping mu2 = mu({{"x", "Ben"}, {"y", "ID1"}});
  Mapping mu3 = mu({{"x", "Ben"}, {"y", "ID2"}});
  Mapping mu4 = mu({{"x", "Ben"}});
  bool ok = true;
  for (PreferenceOrder o :
       {PreferenceOrder::Any, PreferenceOrder::Subset, PreferenceOrder::Card}) {
    for (Semantics s : {Semantics::Brave, Semantics::AR, Semantics::IAR})
      ok &= expect(decide(psi, q, mu1, o, s) == Verdict::Yes, "mu1 yes everywhere", detail);
    for (const Mapping& m : {mu2, mu3}) {
      ok &= expect(decide(psi, q, m, o, Semantics::Brave) == Verdict::Yes,
                   "mu2/mu3 yes under brave", detail);
      ok &= expect(decide(psi, q, m, o, Semantics::AR) == Verdict::No,
                   "mu2/mu3 no under AR", detail);
      ok &= expect(decide(psi, q, m, o, Semantics::IAR) == Verdict::No,
                   "mu2/mu3 no under IAR", detail);
    }
    ok &= expect(decide(psi, q2, mu4, o, Semantics::IAR) == Verdict::Yes,
                 "mu4 yes under IAR", detail);
    ok &= expect(decide(psi, q2, mu4, o, Semantics::Brave) == Verdict::No,
                 "mu4 no under brave", detail);
    ok &= expect(decide(psi, q2, mu4, o, Semantics::AR) == Verdict::No,
                 "mu4 no under AR", detail);
    for (Semantics s : {Semantics::Brave, Semantics::AR, Semantics::IAR})
      ok &= expect(decide(psi, q2, mu1, o, s) == Verdict::Yes, "mu1 yes on Q2", detail);
  }
  return ok;
}

// --- criterion 4: SAT round trip ---

std::vector<CnfClause> all_clauses_2vars() {
  // every 3-literal clause over {x1, x2} up to literal multiset equality
  std::vector<CnfClause> out;
  std::vector<CnfLiteral> lits = {{0, false}, {0, true}, {1, false}, {1, true}};
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = a; b < 4; ++b)
      for (std::size_t c = b; c < 4; ++c)
        out.push_back(CnfClause{{lits[a], lits[b], lits[c]}});
  return out;
}

bool check_sat_instance(const CnfFormula& phi, std::string& detail) {
  GeneratedInstance inst = gen_sat(phi);
  bool sat = oracle_sat(phi);
  CqaRequest brave;
  brave.query = inst.query;
  brave.mapping = inst.mapping;
  brave.order = PreferenceOrder::Any;
  brave.semantics = Semantics::Brave;
  if ((answer_cqa(inst.psi, brave, 64).verdict == Verdict::Yes) != sat) {
    detail = "brave T(s) disagreed with oracle_sat";
    return false;
  }
  CqaRequest ar = brave;
  ar.query = parse_query("{ F(?x) }");
  ar.semantics = Semantics::AR;
  if ((answer_cqa(inst.psi, ar, 64).verdict == Verdict::Yes) != !sat) {
    detail = "AR F(s) disagreed with the oracle complement";
    return false;
  }
  return true;
}

bool criterion4(std::string& detail) {
  std::vector<CnfClause> clauses = all_clauses_2vars();
  CnfFormula base;
  base.variables = {"x1", "x2"};
  // exhaustive: one clause, then all unordered pairs
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    CnfFormula phi = base;
    phi.clauses = {clauses[i]};
    if (!check_sat_instance(phi, detail)) return false;
    for (std::size_t j = i; j < clauses.size(); ++j) {
      CnfFormula pair = base;
      pair.clauses = {clauses[i], clauses[j]};
      if (!check_sat_instance(pair, detail)) return false;
    }
  }
  Rng rng(2024);
  for (int round = 0; round < 50; ++round) {
    CnfFormula phi;
    phi.variables = {"x1", "x2", "x3"};
    std::size_t m = 1 + rng.below(3);
    for (std::size_t j = 0; j < m; ++j) {
      CnfClause c;
      for (CnfLiteral& l : c.lits) {
        l.var = rng.below(3);
        l.negated = rng.flip();
      }
      phi.clauses.push_back(c);
    }
    if (!check_sat_instance(phi, detail)) return false;
  }
  return true;
}

// --- criterion 5: CardMinSAT round trip ---

bool criterion5(std::string& detail) {
  Rng rng(5180);
  for (int round = 0; round < 20; ++round) {
    std::size_t nvars = 2 + rng.below(2);
    CnfFormula phi;
    for (std::size_t i = 1; i <= nvars; ++i)
      phi.variables.push_back("x" + std::to_string(i));
    std::size_t m = 1 + rng.below(2);
    for (std::size_t j = 0; j < m; ++j) {
      CnfClause c;
      for (CnfLiteral& l : c.lits) {
        l.var = rng.below(nvars);
        l.negated = rng.flip();
      }
      phi.clauses.push_back(c);
    }
    GeneratedInstance inst = gen_cardminsat(phi, 0);
    CqaRequest r;
    r.query = inst.query;
    r.mapping = inst.mapping;
    r.order = PreferenceOrder::Card;
    r.semantics = Semantics::Brave;
    bool engine = answer_cqa(inst.psi, r, 64).verdict == Verdict::Yes;
    if (engine != oracle_cardminsat(phi, 0)) {
      detail = "cardminsat round " + std::to_string(round) + " disagreed";
      return false;
    }
  }
  return true;
}

// --- criterion 6: 2-QBF round trip ---

bool criterion6(std::string& detail) {
  std::vector<CnfClause> clauses = all_clauses_2vars();  // over vars 0,1 = x1,y1
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    std::vector<std::vector<CnfClause>> families = {{clauses[i]}};
    for (std::size_t j = i; j < clauses.size(); ++j)
      families.push_back({clauses[i], clauses[j]});
    for (const std::vector<CnfClause>& cl : families) {
      QbfInstance q;
      q.x_vars = {"x1"};
      q.y_vars = {"y1"};
      q.matrix.variables = {"x1", "y1"};
      q.matrix.clauses = cl;
      GeneratedInstance inst = gen_qbf2(q);
      CqaRequest r;
      r.query = inst.query;
      r.mapping = inst.mapping;
      r.order = PreferenceOrder::Subset;
      r.semantics = Semantics::Brave;
      bool engine = answer_cqa(inst.psi, r, 64).verdict == Verdict::Yes;
      if (engine != oracle_qbf2(q)) {
        detail = "qbf2 instance disagreed with the oracle";
        return false;
      }
    }
  }
  return true;
}

// --- criterion 7: coloring round trip ---

bool criterion7(std::string& detail) {
  // all connected graphs on <= 4 vertices with >= 1 leaf and >= 1 inner
  // vertex (the generator precondition)
  for (std::size_t n = 2; n <= 4; ++n) {
    std::vector<std::pair<std::size_t, std::size_t>> all_edges;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) all_edges.push_back({a, b});
    for (std::uint32_t mask = 0; mask < (1u << all_edges.size()); ++mask) {
      ColoringInstance g;
      for (std::size_t i = 1; i <= n; ++i) g.vertices.push_back("v" + std::to_string(i));
      for (std::size_t e = 0; e < all_edges.size(); ++e)
        if ((mask >> e) & 1) g.edges.push_back(all_edges[e]);
      // connectivity
      std::vector<std::size_t> comp(n);
      for (std::size_t i = 0; i < n; ++i) comp[i] = i;
      std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        return comp[x] == x ? x : comp[x] = find(comp[x]);
      };
      for (auto [a, b] : g.edges) comp[find(a)] = find(b);
      bool connected = true;
      for (std::size_t i = 0; i < n; ++i)
        if (find(i) != find(0)) connected = false;
      if (!connected) continue;
      std::vector<std::size_t> degree(n, 0);
      for (auto [a, b] : g.edges) {
        ++degree[a];
        ++degree[b];
      }
      bool leaf = false, inner = false;
      for (std::size_t d : degree) (d == 1 ? leaf : inner) = true;
      if (!leaf || !inner) continue;

      GeneratedInstance inst = gen_coloring2(g);
      bool oracle = oracle_coloring2(g);
      CqaRequest r;
      r.query = inst.query;
      r.mapping = Mapping{};
      r.order = PreferenceOrder::Any;
      r.semantics = Semantics::Brave;
      if ((answer_cqa(inst.psi, r, 64).verdict == Verdict::Yes) != oracle) {
        detail = "wdQ brave disagreed with the game oracle";
        return false;
      }
      CqaRequest ar = r;
      ar.query = Query{inst.query.pattern->right, std::vector<std::uint32_t>{}};
      ar.semantics = Semantics::AR;
      if ((answer_cqa(inst.psi, ar, 64).verdict == Verdict::Yes) != !oracle) {
        detail = "projected-BGP AR disagreed with the oracle complement";
        return false;
      }
    }
  }
  return true;
}

// --- criterion 8: list-pair round trip ---

bool criterion8(std::string& detail) {
  Rng rng(881);
  for (int round = 0; round < 10; ++round) {
    PairList pl;
    for (int p = 1; p <= 2; ++p) {
      auto mk = [&](const std::string& prefix) {
        CnfFormula f;
        f.variables = {prefix + "1", prefix + "2"};
        std::size_t m = 1 + rng.below(2);
        for (std::size_t j = 0; j < m; ++j) {
          CnfClause c;
          for (CnfLiteral& l : c.lits) {
            l.var = rng.below(2);
            l.negated = rng.flip();
          }
          f.clauses.push_back(c);
        }
        return f;
      };
      std::string base = "p" + std::to_string(p);
      pl.pairs.emplace_back(mk(base + "a"), mk(base + "b"));
    }
    GeneratedInstance inst = gen_listpair_sat(pl);
    CqaRequest r;
    r.query = inst.query;
    r.mapping = Mapping{};
    r.order = PreferenceOrder::Any;
    r.semantics = Semantics::IAR;
    bool engine = answer_cqa(inst.psi, r, 128).verdict == Verdict::Yes;
    if (engine != oracle_listpair(pl)) {
      detail = "listpair round " + std::to_string(round) + " disagreed";
      return false;
    }
  }
  return true;
}

// --- criterion 9: property suite ---

bool criterion9(std::string& detail) {
  const int kRounds = 200;

  {  // (a) every card-preferred repair is subset-preferred
    Rng rng(9001);
    for (int i = 0; i < kRounds; ++i) {
      ProblemInstance psi = testutil::random_psi(rng);
      std::vector<Repair> card = preferred_repairs(psi, PreferenceOrder::Card);
      std::vector<Repair> subset = preferred_repairs(psi, PreferenceOrder::Subset);
      for (const Repair& r : card) {
        bool found = false;
        for (const Repair& s : subset)
          if (s == r) found = true;
        if (!found) {
          detail = "(a) card-preferred repair not subset-preferred";
          return false;
        }
      }
    }
  }

  {  // (b) AR = IAR for BGP queries
    Rng rng(9002);
    Query q = parse_query("{ A(?x), p(?x,?y) }");
    for (int i = 0; i < kRounds; ++i) {
      ProblemInstance psi = testutil::random_psi(rng);
      Mapping m = mu({{"x", "a"}, {"y", rng.flip() ? "b" : "a"}});
      for (PreferenceOrder o :
           {PreferenceOrder::Any, PreferenceOrder::Subset, PreferenceOrder::Card}) {
        if (decide(psi, q, m, o, Semantics::AR) != decide(psi, q, m, o, Semantics::IAR)) {
          detail = "(b) AR and IAR diverged on a BGP";
          return false;
        }
      }
    }
  }

  {  // (c) IAR => AR => brave for projected BGPs
    Rng rng(9003);
    Query q = parse_query("SELECT ?x { A(?x), p(?x,?y) }");
    for (int i = 0; i < kRounds; ++i) {
      ProblemInstance psi = testutil::random_psi(rng);
      Mapping m = mu({{"x", "a"}});
      PreferenceOrder o = static_cast<PreferenceOrder>(rng.below(3));
      Verdict iar = decide(psi, q, m, o, Semantics::IAR);
      if (iar == Verdict::NoRepair) continue;
      Verdict ar = decide(psi, q, m, o, Semantics::AR);
      Verdict brave = decide(psi, q, m, o, Semantics::Brave);
      if ((iar == Verdict::Yes && ar != Verdict::Yes) ||
          (ar == Verdict::Yes && brave != Verdict::Yes)) {
        detail = "(c) semantics implication chain violated";
        return false;
      }
    }
  }

  {  // (d) OPT-normal form preserves evaluation (And/Opt mixtures)
    Rng rng(9004);
    int tested = 0;
    while (tested < kRounds) {
      // random pattern built from the query-module pool
      std::function<PatternPtr(std::size_t)> rp = [&](std::size_t depth) -> PatternPtr {
        static const char* vars[] = {"x", "y", "z", "w"};
        if (depth == 0 || rng.below(3) == 0) {
          std::vector<QueryAtom> atoms;
          std::size_t n = 1 + rng.below(2);
          for (std::size_t k = 0; k < n; ++k) {
            QueryAtom a;
            if (rng.flip()) {
              a.pred = intern(rng.flip() ? "A" : "B");
              a.t1 = Term::var(vars[rng.below(4)]);
            } else {
              a.binary = true;
              a.pred = intern(rng.flip() ? "p" : "q");
              a.t1 = Term::var(vars[rng.below(4)]);
              a.t2 = Term::var(vars[rng.below(4)]);
            }
            atoms.push_back(a);
          }
          return pattern_bgp(std::move(atoms));
        }
        PatternPtr l = rp(depth - 1), r = rp(depth - 1);
        return rng.flip() ? pattern_opt(l, r) : pattern_and(l, r);
      };
      Query q{rp(2), std::nullopt};
      if (!is_well_designed(q)) continue;
      ++tested;
      Query nf = to_opt_normal_form(q);
      DataGraph g = testutil::random_graph(rng, 7);
      if (eval_query(q, g) != eval_query(nf, g)) {
        detail = "(d) normal form changed the answer set";
        return false;
      }
    }
  }

  {  // (e) weak monotonicity of well-designed queries
    Rng rng(9005);
    Query q = parse_query("{ A(?x) } OPT { p(?x,?y) }");
    int tested = 0;
    while (tested < kRounds) {
      DataGraph g = testutil::random_graph(rng, 6);
      std::vector<Mapping> before = eval_query(q, g);
      if (before.empty()) continue;
      ++tested;
      DataGraph g2 = graph_union(g, testutil::random_graph(rng, 2));
      std::vector<Mapping> after = eval_query(q, g2);
      for (const Mapping& m : before) {
        bool extended = false;
        for (const Mapping& m2 : after)
          if (m2.extends(m)) extended = true;
        if (!extended) {
          detail = "(e) a solution was lost after adding atoms";
          return false;
        }
      }
    }
  }

  {  // (f) stratified vs exhaustive supported-model search
    Rng rng(9006);
    int tested = 0;
    while (tested < kRounds) {
      ProblemInstance psi = testutil::random_psi(rng);
      if (nodes_of(psi.graph).size() * psi.doc.constraints.size() > 12) continue;
      ++tested;
      std::optional<Assignment> fast = find_validating_assignment(psi.graph, psi.doc);
      std::optional<Assignment> slow =
          testutil::exhaustive_find_assignment(psi.graph, psi.doc);
      if (fast.has_value() != slow.has_value() ||
          (fast && slow && fast->labels != slow->labels)) {
        detail = "(f) stratified and exhaustive searches diverged";
        return false;
      }
    }
  }

  {  // (g) hinted vs unhinted repair sets with full hints
    Rng rng(9007);
    for (int i = 0; i < kRounds; ++i) {
      ProblemInstance psi = testutil::random_psi(rng);
      ProblemInstance hinted = make_problem_instance(
          psi.graph, psi.doc, psi.hyps, MutabilityHints{psi.graph, psi.hyps});
      if (!(enumerate_repairs(psi) == enumerate_repairs(hinted))) {
        detail = "(g) full hints changed the repair set";
        return false;
      }
    }
  }

  {  // (h) mCQA = CQA whenever a full-target repair exists
    Rng rng(9008);
    std::vector<Query> queries = {
        parse_query("{ A(?x) }"),
        parse_query("SELECT ?x { A(?x), p(?x,?y) }"),
        parse_query("{ A(?x) } OPT { p(?x,?y) }"),
        parse_query("SELECT ?x { A(?x) } OPT { p(?x,?y) }"),
    };
    std::vector<Mapping> mappings = {mu({{"x", "a"}}), mu({{"x", "a"}}),
                                     mu({{"x", "a"}}), mu({{"x", "a"}})};
    int tested = 0;
    while (tested < kRounds) {
      ProblemInstance psi = testutil::random_psi(rng);
      if (enumerate_repairs(psi).empty()) continue;  // needs a full-target repair
      ++tested;
      for (std::size_t qi = 0; qi < queries.size(); ++qi) {
        for (PreferenceOrder o :
             {PreferenceOrder::Any, PreferenceOrder::Subset, PreferenceOrder::Card}) {
          for (Semantics s : {Semantics::Brave, Semantics::AR, Semantics::IAR}) {
            Verdict plain = decide(psi, queries[qi], mappings[qi], o, s);
            Verdict maxed = decide(psi, queries[qi], mappings[qi], o, s, 64, true);
            if (plain != maxed) {
              detail = "(h) mCQA diverged from CQA with a full-target repair";
              return false;
            }
          }
        }
      }
    }
  }

  return true;
}

void run_criterion(const Criterion& c) {
  auto start = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = false;
  try {
    ok = c.body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - start)
                .count();
  std::printf("[%s] criterion %d: %s (%lld ms)%s%s\n", ok ? "PASS" : "FAIL", c.id,
              c.summary, static_cast<long long>(ms), detail.empty() ? "" : " -- ",
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<Criterion> criteria = {
      {1, "Example-1 validation outcomes and witness", criterion1},
      {2, "Example-2 preferred repairs (unhinted)", criterion2},
      {3, "Example-3 outcomes under all orders and semantics", criterion3},
      {4, "SAT round trip vs truth-table oracle", criterion4},
      {5, "CardMinSAT round trip vs oracle", criterion5},
      {6, "2-QBF round trip vs oracle", criterion6},
      {7, "coloring-game round trip vs oracle", criterion7},
      {8, "list-pair round trip vs oracle", criterion8},
      {9, "property suite (a)-(h), 200 random instances each", criterion9},
  };
  std::string which = argc > 1 ? argv[1] : "all";
  for (const Criterion& c : criteria)
    if (which == "all" || which == std::to_string(c.id)) run_criterion(c);
  return failures == 0 ? 0 : 1;
}
