#include "shaclcqa/reductions.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace shaclcqa {

namespace {

bool valid_ident(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

void check_formula(const CnfFormula& phi) {
  if (phi.variables.empty()) throw Error("formula has no variables");
  std::set<std::string> seen;
  for (const std::string& v : phi.variables) {
    if (!valid_ident(v)) throw Error("variable name '" + v + "' is not an identifier");
    if (!seen.insert(v).second) throw Error("duplicate variable '" + v + "'");
  }
  for (const CnfClause& c : phi.clauses)
    for (const CnfLiteral& l : c.lits)
      if (l.var >= phi.variables.size()) throw Error("literal variable out of range");
}

std::string pos_node(const std::string& var) { return var; }
std::string neg_node(const std::string& var) { return "not_" + var; }

// Distinct literals of a clause, in (var, sign) order.
std::vector<CnfLiteral> distinct_lits(const CnfClause& c) {
  std::vector<CnfLiteral> out(c.lits.begin(), c.lits.end());
  std::sort(out.begin(), out.end(), [](const CnfLiteral& a, const CnfLiteral& b) {
    if (a.var != b.var) return a.var < b.var;
    return a.negated < b.negated;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void ensure_distinct_names(const std::vector<std::string>& names) {
  std::set<std::string> seen;
  for (const std::string& n : names)
    if (!seen.insert(n).second)
      throw Error("generated node name '" + n + "' collides; rename the inputs");
}

// Truth-propagation bodies shared by the SAT-style gadgets.

ShapePtr truth_choice_with_dual() {
  // (T & !F & exists dual . F) | (F & !T & exists dual . T)
  return shape_or(
      shape_and(shape_class("T"),
                shape_and(shape_not(shape_class("F")),
                          shape_exists(path_prop("dual"), shape_class("F")))),
      shape_and(shape_class("F"),
                shape_and(shape_not(shape_class("T")),
                          shape_exists(path_prop("dual"), shape_class("T")))));
}

// (W1 & = 1 ^or) | (W2 & = 2 ^or) | (W3 & = 3 ^or): pins the or-degree of a
// clause node to its number of distinct literals.
ShapePtr clause_width_guard() {
  auto width = [](const char* cls, std::uint64_t k) {
    return shape_and(shape_class(cls),
                     shape_exactly(k, path_inverse("or"), shape_top()));
  };
  return shape_or(shape_or(width("W1", 1), width("W2", 2)), width("W3", 3));
}

// (F & !T & forall ^or . F) | (T & !F & exists ^or . T)
ShapePtr clause_truth() {
  return shape_or(
      shape_and(shape_class("F"),
                shape_and(shape_not(shape_class("T")),
                          shape_forall(path_inverse("or"), shape_class("F")))),
      shape_and(shape_class("T"),
                shape_and(shape_not(shape_class("F")),
                          shape_exists(path_inverse("or"), shape_class("T")))));
}

// Emits the shared SAT-core atoms (literals, clauses, truth doubles, dual /
// or / and wiring) for one formula whose clause nodes point at `formula_node`.
void emit_formula_atoms(const CnfFormula& phi, const std::string& formula_node,
                        const std::string& clause_prefix, bool with_lit_class,
                        std::vector<Atom>& atoms, std::vector<std::string>& node_names) {
  for (const std::string& v : phi.variables) {
    for (const std::string& lit : {pos_node(v), neg_node(v)}) {
      node_names.push_back(lit);
      if (with_lit_class) atoms.push_back(Atom::cls("Lit", lit));
      atoms.push_back(Atom::cls("T", lit));
      atoms.push_back(Atom::cls("F", lit));
    }
    atoms.push_back(Atom::prop("dual", pos_node(v), neg_node(v)));
    atoms.push_back(Atom::prop("dual", neg_node(v), pos_node(v)));
  }
  for (std::size_t j = 0; j < phi.clauses.size(); ++j) {
    std::string cj = clause_prefix + std::to_string(j + 1);
    node_names.push_back(cj);
    atoms.push_back(Atom::cls("Cl", cj));
    atoms.push_back(Atom::cls("T", cj));
    atoms.push_back(Atom::cls("F", cj));
    std::vector<CnfLiteral> lits = distinct_lits(phi.clauses[j]);
    atoms.push_back(Atom::cls("W" + std::to_string(lits.size()), cj));
    for (const CnfLiteral& l : lits) {
      const std::string& v = phi.variables[l.var];
      atoms.push_back(Atom::prop("or", l.negated ? neg_node(v) : pos_node(v), cj));
    }
    atoms.push_back(Atom::prop("and", cj, formula_node));
  }
}

// next-chain s -> (names, canonical order) -> e over the given property.
void emit_chain(const std::vector<std::string>& middle, const std::string& prop,
                std::vector<Atom>& atoms) {
  std::vector<std::string> order = middle;
  std::sort(order.begin(), order.end());
  std::string prev = "s";
  for (const std::string& n : order) {
    atoms.push_back(Atom::prop(prop, prev, n));
    prev = n;
  }
  atoms.push_back(Atom::prop(prop, prev, "e"));
}

MutabilityHints truth_hints(const DataGraph& g) {
  std::vector<Atom> mut;
  std::uint32_t t = intern("T"), f = intern("F");
  for (const Atom& a : g)
    if (a.kind == AtomKind::Class && (a.pred == t || a.pred == f)) mut.push_back(a);
  MutabilityHints h;
  h.graph_atoms = DataGraph(std::move(mut));
  return h;
}

ShapePtr val_shape(std::vector<ShapePtr> disjuncts, const char* chain_prop) {
  ShapePtr body = disjuncts.front();
  for (std::size_t i = 1; i < disjuncts.size(); ++i)
    body = shape_or(std::move(body), disjuncts[i]);
  return shape_and(
      shape_forall(path_star(path_prop(chain_prop)), std::move(body)),
      shape_exists(path_star(path_prop(chain_prop)), shape_const("e")));
}

}  // namespace

// ---------------------------------------------------------------------------
// gen_sat

GeneratedInstance gen_sat(const CnfFormula& phi) {
  check_formula(phi);
  std::vector<Atom> atoms;
  std::vector<std::string> middle;  // chain nodes between s and e
  emit_formula_atoms(phi, "s", "c", /*with_lit_class=*/true, atoms, middle);
  atoms.push_back(Atom::cls("Phi", "s"));
  atoms.push_back(Atom::cls("T", "s"));
  atoms.push_back(Atom::cls("F", "s"));
  std::vector<std::string> all_names = middle;
  all_names.push_back("s");
  all_names.push_back("e");
  ensure_distinct_names(all_names);
  emit_chain(middle, "next", atoms);

  std::vector<Constraint> cs;
  cs.push_back({intern("lit"), shape_and(shape_class("Lit"), truth_choice_with_dual())});
  cs.push_back({intern("cl"),
                shape_and(shape_class("Cl"),
                          shape_and(shape_exactly(1, path_prop("and"), shape_top()),
                                    shape_and(clause_width_guard(), clause_truth())))});
  // (forall ^and . T & T & !F) | (exists ^and . F & F & !T)
  cs.push_back(
      {intern("phi"),
       shape_and(shape_class("Phi"),
                 shape_or(shape_and(shape_forall(path_inverse("and"), shape_class("T")),
                                    shape_and(shape_class("T"), shape_not(shape_class("F")))),
                          shape_and(shape_exists(path_inverse("and"), shape_class("F")),
                                    shape_and(shape_class("F"), shape_not(shape_class("T"))))))});
  cs.push_back({intern("val"),
                val_shape({shape_const("e"), shape_ref("phi"), shape_ref("lit"),
                           shape_ref("cl")},
                          "next")});

  DataGraph g(std::move(atoms));
  MutabilityHints hints = truth_hints(g);
  ShapesDoc doc = make_shapes_doc(std::move(cs), {ShapeAtom{intern("val"), make_node("s")}});
  GeneratedInstance out{
      make_problem_instance(std::move(g), std::move(doc), DataGraph{}, std::move(hints)),
      parse_query("{ T(?x) }"), parse_mapping("?x=s"), PreferenceOrder::Any,
      Semantics::Brave};
  return out;
}

// ---------------------------------------------------------------------------
// gen_cardminsat

GeneratedInstance gen_cardminsat(const CnfFormula& phi, std::size_t x1) {
  check_formula(phi);
  if (x1 >= phi.variables.size()) throw Error("x1 index out of range");
  GeneratedInstance base = gen_sat(phi);

  std::vector<Atom> atoms(base.psi.graph.begin(), base.psi.graph.end());
  std::vector<std::string> chain2;  // next2 chain between s and e
  for (const std::string& v : phi.variables) {
    std::string vc = v + "_copy";
    std::string sv = "s_" + v;
    chain2.push_back(vc);
    chain2.push_back(sv);
    atoms.push_back(Atom::cls("CopyX", vc));
    atoms.push_back(Atom::cls("F", vc));
    atoms.push_back(Atom::prop("copy_x", vc, pos_node(v)));
    atoms.push_back(Atom::cls("CopyS", sv));
    atoms.push_back(Atom::cls("T", sv));
    atoms.push_back(Atom::prop("copy_s", sv, "s"));
  }
  atoms.push_back(Atom::cls("CopyS", "s_copy"));
  atoms.push_back(Atom::cls("T", "s_copy"));
  atoms.push_back(Atom::prop("copy_s", "s_copy", "s"));
  chain2.push_back("s_copy");
  atoms.push_back(Atom::cls("X1", pos_node(phi.variables[x1])));
  chain2.push_back(pos_node(phi.variables[x1]));
  atoms.push_back(Atom::cls("E", "e"));
  atoms.push_back(Atom::cls("T", "e"));
  atoms.push_back(Atom::cls("F", "e"));

  std::vector<std::string> fresh = {"s_copy"};
  for (const std::string& v : phi.variables) {
    fresh.push_back(v + "_copy");
    fresh.push_back("s_" + v);
  }
  std::set<std::string> sat_names;
  for (const Atom& a : base.psi.graph) {
    sat_names.insert(a.a.name());
    if (a.kind == AtomKind::Prop) sat_names.insert(a.b.name());
  }
  std::set<std::string> fresh_set(fresh.begin(), fresh.end());
  if (fresh_set.size() != fresh.size())
    throw Error("copy node names collide; rename the inputs");
  for (const std::string& n : fresh)
    if (sat_names.count(n))
      throw Error("copy node name '" + n + "' collides; rename the inputs");

  emit_chain(chain2, "next2", atoms);

  std::vector<Constraint> cs = base.psi.doc.constraints;
  cs.push_back(
      {intern("cpx"),
       shape_and(shape_class("CopyX"),
                 shape_and(shape_exists(path_prop("copy_x"), shape_top()),
                           shape_or(shape_and(shape_class("F"),
                                              shape_exists(path_prop("copy_x"),
                                                           shape_class("F"))),
                                    shape_and(shape_not(shape_class("F")),
                                              shape_exists(path_prop("copy_x"),
                                                           shape_class("T"))))))});
  cs.push_back(
      {intern("cps"),
       shape_and(shape_class("CopyS"),
                 shape_and(shape_exists(path_prop("copy_s"), shape_top()),
                           shape_or(shape_and(shape_not(shape_class("T")),
                                              shape_exists(path_prop("copy_s"),
                                                           shape_class("F"))),
                                    shape_and(shape_class("T"),
                                              shape_exists(path_prop("copy_s"),
                                                           shape_class("T"))))))});
  cs.push_back({intern("xone"), shape_class("X1")});
  // Exactly one of T/F survives at e; T(e) iff both the formula node and x1
  // are true, witnessed through the backward next2 chain.
  ShapePtr phi_or_x1_true =
      shape_or(shape_and(shape_class("Phi"), shape_class("T")),
               shape_and(shape_class("X1"), shape_class("T")));
  ShapePtr phi_or_x1_false =
      shape_or(shape_and(shape_class("Phi"), shape_class("F")),
               shape_and(shape_class("X1"), shape_class("F")));
  cs.push_back(
      {intern("esh"),
       shape_and(shape_class("E"),
                 shape_or(shape_and(shape_class("T"),
                                    shape_and(shape_not(shape_class("F")),
                                              shape_exactly(2,
                                                            path_star(path_inverse("next2")),
                                                            phi_or_x1_true))),
                          shape_and(shape_class("F"),
                                    shape_and(shape_not(shape_class("T")),
                                              shape_exists(path_star(path_inverse("next2")),
                                                           phi_or_x1_false)))))});
  cs.push_back({intern("val2"),
                val_shape({shape_const("s"), shape_ref("esh"), shape_ref("xone"),
                           shape_ref("cpx"), shape_ref("cps")},
                          "next2")});

  DataGraph g(std::move(atoms));
  MutabilityHints hints = truth_hints(g);
  ShapesDoc doc = make_shapes_doc(std::move(cs),
                                  {ShapeAtom{intern("val"), make_node("s")},
                                   ShapeAtom{intern("val2"), make_node("s")}});
  return GeneratedInstance{
      make_problem_instance(std::move(g), std::move(doc), DataGraph{}, std::move(hints)),
      parse_query("{ T(?x) }"), parse_mapping("?x=e"), PreferenceOrder::Card,
      Semantics::Brave};
}

// ---------------------------------------------------------------------------
// gen_qbf2

GeneratedInstance gen_qbf2(const QbfInstance& q) {
  if (q.x_vars.empty() || q.y_vars.empty())
    throw Error("2-QBF instance needs X and Y variables");
  CnfFormula merged = q.matrix;
  std::vector<std::string> expect = q.x_vars;
  expect.insert(expect.end(), q.y_vars.begin(), q.y_vars.end());
  if (merged.variables != expect)
    throw Error("matrix variables must be x_vars followed by y_vars");
  check_formula(merged);

  std::vector<Atom> atoms;
  std::vector<std::string> middle;
  emit_formula_atoms(merged, "s", "c", /*with_lit_class=*/false, atoms, middle);
  for (std::size_t i = 0; i < merged.variables.size(); ++i) {
    const std::string& v = merged.variables[i];
    const char* cls = i < q.x_vars.size() ? "LitX" : "LitY";
    atoms.push_back(Atom::cls(cls, pos_node(v)));
    atoms.push_back(Atom::cls(cls, neg_node(v)));
  }
  atoms.push_back(Atom::cls("Phi", "s"));
  atoms.push_back(Atom::cls("T", "s"));
  atoms.push_back(Atom::cls("F", "s"));
  std::vector<std::string> all_names = middle;
  all_names.push_back("s");
  all_names.push_back("e");
  ensure_distinct_names(all_names);
  emit_chain(middle, "next", atoms);

  // Whether the NoExt flag is present is visible from every chain node.
  auto sees_flag = [] {
    return shape_exists(path_star(path_alt(path_prop("next"), path_inverse("next"))),
                        shape_class("NoExt"));
  };
  auto not_t_not_f = shape_and(shape_not(shape_class("F")), shape_not(shape_class("T")));

  std::vector<Constraint> cs;
  cs.push_back({intern("litX"), shape_and(shape_class("LitX"), truth_choice_with_dual())});
  cs.push_back(
      {intern("litY"),
       shape_and(shape_class("LitY"),
                 shape_or(shape_and(shape_not(sees_flag()), truth_choice_with_dual()),
                          shape_and(sees_flag(), not_t_not_f)))});
  cs.push_back(
      {intern("cl"),
       shape_and(shape_class("Cl"),
                 shape_and(shape_exactly(1, path_prop("and"), shape_top()),
                           shape_and(clause_width_guard(),
                                     shape_or(shape_and(shape_not(sees_flag()), clause_truth()),
                                              shape_and(sees_flag(), not_t_not_f)))))});
  cs.push_back(
      {intern("phi"),
       shape_and(shape_class("Phi"),
                 shape_or(shape_and(shape_not(shape_class("NoExt")),
                                    shape_and(shape_class("T"),
                                              shape_and(shape_not(shape_class("F")),
                                                        shape_forall(path_inverse("and"),
                                                                     shape_class("T"))))),
                          shape_and(shape_class("NoExt"), not_t_not_f)))});
  cs.push_back({intern("val"),
                val_shape({shape_const("e"), shape_ref("phi"), shape_ref("litX"),
                           shape_ref("litY"), shape_ref("cl")},
                          "next")});

  DataGraph g(std::move(atoms));
  DataGraph h(std::vector<Atom>{Atom::cls("NoExt", "s")});
  MutabilityHints hints = truth_hints(g);
  hints.hyp_atoms = h;
  ShapesDoc doc = make_shapes_doc(std::move(cs), {ShapeAtom{intern("val"), make_node("s")}});
  return GeneratedInstance{
      make_problem_instance(std::move(g), std::move(doc), std::move(h), std::move(hints)),
      parse_query("{ NoExt(?x) }"), parse_mapping("?x=s"), PreferenceOrder::Subset,
      Semantics::Brave};
}

// ---------------------------------------------------------------------------
// gen_coloring2

GeneratedInstance gen_coloring2(const ColoringInstance& g) {
  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (auto [a, b] : g.edges) {
    if (a >= g.vertices.size() || b >= g.vertices.size())
      throw MalformedGraphError("edge endpoint out of range");
    if (a == b) throw MalformedGraphError("self loops are not allowed");
    edges.insert({std::min(a, b), std::max(a, b)});
  }
  std::vector<std::size_t> degree(g.vertices.size(), 0);
  for (auto [a, b] : edges) {
    ++degree[a];
    ++degree[b];
  }
  bool has_leaf = false, has_inner = false;
  for (std::size_t d : degree) (d == 1 ? has_leaf : has_inner) = true;
  if (!has_leaf || !has_inner)
    throw MalformedGraphError("need at least one leaf and one inner vertex");
  for (const std::string& v : g.vertices)
    if (!valid_ident(v)) throw MalformedGraphError("vertex name '" + v + "' invalid");

  const char* colors[] = {"r", "g", "b"};
  std::vector<Atom> atoms;
  std::vector<std::string> names = {"r", "g", "b", "s", "e"};
  for (const std::string& v : g.vertices) names.push_back(v);
  ensure_distinct_names(names);

  std::vector<Atom> leaf_col_atoms;
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    for (const char* c : colors) {
      Atom col = Atom::prop("col", g.vertices[i], c);
      atoms.push_back(col);
      if (degree[i] == 1) leaf_col_atoms.push_back(col);
    }
    atoms.push_back(Atom::cls(degree[i] == 1 ? "L" : "I", g.vertices[i]));
  }
  for (const char* c1 : colors)
    for (const char* c2 : colors)
      if (std::string(c1) != c2) atoms.push_back(Atom::prop("neq", c1, c2));
  emit_chain(g.vertices, "next", atoms);

  std::vector<Constraint> cs;
  cs.push_back({intern("leaf"),
                shape_and(shape_class("L"), shape_exactly(1, path_prop("col"), shape_top()))});
  cs.push_back({intern("inner"),
                shape_and(shape_class("I"), shape_exactly(3, path_prop("col"), shape_top()))});
  cs.push_back({intern("valV"),
                val_shape({shape_const("s"), shape_const("e"), shape_ref("leaf"),
                           shape_ref("inner")},
                          "next")});
  cs.push_back({intern("valC"), shape_exactly(2, path_prop("neq"), shape_top())});

  // ⊤ OPT (col per vertex ∧ neq per edge)
  std::vector<QueryAtom> pat;
  for (const std::string& v : g.vertices) {
    QueryAtom a;
    a.binary = true;
    a.pred = intern("col");
    a.t1 = Term::node(v);
    a.t2 = Term::var("x_" + v);
    pat.push_back(a);
  }
  for (auto [i, j] : edges) {
    QueryAtom a;
    a.binary = true;
    a.pred = intern("neq");
    a.t1 = Term::var("x_" + g.vertices[i]);
    a.t2 = Term::var("x_" + g.vertices[j]);
    pat.push_back(a);
  }
  Query query{pattern_opt(pattern_bgp({}), pattern_bgp(std::move(pat))), std::nullopt};

  std::vector<ShapeAtom> targets = {ShapeAtom{intern("valV"), make_node("s")},
                                    ShapeAtom{intern("valC"), make_node("r")},
                                    ShapeAtom{intern("valC"), make_node("g")},
                                    ShapeAtom{intern("valC"), make_node("b")}};
  MutabilityHints hints;
  hints.graph_atoms = DataGraph(std::move(leaf_col_atoms));
  DataGraph data(std::move(atoms));
  ShapesDoc doc = make_shapes_doc(std::move(cs), std::move(targets));
  return GeneratedInstance{
      make_problem_instance(std::move(data), std::move(doc), DataGraph{}, std::move(hints)),
      std::move(query), Mapping{}, PreferenceOrder::Any, Semantics::Brave};
}

// ---------------------------------------------------------------------------
// gen_listpair_sat

GeneratedInstance gen_listpair_sat(const PairList& pl) {
  if (pl.pairs.empty()) throw Error("empty pair list");
  std::set<std::string> all_vars;
  for (const auto& [phi, psi] : pl.pairs) {
    check_formula(phi);
    check_formula(psi);
    for (const std::string& v : phi.variables)
      if (!all_vars.insert(v).second) throw Error("variables must be pairwise disjoint");
    for (const std::string& v : psi.variables)
      if (!all_vars.insert(v).second) throw Error("variables must be pairwise disjoint");
  }

  std::vector<Atom> atoms;
  std::vector<std::string> middle;
  for (std::size_t i = 0; i < pl.pairs.size(); ++i) {
    std::string idx = std::to_string(i + 1);
    std::string phi_node = "phi" + idx;
    std::string psi_node = "psi" + idx;
    std::string cnt_node = "i" + idx;
    emit_formula_atoms(pl.pairs[i].first, phi_node, phi_node + "_c",
                       /*with_lit_class=*/true, atoms, middle);
    emit_formula_atoms(pl.pairs[i].second, psi_node, psi_node + "_c",
                       /*with_lit_class=*/true, atoms, middle);
    for (const std::string& f : {phi_node, psi_node}) {
      middle.push_back(f);
      atoms.push_back(Atom::cls("Phi", f));
      atoms.push_back(Atom::cls("T", f));
      atoms.push_back(Atom::cls("F", f));
    }
    middle.push_back(cnt_node);
    atoms.push_back(Atom::cls("Cnt", cnt_node));
    atoms.push_back(Atom::prop("isphi", cnt_node, phi_node));
    atoms.push_back(Atom::prop("ispsi", cnt_node, psi_node));
  }
  std::vector<std::string> all_names = middle;
  all_names.push_back("s");
  all_names.push_back("e");
  ensure_distinct_names(all_names);
  emit_chain(middle, "next", atoms);

  std::vector<Constraint> cs;
  cs.push_back({intern("lit"), shape_and(shape_class("Lit"), truth_choice_with_dual())});
  cs.push_back({intern("cl"),
                shape_and(shape_class("Cl"),
                          shape_and(shape_exactly(1, path_prop("and"), shape_top()),
                                    shape_and(clause_width_guard(), clause_truth())))});
  // (F & !T & exists ^and . F) | (T & !F & forall ^and . T)
  cs.push_back(
      {intern("phi"),
       shape_and(shape_class("Phi"),
                 shape_or(shape_and(shape_class("F"),
                                    shape_and(shape_not(shape_class("T")),
                                              shape_exists(path_inverse("and"),
                                                           shape_class("F")))),
                          shape_and(shape_class("T"),
                                    shape_and(shape_not(shape_class("F")),
                                              shape_forall(path_inverse("and"),
                                                           shape_class("T"))))))});
  cs.push_back({intern("cnt"),
                shape_and(shape_class("Cnt"),
                          shape_and(shape_exactly(1, path_prop("isphi"), shape_top()),
                                    shape_exactly(1, path_prop("ispsi"), shape_top())))});
  cs.push_back({intern("val"),
                val_shape({shape_const("s"), shape_const("e"), shape_ref("lit"),
                           shape_ref("cl"), shape_ref("phi"), shape_ref("cnt")},
                          "next")});

  DataGraph g(std::move(atoms));
  MutabilityHints hints = truth_hints(g);
  ShapesDoc doc = make_shapes_doc(std::move(cs), {ShapeAtom{intern("val"), make_node("s")}});
  return GeneratedInstance{
      make_problem_instance(std::move(g), std::move(doc), DataGraph{}, std::move(hints)),
      parse_query("SELECT ?z { isphi(?x,?y), F(?y) } OPT { ispsi(?x,?z), F(?z) }"),
      Mapping{}, PreferenceOrder::Any, Semantics::IAR};
}

// ---------------------------------------------------------------------------
// Oracles: plain truth-table / exhaustive game search. Independent of the
// gadget constructions above.

namespace {

constexpr std::size_t kMaxOracleVars = 10;
constexpr std::size_t kMaxOracleVertices = 6;

bool clause_true(const CnfClause& c, std::uint32_t assignment) {
  for (const CnfLiteral& l : c.lits) {
    bool value = (assignment >> l.var) & 1;
    if (value != l.negated) return true;
  }
  return false;
}

bool formula_true(const CnfFormula& phi, std::uint32_t assignment) {
  for (const CnfClause& c : phi.clauses)
    if (!clause_true(c, assignment)) return false;
  return true;
}

void oracle_size_guard(const CnfFormula& phi) {
  if (phi.variables.size() > kMaxOracleVars)
    throw SizeExceededError("oracle limited to " + std::to_string(kMaxOracleVars) +
                            " variables");
}

}  // namespace

bool oracle_sat(const CnfFormula& phi) {
  check_formula(phi);
  oracle_size_guard(phi);
  std::uint32_t total = 1u << phi.variables.size();
  for (std::uint32_t a = 0; a < total; ++a)
    if (formula_true(phi, a)) return true;
  return false;
}

bool oracle_cardminsat(const CnfFormula& phi, std::size_t x1) {
  check_formula(phi);
  oracle_size_guard(phi);
  if (x1 >= phi.variables.size()) throw Error("x1 index out of range");
  std::uint32_t total = 1u << phi.variables.size();
  std::size_t best = phi.variables.size() + 1;
  bool x1_in_minimum = false;
  for (std::uint32_t a = 0; a < total; ++a) {
    if (!formula_true(phi, a)) continue;
    std::size_t trues = static_cast<std::size_t>(__builtin_popcount(a));
    if (trues < best) {
      best = trues;
      x1_in_minimum = (a >> x1) & 1;
    } else if (trues == best && ((a >> x1) & 1)) {
      x1_in_minimum = true;
    }
  }
  return best <= phi.variables.size() && x1_in_minimum;
}

bool oracle_qbf2(const QbfInstance& q) {
  check_formula(q.matrix);
  oracle_size_guard(q.matrix);
  std::size_t nx = q.x_vars.size(), ny = q.y_vars.size();
  if (q.matrix.variables.size() != nx + ny) throw Error("matrix variable count mismatch");
  // ∃X ∀Y ¬φ
  for (std::uint32_t x = 0; x < (1u << nx); ++x) {
    bool extendable = false;
    for (std::uint32_t y = 0; y < (1u << ny); ++y) {
      std::uint32_t assignment = x | (y << nx);
      if (formula_true(q.matrix, assignment)) {
        extendable = true;
        break;
      }
    }
    if (!extendable) return true;
  }
  return false;
}

bool oracle_coloring2(const ColoringInstance& g) {
  if (g.vertices.size() > kMaxOracleVertices)
    throw SizeExceededError("oracle limited to " + std::to_string(kMaxOracleVertices) +
                            " vertices");
  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (auto [a, b] : g.edges) edges.insert({std::min(a, b), std::max(a, b)});
  std::vector<std::size_t> degree(g.vertices.size(), 0);
  for (auto [a, b] : edges) {
    ++degree[a];
    ++degree[b];
  }
  std::vector<std::size_t> leaves, inner;
  for (std::size_t i = 0; i < g.vertices.size(); ++i)
    (degree[i] == 1 ? leaves : inner).push_back(i);

  std::vector<int> color(g.vertices.size(), 0);
  auto valid = [&]() {
    for (auto [a, b] : edges)
      if (color[a] == color[b]) return false;
    return true;
  };
  std::size_t nl = leaves.size(), ni = inner.size();
  std::size_t leaf_total = 1;
  for (std::size_t i = 0; i < nl; ++i) leaf_total *= 3;
  std::size_t inner_total = 1;
  for (std::size_t i = 0; i < ni; ++i) inner_total *= 3;

  for (std::size_t lc = 0; lc < leaf_total; ++lc) {
    std::size_t code = lc;
    for (std::size_t i = 0; i < nl; ++i) {
      color[leaves[i]] = static_cast<int>(code % 3);
      code /= 3;
    }
    bool player2_wins = false;
    for (std::size_t ic = 0; ic < inner_total; ++ic) {
      std::size_t icode = ic;
      for (std::size_t i = 0; i < ni; ++i) {
        color[inner[i]] = static_cast<int>(icode % 3);
        icode /= 3;
      }
      if (valid()) {
        player2_wins = true;
        break;
      }
    }
    if (!player2_wins) return true;  // Player 1 wins with this leaf coloring
  }
  return false;
}

bool oracle_listpair(const PairList& pl) {
  for (const auto& [phi, psi] : pl.pairs)
    if (!oracle_sat(phi) && oracle_sat(psi)) return true;
  return false;
}

}  // namespace shaclcqa
