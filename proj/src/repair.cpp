#include "shaclcqa/repair.hpp"

#include <algorithm>
#include <set>

#include "eval.hpp"
#include "lexer.hpp"

namespace shaclcqa {

std::string to_string(const Repair& r) {
  std::string out = "(";
  bool first = true;
  for (const Atom& a : r.additions) {
    if (!first) out += ' ';
    out += "+" + to_string(a);
    first = false;
  }
  if (!first) out += ' ';
  out += "|";
  for (const Atom& a : r.deletions) out += " -" + to_string(a);
  out += ")";
  return out;
}

bool repair_less(const Repair& a, const Repair& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return to_string(a) < to_string(b);
}

bool repair_subseteq(const Repair& a, const Repair& b) {
  return graph_subset(a.additions, b.additions) && graph_subset(a.deletions, b.deletions);
}

MutabilityHints parse_hints(std::string_view text) {
  MutabilityHints hints;
  std::vector<Atom> graph_atoms, hyp_atoms;
  std::vector<Atom>* section = nullptr;
  Lexer lex(text);
  while (lex.peek().type != TokType::End) {
    if (lex.peek().type == TokType::LBracket) {
      lex.next();
      Token name = lex.expect(TokType::Ident, "'graph' or 'hypotheses'");
      lex.expect(TokType::RBracket, "']'");
      if (name.text == "graph")
        section = &graph_atoms;
      else if (name.text == "hypotheses")
        section = &hyp_atoms;
      else
        throw ParseError("unknown hints section '" + name.text + "'", name.line, name.col);
      continue;
    }
    if (!section) lex.fail("expected '[graph]' or '[hypotheses]' header");
    Token pred = lex.expect(TokType::Ident, "predicate name");
    lex.expect(TokType::LParen, "'('");
    Token n1 = lex.expect(TokType::Ident, "node name");
    Atom atom;
    if (lex.peek().type == TokType::Comma) {
      lex.next();
      Token n2 = lex.expect(TokType::Ident, "node name");
      atom = Atom::prop(pred.text, n1.text, n2.text);
    } else {
      atom = Atom::cls(pred.text, n1.text);
    }
    lex.expect(TokType::RParen, "')'");
    lex.expect(TokType::Dot, "'.'");
    section->push_back(atom);
  }
  hints.graph_atoms = DataGraph(std::move(graph_atoms));
  hints.hyp_atoms = DataGraph(std::move(hyp_atoms));
  return hints;
}

std::string serialize_hints(const MutabilityHints& hints) {
  std::string out = "[graph]\n";
  out += serialize_data_graph(hints.graph_atoms);
  out += "[hypotheses]\n";
  out += serialize_data_graph(hints.hyp_atoms);
  return out;
}

ProblemInstance make_problem_instance(DataGraph graph, ShapesDoc doc, DataGraph hyps,
                                      std::optional<MutabilityHints> hints) {
  if (!graph_intersect(graph, hyps).empty())
    throw Error("hypotheses must be disjoint from the data graph");
  if (hints) {
    if (!graph_subset(hints->graph_atoms, graph))
      throw Error("hinted graph atom does not occur in the data graph");
    if (!graph_subset(hints->hyp_atoms, hyps))
      throw Error("hinted hypothesis atom does not occur in the hypotheses");
  }
  return ProblemInstance{std::move(graph), std::move(doc), std::move(hyps),
                         std::move(hints)};
}

DataGraph apply_repair(const DataGraph& g, const Repair& r) {
  if (!graph_subset(r.deletions, g))
    throw ConstraintViolationError("repair deletes an atom not in the graph");
  return graph_union(graph_minus(g, r.deletions), r.additions);
}

bool is_repair(const ProblemInstance& psi, const Repair& r) {
  if (!graph_subset(r.additions, psi.hyps))
    throw ConstraintViolationError("repair adds an atom not in the hypotheses");
  return validates(apply_repair(psi.graph, r), psi.doc);
}

// ---------------------------------------------------------------------------
// Subset search with three-valued pruning
//
// The universe is atoms(G) ∪ atoms(H). Frozen graph atoms stay in, frozen
// hypothesis atoms stay out; mutable atoms are decided one by one in a DFS.
// For non-recursive constraint sets each partial decision is checked with a
// three-valued (definite/possible) evaluation of Table 1: when no completion
// can validate the targets, the whole subtree is pruned.

namespace {

enum : std::uint8_t { kOut = 0, kIn = 1, kUnknown = 2 };

struct UniverseAtom {
  Atom atom;
  bool from_graph = false;
  std::size_t ia = 0, ib = 0;  // node indices
};

struct ThreeVal {
  BitSet def, poss;
};

struct ThreeValMat {
  BitMat def, poss;
};

class RepairSearch {
 public:
  RepairSearch(const ProblemInstance& psi, const std::vector<ShapeAtom>& targets,
               std::size_t budget)
      : psi_(psi), targets_(targets) {
    std::vector<Atom> all;
    for (const Atom& a : psi.graph) all.push_back(a);
    for (const Atom& a : psi.hyps) all.push_back(a);
    u_ = make_universe_atoms(all, &psi.doc);
    n_ = u_.size();

    for (const Atom& a : psi.graph) atoms_.push_back(make_entry(a, true));
    for (const Atom& a : psi.hyps) atoms_.push_back(make_entry(a, false));

    const DataGraph* mg = psi.hints ? &psi.hints->graph_atoms : &psi.graph;
    const DataGraph* mh = psi.hints ? &psi.hints->hyp_atoms : &psi.hyps;
    state_.resize(atoms_.size());
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      const UniverseAtom& ua = atoms_[i];
      bool mut = ua.from_graph ? mg->contains(ua.atom) : mh->contains(ua.atom);
      state_[i] = ua.from_graph ? kIn : kOut;
      if (mut) {
        state_[i] = kUnknown;
        mutable_idx_.push_back(i);
      }
    }
    if (mutable_idx_.size() > budget)
      throw BudgetExceededError("mutable atom count " +
                                std::to_string(mutable_idx_.size()) +
                                " exceeds budget " + std::to_string(budget));

    // Group a node's atoms together so contradictory pairs fail early.
    std::stable_sort(mutable_idx_.begin(), mutable_idx_.end(),
                     [&](std::size_t x, std::size_t y) {
                       const Atom& ax = atoms_[x].atom;
                       const Atom& ay = atoms_[y].atom;
                       if (ax.a != ay.a) return ax.a < ay.a;
                       return ax < ay;
                     });
    // Run the pruning check when a node group closes, not at every level.
    check_at_.assign(mutable_idx_.size(), false);
    for (std::size_t l = 0; l + 1 < mutable_idx_.size(); ++l)
      if (atoms_[mutable_idx_[l]].atom.a != atoms_[mutable_idx_[l + 1]].atom.a)
        check_at_[l] = true;
    if (!mutable_idx_.empty()) check_at_.back() = true;

    deps_ = dependency_info(psi.doc.constraints);
    prune_ = !deps_.recursive;
    for (const Constraint& c : psi.doc.constraints) core_[c.name] = desugar(c.body);

    doc_for_check_ = psi.doc;
    doc_for_check_.targets = targets_;
  }

  std::vector<Repair> run() {
    dfs(0);
    std::sort(found_.begin(), found_.end(), repair_less);
    return std::move(found_);
  }

 private:
  UniverseAtom make_entry(const Atom& a, bool from_graph) {
    UniverseAtom ua;
    ua.atom = a;
    ua.from_graph = from_graph;
    ua.ia = u_.at(a.a);
    ua.ib = a.kind == AtomKind::Prop ? u_.at(a.b) : 0;
    return ua;
  }

  void dfs(std::size_t level) {
    if (level == mutable_idx_.size()) {
      leaf();
      return;
    }
    std::size_t ai = mutable_idx_[level];
    std::uint8_t untouched = atoms_[ai].from_graph ? kIn : kOut;
    std::uint8_t touched = atoms_[ai].from_graph ? kOut : kIn;
    for (std::uint8_t choice : {untouched, touched}) {
      state_[ai] = choice;
      if (!prune_ || !check_at_[level] || feasible()) dfs(level + 1);
    }
    state_[ai] = kUnknown;
  }

  void leaf() {
    std::vector<Atom> present;
    std::vector<Atom> added, deleted;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      const UniverseAtom& ua = atoms_[i];
      if (state_[i] == kIn) present.push_back(ua.atom);
      if (ua.from_graph && state_[i] == kOut) deleted.push_back(ua.atom);
      if (!ua.from_graph && state_[i] == kIn) added.push_back(ua.atom);
    }
    if (!validates(DataGraph(std::move(present)), doc_for_check_)) return;
    found_.push_back(Repair{DataGraph(std::move(added)), DataGraph(std::move(deleted))});
  }

  // --- three-valued evaluation ---

  bool feasible() {
    BitSet def_v(n_), poss_v(n_);
    std::map<std::uint32_t, ThreeVal> classes;
    std::map<std::uint32_t, ThreeValMat> props;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      const UniverseAtom& ua = atoms_[i];
      if (state_[i] == kOut) continue;
      bool definite = state_[i] == kIn;
      if (definite) {
        def_v.set(ua.ia);
        if (ua.atom.kind == AtomKind::Prop) def_v.set(ua.ib);
      }
      poss_v.set(ua.ia);
      if (ua.atom.kind == AtomKind::Prop) poss_v.set(ua.ib);
      if (ua.atom.kind == AtomKind::Class) {
        auto [it, fresh] = classes.try_emplace(ua.atom.pred,
                                               ThreeVal{BitSet(n_), BitSet(n_)});
        if (definite) it->second.def.set(ua.ia);
        it->second.poss.set(ua.ia);
      } else {
        auto [it, fresh] = props.try_emplace(ua.atom.pred,
                                             ThreeValMat{BitMat(n_), BitMat(n_)});
        if (definite) it->second.def.rows[ua.ia].set(ua.ib);
        it->second.poss.rows[ua.ia].set(ua.ib);
      }
    }

    std::map<std::uint32_t, ThreeVal> shape_vals;
    auto eval_shape3 = [&](auto&& self, const ShapeExpr& e) -> ThreeVal {
      using K = ShapeExpr::Kind;
      switch (e.kind) {
        case K::Top:
          return {def_v, poss_v};
        case K::Const: {
          ThreeVal out{BitSet(n_), BitSet(n_)};
          auto i = u_.find(e.constant);
          if (i) {
            out.def.set(*i);
            out.poss.set(*i);
          }
          return out;
        }
        case K::ClassRef: {
          auto it = classes.find(e.sym);
          if (it == classes.end()) return {BitSet(n_), BitSet(n_)};
          return it->second;
        }
        case K::ShapeRef:
          return shape_vals.at(e.sym);
        case K::And: {
          ThreeVal l = self(self, *e.left), r = self(self, *e.right);
          l.def &= r.def;
          l.poss &= r.poss;
          return l;
        }
        case K::Not: {
          ThreeVal x = self(self, *e.left);
          ThreeVal out{def_v, poss_v};
          out.def.and_not(x.poss);
          out.poss.and_not(x.def);
          return out;
        }
        case K::AtLeast: {
          ThreeValMat rel = eval_path3(*e.path, props, def_v, poss_v);
          ThreeVal f = self(self, *e.left);
          ThreeVal out{BitSet(n_), BitSet(n_)};
          for (std::size_t i = 0; i < n_; ++i) {
            if (rel.def.rows[i].count_and(f.def) >= e.count) out.def.set(i);
            if (rel.poss.rows[i].count_and(f.poss) >= e.count) out.poss.set(i);
          }
          return out;
        }
        case K::PathEq: {
          ThreeValMat r1 = eval_path3(*e.path, props, def_v, poss_v);
          ThreeValMat r2 = eval_path3(*e.path2, props, def_v, poss_v);
          ThreeVal out{BitSet(n_), BitSet(n_)};
          for (std::size_t i = 0; i < n_; ++i) {
            bool settled1 = r1.def.rows[i] == r1.poss.rows[i];
            bool settled2 = r2.def.rows[i] == r2.poss.rows[i];
            if (settled1 && settled2 && r1.def.rows[i] == r2.def.rows[i])
              out.def.set(i);
            bool surely_differs = false;
            for (std::size_t w = 0; w < r1.def.rows[i].w.size(); ++w) {
              std::uint64_t a = r1.def.rows[i].w[w] & ~r2.poss.rows[i].w[w];
              std::uint64_t b = r2.def.rows[i].w[w] & ~r1.poss.rows[i].w[w];
              if (a | b) {
                surely_differs = true;
                break;
              }
            }
            if (!surely_differs) out.poss.set(i);
          }
          out.def &= def_v;
          out.poss &= poss_v;
          return out;
        }
        default:
          throw Error("three-valued evaluation requires a desugared expression");
      }
    };

    for (std::uint32_t name : deps_.topo_acyclic)
      shape_vals[name] = eval_shape3(eval_shape3, *core_.at(name));

    // A definitely-forced label outside every possible V(G_R) kills the
    // supported-model equation.
    for (const Constraint& c : psi_.doc.constraints) {
      const ThreeVal& tv = shape_vals.at(c.name);
      BitSet escaped = tv.def;
      escaped.and_not(poss_v);
      if (escaped.any()) return false;
    }
    for (const ShapeAtom& t : targets_) {
      auto idx = u_.find(t.node);
      if (!idx) return false;
      if (!poss_v.test(*idx)) return false;
      if (!shape_vals.at(t.shape).poss.test(*idx)) return false;
    }
    return true;
  }

  ThreeValMat eval_path3(const PathExpr& p,
                         const std::map<std::uint32_t, ThreeValMat>& props,
                         const BitSet& def_v, const BitSet& poss_v) {
    switch (p.kind) {
      case PathExpr::Kind::Prop: {
        auto it = props.find(p.prop);
        if (it == props.end()) return {BitMat(n_), BitMat(n_)};
        return it->second;
      }
      case PathExpr::Kind::Inverse: {
        auto it = props.find(p.prop);
        if (it == props.end()) return {BitMat(n_), BitMat(n_)};
        return {it->second.def.transpose(), it->second.poss.transpose()};
      }
      case PathExpr::Kind::Seq: {
        ThreeValMat l = eval_path3(*p.left, props, def_v, poss_v);
        ThreeValMat r = eval_path3(*p.right, props, def_v, poss_v);
        return {l.def.compose(r.def), l.poss.compose(r.poss)};
      }
      case PathExpr::Kind::Alt: {
        ThreeValMat l = eval_path3(*p.left, props, def_v, poss_v);
        ThreeValMat r = eval_path3(*p.right, props, def_v, poss_v);
        l.def |= r.def;
        l.poss |= r.poss;
        return l;
      }
      case PathExpr::Kind::Star: {
        ThreeValMat x = eval_path3(*p.left, props, def_v, poss_v);
        return {x.def.star(def_v), x.poss.star(poss_v)};
      }
    }
    return {BitMat(n_), BitMat(n_)};
  }

  const ProblemInstance& psi_;
  std::vector<ShapeAtom> targets_;
  ShapesDoc doc_for_check_;
  NodeUniverse u_;
  std::size_t n_ = 0;
  std::vector<UniverseAtom> atoms_;
  std::vector<std::uint8_t> state_;
  std::vector<std::size_t> mutable_idx_;
  std::vector<bool> check_at_;
  DependencyInfo deps_;
  bool prune_ = false;
  std::map<std::uint32_t, ShapePtr> core_;
  std::vector<Repair> found_;
};

std::vector<Repair> search_repairs(const ProblemInstance& psi,
                                   const std::vector<ShapeAtom>& targets,
                                   std::size_t budget) {
  return RepairSearch(psi, targets, budget).run();
}

}  // namespace

std::vector<Repair> enumerate_repairs(const ProblemInstance& psi, std::size_t budget) {
  return search_repairs(psi, psi.doc.targets, budget);
}

std::vector<Repair> filter_preferred(std::vector<Repair> repairs, PreferenceOrder order) {
  switch (order) {
    case PreferenceOrder::Any:
      return repairs;
    case PreferenceOrder::Card: {
      std::vector<Repair> out;
      for (const Repair& r : repairs)
        if (r.size() == repairs.front().size()) out.push_back(r);
      return repairs.empty() ? repairs : out;
    }
    case PreferenceOrder::Subset: {
      std::vector<Repair> out;
      for (const Repair& r : repairs) {
        bool dominated = false;
        for (const Repair& other : repairs) {
          if (repair_subseteq(other, r) && !(other == r)) {
            dominated = true;
            break;
          }
        }
        if (!dominated) out.push_back(r);
      }
      return out;
    }
  }
  return repairs;
}

std::vector<Repair> preferred_repairs(const ProblemInstance& psi, PreferenceOrder order,
                                      std::size_t budget) {
  return filter_preferred(enumerate_repairs(psi, budget), order);
}

std::optional<std::size_t> min_repair_size(const ProblemInstance& psi, std::size_t budget) {
  std::vector<Repair> all = enumerate_repairs(psi, budget);
  if (all.empty()) return std::nullopt;
  return all.front().size();
}

namespace {

// All target subsets of a given cardinality, canonical order.
std::vector<std::vector<ShapeAtom>> target_subsets(const std::vector<ShapeAtom>& t,
                                                   std::size_t k) {
  std::vector<std::vector<ShapeAtom>> out;
  std::vector<std::size_t> idx(k);
  if (k > t.size()) return out;
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    std::vector<ShapeAtom> subset;
    for (std::size_t i : idx) subset.push_back(t[i]);
    out.push_back(std::move(subset));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == t.size() - k + (i - 1)) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

}  // namespace

MaxRepairsResult max_repairs_info(const ProblemInstance& psi, std::size_t budget) {
  for (std::size_t k = psi.doc.targets.size() + 1; k-- > 0;) {
    MaxRepairsResult result;
    result.max_cardinality = k;
    std::vector<Repair> seen;
    for (const std::vector<ShapeAtom>& subset : target_subsets(psi.doc.targets, k)) {
      for (Repair& r : search_repairs(psi, subset, budget)) {
        bool fresh = true;
        for (const Repair& s : seen)
          if (s == r) fresh = false;
        if (!fresh) continue;
        seen.push_back(r);
        result.repairs.push_back(MaxRepairInfo{std::move(r), subset});
      }
    }
    if (!result.repairs.empty()) {
      std::sort(result.repairs.begin(), result.repairs.end(),
                [](const MaxRepairInfo& a, const MaxRepairInfo& b) {
                  return repair_less(a.repair, b.repair);
                });
      return result;
    }
  }
  throw NoModelError("no addition/deletion pair admits a supported model");
}

std::size_t max_target_cardinality(const ProblemInstance& psi, std::size_t budget) {
  return max_repairs_info(psi, budget).max_cardinality;
}

std::vector<Repair> max_repairs(const ProblemInstance& psi, std::size_t budget) {
  MaxRepairsResult info = max_repairs_info(psi, budget);
  std::vector<Repair> out;
  out.reserve(info.repairs.size());
  for (MaxRepairInfo& mri : info.repairs) out.push_back(std::move(mri.repair));
  return out;
}

}  // namespace shaclcqa
