#include "eval.hpp"

#include <algorithm>
#include <bit>

namespace shaclcqa {

bool BitSet::any() const {
  for (std::uint64_t x : w)
    if (x) return true;
  return false;
}

std::size_t BitSet::count() const {
  std::size_t c = 0;
  for (std::uint64_t x : w) c += std::popcount(x);
  return c;
}

BitSet& BitSet::operator|=(const BitSet& o) {
  for (std::size_t i = 0; i < w.size(); ++i) w[i] |= o.w[i];
  return *this;
}

BitSet& BitSet::operator&=(const BitSet& o) {
  for (std::size_t i = 0; i < w.size(); ++i) w[i] &= o.w[i];
  return *this;
}

BitSet& BitSet::and_not(const BitSet& o) {
  for (std::size_t i = 0; i < w.size(); ++i) w[i] &= ~o.w[i];
  return *this;
}

bool BitSet::subset_of(const BitSet& o) const {
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] & ~o.w[i]) return false;
  return true;
}

std::size_t BitSet::count_and(const BitSet& o) const {
  std::size_t c = 0;
  for (std::size_t i = 0; i < w.size(); ++i) c += std::popcount(w[i] & o.w[i]);
  return c;
}

BitMat BitMat::transpose() const {
  BitMat out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (rows[i].test(j)) out.rows[j].set(i);
  return out;
}

BitMat BitMat::compose(const BitMat& o) const {
  BitMat out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      if (rows[i].test(j)) out.rows[i] |= o.rows[j];
  }
  return out;
}

BitMat& BitMat::operator|=(const BitMat& o) {
  for (std::size_t i = 0; i < n; ++i) rows[i] |= o.rows[i];
  return *this;
}

BitMat BitMat::star(const BitSet& universe) const {
  // Fixpoint: compose until stable, then add the reflexive pairs.
  BitMat closure = *this;
  for (;;) {
    BitMat next = closure;
    next |= closure.compose(closure);
    if (next == closure) break;
    closure = std::move(next);
  }
  for (std::size_t i = 0; i < n; ++i)
    if (universe.test(i)) closure.rows[i].set(i);
  return closure;
}

std::optional<std::size_t> NodeUniverse::find(Node n) const {
  auto it = index.find(n.sym);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

std::size_t NodeUniverse::at(Node n) const {
  auto i = find(n);
  if (!i) throw Error("node '" + n.name() + "' not in evaluation universe");
  return *i;
}

namespace {

NodeUniverse build_universe(std::vector<Node> nodes, const ShapesDoc* doc) {
  if (doc) {
    std::set<std::uint32_t> consts;
    for (const Constraint& c : doc->constraints) collect_constants(c.body, consts);
    for (std::uint32_t sym : consts) nodes.push_back(Node(sym));
    for (const ShapeAtom& t : doc->targets) nodes.push_back(t.node);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  NodeUniverse u;
  u.nodes = std::move(nodes);
  for (std::size_t i = 0; i < u.nodes.size(); ++i) u.index[u.nodes[i].sym] = i;
  return u;
}

}  // namespace

NodeUniverse make_universe(const DataGraph& g, const ShapesDoc* doc) {
  return build_universe(nodes_of(g), doc);
}

NodeUniverse make_universe_atoms(const std::vector<Atom>& atoms, const ShapesDoc* doc) {
  std::vector<Node> nodes;
  for (const Atom& a : atoms) {
    nodes.push_back(a.a);
    if (a.kind == AtomKind::Prop) nodes.push_back(a.b);
  }
  return build_universe(std::move(nodes), doc);
}

GraphIndex::GraphIndex(const NodeUniverse& universe, const DataGraph& g)
    : u(&universe),
      vmask(universe.size()),
      empty_set(universe.size()),
      empty_mat(universe.size()) {
  for (const Atom& atom : g) {
    std::size_t ia = universe.at(atom.a);
    vmask.set(ia);
    if (atom.kind == AtomKind::Class) {
      auto [it, fresh] = classes.try_emplace(atom.pred, BitSet(universe.size()));
      it->second.set(ia);
    } else {
      std::size_t ib = universe.at(atom.b);
      vmask.set(ib);
      auto [it, fresh] = props.try_emplace(atom.pred, BitMat(universe.size()));
      it->second.rows[ia].set(ib);
    }
  }
}

const BitSet& GraphIndex::class_of(std::uint32_t sym) const {
  auto it = classes.find(sym);
  return it == classes.end() ? empty_set : it->second;
}

const BitMat& GraphIndex::prop_of(std::uint32_t sym) const {
  auto it = props.find(sym);
  return it == props.end() ? empty_mat : it->second;
}

BitSet ShapeEvaluator::label_of(std::uint32_t name) const {
  auto it = labels.find(name);
  if (it == labels.end()) return BitSet(gi->u->size());
  return it->second;
}

BitMat ShapeEvaluator::eval(const PathExpr& path) const {
  switch (path.kind) {
    case PathExpr::Kind::Prop:
      return gi->prop_of(path.prop);
    case PathExpr::Kind::Inverse:
      return gi->prop_of(path.prop).transpose();
    case PathExpr::Kind::Seq:
      return eval(*path.left).compose(eval(*path.right));
    case PathExpr::Kind::Alt: {
      BitMat out = eval(*path.left);
      out |= eval(*path.right);
      return out;
    }
    case PathExpr::Kind::Star:
      return eval(*path.left).star(gi->vmask);
  }
  return BitMat(gi->u->size());
}

BitSet ShapeEvaluator::eval(const ShapeExpr& core) const {
  using K = ShapeExpr::Kind;
  const std::size_t n = gi->u->size();
  switch (core.kind) {
    case K::Top:
      return gi->vmask;
    case K::Const: {
      BitSet out(n);
      // Table 1 verbatim: a constant evaluates to itself even when it does
      // not occur in the graph.
      auto i = gi->u->find(core.constant);
      if (i) out.set(*i);
      return out;
    }
    case K::ClassRef:
      return gi->class_of(core.sym);
    case K::ShapeRef:
      return label_of(core.sym);
    case K::And: {
      BitSet out = eval(*core.left);
      out &= eval(*core.right);
      return out;
    }
    case K::Not: {
      BitSet out = gi->vmask;
      out.and_not(eval(*core.left));
      return out;
    }
    case K::AtLeast: {
      BitMat rel = eval(*core.path);
      BitSet filler = eval(*core.left);
      BitSet out(n);
      for (std::size_t i = 0; i < n; ++i)
        if (rel.rows[i].count_and(filler) >= core.count) out.set(i);
      return out;
    }
    case K::PathEq: {
      BitMat r1 = eval(*core.path);
      BitMat r2 = eval(*core.path2);
      // The quantification over d never leaves V(I); the result set is also
      // kept within V(I).
      BitSet out(n);
      for (std::size_t i = 0; i < n; ++i)
        if (r1.rows[i] == r2.rows[i]) out.set(i);
      out &= gi->vmask;
      return out;
    }
    default:
      throw Error("eval_shape requires a desugared expression");
  }
}

}  // namespace shaclcqa
