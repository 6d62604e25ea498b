#include "shaclcqa/validate.hpp"

#include <algorithm>
#include <set>

#include "eval.hpp"

namespace shaclcqa {

Assignment make_assignment(DataGraph graph, std::vector<ShapeAtom> labels) {
  std::vector<Node> v = nodes_of(graph);
  for (const ShapeAtom& sa : labels)
    if (!std::binary_search(v.begin(), v.end(), sa.node))
      throw Error("labeled node '" + sa.node.name() + "' does not occur in the graph");
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  return Assignment{std::move(graph), std::move(labels)};
}

namespace {

NodeUniverse assignment_universe(const Assignment& I, const ShapePtr& shape) {
  std::vector<Node> nodes = nodes_of(I.graph);
  std::set<std::uint32_t> consts;
  collect_constants(shape, consts);
  for (std::uint32_t c : consts) nodes.push_back(Node(c));
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  NodeUniverse u;
  u.nodes = std::move(nodes);
  for (std::size_t i = 0; i < u.nodes.size(); ++i) u.index[u.nodes[i].sym] = i;
  return u;
}

void load_labels(ShapeEvaluator& ev, const std::vector<ShapeAtom>& labels,
                 const NodeUniverse& u) {
  for (const ShapeAtom& sa : labels) {
    auto [it, fresh] = ev.labels.try_emplace(sa.shape, BitSet(u.size()));
    it->second.set(u.at(sa.node));
  }
}

std::vector<Node> to_nodes(const BitSet& bits, const NodeUniverse& u) {
  std::vector<Node> out;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (bits.test(i)) out.push_back(u.nodes[i]);
  return out;
}

}  // namespace

std::vector<std::pair<Node, Node>> eval_path(const PathPtr& path, const Assignment& I) {
  NodeUniverse u = assignment_universe(I, shape_top());
  GraphIndex gi(u, I.graph);
  ShapeEvaluator ev(gi);
  BitMat rel = ev.eval(*path);
  std::vector<std::pair<Node, Node>> out;
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < u.size(); ++j)
      if (rel.rows[i].test(j)) out.emplace_back(u.nodes[i], u.nodes[j]);
  return out;
}

std::vector<Node> eval_shape(const ShapePtr& shape, const Assignment& I) {
  ShapePtr core = desugar(shape);
  NodeUniverse u = assignment_universe(I, core);
  GraphIndex gi(u, I.graph);
  ShapeEvaluator ev(gi);
  load_labels(ev, I.labels, u);
  return to_nodes(ev.eval(*core), u);
}

bool is_supported_model(const Assignment& I, const std::vector<Constraint>& constraints) {
  std::set<std::uint32_t> defined;
  for (const Constraint& c : constraints) defined.insert(c.name);
  for (const ShapeAtom& sa : I.labels)
    if (!defined.count(sa.shape))
      throw UndefinedShapeError("label uses undefined shape '" + sym_name(sa.shape) + "'");

  std::set<std::uint32_t> consts;
  for (const Constraint& c : constraints) collect_constants(c.body, consts);
  std::vector<Node> nodes = nodes_of(I.graph);
  for (std::uint32_t c : consts) nodes.push_back(Node(c));
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  NodeUniverse u;
  u.nodes = std::move(nodes);
  for (std::size_t i = 0; i < u.nodes.size(); ++i) u.index[u.nodes[i].sym] = i;

  GraphIndex gi(u, I.graph);
  ShapeEvaluator ev(gi);
  load_labels(ev, I.labels, u);
  for (const Constraint& c : constraints) {
    BitSet body = ev.eval(*desugar(c.body));
    if (body != ev.label_of(c.name)) return false;
  }
  return true;
}

namespace {

// Search state shared across cyclic-label candidates.
struct ValidationSearch {
  const ShapesDoc& doc;
  NodeUniverse u;
  GraphIndex gi;
  DependencyInfo deps;
  std::map<std::uint32_t, ShapePtr> core;  // desugared bodies

  // Acyclic names that do not depend (even transitively) on a cyclic name
  // have a forced extension independent of any candidate.
  std::vector<std::uint32_t> rigid;       // topo order
  std::vector<std::uint32_t> flexible;    // topo order, rest of acyclic
  std::map<std::uint32_t, BitSet> rigid_ext;

  explicit ValidationSearch(const DataGraph& g, const ShapesDoc& d)
      : doc(d), u(make_universe(g, &d)), gi(u, g), deps(dependency_info(d.constraints)) {
    for (const Constraint& c : d.constraints) core[c.name] = desugar(c.body);

    std::set<std::uint32_t> tainted = deps.cyclic_names;
    for (std::uint32_t name : deps.topo_acyclic) {
      bool touches_cycle = false;
      for (std::uint32_t dep : deps.edges[name])
        if (tainted.count(dep)) touches_cycle = true;
      if (touches_cycle) {
        tainted.insert(name);
        flexible.push_back(name);
      } else {
        rigid.push_back(name);
      }
    }
  }

  // Computes the forced extensions; false when they already rule out every
  // assignment (a forced label would fall outside V, or a rigid target
  // fails).
  bool compute_rigid() {
    ShapeEvaluator ev(gi);
    for (std::uint32_t name : rigid) {
      BitSet ext = ev.eval(*core[name]);
      if (!ext.subset_of(gi.vmask)) return false;
      ev.labels[name] = ext;
      rigid_ext[name] = std::move(ext);
    }
    for (const ShapeAtom& t : doc.targets) {
      auto it = rigid_ext.find(t.shape);
      if (it == rigid_ext.end()) continue;
      auto idx = u.find(t.node);
      if (!idx || !it->second.test(*idx)) return false;
    }
    return true;
  }

  // Fills in flexible extensions for a given cyclic candidate and checks the
  // supported-model equations plus targets.
  bool check_candidate(ShapeEvaluator& ev) const {
    for (std::uint32_t name : flexible) {
      BitSet ext = ev.eval(*core.at(name));
      if (!ext.subset_of(gi.vmask)) return false;
      ev.labels[name] = std::move(ext);
    }
    for (std::uint32_t name : deps.cyclic_names) {
      if (ev.eval(*core.at(name)) != ev.label_of(name)) return false;
    }
    for (const ShapeAtom& t : doc.targets) {
      auto idx = u.find(t.node);
      if (!idx) return false;
      if (!ev.label_of(t.shape).test(*idx)) return false;
    }
    return true;
  }
};

}  // namespace

std::optional<Assignment> find_validating_assignment(const DataGraph& g,
                                                     const ShapesDoc& doc) {
  ValidationSearch search(g, doc);
  if (!search.compute_rigid()) return std::nullopt;

  // Candidate label atoms for cyclic names, in canonical (name, node) order;
  // only nodes of V(G) can be labeled.
  std::vector<ShapeAtom> pool;
  std::vector<std::uint32_t> cyclic(search.deps.cyclic_names.begin(),
                                    search.deps.cyclic_names.end());
  std::sort(cyclic.begin(), cyclic.end(),
            [](std::uint32_t a, std::uint32_t b) { return sym_name(a) < sym_name(b); });
  for (std::uint32_t name : cyclic)
    for (std::size_t i = 0; i < search.u.size(); ++i)
      if (search.gi.vmask.test(i)) pool.push_back(ShapeAtom{name, search.u.nodes[i]});

  auto try_candidate = [&](const std::vector<std::size_t>& chosen)
      -> std::optional<Assignment> {
    ShapeEvaluator ev(search.gi);
    for (const auto& [name, ext] : search.rigid_ext) ev.labels[name] = ext;
    for (std::uint32_t name : cyclic) ev.labels[name] = BitSet(search.u.size());
    for (std::size_t k : chosen)
      ev.labels[pool[k].shape].set(search.u.at(pool[k].node));
    if (!search.check_candidate(ev)) return std::nullopt;
    std::vector<ShapeAtom> labels;
    for (const auto& [name, ext] : ev.labels)
      for (std::size_t i = 0; i < search.u.size(); ++i)
        if (ext.test(i)) labels.push_back(ShapeAtom{name, search.u.nodes[i]});
    return make_assignment(g, std::move(labels));
  };

  if (pool.empty()) return try_candidate({});

  // Increasing size, then canonical order within one size.
  const std::size_t m = pool.size();
  for (std::size_t k = 0; k <= m; ++k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
      if (auto found = try_candidate(idx)) return found;
      // next k-combination in lexicographic order
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == m - k + (i - 1)) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return std::nullopt;
}

bool validates(const DataGraph& g, const ShapesDoc& doc) {
  return find_validating_assignment(g, doc).has_value();
}

std::vector<std::string> instance_warnings(const DataGraph& g, const ShapesDoc& doc) {
  std::vector<std::string> out;
  std::vector<Node> v = nodes_of(g);
  auto in_graph = [&](Node n) { return std::binary_search(v.begin(), v.end(), n); };
  std::set<std::uint32_t> consts;
  for (const Constraint& c : doc.constraints) collect_constants(c.body, consts);
  for (std::uint32_t c : consts)
    if (!in_graph(Node(c)))
      out.push_back("constant '" + sym_name(c) + "' does not occur in the graph");
  for (const ShapeAtom& t : doc.targets)
    if (!in_graph(t.node))
      out.push_back("target node '" + t.node.name() + "' does not occur in the graph");
  return out;
}

}  // namespace shaclcqa
