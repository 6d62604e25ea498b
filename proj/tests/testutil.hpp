#ifndef SHACLCQA_TESTUTIL_HPP
#define SHACLCQA_TESTUTIL_HPP

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "shaclcqa/cqa.hpp"
#include "shaclcqa/reductions.hpp"

namespace testutil {

using namespace shaclcqa;

// --- fixtures: the running example ---

inline const char* kExampleGraph =
    "Prof(Ann).\n"
    "worksWith(Lea,Ann).\n"
    "Student(Ben).\n"
    "id(Ben,ID1).\n"
    "id(Ben,ID2).\n"
    "enrolledIn(Ben,c).\n"
    "id(John,ID3).\n"
    "Student(John).\n";

inline const char* kExampleShapes =
    "shape Profshape := Prof | exists worksWith . Profshape .\n"
    "shape Studshape := Student & = 1 id & exists enrolledIn .\n"
    "target Studshape(Ben) .\n"
    "target Studshape(John) .\n";

inline const char* kExampleShapesProfTarget =
    "shape Profshape := Prof | exists worksWith . Profshape .\n"
    "shape Studshape := Student & = 1 id & exists enrolledIn .\n"
    "target Profshape(Lea) .\n";

inline const char* kExampleHyps =
    "enrolledIn(John,c1).\n"
    "enrolledIn(Ben,c2).\n";

inline DataGraph example_graph() { return parse_data_graph(kExampleGraph); }
inline ShapesDoc example_shapes() { return parse_shapes_doc(kExampleShapes); }
inline DataGraph example_hyps() { return parse_data_graph(kExampleHyps); }

inline ProblemInstance example_psi() {
  return make_problem_instance(example_graph(), example_shapes(), example_hyps());
}

// --- deterministic rng for property tests ---

struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }
  bool flip() { return next() & 1; }
};

// --- random instances ---

inline Atom random_atom(Rng& rng, const std::vector<std::string>& nodes) {
  static const char* classes[] = {"A", "B"};
  static const char* props[] = {"p", "q"};
  if (rng.flip())
    return Atom::cls(classes[rng.below(2)], nodes[rng.below(nodes.size())]);
  return Atom::prop(props[rng.below(2)], nodes[rng.below(nodes.size())],
                    nodes[rng.below(nodes.size())]);
}

inline DataGraph random_graph(Rng& rng, std::size_t max_atoms) {
  std::vector<std::string> nodes = {"a", "b", "c", "d"};
  std::vector<Atom> atoms;
  std::size_t n = rng.below(max_atoms + 1);
  for (std::size_t i = 0; i < n; ++i) atoms.push_back(random_atom(rng, nodes));
  return DataGraph(std::move(atoms));
}

inline PathPtr random_path(Rng& rng, std::size_t depth) {
  static const char* props[] = {"p", "q"};
  if (depth == 0 || rng.below(2) == 0)
    return rng.below(3) == 0 ? path_inverse(props[rng.below(2)])
                             : path_prop(props[rng.below(2)]);
  switch (rng.below(3)) {
    case 0: return path_seq(random_path(rng, depth - 1), random_path(rng, depth - 1));
    case 1: return path_alt(random_path(rng, depth - 1), random_path(rng, depth - 1));
    default: return path_star(random_path(rng, depth - 1));
  }
}

// Random shape body over classes A/B, props p/q, nodes a..d and the shape
// names defined so far (keeps the constraint set non-recursive).
inline ShapePtr random_shape_body(Rng& rng, const std::vector<std::uint32_t>& earlier,
                                  std::size_t depth) {
  static const char* classes[] = {"A", "B"};
  static const char* nodes[] = {"a", "b", "c", "d"};
  if (depth == 0 || rng.below(3) == 0) {
    switch (rng.below(earlier.empty() ? 3 : 4)) {
      case 0: return shape_top();
      case 1: return shape_class(classes[rng.below(2)]);
      case 2: return shape_const(nodes[rng.below(4)]);
      default: return shape_ref(earlier[rng.below(earlier.size())]);
    }
  }
  switch (rng.below(7)) {
    case 0:
      return shape_and(random_shape_body(rng, earlier, depth - 1),
                       random_shape_body(rng, earlier, depth - 1));
    case 1:
      return shape_or(random_shape_body(rng, earlier, depth - 1),
                      random_shape_body(rng, earlier, depth - 1));
    case 2:
      return shape_not(random_shape_body(rng, earlier, depth - 1));
    case 3:
      return shape_exists(random_path(rng, 1),
                          random_shape_body(rng, earlier, depth - 1));
    case 4:
      return shape_forall(random_path(rng, 1),
                          random_shape_body(rng, earlier, depth - 1));
    case 5:
      return shape_patheq(random_path(rng, 1), random_path(rng, 1));
    default:
      return shape_atleast(1 + rng.below(2), random_path(rng, 1),
                           random_shape_body(rng, earlier, depth - 1));
  }
}

struct RandomPsiOptions {
  std::size_t max_graph_atoms = 6;
  std::size_t max_hyp_atoms = 2;
  std::size_t max_shapes = 3;
  std::size_t max_targets = 2;
};

inline ProblemInstance random_psi(Rng& rng, const RandomPsiOptions& opt = {}) {
  for (;;) {
    DataGraph g = random_graph(rng, opt.max_graph_atoms);
    std::vector<Atom> hyp_atoms;
    std::vector<std::string> nodes = {"a", "b", "c", "d"};
    std::size_t nh = rng.below(opt.max_hyp_atoms + 1);
    for (std::size_t i = 0; i < nh; ++i) {
      Atom a = random_atom(rng, nodes);
      if (!g.contains(a)) hyp_atoms.push_back(a);
    }
    DataGraph h(std::move(hyp_atoms));

    std::vector<Constraint> cs;
    std::vector<std::uint32_t> names;
    std::size_t ns = 1 + rng.below(opt.max_shapes);
    for (std::size_t i = 0; i < ns; ++i) {
      std::uint32_t name = intern("s" + std::to_string(i + 1));
      cs.push_back(Constraint{name, random_shape_body(rng, names, 2)});
      names.push_back(name);
    }
    std::vector<ShapeAtom> targets;
    std::vector<Node> gnodes = nodes_of(g);
    if (!gnodes.empty()) {
      std::size_t nt = rng.below(opt.max_targets + 1);
      for (std::size_t i = 0; i < nt; ++i)
        targets.push_back(ShapeAtom{names[rng.below(names.size())],
                                    gnodes[rng.below(gnodes.size())]});
    }
    try {
      return make_problem_instance(g, make_shapes_doc(std::move(cs), std::move(targets)),
                                   std::move(h));
    } catch (const Error&) {
      continue;  // rare namespace collision in generated doc
    }
  }
}

// --- independent oracles ---

// Exhaustive supported-model search over every label set of names × V(G).
// For non-recursive constraints the supported extension is unique, so any
// hit is the only one; the caller restricts usage accordingly.
inline std::optional<Assignment> exhaustive_find_assignment(const DataGraph& g,
                                                            const ShapesDoc& doc) {
  std::vector<Node> v = nodes_of(g);
  std::vector<ShapeAtom> pool;
  for (const Constraint& c : doc.constraints)
    for (const Node& n : v) pool.push_back(ShapeAtom{c.name, n});
  if (pool.size() > 20) throw Error("exhaustive assignment oracle: instance too large");

  for (std::uint64_t mask = 0; mask < (1ull << pool.size()); ++mask) {
    std::vector<ShapeAtom> labels;
    for (std::size_t i = 0; i < pool.size(); ++i)
      if ((mask >> i) & 1) labels.push_back(pool[i]);
    Assignment cand = make_assignment(g, labels);
    if (!is_supported_model(cand, doc.constraints)) continue;
    bool targets_ok = true;
    for (const ShapeAtom& t : doc.targets)
      if (!std::binary_search(cand.labels.begin(), cand.labels.end(), t)) {
        targets_ok = false;
        break;
      }
    if (targets_ok) return cand;
  }
  return std::nullopt;
}

// All repairs by plain subset enumeration over the mutable atoms; checked
// with is_repair. Independent of the engine's pruned search.
inline std::vector<Repair> brute_enumerate_repairs(const ProblemInstance& psi) {
  const DataGraph& mg = psi.hints ? psi.hints->graph_atoms : psi.graph;
  const DataGraph& mh = psi.hints ? psi.hints->hyp_atoms : psi.hyps;
  std::vector<Atom> del_pool(mg.begin(), mg.end());
  std::vector<Atom> add_pool(mh.begin(), mh.end());
  std::size_t m = del_pool.size() + add_pool.size();
  if (m > 16) throw Error("brute repair oracle: instance too large");
  std::vector<Repair> out;
  for (std::uint64_t mask = 0; mask < (1ull << m); ++mask) {
    std::vector<Atom> dels, adds;
    for (std::size_t i = 0; i < del_pool.size(); ++i)
      if ((mask >> i) & 1) dels.push_back(del_pool[i]);
    for (std::size_t i = 0; i < add_pool.size(); ++i)
      if ((mask >> (del_pool.size() + i)) & 1) adds.push_back(add_pool[i]);
    Repair r{DataGraph(std::move(adds)), DataGraph(std::move(dels))};
    if (is_repair(psi, r)) out.push_back(std::move(r));
  }
  std::sort(out.begin(), out.end(), repair_less);
  return out;
}

inline bool contains_mapping(const std::vector<Mapping>& ms, const Mapping& mu) {
  return std::binary_search(ms.begin(), ms.end(), mu);
}

}  // namespace testutil

#endif
