#ifndef SHACLCQA_EVAL_HPP
#define SHACLCQA_EVAL_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "shaclcqa/graph.hpp"
#include "shaclcqa/shapes.hpp"

namespace shaclcqa {

// Dense node-set over a fixed universe.
struct BitSet {
  std::vector<std::uint64_t> w;

  BitSet() = default;
  explicit BitSet(std::size_t bits) : w((bits + 63) / 64, 0) {}

  void set(std::size_t i) { w[i >> 6] |= std::uint64_t(1) << (i & 63); }
  void reset(std::size_t i) { w[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }
  bool test(std::size_t i) const { return (w[i >> 6] >> (i & 63)) & 1; }
  bool any() const;
  std::size_t count() const;

  BitSet& operator|=(const BitSet& o);
  BitSet& operator&=(const BitSet& o);
  BitSet& and_not(const BitSet& o);
  bool operator==(const BitSet& o) const { return w == o.w; }
  bool operator!=(const BitSet& o) const { return w != o.w; }
  bool subset_of(const BitSet& o) const;
  std::size_t count_and(const BitSet& o) const;
};

// Relation over the universe; row i holds the successors of node i.
struct BitMat {
  std::size_t n = 0;
  std::vector<BitSet> rows;

  BitMat() = default;
  explicit BitMat(std::size_t n_) : n(n_), rows(n_, BitSet(n_)) {}

  BitMat transpose() const;
  BitMat compose(const BitMat& o) const;
  BitMat& operator|=(const BitMat& o);
  bool operator==(const BitMat& o) const { return rows == o.rows; }

  // Reflexive-transitive closure; the reflexive part ranges over `universe`.
  BitMat star(const BitSet& universe) const;
};

// Fixed node indexing for one evaluation space: the nodes of a graph plus any
// constants mentioned by the shapes document (targets included).
struct NodeUniverse {
  std::vector<Node> nodes;  // canonical order; index = position
  std::map<std::uint32_t, std::size_t> index;

  std::size_t size() const { return nodes.size(); }
  std::optional<std::size_t> find(Node n) const;
  std::size_t at(Node n) const;
};

NodeUniverse make_universe(const DataGraph& g, const ShapesDoc* doc);
NodeUniverse make_universe_atoms(const std::vector<Atom>& atoms, const ShapesDoc* doc);

// Class extents, property adjacency and V(G) mask for one concrete graph.
struct GraphIndex {
  const NodeUniverse* u = nullptr;
  BitSet vmask;
  BitSet empty_set;
  BitMat empty_mat;
  std::map<std::uint32_t, BitSet> classes;
  std::map<std::uint32_t, BitMat> props;

  GraphIndex() = default;
  GraphIndex(const NodeUniverse& universe, const DataGraph& g);

  const BitSet& class_of(std::uint32_t sym) const;
  const BitMat& prop_of(std::uint32_t sym) const;
};

// Table-1 evaluation given label extensions for shape names.
struct ShapeEvaluator {
  const GraphIndex* gi = nullptr;
  std::map<std::uint32_t, BitSet> labels;

  explicit ShapeEvaluator(const GraphIndex& index) : gi(&index) {}

  BitSet label_of(std::uint32_t name) const;
  BitMat eval(const PathExpr& path) const;
  BitSet eval(const ShapeExpr& core) const;
};

}  // namespace shaclcqa

#endif
