#ifndef SHACLCQA_GRAPH_HPP
#define SHACLCQA_GRAPH_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "shaclcqa/errors.hpp"

namespace shaclcqa {

// All identifiers (node, class, property and shape names, query variables)
// are interned into one global table; equality is name equality.
std::uint32_t intern(std::string_view name);
const std::string& sym_name(std::uint32_t sym);

struct Node {
  std::uint32_t sym = 0;

  Node() = default;
  explicit Node(std::uint32_t s) : sym(s) {}

  const std::string& name() const { return sym_name(sym); }
  bool operator==(const Node& o) const { return sym == o.sym; }
  bool operator!=(const Node& o) const { return sym != o.sym; }
  // Canonical (name) order, used everywhere determinism is promised.
  bool operator<(const Node& o) const { return name() < o.name(); }
};

Node make_node(std::string_view name);

enum class AtomKind : std::uint8_t { Class, Prop };

struct Atom {
  AtomKind kind = AtomKind::Class;
  std::uint32_t pred = 0;  // class or property name
  Node a;                  // node / subject
  Node b;                  // object, Prop only

  static Atom cls(std::string_view c, std::string_view n);
  static Atom cls(std::uint32_t c, Node n);
  static Atom prop(std::string_view p, std::string_view s, std::string_view o);
  static Atom prop(std::uint32_t p, Node s, Node o);

  bool operator==(const Atom& o) const {
    return kind == o.kind && pred == o.pred && a == o.a &&
           (kind == AtomKind::Class || b == o.b);
  }
  bool operator!=(const Atom& o) const { return !(*this == o); }
  bool operator<(const Atom& o) const;  // lexicographic on rendered text
};

// "B(c)" or "p(c,d)", no trailing period.
std::string to_string(const Atom& atom);

// Per-instance namespace discipline: a symbol's role is fixed by first use.
enum class SymKind : std::uint8_t { NodeName, ClassName, PropName, ShapeName, VarName };

class SymbolUse {
 public:
  void note(std::uint32_t sym, SymKind kind);
  void merge(const SymbolUse& other);
  const std::map<std::uint32_t, SymKind>& kinds() const { return kinds_; }

 private:
  std::map<std::uint32_t, SymKind> kinds_;
};

// A finite set of ground atoms, kept duplicate-free in canonical order.
class DataGraph {
 public:
  DataGraph() = default;
  explicit DataGraph(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }
  bool contains(const Atom& atom) const;

  bool operator==(const DataGraph& o) const { return atoms_ == o.atoms_; }
  bool operator!=(const DataGraph& o) const { return atoms_ != o.atoms_; }
  bool operator<(const DataGraph& o) const;

  auto begin() const { return atoms_.begin(); }
  auto end() const { return atoms_.end(); }

 private:
  std::vector<Atom> atoms_;
};

DataGraph graph_union(const DataGraph& x, const DataGraph& y);
DataGraph graph_minus(const DataGraph& x, const DataGraph& y);
DataGraph graph_intersect(const DataGraph& x, const DataGraph& y);
bool graph_subset(const DataGraph& x, const DataGraph& y);

// Exactly the nodes appearing in any atom position, in canonical order.
std::vector<Node> nodes_of(const DataGraph& g);

// Fact format: one `Class(node).` or `prop(node1,node2).` per line,
// `#` starts a comment, blank lines ignored. Duplicates are deduplicated.
DataGraph parse_data_graph(std::string_view text, SymbolUse* use = nullptr);

// Canonical order, one fact per line. parse∘serialize is the identity.
std::string serialize_data_graph(const DataGraph& g);

}  // namespace shaclcqa

#endif
