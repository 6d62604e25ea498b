#ifndef SHACLCQA_SHAPES_HPP
#define SHACLCQA_SHAPES_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "shaclcqa/graph.hpp"

namespace shaclcqa {

struct PathExpr;
using PathPtr = std::shared_ptr<const PathExpr>;

// Regular path expression over property names.
struct PathExpr {
  enum class Kind { Prop, Inverse, Seq, Alt, Star };
  Kind kind = Kind::Prop;
  std::uint32_t prop = 0;  // Prop, Inverse
  PathPtr left, right;     // Seq/Alt children; Star uses left
};

PathPtr path_prop(std::string_view p);
PathPtr path_prop(std::uint32_t p);
PathPtr path_inverse(std::uint32_t p);
PathPtr path_inverse(std::string_view p);
PathPtr path_seq(PathPtr a, PathPtr b);
PathPtr path_alt(PathPtr a, PathPtr b);
PathPtr path_star(PathPtr a);

struct ShapeExpr;
using ShapePtr = std::shared_ptr<const ShapeExpr>;

// Core constructors plus parse-time sugar (Or, Exists, Forall, AtMost,
// Exactly), removed by desugar().
struct ShapeExpr {
  enum class Kind {
    Top,
    ShapeRef,
    ClassRef,
    Const,
    And,
    Not,
    AtLeast,
    PathEq,
    // sugar
    Or,
    Exists,
    Forall,
    AtMost,
    Exactly,
  };
  Kind kind = Kind::Top;
  std::uint32_t sym = 0;      // ShapeRef / ClassRef
  Node constant;              // Const
  std::uint64_t count = 0;    // AtLeast / AtMost / Exactly
  PathPtr path, path2;        // quantifiers / PathEq
  ShapePtr left, right;       // And / Or children; Not and quantifier filler use left
};

ShapePtr shape_top();
ShapePtr shape_ref(std::string_view s);
ShapePtr shape_ref(std::uint32_t s);
ShapePtr shape_class(std::string_view c);
ShapePtr shape_class(std::uint32_t c);
ShapePtr shape_const(Node c);
ShapePtr shape_const(std::string_view c);
ShapePtr shape_and(ShapePtr a, ShapePtr b);
ShapePtr shape_or(ShapePtr a, ShapePtr b);
ShapePtr shape_not(ShapePtr a);
ShapePtr shape_atleast(std::uint64_t n, PathPtr e, ShapePtr filler);
ShapePtr shape_atmost(std::uint64_t n, PathPtr e, ShapePtr filler);
ShapePtr shape_exactly(std::uint64_t n, PathPtr e, ShapePtr filler);
ShapePtr shape_exists(PathPtr e, ShapePtr filler);
ShapePtr shape_forall(PathPtr e, ShapePtr filler);
ShapePtr shape_patheq(PathPtr e, PathPtr e2);

struct ShapeAtom {
  std::uint32_t shape = 0;
  Node node;

  bool operator==(const ShapeAtom& o) const { return shape == o.shape && node == o.node; }
  bool operator<(const ShapeAtom& o) const {
    if (sym_name(shape) != sym_name(o.shape)) return sym_name(shape) < sym_name(o.shape);
    return node < o.node;
  }
};

std::string to_string(const ShapeAtom& sa);

struct Constraint {
  std::uint32_t name = 0;
  ShapePtr body;
};

// A shapes graph: constraints C plus targets T. Each shape name defined
// exactly once; every target's shape name is defined.
struct ShapesDoc {
  std::vector<Constraint> constraints;  // ordered by name, canonical
  std::vector<ShapeAtom> targets;       // canonical order, duplicate-free
  SymbolUse symbols;

  const Constraint* find(std::uint32_t name) const;
};

ShapesDoc make_shapes_doc(std::vector<Constraint> constraints,
                          std::vector<ShapeAtom> targets);

ShapesDoc parse_shapes_doc(std::string_view text);
std::string serialize_shapes_doc(const ShapesDoc& doc);
std::string to_string(const ShapeExpr& e);
std::string to_string(const PathExpr& e);

// Rewrites sugar into the core constructors. Idempotent.
ShapePtr desugar(const ShapePtr& e);

struct DependencyInfo {
  std::map<std::uint32_t, std::set<std::uint32_t>> edges;  // s -> names in body of s
  bool recursive = false;
  std::set<std::uint32_t> cyclic_names;
  // Acyclic names ordered so that dependencies precede dependents.
  std::vector<std::uint32_t> topo_acyclic;
};

DependencyInfo dependency_info(const std::vector<Constraint>& constraints);

// Free shape/class/property names and constants of an expression.
void collect_shape_refs(const ShapePtr& e, std::set<std::uint32_t>& out);
void collect_constants(const ShapePtr& e, std::set<std::uint32_t>& out);

}  // namespace shaclcqa

#endif
