#ifndef SHACLCQA_VALIDATE_HPP
#define SHACLCQA_VALIDATE_HPP

#include <optional>
#include <utility>
#include <vector>

#include "shaclcqa/graph.hpp"
#include "shaclcqa/shapes.hpp"

namespace shaclcqa {

// An assignment I = G ∪ L. Every labeled node must occur in the graph.
struct Assignment {
  DataGraph graph;
  std::vector<ShapeAtom> labels;  // canonical order, duplicate-free
};

Assignment make_assignment(DataGraph graph, std::vector<ShapeAtom> labels);

// Path evaluation: pairs of nodes per Table-1 semantics (Star includes the
// reflexive pairs over V(I)).
std::vector<std::pair<Node, Node>> eval_path(const PathPtr& path, const Assignment& I);

// Shape evaluation for desugared (core) expressions. The result may contain
// a constant node outside V(I): constants evaluate to themselves
// unconditionally.
std::vector<Node> eval_shape(const ShapePtr& shape, const Assignment& I);

// True iff every constraint's body evaluates exactly to its name's label
// extension (names without labels have extension ∅).
bool is_supported_model(const Assignment& I, const std::vector<Constraint>& constraints);

// Searches for I = G ∪ L with is_supported_model and targets ⊆ L. Labels of
// acyclic names are computed bottom-up; labels of cyclic names are searched
// exhaustively over subsets of cyclic_names × V(G), by increasing size then
// canonical order. Returns the first success in that order.
std::optional<Assignment> find_validating_assignment(const DataGraph& g,
                                                     const ShapesDoc& doc);

bool validates(const DataGraph& g, const ShapesDoc& doc);

// Nodes mentioned in constraints or targets that do not occur in the graph.
// Evaluation still follows Table 1 verbatim for them.
std::vector<std::string> instance_warnings(const DataGraph& g, const ShapesDoc& doc);

}  // namespace shaclcqa

#endif
