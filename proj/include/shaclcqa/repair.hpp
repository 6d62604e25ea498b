#ifndef SHACLCQA_REPAIR_HPP
#define SHACLCQA_REPAIR_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "shaclcqa/graph.hpp"
#include "shaclcqa/shapes.hpp"
#include "shaclcqa/validate.hpp"

namespace shaclcqa {

enum class PreferenceOrder { Any, Subset, Card };

// A pair (A, D) of added and deleted atoms with A ⊆ H and D ⊆ G.
struct Repair {
  DataGraph additions;
  DataGraph deletions;

  std::size_t size() const { return additions.size() + deletions.size(); }
  bool operator==(const Repair& o) const {
    return additions == o.additions && deletions == o.deletions;
  }
};

// "(+a1 +a2 | -d1 -d2)", canonical atom order on both sides.
std::string to_string(const Repair& r);
bool repair_less(const Repair& a, const Repair& b);  // size, then rendered text
// Componentwise inclusion: A ⊆ A' and D ⊆ D'.
bool repair_subseteq(const Repair& a, const Repair& b);

// Restricts which atoms the repair search may delete (graph side) or add
// (hypothesis side). Semantically transparent when it covers every atom a
// true repair touches.
struct MutabilityHints {
  DataGraph graph_atoms;
  DataGraph hyp_atoms;
};

// Hints file: fact-format atoms under `[graph]` / `[hypotheses]` headers.
MutabilityHints parse_hints(std::string_view text);
std::string serialize_hints(const MutabilityHints& hints);

struct ProblemInstance {
  DataGraph graph;
  ShapesDoc doc;
  DataGraph hyps;
  std::optional<MutabilityHints> hints;  // absent = everything mutable
};

// Enforces G ∩ H = ∅ and hint containment.
ProblemInstance make_problem_instance(DataGraph graph, ShapesDoc doc, DataGraph hyps,
                                      std::optional<MutabilityHints> hints = std::nullopt);

inline constexpr std::size_t kDefaultBudget = 24;

DataGraph apply_repair(const DataGraph& g, const Repair& r);

bool is_repair(const ProblemInstance& psi, const Repair& r);

// All repairs within the mutability hints, by increasing size then canonical
// order. Throws BudgetExceededError when the mutable-atom count exceeds the
// budget.
std::vector<Repair> enumerate_repairs(const ProblemInstance& psi,
                                      std::size_t budget = kDefaultBudget);

std::vector<Repair> preferred_repairs(const ProblemInstance& psi, PreferenceOrder order,
                                      std::size_t budget = kDefaultBudget);

// Pairwise dominance filtering over an enumerated repair set (input sorted
// by repair_less).
std::vector<Repair> filter_preferred(std::vector<Repair> repairs, PreferenceOrder order);

std::optional<std::size_t> min_repair_size(const ProblemInstance& psi,
                                           std::size_t budget = kDefaultBudget);

// Largest |T'| over T' ⊆ T such that some (A, D) repairs (G, C, T', H).
// Throws NoModelError when no (A, D) admits a supported model at all.
std::size_t max_target_cardinality(const ProblemInstance& psi,
                                   std::size_t budget = kDefaultBudget);

std::vector<Repair> max_repairs(const ProblemInstance& psi,
                                std::size_t budget = kDefaultBudget);

struct MaxRepairInfo {
  Repair repair;
  std::vector<ShapeAtom> witness_targets;  // first witnessing T' in canonical order
};

struct MaxRepairsResult {
  std::size_t max_cardinality = 0;
  std::vector<MaxRepairInfo> repairs;
};

MaxRepairsResult max_repairs_info(const ProblemInstance& psi,
                                  std::size_t budget = kDefaultBudget);

}  // namespace shaclcqa

#endif
