#ifndef SHACLCQA_CQA_HPP
#define SHACLCQA_CQA_HPP

#include <optional>
#include <vector>

#include "shaclcqa/query.hpp"
#include "shaclcqa/repair.hpp"

namespace shaclcqa {

enum class Semantics { Brave, AR, IAR };

struct CqaRequest {
  Query query;
  Mapping mapping;
  PreferenceOrder order = PreferenceOrder::Any;
  Semantics semantics = Semantics::Brave;
  bool max_mode = false;
};

enum class Verdict { Yes, No, NoRepair };

struct CqaOutcome {
  Verdict verdict = Verdict::No;
  std::size_t repair_count = 0;                    // preferred (max-)repairs considered
  std::optional<std::size_t> intersection_size;    // |G∩| under IAR
  std::optional<std::size_t> max_target_card;      // K̂ in max mode
};

// Repaired graphs of the preferred (max-)repairs, deduplicated, canonical
// order.
std::vector<DataGraph> repaired_graphs(const ProblemInstance& psi, PreferenceOrder order,
                                       bool max_mode, std::size_t budget = kDefaultBudget);

// Atom-wise intersection of a nonempty family.
DataGraph intersection_graph(const std::vector<DataGraph>& graphs);

CqaOutcome answer_cqa(const ProblemInstance& psi, const CqaRequest& req,
                      std::size_t budget = kDefaultBudget);

// CQA over max-repairs; the preference order is applied within the
// max-repair set.
CqaOutcome answer_mcqa(const ProblemInstance& psi, const CqaRequest& req,
                       std::size_t budget = kDefaultBudget);

}  // namespace shaclcqa

#endif
