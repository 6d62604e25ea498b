#include "shaclcqa/cqa.hpp"

#include <algorithm>

namespace shaclcqa {

namespace {

std::vector<DataGraph> apply_all(const DataGraph& g, const std::vector<Repair>& repairs) {
  std::vector<DataGraph> out;
  out.reserve(repairs.size());
  for (const Repair& r : repairs) out.push_back(apply_repair(g, r));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Repair> considered_repairs(const ProblemInstance& psi, PreferenceOrder order,
                                       bool max_mode, std::size_t budget,
                                       std::optional<std::size_t>* max_card) {
  if (!max_mode) return preferred_repairs(psi, order, budget);
  MaxRepairsResult info = max_repairs_info(psi, budget);
  if (max_card) *max_card = info.max_cardinality;
  std::vector<Repair> reps;
  reps.reserve(info.repairs.size());
  for (MaxRepairInfo& mri : info.repairs) reps.push_back(std::move(mri.repair));
  return filter_preferred(std::move(reps), order);
}

}  // namespace

std::vector<DataGraph> repaired_graphs(const ProblemInstance& psi, PreferenceOrder order,
                                       bool max_mode, std::size_t budget) {
  return apply_all(psi.graph, considered_repairs(psi, order, max_mode, budget, nullptr));
}

DataGraph intersection_graph(const std::vector<DataGraph>& graphs) {
  if (graphs.empty()) throw EmptyFamilyError("intersection of an empty graph family");
  DataGraph out = graphs.front();
  for (std::size_t i = 1; i < graphs.size(); ++i) out = graph_intersect(out, graphs[i]);
  return out;
}

namespace {

CqaOutcome answer(const ProblemInstance& psi, const CqaRequest& req, std::size_t budget) {
  CqaOutcome outcome;
  std::optional<std::size_t> max_card;
  std::vector<Repair> reps =
      considered_repairs(psi, req.order, req.max_mode, budget, &max_card);
  outcome.max_target_card = max_card;
  outcome.repair_count = reps.size();
  std::vector<DataGraph> family = apply_all(psi.graph, reps);
  if (family.empty()) {
    outcome.verdict = Verdict::NoRepair;
    return outcome;
  }
  switch (req.semantics) {
    case Semantics::Brave: {
      bool yes = false;
      for (const DataGraph& g : family)
        if (is_answer(req.mapping, req.query, g)) {
          yes = true;
          break;
        }
      outcome.verdict = yes ? Verdict::Yes : Verdict::No;
      break;
    }
    case Semantics::AR: {
      bool yes = true;
      for (const DataGraph& g : family)
        if (!is_answer(req.mapping, req.query, g)) {
          yes = false;
          break;
        }
      outcome.verdict = yes ? Verdict::Yes : Verdict::No;
      break;
    }
    case Semantics::IAR: {
      DataGraph cap = intersection_graph(family);
      outcome.intersection_size = cap.size();
      outcome.verdict =
          is_answer(req.mapping, req.query, cap) ? Verdict::Yes : Verdict::No;
      break;
    }
  }
  return outcome;
}

}  // namespace

CqaOutcome answer_cqa(const ProblemInstance& psi, const CqaRequest& req,
                      std::size_t budget) {
  return answer(psi, req, budget);
}

CqaOutcome answer_mcqa(const ProblemInstance& psi, const CqaRequest& req,
                       std::size_t budget) {
  CqaRequest r = req;
  r.max_mode = true;
  return answer(psi, r, budget);
}

}  // namespace shaclcqa
