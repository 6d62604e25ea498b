#ifndef SHACLCQA_REDUCTIONS_HPP
#define SHACLCQA_REDUCTIONS_HPP

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "shaclcqa/cqa.hpp"

namespace shaclcqa {

struct CnfLiteral {
  std::size_t var = 0;  // index into CnfFormula::variables
  bool negated = false;

  bool operator==(const CnfLiteral& o) const = default;
};

// 3-CNF clause; repeated literals are allowed.
struct CnfClause {
  std::array<CnfLiteral, 3> lits;
};

struct CnfFormula {
  std::vector<std::string> variables;
  std::vector<CnfClause> clauses;
};

struct QbfInstance {
  std::vector<std::string> x_vars;
  std::vector<std::string> y_vars;
  CnfFormula matrix;  // variables = x_vars ++ y_vars
};

// Simple undirected graph.
struct ColoringInstance {
  std::vector<std::string> vertices;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

struct PairList {
  std::vector<std::pair<CnfFormula, CnfFormula>> pairs;  // pairwise-disjoint variables
};

// A problem instance materializing one hardness gadget, together with the
// query, mapping, preference order and semantics it targets.
struct GeneratedInstance {
  ProblemInstance psi;
  Query query;
  Mapping mapping;
  PreferenceOrder order = PreferenceOrder::Any;
  Semantics semantics = Semantics::Brave;
};

// Satisfiability gadget: repairs are the truth assignments; T(s) holds in a
// repaired graph iff the formula evaluates to true.
GeneratedInstance gen_sat(const CnfFormula& phi);

// Each variable set to true costs one extra deletion, a falsified formula
// costs |vars|+1, so cardinality-minimal repairs are the minimal models.
GeneratedInstance gen_cardminsat(const CnfFormula& phi, std::size_t x1);

// Subset order: a repair either instantiates only the X variables (adding
// the NoExt flag) or represents a full model; the latter dominates the
// former on equal X parts.
GeneratedInstance gen_qbf2(const QbfInstance& q);

// Two-round coloring game: repairs pick leaf colors, the OPT query asks for
// the non-existence of a completion.
GeneratedInstance gen_coloring2(const ColoringInstance& g);

// List of formula pairs; F(phi_i) survives in the intersection of all
// repaired graphs iff phi_i is unsatisfiable.
GeneratedInstance gen_listpair_sat(const PairList& pl);

// Brute-force verifiers, independent of the gadget constructions.
bool oracle_sat(const CnfFormula& phi);
bool oracle_cardminsat(const CnfFormula& phi, std::size_t x1);
bool oracle_qbf2(const QbfInstance& q);
bool oracle_coloring2(const ColoringInstance& g);
bool oracle_listpair(const PairList& pl);

}  // namespace shaclcqa

#endif
