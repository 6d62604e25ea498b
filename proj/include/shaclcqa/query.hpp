#ifndef SHACLCQA_QUERY_HPP
#define SHACLCQA_QUERY_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "shaclcqa/graph.hpp"

namespace shaclcqa {

// A partial function from variables to nodes. Bindings are kept sorted by
// variable name; equality is domain plus values.
class Mapping {
 public:
  Mapping() = default;
  explicit Mapping(std::vector<std::pair<std::uint32_t, Node>> bindings);

  const std::vector<std::pair<std::uint32_t, Node>>& bindings() const { return b_; }
  std::optional<Node> get(std::uint32_t var) const;
  bool bound(std::uint32_t var) const { return get(var).has_value(); }
  std::size_t size() const { return b_.size(); }
  bool empty() const { return b_.empty(); }

  Mapping with(std::uint32_t var, Node value) const;
  Mapping restricted_to(const std::set<std::uint32_t>& vars) const;
  // True when the other mapping agrees on every shared variable.
  bool compatible(const Mapping& o) const;
  // Union of two compatible mappings.
  Mapping merged(const Mapping& o) const;
  // True when this mapping extends o (o ⊆ this).
  bool extends(const Mapping& o) const;

  bool operator==(const Mapping& o) const { return b_ == o.b_; }
  bool operator!=(const Mapping& o) const { return b_ != o.b_; }
  bool operator<(const Mapping& o) const;

 private:
  std::vector<std::pair<std::uint32_t, Node>> b_;
};

bool compatible(const Mapping& m1, const Mapping& m2);
std::string to_string(const Mapping& m);
// CLI literal: space-separated `?var=node`; `-` is the empty mapping.
Mapping parse_mapping(std::string_view text, SymbolUse* use = nullptr);

struct Term {
  bool is_var = false;
  std::uint32_t sym = 0;  // variable name or node name

  static Term var(std::string_view v) { return Term{true, intern(v)}; }
  static Term node(std::string_view n) { return Term{false, intern(n)}; }
  bool operator==(const Term& o) const = default;
};

struct QueryAtom {
  bool binary = false;
  std::uint32_t pred = 0;
  Term t1, t2;
};

struct Pattern;
using PatternPtr = std::shared_ptr<const Pattern>;

// Pattern tree. And nodes may appear in freshly parsed queries; OPT-normal
// form (no Opt under a conjunction) removes them.
struct Pattern {
  enum class Kind { Bgp, Opt, And };
  Kind kind = Kind::Bgp;
  std::vector<QueryAtom> atoms;  // Bgp
  PatternPtr left, right;
};

PatternPtr pattern_bgp(std::vector<QueryAtom> atoms);
PatternPtr pattern_opt(PatternPtr left, PatternPtr right);
PatternPtr pattern_and(PatternPtr left, PatternPtr right);

struct Query {
  PatternPtr pattern;
  std::optional<std::vector<std::uint32_t>> projection;  // sorted by name
};

Query parse_query(std::string_view text, SymbolUse* use = nullptr);
std::string serialize_query(const Query& q);

std::set<std::uint32_t> pattern_vars(const PatternPtr& p);

bool is_well_designed(const Query& q);

// Exhaustively applies P ∧ (Q OPT R) ≡ (P ∧ Q) OPT R; requires a
// well-designed query.
Query to_opt_normal_form(const Query& q);

// Set-semantics evaluation; the result is sorted and duplicate-free.
std::vector<Mapping> eval_query(const Query& q, const DataGraph& g);

bool is_answer(const Mapping& mu, const Query& q, const DataGraph& g);

// Answer check through the normal-form pattern tree: true iff some extension
// of mu over vars(P) \ X answers P and cannot be extended to an answer of
// any P ∧ Pi. Requires the left-spine normal form with
// vars(P) ∩ X = dom(mu) and each Pi containing a variable from X \ vars(P).
bool is_answer_via_pattern_tree(const Mapping& mu, const Query& q, const DataGraph& g);

}  // namespace shaclcqa

#endif
