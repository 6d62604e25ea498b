#include "shaclcqa/query.hpp"

#include <algorithm>
#include <functional>

#include "lexer.hpp"

namespace shaclcqa {

namespace {

bool var_name_less(std::uint32_t a, std::uint32_t b) {
  return sym_name(a) < sym_name(b);
}

}  // namespace

Mapping::Mapping(std::vector<std::pair<std::uint32_t, Node>> bindings)
    : b_(std::move(bindings)) {
  std::sort(b_.begin(), b_.end(), [](const auto& x, const auto& y) {
    return var_name_less(x.first, y.first);
  });
  for (std::size_t i = 0; i + 1 < b_.size(); ++i)
    if (b_[i].first == b_[i + 1].first)
      throw Error("variable '?" + sym_name(b_[i].first) + "' bound twice");
}

std::optional<Node> Mapping::get(std::uint32_t var) const {
  for (const auto& [v, n] : b_)
    if (v == var) return n;
  return std::nullopt;
}

Mapping Mapping::with(std::uint32_t var, Node value) const {
  std::vector<std::pair<std::uint32_t, Node>> out = b_;
  out.emplace_back(var, value);
  return Mapping(std::move(out));
}

Mapping Mapping::restricted_to(const std::set<std::uint32_t>& vars) const {
  std::vector<std::pair<std::uint32_t, Node>> out;
  for (const auto& bv : b_)
    if (vars.count(bv.first)) out.push_back(bv);
  return Mapping(std::move(out));
}

bool Mapping::compatible(const Mapping& o) const {
  for (const auto& [v, n] : b_) {
    auto other = o.get(v);
    if (other && *other != n) return false;
  }
  return true;
}

Mapping Mapping::merged(const Mapping& o) const {
  std::vector<std::pair<std::uint32_t, Node>> out = b_;
  for (const auto& bv : o.b_)
    if (!get(bv.first)) out.push_back(bv);
  return Mapping(std::move(out));
}

bool Mapping::extends(const Mapping& o) const {
  for (const auto& [v, n] : o.b_) {
    auto mine = get(v);
    if (!mine || *mine != n) return false;
  }
  return true;
}

bool Mapping::operator<(const Mapping& o) const {
  auto key = [](const std::pair<std::uint32_t, Node>& bv) {
    return std::make_pair(sym_name(bv.first), bv.second.name());
  };
  return std::lexicographical_compare(
      b_.begin(), b_.end(), o.b_.begin(), o.b_.end(),
      [&](const auto& x, const auto& y) { return key(x) < key(y); });
}

bool compatible(const Mapping& m1, const Mapping& m2) { return m1.compatible(m2); }

std::string to_string(const Mapping& m) {
  if (m.empty()) return "-";
  std::string out;
  for (const auto& [v, n] : m.bindings()) {
    if (!out.empty()) out += ' ';
    out += "?" + sym_name(v) + "=" + n.name();
  }
  return out;
}

Mapping parse_mapping(std::string_view text, SymbolUse* use) {
  std::size_t b = text.find_first_not_of(" \t\r\n");
  std::size_t e = text.find_last_not_of(" \t\r\n");
  std::string_view trimmed =
      b == std::string_view::npos ? std::string_view() : text.substr(b, e - b + 1);
  if (trimmed.empty() || trimmed == "-") return Mapping{};
  Lexer lex(trimmed);
  std::vector<std::pair<std::uint32_t, Node>> bindings;
  SymbolUse local;
  while (lex.peek().type != TokType::End) {
    Token var = lex.expect(TokType::Var, "'?var=node'");
    lex.expect(TokType::Eq, "'='");
    Token node = lex.expect(TokType::Ident, "node name");
    bindings.emplace_back(intern(var.text), make_node(node.text));
    local.note(intern(var.text), SymKind::VarName);
    local.note(intern(node.text), SymKind::NodeName);
  }
  if (use) use->merge(local);
  return Mapping(std::move(bindings));
}

PatternPtr pattern_bgp(std::vector<QueryAtom> atoms) {
  Pattern p;
  p.kind = Pattern::Kind::Bgp;
  p.atoms = std::move(atoms);
  return std::make_shared<const Pattern>(std::move(p));
}

PatternPtr pattern_opt(PatternPtr left, PatternPtr right) {
  Pattern p;
  p.kind = Pattern::Kind::Opt;
  p.left = std::move(left);
  p.right = std::move(right);
  return std::make_shared<const Pattern>(std::move(p));
}

PatternPtr pattern_and(PatternPtr left, PatternPtr right) {
  Pattern p;
  p.kind = Pattern::Kind::And;
  p.left = std::move(left);
  p.right = std::move(right);
  return std::make_shared<const Pattern>(std::move(p));
}

std::set<std::uint32_t> pattern_vars(const PatternPtr& p) {
  std::set<std::uint32_t> out;
  std::function<void(const PatternPtr&)> walk = [&](const PatternPtr& at) {
    if (!at) return;
    for (const QueryAtom& a : at->atoms) {
      if (a.t1.is_var) out.insert(a.t1.sym);
      if (a.binary && a.t2.is_var) out.insert(a.t2.sym);
    }
    walk(at->left);
    walk(at->right);
  };
  walk(p);
  return out;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class QueryParser {
 public:
  QueryParser(std::string_view text) : lex_(text) {}

  Query parse(SymbolUse* use) {
    Query q;
    if (lex_.peek().type == TokType::Ident && lex_.peek().text == "SELECT") {
      lex_.next();
      std::vector<std::uint32_t> proj;
      while (lex_.peek().type == TokType::Var) {
        Token v = lex_.next();
        proj.push_back(intern(v.text));
        use_.note(intern(v.text), SymKind::VarName);
      }
      std::sort(proj.begin(), proj.end(), var_name_less);
      proj.erase(std::unique(proj.begin(), proj.end()), proj.end());
      q.projection = std::move(proj);
    }
    q.pattern = pattern();
    if (lex_.peek().type != TokType::End) lex_.fail("trailing input after query");
    if (use) use->merge(use_);
    return q;
  }

 private:
  PatternPtr pattern() {
    PatternPtr p = group();
    while (lex_.peek().type == TokType::Ident && lex_.peek().text == "OPT") {
      lex_.next();
      p = pattern_opt(std::move(p), group());
    }
    return p;
  }

  PatternPtr group() {
    lex_.expect(TokType::LBrace, "'{'");
    std::vector<QueryAtom> atoms;
    PatternPtr acc;
    auto flush_atoms = [&]() {
      if (acc && atoms.empty()) return;
      PatternPtr bgp = pattern_bgp(std::move(atoms));
      atoms.clear();
      acc = acc ? pattern_and(std::move(acc), std::move(bgp)) : std::move(bgp);
    };
    bool first = true;
    while (lex_.peek().type != TokType::RBrace) {
      if (!first) lex_.expect(TokType::Comma, "','");
      first = false;
      if (lex_.peek().type == TokType::LBrace) {
        PatternPtr sub = pattern();
        if (!atoms.empty()) flush_atoms();
        acc = acc ? pattern_and(std::move(acc), std::move(sub)) : std::move(sub);
      } else {
        atoms.push_back(atom());
      }
    }
    lex_.expect(TokType::RBrace, "'}'");
    if (!acc || !atoms.empty()) flush_atoms();
    return acc;
  }

  Term term() {
    const Token& t = lex_.peek();
    if (t.type == TokType::Var) {
      Token v = lex_.next();
      use_.note(intern(v.text), SymKind::VarName);
      return Term::var(v.text);
    }
    Token n = lex_.expect(TokType::Ident, "term");
    use_.note(intern(n.text), SymKind::NodeName);
    return Term::node(n.text);
  }

  QueryAtom atom() {
    Token pred = lex_.expect(TokType::Ident, "predicate name");
    lex_.expect(TokType::LParen, "'('");
    QueryAtom a;
    a.pred = intern(pred.text);
    a.t1 = term();
    if (lex_.peek().type == TokType::Comma) {
      lex_.next();
      a.binary = true;
      a.t2 = term();
      use_.note(a.pred, SymKind::PropName);
    } else {
      use_.note(a.pred, SymKind::ClassName);
    }
    lex_.expect(TokType::RParen, "')'");
    return a;
  }

  Lexer lex_;
  SymbolUse use_;
};

std::string term_text(const Term& t) {
  return t.is_var ? "?" + sym_name(t.sym) : sym_name(t.sym);
}

std::string atom_text(const QueryAtom& a) {
  std::string out = sym_name(a.pred) + "(" + term_text(a.t1);
  if (a.binary) out += ", " + term_text(a.t2);
  return out + ")";
}

std::string pattern_text(const PatternPtr& p) {
  switch (p->kind) {
    case Pattern::Kind::Bgp: {
      std::string out = "{";
      for (std::size_t i = 0; i < p->atoms.size(); ++i) {
        out += i ? ", " : " ";
        out += atom_text(p->atoms[i]);
      }
      out += p->atoms.empty() ? "}" : " }";
      return out;
    }
    case Pattern::Kind::Opt:
      return "{ " + pattern_text(p->left) + " OPT " + pattern_text(p->right) + " }";
    case Pattern::Kind::And:
      return "{ " + pattern_text(p->left) + ", " + pattern_text(p->right) + " }";
  }
  return "{}";
}

}  // namespace

Query parse_query(std::string_view text, SymbolUse* use) {
  return QueryParser(text).parse(use);
}

std::string serialize_query(const Query& q) {
  std::string out;
  if (q.projection) {
    out = "SELECT";
    for (std::uint32_t v : *q.projection) out += " ?" + sym_name(v);
    out += " ";
  }
  return out + pattern_text(q.pattern);
}

// ---------------------------------------------------------------------------
// Well-designedness and OPT-normal form

namespace {

// Checks every OPT occurrence against the variables occurring strictly
// outside it.
bool wd_walk(const PatternPtr& p, std::set<std::uint32_t> outside) {
  if (!p || p->kind == Pattern::Kind::Bgp) return true;
  std::set<std::uint32_t> lvars = pattern_vars(p->left);
  std::set<std::uint32_t> rvars = pattern_vars(p->right);
  if (p->kind == Pattern::Kind::Opt) {
    for (std::uint32_t x : rvars)
      if (outside.count(x) && !lvars.count(x)) return false;
  }
  std::set<std::uint32_t> left_outside = outside;
  left_outside.insert(rvars.begin(), rvars.end());
  std::set<std::uint32_t> right_outside = outside;
  right_outside.insert(lvars.begin(), lvars.end());
  return wd_walk(p->left, std::move(left_outside)) &&
         wd_walk(p->right, std::move(right_outside));
}

}  // namespace

bool is_well_designed(const Query& q) { return wd_walk(q.pattern, {}); }

namespace {

PatternPtr normalize(const PatternPtr& p);

// Conjunction of two normalized patterns, pulling OPT outward:
// P ∧ (Q OPT R) ≡ (P ∧ Q) OPT R.
PatternPtr conjoin(const PatternPtr& l, const PatternPtr& r) {
  if (r->kind == Pattern::Kind::Opt)
    return pattern_opt(conjoin(l, r->left), r->right);
  if (l->kind == Pattern::Kind::Opt)
    return pattern_opt(conjoin(l->left, r), l->right);
  std::vector<QueryAtom> atoms = l->atoms;
  atoms.insert(atoms.end(), r->atoms.begin(), r->atoms.end());
  return pattern_bgp(std::move(atoms));
}

PatternPtr normalize(const PatternPtr& p) {
  switch (p->kind) {
    case Pattern::Kind::Bgp:
      return p;
    case Pattern::Kind::Opt: {
      PatternPtr l = normalize(p->left), r = normalize(p->right);
      if (l == p->left && r == p->right) return p;
      return pattern_opt(std::move(l), std::move(r));
    }
    case Pattern::Kind::And:
      return conjoin(normalize(p->left), normalize(p->right));
  }
  return p;
}

}  // namespace

Query to_opt_normal_form(const Query& q) {
  if (!is_well_designed(q))
    throw NotWellDesignedError("OPT-normal form requires a well-designed query");
  Query out = q;
  out.pattern = normalize(q.pattern);
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

std::vector<Mapping> dedup(std::vector<Mapping> ms) {
  std::sort(ms.begin(), ms.end());
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
  return ms;
}

std::vector<Mapping> eval_bgp(const std::vector<QueryAtom>& atoms, const DataGraph& g) {
  std::vector<Mapping> frontier{Mapping{}};
  for (const QueryAtom& a : atoms) {
    std::vector<Mapping> next;
    for (const Mapping& mu : frontier) {
      for (const Atom& fact : g) {
        if (fact.pred != a.pred) continue;
        if ((fact.kind == AtomKind::Prop) != a.binary) continue;
        Mapping cand = mu;
        bool ok = true;
        auto match = [&](const Term& t, Node value) {
          if (!ok) return;
          if (t.is_var) {
            auto bound = cand.get(t.sym);
            if (!bound)
              cand = cand.with(t.sym, value);
            else if (*bound != value)
              ok = false;
          } else if (Node(t.sym) != value) {
            ok = false;
          }
        };
        match(a.t1, fact.a);
        if (a.binary) match(a.t2, fact.b);
        if (ok) next.push_back(std::move(cand));
      }
    }
    frontier = std::move(next);
    if (frontier.empty()) break;
  }
  return dedup(std::move(frontier));
}

std::vector<Mapping> eval_pattern(const PatternPtr& p, const DataGraph& g) {
  switch (p->kind) {
    case Pattern::Kind::Bgp:
      return eval_bgp(p->atoms, g);
    case Pattern::Kind::And: {
      std::vector<Mapping> l = eval_pattern(p->left, g);
      std::vector<Mapping> r = eval_pattern(p->right, g);
      std::vector<Mapping> out;
      for (const Mapping& m1 : l)
        for (const Mapping& m2 : r)
          if (m1.compatible(m2)) out.push_back(m1.merged(m2));
      return dedup(std::move(out));
    }
    case Pattern::Kind::Opt: {
      std::vector<Mapping> l = eval_pattern(p->left, g);
      std::vector<Mapping> r = eval_pattern(p->right, g);
      std::vector<Mapping> out;
      for (const Mapping& m1 : l) {
        bool joined = false;
        for (const Mapping& m2 : r) {
          if (m1.compatible(m2)) {
            out.push_back(m1.merged(m2));
            joined = true;
          }
        }
        if (!joined) out.push_back(m1);
      }
      return dedup(std::move(out));
    }
  }
  return {};
}

}  // namespace

std::vector<Mapping> eval_query(const Query& q, const DataGraph& g) {
  std::vector<Mapping> full = eval_pattern(q.pattern, g);
  if (!q.projection) return full;
  std::set<std::uint32_t> proj(q.projection->begin(), q.projection->end());
  std::vector<Mapping> out;
  out.reserve(full.size());
  for (const Mapping& mu : full) out.push_back(mu.restricted_to(proj));
  return dedup(std::move(out));
}

bool is_answer(const Mapping& mu, const Query& q, const DataGraph& g) {
  std::vector<Mapping> all = eval_query(q, g);
  return std::binary_search(all.begin(), all.end(), mu);
}

bool is_answer_via_pattern_tree(const Mapping& mu, const Query& q, const DataGraph& g) {
  // Left spine ((...(P OPT P1)...) OPT Pk) with BGP components.
  std::vector<PatternPtr> spine;
  PatternPtr at = q.pattern;
  while (at->kind == Pattern::Kind::Opt) {
    if (at->right->kind != Pattern::Kind::Bgp)
      throw ShapeMismatchError("query is not in left-spine OPT-normal form");
    spine.push_back(at->right);
    at = at->left;
  }
  if (at->kind != Pattern::Kind::Bgp)
    throw ShapeMismatchError("query is not in left-spine OPT-normal form");
  std::reverse(spine.begin(), spine.end());
  const PatternPtr root = at;

  std::set<std::uint32_t> root_vars = pattern_vars(root);
  std::set<std::uint32_t> x;
  if (q.projection)
    x.insert(q.projection->begin(), q.projection->end());
  else
    x = pattern_vars(q.pattern);

  std::set<std::uint32_t> root_free;
  for (std::uint32_t v : root_vars)
    if (x.count(v)) root_free.insert(v);
  std::set<std::uint32_t> dom;
  for (const auto& [v, n] : mu.bindings()) dom.insert(v);
  if (root_free != dom)
    throw ShapeMismatchError("vars(P) ∩ X must equal dom(μ)");
  for (const PatternPtr& pi : spine) {
    bool has_fresh_projected = false;
    for (std::uint32_t v : pattern_vars(pi))
      if (x.count(v) && !root_vars.count(v)) has_fresh_projected = true;
    if (!has_fresh_projected)
      throw ShapeMismatchError(
          "every OPT part must contain a projected variable outside vars(P)");
  }

  std::vector<Mapping> root_answers = eval_bgp(root->atoms, g);
  for (const Mapping& nu : root_answers) {
    if (nu.restricted_to(x) != mu) continue;
    bool blocked = false;
    for (const PatternPtr& pi : spine) {
      std::vector<QueryAtom> conj = root->atoms;
      conj.insert(conj.end(), pi->atoms.begin(), pi->atoms.end());
      for (const Mapping& rho : eval_bgp(conj, g)) {
        if (rho.extends(nu)) {
          blocked = true;
          break;
        }
      }
      if (blocked) break;
    }
    if (!blocked) return true;
  }
  return false;
}

}  // namespace shaclcqa
