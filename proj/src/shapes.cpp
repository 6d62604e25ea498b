#include "shaclcqa/shapes.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>

#include "lexer.hpp"

namespace shaclcqa {

namespace {

ShapePtr mk(ShapeExpr e) { return std::make_shared<const ShapeExpr>(std::move(e)); }
PathPtr mkp(PathExpr e) { return std::make_shared<const PathExpr>(std::move(e)); }

constexpr std::uint64_t kMaxCount = 2147483647;  // 2^31 - 1

bool is_keyword(const std::string& s) {
  return s == "shape" || s == "target" || s == "top" || s == "const" ||
         s == "exists" || s == "forall" || s == "eqp";
}

}  // namespace

PathPtr path_prop(std::uint32_t p) {
  PathExpr e;
  e.kind = PathExpr::Kind::Prop;
  e.prop = p;
  return mkp(std::move(e));
}
PathPtr path_prop(std::string_view p) { return path_prop(intern(p)); }

PathPtr path_inverse(std::uint32_t p) {
  PathExpr e;
  e.kind = PathExpr::Kind::Inverse;
  e.prop = p;
  return mkp(std::move(e));
}
PathPtr path_inverse(std::string_view p) { return path_inverse(intern(p)); }

PathPtr path_seq(PathPtr a, PathPtr b) {
  PathExpr e;
  e.kind = PathExpr::Kind::Seq;
  e.left = std::move(a);
  e.right = std::move(b);
  return mkp(std::move(e));
}

PathPtr path_alt(PathPtr a, PathPtr b) {
  PathExpr e;
  e.kind = PathExpr::Kind::Alt;
  e.left = std::move(a);
  e.right = std::move(b);
  return mkp(std::move(e));
}

PathPtr path_star(PathPtr a) {
  PathExpr e;
  e.kind = PathExpr::Kind::Star;
  e.left = std::move(a);
  return mkp(std::move(e));
}

ShapePtr shape_top() {
  static const ShapePtr t = mk(ShapeExpr{});
  return t;
}

ShapePtr shape_ref(std::uint32_t s) {
  ShapeExpr e;
  e.kind = ShapeExpr::Kind::ShapeRef;
  e.sym = s;
  return mk(std::move(e));
}
ShapePtr shape_ref(std::string_view s) { return shape_ref(intern(s)); }

ShapePtr shape_class(std::uint32_t c) {
  ShapeExpr e;
  e.kind = ShapeExpr::Kind::ClassRef;
  e.sym = c;
  return mk(std::move(e));
}
ShapePtr shape_class(std::string_view c) { return shape_class(intern(c)); }

ShapePtr shape_const(Node c) {
  ShapeExpr e;
  e.kind = ShapeExpr::Kind::Const;
  e.constant = c;
  return mk(std::move(e));
}
ShapePtr shape_const(std::string_view c) { return shape_const(make_node(c)); }

ShapePtr shape_and(ShapePtr a, ShapePtr b) {
  ShapeExpr e;
  e.kind = ShapeExpr::Kind::And;
  e.left = std::move(a);
  e.right = std::move(b);
  return mk(std::move(e));
}

ShapePtr shape_or(ShapePtr a, ShapePtr b) {
  ShapeExpr e;
  e.kind = ShapeExpr::Kind::Or;
  e.left = std::move(a);
  e.right = std::move(b);
  return mk(std::move(e));
}

ShapePtr shape_not(ShapePtr a) {
  ShapeExpr e;
  e.kind = ShapeExpr::Kind::Not;
  e.left = std::move(a);
  return mk(std::move(e));
}

namespace {

ShapePtr quant(ShapeExpr::Kind kind, std::uint64_t n, PathPtr p, ShapePtr filler) {
  ShapeExpr e;
  e.kind = kind;
  e.count = n;
  e.path = std::move(p);
  e.left = filler ? std::move(filler) : shape_top();
  return mk(std::move(e));
}

}  // namespace

ShapePtr shape_atleast(std::uint64_t n, PathPtr e, ShapePtr filler) {
  if (n == 0) throw Error("counting argument of >= must be positive");
  return quant(ShapeExpr::Kind::AtLeast, n, std::move(e), std::move(filler));
}
ShapePtr shape_atmost(std::uint64_t n, PathPtr e, ShapePtr filler) {
  return quant(ShapeExpr::Kind::AtMost, n, std::move(e), std::move(filler));
}
ShapePtr shape_exactly(std::uint64_t n, PathPtr e, ShapePtr filler) {
  return quant(ShapeExpr::Kind::Exactly, n, std::move(e), std::move(filler));
}
ShapePtr shape_exists(PathPtr e, ShapePtr filler) {
  return quant(ShapeExpr::Kind::Exists, 1, std::move(e), std::move(filler));
}
ShapePtr shape_forall(PathPtr e, ShapePtr filler) {
  return quant(ShapeExpr::Kind::Forall, 1, std::move(e), std::move(filler));
}

ShapePtr shape_patheq(PathPtr e, PathPtr e2) {
  ShapeExpr x;
  x.kind = ShapeExpr::Kind::PathEq;
  x.path = std::move(e);
  x.path2 = std::move(e2);
  return mk(std::move(x));
}

std::string to_string(const ShapeAtom& sa) {
  return sym_name(sa.shape) + "(" + sa.node.name() + ")";
}

const Constraint* ShapesDoc::find(std::uint32_t name) const {
  for (const Constraint& c : constraints)
    if (c.name == name) return &c;
  return nullptr;
}

// ---------------------------------------------------------------------------
// Desugaring

ShapePtr desugar(const ShapePtr& e) {
  using K = ShapeExpr::Kind;
  switch (e->kind) {
    case K::Top:
    case K::ShapeRef:
    case K::ClassRef:
    case K::Const:
      return e;
    case K::And: {
      ShapePtr l = desugar(e->left), r = desugar(e->right);
      if (l == e->left && r == e->right) return e;
      return shape_and(std::move(l), std::move(r));
    }
    case K::Not: {
      ShapePtr l = desugar(e->left);
      if (l == e->left) return e;
      return shape_not(std::move(l));
    }
    case K::AtLeast: {
      ShapePtr l = desugar(e->left);
      if (l == e->left) return e;
      return shape_atleast(e->count, e->path, std::move(l));
    }
    case K::PathEq:
      return e;
    case K::Or:
      // a | b  ~>  !(!a & !b)
      return shape_not(shape_and(shape_not(desugar(e->left)), shape_not(desugar(e->right))));
    case K::Exists:
      return shape_atleast(1, e->path, desugar(e->left));
    case K::Forall:
      // forall E.f  ~>  !(exists E.!f)
      return shape_not(shape_atleast(1, e->path, shape_not(desugar(e->left))));
    case K::AtMost:
      // <=n E.f  ~>  !(>=n+1 E.f)
      return shape_not(shape_atleast(e->count + 1, e->path, desugar(e->left)));
    case K::Exactly:
      // =n E.f  ~>  <=n E.f & >=n E.f
      return shape_and(shape_not(shape_atleast(e->count + 1, e->path, desugar(e->left))),
                       shape_atleast(e->count, e->path, desugar(e->left)));
  }
  return e;
}

// ---------------------------------------------------------------------------
// Symbol collection

void collect_shape_refs(const ShapePtr& e, std::set<std::uint32_t>& out) {
  if (!e) return;
  if (e->kind == ShapeExpr::Kind::ShapeRef) out.insert(e->sym);
  collect_shape_refs(e->left, out);
  collect_shape_refs(e->right, out);
}

void collect_constants(const ShapePtr& e, std::set<std::uint32_t>& out) {
  if (!e) return;
  if (e->kind == ShapeExpr::Kind::Const) out.insert(e->constant.sym);
  collect_constants(e->left, out);
  collect_constants(e->right, out);
}

namespace {

void collect_path_props(const PathPtr& p, std::set<std::uint32_t>& out) {
  if (!p) return;
  if (p->kind == PathExpr::Kind::Prop || p->kind == PathExpr::Kind::Inverse)
    out.insert(p->prop);
  collect_path_props(p->left, out);
  collect_path_props(p->right, out);
}

void collect_classes(const ShapePtr& e, std::set<std::uint32_t>& out) {
  if (!e) return;
  if (e->kind == ShapeExpr::Kind::ClassRef) out.insert(e->sym);
  collect_classes(e->left, out);
  collect_classes(e->right, out);
}

void collect_props(const ShapePtr& e, std::set<std::uint32_t>& out) {
  if (!e) return;
  collect_path_props(e->path, out);
  collect_path_props(e->path2, out);
  collect_props(e->left, out);
  collect_props(e->right, out);
}

}  // namespace

// ---------------------------------------------------------------------------
// Dependency analysis

DependencyInfo dependency_info(const std::vector<Constraint>& constraints) {
  DependencyInfo info;
  for (const Constraint& c : constraints) {
    std::set<std::uint32_t> refs;
    collect_shape_refs(c.body, refs);
    info.edges[c.name] = std::move(refs);
  }

  // A name is cyclic iff it can reach itself through the edge relation.
  auto reaches = [&](std::uint32_t from, std::uint32_t to) {
    std::vector<std::uint32_t> stack{from};
    std::set<std::uint32_t> seen;
    while (!stack.empty()) {
      std::uint32_t at = stack.back();
      stack.pop_back();
      auto it = info.edges.find(at);
      if (it == info.edges.end()) continue;
      for (std::uint32_t next : it->second) {
        if (next == to) return true;
        if (seen.insert(next).second) stack.push_back(next);
      }
    }
    return false;
  };
  for (const Constraint& c : constraints)
    if (reaches(c.name, c.name)) info.cyclic_names.insert(c.name);
  info.recursive = !info.cyclic_names.empty();

  // Post-order over the acyclic names so dependencies come first.
  std::set<std::uint32_t> done;
  std::function<void(std::uint32_t)> visit = [&](std::uint32_t name) {
    if (done.count(name) || info.cyclic_names.count(name)) return;
    if (!info.edges.count(name)) return;  // undefined names are not ordered
    done.insert(name);
    for (std::uint32_t dep : info.edges[name])
      if (!done.count(dep)) visit(dep);
    info.topo_acyclic.push_back(name);
  };
  // Names sorted canonically for a deterministic order.
  std::vector<std::uint32_t> names;
  for (const Constraint& c : constraints) names.push_back(c.name);
  std::sort(names.begin(), names.end(),
            [](std::uint32_t a, std::uint32_t b) { return sym_name(a) < sym_name(b); });
  for (std::uint32_t n : names) visit(n);
  return info;
}

// ---------------------------------------------------------------------------
// Construction and well-formedness

ShapesDoc make_shapes_doc(std::vector<Constraint> constraints,
                          std::vector<ShapeAtom> targets) {
  ShapesDoc doc;
  std::sort(constraints.begin(), constraints.end(),
            [](const Constraint& a, const Constraint& b) {
              return sym_name(a.name) < sym_name(b.name);
            });
  for (std::size_t i = 0; i + 1 < constraints.size(); ++i)
    if (constraints[i].name == constraints[i + 1].name)
      throw DuplicateDefinitionError("shape '" + sym_name(constraints[i].name) +
                                     "' defined more than once");
  doc.constraints = std::move(constraints);

  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  for (const ShapeAtom& t : targets)
    if (!doc.find(t.shape))
      throw UndefinedShapeError("target references undefined shape '" +
                                sym_name(t.shape) + "'");
  doc.targets = std::move(targets);

  for (const Constraint& c : doc.constraints) {
    doc.symbols.note(c.name, SymKind::ShapeName);
    std::set<std::uint32_t> syms;
    collect_shape_refs(c.body, syms);
    for (std::uint32_t s : syms) {
      if (!doc.find(s))
        throw UndefinedShapeError("reference to undefined shape '" + sym_name(s) + "'");
      doc.symbols.note(s, SymKind::ShapeName);
    }
    syms.clear();
    collect_classes(c.body, syms);
    for (std::uint32_t s : syms) doc.symbols.note(s, SymKind::ClassName);
    syms.clear();
    collect_props(c.body, syms);
    for (std::uint32_t s : syms) doc.symbols.note(s, SymKind::PropName);
    syms.clear();
    collect_constants(c.body, syms);
    for (std::uint32_t s : syms) doc.symbols.note(s, SymKind::NodeName);
  }
  for (const ShapeAtom& t : doc.targets) doc.symbols.note(t.node.sym, SymKind::NodeName);
  return doc;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class ShapesParser {
 public:
  ShapesParser(std::string_view text) : lex_(text) {
    // Pre-scan for defined shape names so references resolve in one parse.
    for (std::size_t i = 0;; ++i) {
      const Token& t = lex_.peek(i);
      if (t.type == TokType::End) break;
      if (t.type == TokType::Ident && t.text == "shape" &&
          lex_.peek(i + 1).type == TokType::Ident &&
          lex_.peek(i + 2).type == TokType::Assign)
        defined_.insert(intern(lex_.peek(i + 1).text));
    }
  }

  ShapesDoc parse() {
    std::vector<Constraint> constraints;
    std::vector<ShapeAtom> targets;
    std::set<std::uint32_t> seen;
    while (lex_.peek().type != TokType::End) {
      Token kw = lex_.expect(TokType::Ident, "'shape' or 'target'");
      if (kw.text == "shape") {
        Token name = lex_.expect(TokType::Ident, "shape name");
        if (is_keyword(name.text))
          throw ParseError("'" + name.text + "' is reserved", name.line, name.col);
        std::uint32_t sym = intern(name.text);
        if (!seen.insert(sym).second)
          throw DuplicateDefinitionError("shape '" + name.text + "' defined more than once");
        lex_.expect(TokType::Assign, "':='");
        ShapePtr body = expr();
        lex_.expect(TokType::Dot, "'.'");
        constraints.push_back(Constraint{sym, std::move(body)});
      } else if (kw.text == "target") {
        Token name = lex_.expect(TokType::Ident, "shape name");
        lex_.expect(TokType::LParen, "'('");
        Token node = lex_.expect(TokType::Ident, "node name");
        lex_.expect(TokType::RParen, "')'");
        lex_.expect(TokType::Dot, "'.'");
        std::uint32_t sym = intern(name.text);
        if (!defined_.count(sym))
          throw UndefinedShapeError("target references undefined shape '" + name.text + "'");
        targets.push_back(ShapeAtom{sym, make_node(node.text)});
      } else {
        throw ParseError("expected 'shape' or 'target'", kw.line, kw.col);
      }
    }
    return make_shapes_doc(std::move(constraints), std::move(targets));
  }

 private:
  // expr := and ('|' and)* ; and := unary ('&' unary)* ; '!' binds tightest.
  ShapePtr expr() {
    ShapePtr e = conj();
    while (lex_.peek().type == TokType::Pipe) {
      lex_.next();
      e = shape_or(std::move(e), conj());
    }
    return e;
  }

  ShapePtr conj() {
    ShapePtr e = unary();
    while (lex_.peek().type == TokType::Amp) {
      lex_.next();
      e = shape_and(std::move(e), unary());
    }
    return e;
  }

  ShapePtr unary() {
    if (lex_.peek().type == TokType::Bang) {
      lex_.next();
      return shape_not(unary());
    }
    return primary();
  }

  bool starts_expr(const Token& t) const {
    switch (t.type) {
      case TokType::Ident:
        return t.text != "shape" && t.text != "target";
      case TokType::Bang:
      case TokType::LParen:
      case TokType::Geq:
      case TokType::Leq:
      case TokType::Eq:
        return true;
      default:
        return false;
    }
  }

  // Optional quantifier filler: a '.' followed by an expression. A '.' that
  // ends the statement is left for the caller.
  ShapePtr filler() {
    if (lex_.peek().type == TokType::Dot && starts_expr(lex_.peek(1))) {
      lex_.next();
      return expr();  // extends maximally right
    }
    return shape_top();
  }

  std::uint64_t count_arg(bool allow_zero) {
    Token n = lex_.expect(TokType::Number, "count");
    errno = 0;
    unsigned long long v = std::strtoull(n.text.c_str(), nullptr, 10);
    if (errno != 0 || v > kMaxCount)
      throw ParseError("count out of range", n.line, n.col);
    if (v == 0 && !allow_zero) throw ParseError("count must be positive", n.line, n.col);
    return v;
  }

  ShapePtr primary() {
    const Token& t = lex_.peek();
    switch (t.type) {
      case TokType::Geq: {
        lex_.next();
        std::uint64_t n = count_arg(false);
        PathPtr p = path();
        return shape_atleast(n, std::move(p), filler());
      }
      case TokType::Leq: {
        lex_.next();
        std::uint64_t n = count_arg(true);
        PathPtr p = path();
        return shape_atmost(n, std::move(p), filler());
      }
      case TokType::Eq: {
        lex_.next();
        std::uint64_t n = count_arg(false);
        PathPtr p = path();
        return shape_exactly(n, std::move(p), filler());
      }
      case TokType::LParen: {
        lex_.next();
        ShapePtr e = expr();
        lex_.expect(TokType::RParen, "')'");
        return e;
      }
      case TokType::Ident: {
        if (t.text == "top") {
          lex_.next();
          return shape_top();
        }
        if (t.text == "const") {
          lex_.next();
          lex_.expect(TokType::LParen, "'('");
          Token node = lex_.expect(TokType::Ident, "node name");
          lex_.expect(TokType::RParen, "')'");
          return shape_const(node.text);
        }
        if (t.text == "exists") {
          lex_.next();
          PathPtr p = path();
          return shape_exists(std::move(p), filler());
        }
        if (t.text == "forall") {
          lex_.next();
          PathPtr p = path();
          return shape_forall(std::move(p), filler());
        }
        if (t.text == "eqp") {
          lex_.next();
          lex_.expect(TokType::LParen, "'('");
          PathPtr p1 = path();
          lex_.expect(TokType::Comma, "','");
          PathPtr p2 = path();
          lex_.expect(TokType::RParen, "')'");
          return shape_patheq(std::move(p1), std::move(p2));
        }
        if (is_keyword(t.text)) lex_.fail("'" + t.text + "' is reserved");
        Token name = lex_.next();
        std::uint32_t sym = intern(name.text);
        if (defined_.count(sym)) return shape_ref(sym);
        return shape_class(sym);
      }
      default:
        lex_.fail("expected shape expression");
    }
  }

  // path := pseq ('|' pseq)* ; pseq := pstar ('/' pstar)* ; '*' postfix.
  PathPtr path() {
    PathPtr p = pseq();
    while (lex_.peek().type == TokType::Pipe) {
      lex_.next();
      p = path_alt(std::move(p), pseq());
    }
    return p;
  }

  PathPtr pseq() {
    PathPtr p = pstar();
    while (lex_.peek().type == TokType::Slash) {
      lex_.next();
      p = path_seq(std::move(p), pstar());
    }
    return p;
  }

  PathPtr pstar() {
    PathPtr p = patom();
    while (lex_.peek().type == TokType::Star) {
      lex_.next();
      p = path_star(std::move(p));
    }
    return p;
  }

  PathPtr patom() {
    const Token& t = lex_.peek();
    if (t.type == TokType::Caret) {
      lex_.next();
      Token p = lex_.expect(TokType::Ident, "property name");
      return path_inverse(p.text);
    }
    if (t.type == TokType::LParen) {
      lex_.next();
      PathPtr p = path();
      lex_.expect(TokType::RParen, "')'");
      return p;
    }
    if (t.type == TokType::Ident && !is_keyword(t.text)) {
      Token p = lex_.next();
      return path_prop(p.text);
    }
    lex_.fail("expected path expression");
  }

  Lexer lex_;
  std::set<std::uint32_t> defined_;
};

bool atomic_path(const PathExpr& p) {
  return p.kind == PathExpr::Kind::Prop || p.kind == PathExpr::Kind::Inverse;
}

bool atomic_shape(const ShapeExpr& e) {
  using K = ShapeExpr::Kind;
  return e.kind == K::Top || e.kind == K::ShapeRef || e.kind == K::ClassRef ||
         e.kind == K::Const || e.kind == K::PathEq;
}

std::string path_text(const PathExpr& p, bool parens);

std::string path_child(const PathPtr& p) { return path_text(*p, !atomic_path(*p)); }

std::string path_text(const PathExpr& p, bool parens) {
  std::string body;
  switch (p.kind) {
    case PathExpr::Kind::Prop: return sym_name(p.prop);
    case PathExpr::Kind::Inverse: return "^" + sym_name(p.prop);
    case PathExpr::Kind::Seq: body = path_child(p.left) + " / " + path_child(p.right); break;
    case PathExpr::Kind::Alt: body = path_child(p.left) + " | " + path_child(p.right); break;
    case PathExpr::Kind::Star: return path_child(p.left) + "*";
  }
  return parens ? "(" + body + ")" : body;
}

std::string shape_text(const ShapeExpr& e, bool parens);

std::string shape_child(const ShapePtr& e) { return shape_text(*e, !atomic_shape(*e)); }

std::string quant_text(const std::string& head, const ShapeExpr& e) {
  std::string out = head + " " + path_child(e.path);
  if (e.left->kind != ShapeExpr::Kind::Top) out += " . " + shape_child(e.left);
  return out;
}

std::string shape_text(const ShapeExpr& e, bool parens) {
  using K = ShapeExpr::Kind;
  std::string body;
  switch (e.kind) {
    case K::Top: return "top";
    case K::ShapeRef:
    case K::ClassRef: return sym_name(e.sym);
    case K::Const: return "const(" + e.constant.name() + ")";
    case K::And: body = shape_child(e.left) + " & " + shape_child(e.right); break;
    case K::Or: body = shape_child(e.left) + " | " + shape_child(e.right); break;
    case K::Not: return "!" + shape_child(e.left);
    case K::AtLeast: body = quant_text(">= " + std::to_string(e.count), e); break;
    case K::AtMost: body = quant_text("<= " + std::to_string(e.count), e); break;
    case K::Exactly: body = quant_text("= " + std::to_string(e.count), e); break;
    case K::Exists: body = quant_text("exists", e); break;
    case K::Forall: body = quant_text("forall", e); break;
    case K::PathEq:
      return "eqp(" + path_text(*e.path, false) + ", " + path_text(*e.path2, false) + ")";
  }
  return parens ? "(" + body + ")" : body;
}

}  // namespace

ShapesDoc parse_shapes_doc(std::string_view text) {
  return ShapesParser(text).parse();
}

std::string to_string(const ShapeExpr& e) { return shape_text(e, false); }
std::string to_string(const PathExpr& e) { return path_text(e, false); }

std::string serialize_shapes_doc(const ShapesDoc& doc) {
  std::string out;
  for (const Constraint& c : doc.constraints)
    out += "shape " + sym_name(c.name) + " := " + to_string(*c.body) + " .\n";
  for (const ShapeAtom& t : doc.targets)
    out += "target " + to_string(t) + " .\n";
  return out;
}

}  // namespace shaclcqa
