#include "shaclcqa/graph.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <sstream>
#include <unordered_map>

#include "lexer.hpp"

namespace shaclcqa {

namespace {

// Names live in a deque so references stay valid while the table grows.
struct SymbolTable {
  std::mutex mu;
  std::unordered_map<std::string, std::uint32_t> ids;
  std::deque<std::string> names;
};

SymbolTable& table() {
  static SymbolTable t;
  return t;
}

}  // namespace

std::uint32_t intern(std::string_view name) {
  SymbolTable& t = table();
  std::lock_guard<std::mutex> lock(t.mu);
  auto it = t.ids.find(std::string(name));
  if (it != t.ids.end()) return it->second;
  std::uint32_t id = static_cast<std::uint32_t>(t.names.size());
  t.names.emplace_back(name);
  t.ids.emplace(t.names.back(), id);
  return id;
}

const std::string& sym_name(std::uint32_t sym) {
  SymbolTable& t = table();
  std::lock_guard<std::mutex> lock(t.mu);
  return t.names.at(sym);
}

Node make_node(std::string_view name) { return Node(intern(name)); }

Atom Atom::cls(std::string_view c, std::string_view n) {
  return cls(intern(c), make_node(n));
}

Atom Atom::cls(std::uint32_t c, Node n) {
  Atom a;
  a.kind = AtomKind::Class;
  a.pred = c;
  a.a = n;
  return a;
}

Atom Atom::prop(std::string_view p, std::string_view s, std::string_view o) {
  return prop(intern(p), make_node(s), make_node(o));
}

Atom Atom::prop(std::uint32_t p, Node s, Node o) {
  Atom a;
  a.kind = AtomKind::Prop;
  a.pred = p;
  a.a = s;
  a.b = o;
  return a;
}

std::string to_string(const Atom& atom) {
  std::string out = sym_name(atom.pred);
  out += '(';
  out += atom.a.name();
  if (atom.kind == AtomKind::Prop) {
    out += ',';
    out += atom.b.name();
  }
  out += ')';
  return out;
}

bool Atom::operator<(const Atom& o) const {
  return to_string(*this) < to_string(o);
}

void SymbolUse::note(std::uint32_t sym, SymKind kind) {
  auto [it, inserted] = kinds_.emplace(sym, kind);
  if (!inserted && it->second != kind) {
    static const char* role[] = {"node", "class", "property", "shape", "variable"};
    throw NamespaceError("identifier '" + sym_name(sym) + "' used both as " +
                         role[static_cast<int>(it->second)] + " and as " +
                         role[static_cast<int>(kind)]);
  }
}

void SymbolUse::merge(const SymbolUse& other) {
  for (const auto& [sym, kind] : other.kinds_) note(sym, kind);
}

DataGraph::DataGraph(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  std::sort(atoms_.begin(), atoms_.end());
  atoms_.erase(std::unique(atoms_.begin(), atoms_.end()), atoms_.end());
}

bool DataGraph::contains(const Atom& atom) const {
  return std::binary_search(atoms_.begin(), atoms_.end(), atom);
}

bool DataGraph::operator<(const DataGraph& o) const {
  return std::lexicographical_compare(atoms_.begin(), atoms_.end(),
                                      o.atoms_.begin(), o.atoms_.end());
}

DataGraph graph_union(const DataGraph& x, const DataGraph& y) {
  std::vector<Atom> out;
  out.reserve(x.size() + y.size());
  std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  return DataGraph(std::move(out));
}

DataGraph graph_minus(const DataGraph& x, const DataGraph& y) {
  std::vector<Atom> out;
  std::set_difference(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  return DataGraph(std::move(out));
}

DataGraph graph_intersect(const DataGraph& x, const DataGraph& y) {
  std::vector<Atom> out;
  std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  return DataGraph(std::move(out));
}

bool graph_subset(const DataGraph& x, const DataGraph& y) {
  return std::includes(y.begin(), y.end(), x.begin(), x.end());
}

std::vector<Node> nodes_of(const DataGraph& g) {
  std::vector<Node> out;
  for (const Atom& atom : g) {
    out.push_back(atom.a);
    if (atom.kind == AtomKind::Prop) out.push_back(atom.b);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

DataGraph parse_data_graph(std::string_view text, SymbolUse* use) {
  Lexer lex(text);
  std::vector<Atom> atoms;
  SymbolUse local;
  while (lex.peek().type != TokType::End) {
    Token pred = lex.expect(TokType::Ident, "predicate name");
    lex.expect(TokType::LParen, "'('");
    Token n1 = lex.expect(TokType::Ident, "node name");
    Atom atom;
    if (lex.peek().type == TokType::Comma) {
      lex.next();
      Token n2 = lex.expect(TokType::Ident, "node name");
      atom = Atom::prop(pred.text, n1.text, n2.text);
      local.note(atom.pred, SymKind::PropName);
      local.note(atom.b.sym, SymKind::NodeName);
    } else {
      atom = Atom::cls(pred.text, n1.text);
      local.note(atom.pred, SymKind::ClassName);
    }
    local.note(atom.a.sym, SymKind::NodeName);
    lex.expect(TokType::RParen, "')'");
    lex.expect(TokType::Dot, "'.'");
    atoms.push_back(atom);
  }
  if (use) use->merge(local);
  return DataGraph(std::move(atoms));
}

std::string serialize_data_graph(const DataGraph& g) {
  std::string out;
  for (const Atom& atom : g) {
    out += to_string(atom);
    out += ".\n";
  }
  return out;
}

}  // namespace shaclcqa
