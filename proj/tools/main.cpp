// Command-line frontend: validation, repair listing, CQA decisions, and
// gadget-instance generation.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "shaclcqa/cqa.hpp"
#include "shaclcqa/reductions.hpp"

namespace fs = std::filesystem;
using namespace shaclcqa;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << content;
}

PreferenceOrder parse_order(const std::string& s) {
  if (s == "any") return PreferenceOrder::Any;
  if (s == "subset") return PreferenceOrder::Subset;
  if (s == "card") return PreferenceOrder::Card;
  throw Error("unknown order '" + s + "' (any|subset|card)");
}

Semantics parse_semantics(const std::string& s) {
  if (s == "brave") return Semantics::Brave;
  if (s == "ar") return Semantics::AR;
  if (s == "iar") return Semantics::IAR;
  throw Error("unknown semantics '" + s + "' (brave|ar|iar)");
}

std::size_t default_budget() {
  if (const char* env = std::getenv("SHACL_CQA_BUDGET")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end && *end == '\0' && v >= 1) return v;
  }
  return kDefaultBudget;
}

struct LoadedInstance {
  ProblemInstance psi;
  SymbolUse symbols;
};

LoadedInstance load_instance(const std::string& graph_file, const std::string& shapes_file,
                             const std::string& hyps_file, const std::string& hints_file) {
  SymbolUse use;
  DataGraph g = parse_data_graph(read_file(graph_file), &use);
  ShapesDoc doc = parse_shapes_doc(read_file(shapes_file));
  use.merge(doc.symbols);
  DataGraph h;
  if (!hyps_file.empty()) h = parse_data_graph(read_file(hyps_file), &use);
  std::optional<MutabilityHints> hints;
  if (!hints_file.empty()) hints = parse_hints(read_file(hints_file));
  return LoadedInstance{make_problem_instance(std::move(g), std::move(doc), std::move(h),
                                              std::move(hints)),
                        std::move(use)};
}

void print_warnings(const ProblemInstance& psi) {
  for (const std::string& w : instance_warnings(psi.graph, psi.doc))
    std::cerr << "warning: " << w << "\n";
}

int cmd_validate(const std::string& graph_file, const std::string& shapes_file) {
  SymbolUse use;
  DataGraph g = parse_data_graph(read_file(graph_file), &use);
  ShapesDoc doc = parse_shapes_doc(read_file(shapes_file));
  use.merge(doc.symbols);
  for (const std::string& w : instance_warnings(g, doc)) std::cerr << "warning: " << w << "\n";
  std::optional<Assignment> witness = find_validating_assignment(g, doc);
  if (!witness) {
    std::cout << "INVALID\n";
    return 1;
  }
  std::cout << "VALID\n";
  for (const ShapeAtom& sa : witness->labels) std::cout << to_string(sa) << "\n";
  return 0;
}

int cmd_repairs(const std::string& graph_file, const std::string& shapes_file,
                const std::string& hyps_file, const std::string& hints_file,
                const std::string& order_name, bool max_mode, std::size_t budget,
                bool verbose) {
  LoadedInstance li =
      load_instance(graph_file, shapes_file, hyps_file, hints_file);
  print_warnings(li.psi);
  PreferenceOrder order = parse_order(order_name);
  if (max_mode) {
    MaxRepairsResult info = max_repairs_info(li.psi, budget);
    std::vector<Repair> reps;
    for (const MaxRepairInfo& mri : info.repairs) reps.push_back(mri.repair);
    reps = filter_preferred(std::move(reps), order);
    std::cout << "max-target-cardinality " << info.max_cardinality << "\n";
    for (const Repair& r : reps) {
      std::cout << to_string(r);
      if (verbose) {
        for (const MaxRepairInfo& mri : info.repairs)
          if (mri.repair == r) {
            std::cout << "  targets:";
            for (const ShapeAtom& t : mri.witness_targets)
              std::cout << " " << to_string(t);
            break;
          }
      }
      std::cout << "\n";
    }
    return reps.empty() ? 1 : 0;
  }
  std::vector<Repair> reps = preferred_repairs(li.psi, order, budget);
  for (const Repair& r : reps) std::cout << to_string(r) << "\n";
  return reps.empty() ? 1 : 0;
}

int cmd_cqa(const std::string& graph_file, const std::string& shapes_file,
            const std::string& hyps_file, const std::string& query_file,
            const std::string& mapping_text, const std::string& hints_file,
            const std::string& order_name, const std::string& semantics_name,
            bool max_mode, std::size_t budget) {
  LoadedInstance li = load_instance(graph_file, shapes_file, hyps_file, hints_file);
  print_warnings(li.psi);
  CqaRequest req;
  req.query = parse_query(read_file(query_file), &li.symbols);
  req.mapping = parse_mapping(mapping_text, &li.symbols);
  req.order = parse_order(order_name);
  req.semantics = parse_semantics(semantics_name);
  req.max_mode = max_mode;
  CqaOutcome outcome =
      max_mode ? answer_mcqa(li.psi, req, budget) : answer_cqa(li.psi, req, budget);
  std::string diag = "repairs=" + std::to_string(outcome.repair_count);
  if (outcome.intersection_size)
    diag += " intersection=" + std::to_string(*outcome.intersection_size);
  if (outcome.max_target_card)
    diag += " max-targets=" + std::to_string(*outcome.max_target_card);
  switch (outcome.verdict) {
    case Verdict::Yes:
      std::cout << "YES (" << diag << ")\n";
      return 0;
    case Verdict::No:
      std::cout << "NO (" << diag << ")\n";
      return 1;
    case Verdict::NoRepair:
      std::cout << "NO-REPAIR (" << diag << ")\n";
      return 3;
  }
  return 2;
}

// Deterministic generator RNG (splitmix64); identical output for one seed on
// every platform.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }
  bool flip() { return next() & 1; }
};

CnfFormula random_formula(Rng& rng, std::size_t vars, std::size_t clauses,
                          const std::string& prefix) {
  CnfFormula phi;
  for (std::size_t i = 1; i <= vars; ++i)
    phi.variables.push_back(prefix + std::to_string(i));
  for (std::size_t j = 0; j < clauses; ++j) {
    CnfClause c;
    for (CnfLiteral& l : c.lits) {
      l.var = rng.below(vars);
      l.negated = rng.flip();
    }
    phi.clauses.push_back(c);
  }
  return phi;
}

ColoringInstance random_coloring_graph(Rng& rng, std::size_t vertices) {
  // Random spanning tree plus a few extra edges; resample deterministically
  // until a leaf and an inner vertex exist.
  for (;;) {
    ColoringInstance g;
    for (std::size_t i = 1; i <= vertices; ++i)
      g.vertices.push_back("v" + std::to_string(i));
    std::set<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 1; i < vertices; ++i) {
      std::size_t j = rng.below(i);
      edges.insert({std::min(i, j), std::max(i, j)});
    }
    std::size_t extra = rng.below(vertices);
    for (std::size_t k = 0; k < extra; ++k) {
      std::size_t a = rng.below(vertices), b = rng.below(vertices);
      if (a != b) edges.insert({std::min(a, b), std::max(a, b)});
    }
    std::vector<std::size_t> degree(vertices, 0);
    for (auto [a, b] : edges) {
      ++degree[a];
      ++degree[b];
    }
    bool leaf = false, inner = false;
    for (std::size_t d : degree) (d == 1 ? leaf : inner) = true;
    if (!leaf || !inner) continue;
    g.edges.assign(edges.begin(), edges.end());
    return g;
  }
}

const char* order_name_of(PreferenceOrder o) {
  switch (o) {
    case PreferenceOrder::Any: return "any";
    case PreferenceOrder::Subset: return "subset";
    case PreferenceOrder::Card: return "card";
  }
  return "any";
}

const char* semantics_name_of(Semantics s) {
  switch (s) {
    case Semantics::Brave: return "brave";
    case Semantics::AR: return "ar";
    case Semantics::IAR: return "iar";
  }
  return "brave";
}

int cmd_gen(const std::string& family, const std::string& out_dir, std::uint64_t seed,
            std::size_t vars, std::size_t clauses, std::size_t xvars, std::size_t yvars,
            std::size_t vertices, std::size_t pairs) {
  Rng rng(seed);
  GeneratedInstance inst;
  bool oracle = false;
  std::string params;
  if (family == "sat") {
    CnfFormula phi = random_formula(rng, vars, clauses, "x");
    inst = gen_sat(phi);
    oracle = oracle_sat(phi);
    params = "vars=" + std::to_string(vars) + " clauses=" + std::to_string(clauses);
  } else if (family == "cardminsat") {
    CnfFormula phi = random_formula(rng, vars, clauses, "x");
    inst = gen_cardminsat(phi, 0);
    oracle = oracle_cardminsat(phi, 0);
    params = "vars=" + std::to_string(vars) + " clauses=" + std::to_string(clauses);
  } else if (family == "qbf2") {
    QbfInstance q;
    for (std::size_t i = 1; i <= xvars; ++i) q.x_vars.push_back("x" + std::to_string(i));
    for (std::size_t i = 1; i <= yvars; ++i) q.y_vars.push_back("y" + std::to_string(i));
    q.matrix.variables = q.x_vars;
    q.matrix.variables.insert(q.matrix.variables.end(), q.y_vars.begin(), q.y_vars.end());
    for (std::size_t j = 0; j < clauses; ++j) {
      CnfClause c;
      for (CnfLiteral& l : c.lits) {
        l.var = rng.below(xvars + yvars);
        l.negated = rng.flip();
      }
      q.matrix.clauses.push_back(c);
    }
    inst = gen_qbf2(q);
    oracle = oracle_qbf2(q);
    params = "xvars=" + std::to_string(xvars) + " yvars=" + std::to_string(yvars) +
             " clauses=" + std::to_string(clauses);
  } else if (family == "coloring2") {
    ColoringInstance g = random_coloring_graph(rng, vertices);
    inst = gen_coloring2(g);
    oracle = oracle_coloring2(g);
    params = "vertices=" + std::to_string(vertices);
  } else if (family == "listpair") {
    PairList pl;
    for (std::size_t i = 1; i <= pairs; ++i) {
      std::string p = "p" + std::to_string(i);
      pl.pairs.emplace_back(random_formula(rng, vars, clauses, p + "x"),
                            random_formula(rng, vars, clauses, p + "y"));
    }
    inst = gen_listpair_sat(pl);
    oracle = oracle_listpair(pl);
    params = "pairs=" + std::to_string(pairs) + " vars=" + std::to_string(vars) +
             " clauses=" + std::to_string(clauses);
  } else {
    throw Error("unknown family '" + family +
                "' (sat|cardminsat|qbf2|coloring2|listpair)");
  }

  fs::create_directories(out_dir);
  write_file(fs::path(out_dir) / "graph.facts", serialize_data_graph(inst.psi.graph));
  if (!inst.psi.hyps.empty())
    write_file(fs::path(out_dir) / "hyps.facts", serialize_data_graph(inst.psi.hyps));
  write_file(fs::path(out_dir) / "doc.shapes", serialize_shapes_doc(inst.psi.doc));
  write_file(fs::path(out_dir) / "query.query", serialize_query(inst.query) + "\n");
  write_file(fs::path(out_dir) / "mapping.txt", to_string(inst.mapping) + "\n");
  write_file(fs::path(out_dir) / "hints.mutable", serialize_hints(*inst.psi.hints));
  std::string meta;
  meta += "family=" + family + "\n";
  meta += "seed=" + std::to_string(seed) + "\n";
  meta += "params=" + params + "\n";
  meta += std::string("order=") + order_name_of(inst.order) + "\n";
  meta += std::string("semantics=") + semantics_name_of(inst.semantics) + "\n";
  meta += std::string("oracle=") + (oracle ? "true" : "false") + "\n";
  write_file(fs::path(out_dir) / "meta.txt", meta);
  std::cout << out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Consistent query answering over SHACL-style shape repairs"};
  app.require_subcommand(1);

  std::string graph_file, shapes_file, hyps_file, query_file, hints_file;
  std::string order = "any", semantics = "brave", mapping = "-";
  std::size_t budget = default_budget();
  bool max_mode = false, verbose = false;

  CLI::App* validate = app.add_subcommand("validate", "Check validation of a data graph");
  validate->add_option("graph", graph_file, "data graph (*.facts)")->required();
  validate->add_option("shapes", shapes_file, "shapes document (*.shapes)")->required();

  CLI::App* repairs = app.add_subcommand("repairs", "List preferred (max-)repairs");
  repairs->add_option("graph", graph_file)->required();
  repairs->add_option("shapes", shapes_file)->required();
  repairs->add_option("hyps", hyps_file, "hypotheses (*.facts), optional");
  repairs->add_option("--order", order, "any|subset|card");
  repairs->add_option("--hints", hints_file, "mutability hints (*.mutable)");
  repairs->add_option("--budget", budget, "mutable-atom budget");
  repairs->add_flag("--max", max_mode, "use max-repairs");
  repairs->add_flag("--verbose", verbose, "print witnessing targets with --max");

  CLI::App* cqa = app.add_subcommand("cqa", "Decide CQA / mCQA");
  cqa->add_option("graph", graph_file)->required();
  cqa->add_option("shapes", shapes_file)->required();
  cqa->add_option("query", query_file, "query (*.query)")->required();
  cqa->add_option("--hyps", hyps_file, "hypotheses (*.facts)");
  cqa->add_option("--mapping", mapping, "space-separated ?var=node, '-' for empty");
  cqa->add_option("--order", order, "any|subset|card");
  cqa->add_option("--semantics", semantics, "brave|ar|iar");
  cqa->add_option("--hints", hints_file);
  cqa->add_option("--budget", budget);
  cqa->add_flag("--max", max_mode, "decide mCQA over max-repairs");

  std::string family, out_dir;
  std::uint64_t seed = 0;
  std::size_t vars = 2, clauses = 2, xvars = 1, yvars = 1, vertices = 4, pairs = 2;
  CLI::App* gen = app.add_subcommand("gen", "Generate a gadget instance directory");
  gen->add_option("family", family, "sat|cardminsat|qbf2|coloring2|listpair")->required();
  gen->add_option("--out", out_dir, "output directory")->required();
  gen->add_option("--seed", seed);
  gen->add_option("--vars", vars);
  gen->add_option("--clauses", clauses);
  gen->add_option("--xvars", xvars);
  gen->add_option("--yvars", yvars);
  gen->add_option("--vertices", vertices);
  gen->add_option("--pairs", pairs);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // 0 covers --help
  }

  try {
    if (app.got_subcommand(validate)) return cmd_validate(graph_file, shapes_file);
    if (app.got_subcommand(repairs))
      return cmd_repairs(graph_file, shapes_file, hyps_file, hints_file, order, max_mode,
                         budget, verbose);
    if (app.got_subcommand(cqa))
      return cmd_cqa(graph_file, shapes_file, hyps_file, query_file, mapping, hints_file,
                     order, semantics, max_mode, budget);
    if (app.got_subcommand(gen))
      return cmd_gen(family, out_dir, seed, vars, clauses, xvars, yvars, vertices, pairs);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
