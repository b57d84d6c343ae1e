#include "cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <optional>
#include <ostream>
#include <sstream>

#include "budgetgraph/graph.hpp"
#include "budgetgraph/hardness.hpp"
#include "budgetgraph/io.hpp"
#include "budgetgraph/metric_approx.hpp"
#include "budgetgraph/oracle.hpp"
#include "budgetgraph/tree.hpp"
#include "budgetgraph/tree_median.hpp"
#include "budgetgraph/tree_radius.hpp"

namespace budgetgraph::cli {
namespace {

using Json = nlohmann::ordered_json;

struct RunConfig {
  std::string input;
  std::string root;
  bool all_roots = false;
  std::optional<double> budget;
  double tol = 1e-9;
  std::uint64_t seed = 0;
  bool csv = false;
  std::string output;

  // command-specific
  bool unrooted = false;
  std::string points;
  std::string matrix;
  bool no_triangle_check = false;
  std::string objective;
  bool exact_enum = false;
  int max_iters = OracleConfig{}.max_iters;
  int restarts = OracleConfig{}.restarts;
  std::string allocation;
  std::string cover;

  double scale() const { return budget.value_or(1.0); }
  Tolerance tolerance() const { return {tol, 1e-12}; }
};

std::string format_number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

void check_close(double reported, double recomputed, const RunConfig& cfg, const std::string& what) {
  if (!cfg.tolerance().close(reported, recomputed)) {
    throw InvariantViolation(what + " self-check failed: reported " + format_number(reported) +
                             ", recomputed " + format_number(recomputed));
  }
}

BudgetGraph load_input(const RunConfig& cfg) {
  if (cfg.input.empty()) throw InvalidInput("--input is required");
  return load_graph_file(cfg.input);
}

VertexId resolve_root(const BudgetGraph& g, const std::string& label) {
  if (label.empty()) throw InvalidInput("--root is required");
  auto v = g.find_vertex(label);
  if (!v) throw InvalidInput("unknown root vertex '" + label + "'");
  return *v;
}

// Nonzero-only keeps approx output small on complete graphs; loading treats
// missing edges as zero.
Json allocation_json(const BudgetGraph& g, const Allocation& alloc, double budget, bool nonzero_only = false) {
  Json fractions = Json::object();
  for (const auto& [key, b] : keyed_fractions(g, alloc)) {
    if (nonzero_only && b == 0.0) continue;
    fractions[key] = b;
  }
  return Json{{"budget", budget}, {"fractions", std::move(fractions)}};
}

Json budgets_json(const BudgetGraph& g, const Allocation& alloc, double budget) {
  Json out = Json::object();
  for (const auto& [key, b] : keyed_fractions(g, alloc)) out[key] = b * budget;
  return out;
}

Json distances_json(const BudgetGraph& g, const std::vector<double>& dist, double budget) {
  Json out = Json::array();
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    out.push_back({{"vertex", g.label(v)}, {"distance", dist[static_cast<std::size_t>(v)] / budget}});
  }
  return out;
}

Json labels_json(const BudgetGraph& g, const std::vector<VertexId>& ids) {
  Json out = Json::array();
  for (VertexId v : ids) out.push_back(g.label(v));
  return out;
}

// --- radius ---------------------------------------------------------------

Json radius_report(const BudgetGraph& g, const SolveReport& s, const RunConfig& cfg) {
  const double B = cfg.scale();
  check_close(s.objective, evaluate_radius(g, s.allocation, s.root), cfg, "radius");
  Json doc{{"command", "radius"},
           {"root", g.label(s.root)},
           {"radius", s.objective / B},
           {"budget", B}};
  if (s.lower_bound) doc["lower_bound"] = *s.lower_bound / B;
  if (s.ratio_certificate) doc["ratio_certificate"] = *s.ratio_certificate;
  doc["allocation"] = allocation_json(g, s.allocation, B);
  doc["edge_budgets"] = budgets_json(g, s.allocation, B);
  doc["distances"] = distances_json(g, s.distances, B);
  return doc;
}

void cmd_radius(const RunConfig& cfg, std::ostream& out) {
  const BudgetGraph g = load_input(cfg);
  if (!g.is_tree()) throw InvalidInput("radius needs a tree; use 'oracle radius' on general graphs");
  const double B = cfg.scale();
  if (!cfg.all_roots) {
    const RootedTree tree(g, resolve_root(g, cfg.root));
    out << radius_report(g, solve_rooted_radius(tree), cfg).dump(2) << "\n";
    return;
  }
  const RootedTree tree(g, cfg.root.empty() ? 0 : resolve_root(g, cfg.root));
  const AllRootsRadius all = solve_all_roots_radius(tree);
  if (cfg.csv) {
    out << "vertex,BR\n";
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      out << g.label(v) << "," << format_number(all.dp.total[static_cast<std::size_t>(v)] / B) << "\n";
    }
    return;
  }
  Json values = Json::array();
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    values.push_back({{"vertex", g.label(v)}, {"radius", all.dp.total[static_cast<std::size_t>(v)] / B}});
  }
  Json doc{{"command", "radius"}, {"mode", "all-roots"}, {"budget", B},
           {"best_root", g.label(all.best_root)}, {"values", std::move(values)},
           {"best", radius_report(g, all.best, cfg)}};
  out << doc.dump(2) << "\n";
}

// --- median ---------------------------------------------------------------

Json median_report(const BudgetGraph& g, const SolveReport& s, const RunConfig& cfg) {
  const double B = cfg.scale();
  const MedianValue check = evaluate_median(g, s.allocation, s.root);
  check_close(s.objective, check.sum, cfg, "median");
  const double n = static_cast<double>(g.num_vertices());
  return Json{{"command", "median"},
              {"root", g.label(s.root)},
              {"sum", s.objective / B},
              {"average", s.objective / n / B},
              {"budget", B},
              {"allocation", allocation_json(g, s.allocation, B)},
              {"edge_budgets", budgets_json(g, s.allocation, B)},
              {"distances", distances_json(g, s.distances, B)}};
}

void cmd_median(const RunConfig& cfg, std::ostream& out) {
  const BudgetGraph g = load_input(cfg);
  if (!g.is_tree()) throw InvalidInput("median needs a tree");
  const double B = cfg.scale();
  const double n = static_cast<double>(g.num_vertices());
  if (cfg.unrooted) {
    const RootedTree tree(g, 0);
    const UnrootedMedian um = solve_unrooted_median(tree);
    Json doc = median_report(g, um.best, cfg);
    doc["mode"] = "unrooted";
    doc["argmin_set"] = labels_json(g, um.argmin_set);
    doc["unweighted_medians"] = labels_json(g, um.unweighted_medians);
    doc["coincides"] = um.coincides;
    out << doc.dump(2) << "\n";
    return;
  }
  if (!cfg.all_roots) {
    const RootedTree tree(g, resolve_root(g, cfg.root));
    out << median_report(g, solve_rooted_median(tree), cfg).dump(2) << "\n";
    return;
  }
  const RootedTree tree(g, cfg.root.empty() ? 0 : resolve_root(g, cfg.root));
  const AllRootsMedian all = solve_all_roots_median(tree);
  if (cfg.csv) {
    out << "vertex,BM,sum,average\n";
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      const double sum = all.dp.total[static_cast<std::size_t>(v)] / B;
      out << g.label(v) << "," << format_number(sum) << "," << format_number(sum) << ","
          << format_number(sum / n) << "\n";
    }
    return;
  }
  Json values = Json::array();
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    const double sum = all.dp.total[static_cast<std::size_t>(v)] / B;
    values.push_back({{"vertex", g.label(v)}, {"sum", sum}, {"average", sum / n}});
  }
  Json doc{{"command", "median"}, {"mode", "all-roots"}, {"budget", B},
           {"best_root", g.label(all.best_root)}, {"values", std::move(values)}};
  out << doc.dump(2) << "\n";
}

// --- approx ---------------------------------------------------------------

MetricSpace load_metric(const RunConfig& cfg) {
  if (cfg.points.empty() == cfg.matrix.empty()) {
    throw InvalidInput("approx needs exactly one of --points or --matrix");
  }
  const bool validate = !cfg.no_triangle_check;
  if (!cfg.points.empty()) {
    const auto rows = parse_numeric_csv(read_file(cfg.points));
    return MetricSpace::from_points(rows, validate);
  }
  const auto rows = parse_numeric_csv(read_file(cfg.matrix));
  std::vector<double> flat;
  for (const auto& row : rows) {
    if (row.size() != rows.size()) throw InvalidInput("distance matrix must be square");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return MetricSpace::from_matrix(std::move(flat), rows.size(), validate);
}

void cmd_approx(const RunConfig& cfg, std::ostream& out) {
  const MetricSpace metric = load_metric(cfg);
  const ApproxReport r = approx_metric_radius(metric);
  const double B = cfg.scale();
  if (metric.size() > 1) {
    check_close(r.radius, evaluate_radius(r.graph, r.graph_allocation, static_cast<VertexId>(r.root_point)),
                cfg, "approx radius");
  }

  Json bt_edges = Json::array();
  const RootedTree& t = r.tree;
  for (VertexId v : t.preorder()) {
    if (v == t.root()) continue;
    const auto parent = r.hp_order[static_cast<std::size_t>(t.parent(v))];
    const auto child = r.hp_order[static_cast<std::size_t>(v)];
    bt_edges.push_back({{"parent", parent},
                        {"child", child},
                        {"line_length", t.parent_length(v)},
                        {"length", metric(parent, child)},
                        {"fraction", r.tree_allocation.fraction(t.parent_edge(v))}});
  }
  Json doc{{"command", "approx"},
           {"n", metric.size()},
           {"root", r.root_point},
           {"radius", r.radius / B},
           {"line_radius", r.line_radius / B},
           {"lb", r.lb},
           {"hp_weight", r.hp_weight},
           {"ratio_bound", r.ratio_bound},
           {"achieved_ratio_vs_lb", r.achieved_ratio_vs_lb},
           {"budget", B},
           {"hp_order", r.hp_order},
           {"bt_edges", std::move(bt_edges)}};
  doc["allocation"] = metric.size() > 1 ? allocation_json(r.graph, r.graph_allocation, B, true)
                                        : Json{{"budget", B}, {"fractions", Json::object()}};
  out << doc.dump(2) << "\n";
}

// --- oracle ---------------------------------------------------------------

void cmd_oracle(const RunConfig& cfg, std::ostream& out) {
  const BudgetGraph g = load_input(cfg);
  const VertexId root = resolve_root(g, cfg.root);
  const double B = cfg.scale();
  const double n = static_cast<double>(g.num_vertices());
  const bool radius = cfg.objective == "radius";

  if (cfg.exact_enum) {
    if (!radius) throw InvalidInput("--exact-enum is available for the radius objective only");
    const ExactEnumReport ex = exact_small_graph_radius(g, root);
    check_close(ex.solution.objective, evaluate_radius(g, ex.solution.allocation, root), cfg, "radius");
    Json tree_edges = Json::array();
    for (EdgeId e : ex.best_tree) tree_edges.push_back(g.edge_key(e));
    Json doc{{"command", "oracle"},
             {"objective", "radius"},
             {"method", "exact-enum"},
             {"root", g.label(root)},
             {"radius", ex.solution.objective / B},
             {"budget", B},
             {"trees_enumerated", ex.trees_enumerated},
             {"best_tree", std::move(tree_edges)},
             {"allocation", allocation_json(g, ex.solution.allocation, B)}};
    out << doc.dump(2) << "\n";
    return;
  }

  OracleConfig oc;
  oc.max_iters = cfg.max_iters;
  oc.restarts = cfg.restarts;
  oc.seed = cfg.seed;
  oc.tol = cfg.tol < 1e-6 ? 1e-6 : cfg.tol;
  const OracleReport rep = radius ? numeric_optimize_radius(g, root, oc) : numeric_optimize_median(g, root, oc);
  const SolveReport& s = rep.solution;

  Json doc{{"command", "oracle"}, {"objective", cfg.objective}, {"method", "subgradient"}, {"root", g.label(root)}};
  if (radius) {
    check_close(s.objective, evaluate_radius(g, s.allocation, root), cfg, "radius");
    doc["radius"] = s.objective / B;
  } else {
    check_close(s.objective, evaluate_median(g, s.allocation, root).sum, cfg, "median");
    doc["sum"] = s.objective / B;
    doc["average"] = s.objective / n / B;
  }
  doc["budget"] = B;
  doc["converged"] = rep.converged;
  doc["subgradient_converged"] = rep.subgradient_converged;
  doc["subgradient_objective"] = rep.subgradient_objective / B;
  doc["iterations"] = rep.iterations;
  doc["best_restart"] = rep.best_restart;
  doc["off_tree_mass"] = rep.off_tree_mass;
  doc["seed"] = cfg.seed;
  doc["allocation"] = allocation_json(g, s.allocation, B);
  doc["distances"] = distances_json(g, s.distances, B);
  out << doc.dump(2) << "\n";
}

// --- hardness -------------------------------------------------------------

const char* role_name(NodeRole role) {
  switch (role) {
    case NodeRole::kRoot:
      return "root";
    case NodeRole::kElement:
      return "element";
    case NodeRole::kSetNode:
      return "set-node";
  }
  return "unknown";
}

SetCoverInstance load_setcover(const RunConfig& cfg) {
  if (cfg.input.empty()) throw InvalidInput("--input is required");
  return parse_setcover_json(read_file(cfg.input));
}

void cmd_reduce(const RunConfig& cfg, std::ostream& out) {
  const ReductionOutput red = reduce_setcover(load_setcover(cfg));
  const BudgetGraph& g = red.graph;
  const auto& universe = red.instance.universe();

  Json roles = Json::array();
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    const NodeInfo& info = red.roles[static_cast<std::size_t>(v)];
    Json entry{{"vertex", g.label(v)}, {"role", role_name(info.role)}};
    if (info.role == NodeRole::kElement) entry["element"] = universe[info.element];
    if (info.role == NodeRole::kSetNode) {
      entry["set"] = info.set;
      Json covers = Json::array();
      for (std::size_t i : info.subset) covers.push_back(universe[i]);
      entry["covers"] = std::move(covers);
    }
    roles.push_back(std::move(entry));
  }
  Json doc{{"command", "reduce-setcover"},
           {"root", g.label(red.root)},
           {"node_count", g.num_vertices()},
           {"edge_count", g.num_edges()},
           {"constants", {{"x", gadget_length(1)}, {"y", gadget_length(2)}, {"z", gadget_length(3)}}},
           {"graph", Json::parse(graph_to_json(g))},
           {"roles", std::move(roles)}};
  out << doc.dump(2) << "\n";
}

void cmd_witness(const RunConfig& cfg, std::ostream& out) {
  const ReductionOutput red = reduce_setcover(load_setcover(cfg));
  if (cfg.cover.empty()) throw InvalidInput("--cover is required");
  const auto assignment = parse_cover_json(red.instance, read_file(cfg.cover));
  const Witness w = cover_to_allocation(red, assignment);
  const double expected = expected_cover_cost(red.instance, assignment);
  const Allocation scaled = w.allocation.with_budget(w.budget_cost);
  const double radius = evaluate_radius(red.graph, scaled, red.root);
  check_close(radius, 1.0, cfg, "witness radius");
  check_close(w.budget_cost, expected, cfg, "witness cost");

  Json doc{{"command", "witness"},
           {"root", red.graph.label(red.root)},
           {"budget_cost", w.budget_cost},
           {"expected_cost", expected},
           {"radius_at_cost", radius},
           {"per_set_cost", w.per_set_cost},
           {"allocation", allocation_json(red.graph, w.allocation, w.budget_cost)}};
  out << doc.dump(2) << "\n";
}

// --- eval -----------------------------------------------------------------

void cmd_eval(const RunConfig& cfg, std::ostream& out) {
  const BudgetGraph g = load_input(cfg);
  if (cfg.allocation.empty()) throw InvalidInput("--allocation is required");
  Allocation alloc = parse_allocation_json(g, read_file(cfg.allocation));
  if (cfg.budget) alloc = alloc.with_budget(*cfg.budget);
  const VertexId root = resolve_root(g, cfg.root);
  const MedianValue median = evaluate_median(g, alloc, root);
  Json doc{{"command", "eval"},
           {"root", g.label(root)},
           {"budget", alloc.total_budget()},
           {"radius", evaluate_radius(g, alloc, root)},
           {"median", {{"sum", median.sum}, {"average", median.average}}},
           {"distances", distances_json(g, weighted_distances(g, alloc, root), 1.0)}};
  out << doc.dump(2) << "\n";
}

// --------------------------------------------------------------------------

void add_shared(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--input", cfg.input, "Input file");
  cmd->add_option("--root", cfg.root, "Root vertex label");
  cmd->add_option("--budget", cfg.budget, "Total budget B (reported values are scaled)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tol", cfg.tol, "Relative tolerance for self-checks")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", cfg.seed, "Random seed");
  cmd->add_option("--output", cfg.output, "Write the report here instead of stdout");
}

void write_error(std::ostream& err, const char* type, const std::string& message, int status) {
  Json doc{{"error", {{"type", type}, {"message", message}, {"status", status}}}};
  err << doc.dump() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Optimal budget allocation on graph edges", "budgetgraph"};
  app.require_subcommand(1);

  auto* radius = app.add_subcommand("radius", "Exact budget radius on a tree");
  add_shared(radius, cfg);
  radius->add_flag("--all-roots", cfg.all_roots, "Radius at every vertex");
  radius->add_flag("--csv", cfg.csv, "CSV output with --all-roots");

  auto* median = app.add_subcommand("median", "Exact budget median on a tree");
  add_shared(median, cfg);
  median->add_flag("--all-roots", cfg.all_roots, "Median sum at every vertex");
  median->add_flag("--unrooted", cfg.unrooted, "Best median vertex");
  median->add_flag("--csv", cfg.csv, "CSV output with --all-roots");

  auto* approx = app.add_subcommand("approx", "Approximate budget radius on a metric");
  add_shared(approx, cfg);
  approx->add_option("--points", cfg.points, "CSV of point coordinates");
  approx->add_option("--matrix", cfg.matrix, "CSV distance matrix");
  approx->add_flag("--no-triangle-check", cfg.no_triangle_check, "Skip triangle inequality validation");

  auto* oracle = app.add_subcommand("oracle", "Numeric or enumerative reference solver");
  add_shared(oracle, cfg);
  oracle->add_option("objective", cfg.objective, "radius or median")
      ->required()
      ->check(CLI::IsMember({"radius", "median"}));
  oracle->add_flag("--exact-enum", cfg.exact_enum, "Enumerate spanning trees (radius)");
  oracle->add_option("--max-iters", cfg.max_iters, "Subgradient iterations per restart")
      ->check(CLI::PositiveNumber);
  oracle->add_option("--restarts", cfg.restarts, "Number of restarts")->check(CLI::PositiveNumber);

  auto* reduce = app.add_subcommand("reduce-setcover", "Build the set-cover reduction graph");
  add_shared(reduce, cfg);

  auto* witness = app.add_subcommand("witness", "Allocation certified by a set cover");
  add_shared(witness, cfg);
  witness->add_option("--cover", cfg.cover, "Cover JSON {\"assignment\": {element: set}}");

  auto* eval = app.add_subcommand("eval", "Evaluate a given allocation");
  add_shared(eval, cfg);
  eval->add_option("--allocation", cfg.allocation, "Allocation JSON");

  std::vector<std::string> argv_store{"budgetgraph"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    write_error(err, "usage", e.what(), 1);
    return 1;
  }

  try {
    std::ostringstream report;
    if (radius->parsed()) cmd_radius(cfg, report);
    else if (median->parsed()) cmd_median(cfg, report);
    else if (approx->parsed()) cmd_approx(cfg, report);
    else if (oracle->parsed()) cmd_oracle(cfg, report);
    else if (reduce->parsed()) cmd_reduce(cfg, report);
    else if (witness->parsed()) cmd_witness(cfg, report);
    else if (eval->parsed()) cmd_eval(cfg, report);

    if (cfg.output.empty()) {
      out << report.str();
    } else {
      std::ofstream file(cfg.output, std::ios::binary);
      if (!file) throw InvalidInput("cannot write '" + cfg.output + "'");
      file << report.str();
    }
    return 0;
  } catch (const InvalidInput& e) {
    write_error(err, "invalid_input", e.what(), 1);
    return 1;
  } catch (const EnumerationCapExceeded& e) {
    write_error(err, "enumeration_cap", e.what(), 1);
    return 1;
  } catch (const InvariantViolation& e) {
    write_error(err, "invariant_violation", e.what(), 2);
    return 2;
  }
}

}  // namespace budgetgraph::cli
