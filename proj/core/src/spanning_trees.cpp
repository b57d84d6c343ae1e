#include <Eigen/Dense>
#include <cmath>
#include <numeric>
#include <string>

#include "budgetgraph/oracle.hpp"
#include "budgetgraph/tree_radius.hpp"

namespace budgetgraph {

EnumerationCapExceeded::EnumerationCapExceeded(double estimate, std::uint64_t cap)
    : std::runtime_error("spanning-tree enumeration refused: about " +
                         std::to_string(static_cast<long long>(std::llround(estimate))) +
                         " trees exceeds the cap of " + std::to_string(cap)),
      estimate_(estimate) {}

double count_spanning_trees(const BudgetGraph& graph) {
  const auto n = static_cast<Eigen::Index>(graph.num_vertices());
  if (n <= 1) return 1.0;
  // Laplacian with the last row and column removed.
  Eigen::MatrixXd minor = Eigen::MatrixXd::Zero(n - 1, n - 1);
  for (const Edge& e : graph.edges()) {
    const Eigen::Index u = e.u, v = e.v;
    if (u < n - 1) minor(u, u) += 1.0;
    if (v < n - 1) minor(v, v) += 1.0;
    if (u < n - 1 && v < n - 1) {
      minor(u, v) -= 1.0;
      minor(v, u) -= 1.0;
    }
  }
  return std::abs(minor.partialPivLu().determinant());
}

namespace {

// Union-find with an undo log, for backtracking.
class RollbackDsu {
 public:
  explicit RollbackDsu(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) const {
    while (parent_[x] != x) x = parent_[x];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    log_.push_back(b);
    return true;
  }
  void undo() {
    const std::size_t b = log_.back();
    log_.pop_back();
    size_[parent_[b]] -= size_[b];
    parent_[b] = b;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
  std::vector<std::size_t> log_;
};

void enumerate(const BudgetGraph& g, EdgeId next, RollbackDsu& dsu, std::vector<EdgeId>& chosen,
               const std::function<void(const std::vector<EdgeId>&)>& visit) {
  const auto needed = static_cast<std::size_t>(g.num_vertices() - 1);
  if (chosen.size() == needed) {
    visit(chosen);
    return;
  }
  if (static_cast<std::size_t>(g.num_edges() - next) < needed - chosen.size()) return;
  const Edge& e = g.edge(next);
  // Contract (include) first, then delete (exclude).
  if (dsu.unite(static_cast<std::size_t>(e.u), static_cast<std::size_t>(e.v))) {
    chosen.push_back(next);
    enumerate(g, next + 1, dsu, chosen, visit);
    chosen.pop_back();
    dsu.undo();
  }
  enumerate(g, next + 1, dsu, chosen, visit);
}

}  // namespace

void for_each_spanning_tree(const BudgetGraph& graph,
                            const std::function<void(const std::vector<EdgeId>&)>& visit) {
  RollbackDsu dsu(static_cast<std::size_t>(graph.num_vertices()));
  std::vector<EdgeId> chosen;
  enumerate(graph, 0, dsu, chosen, visit);
}

ExactEnumReport exact_small_graph_radius(const BudgetGraph& graph, VertexId root, std::uint64_t cap) {
  if (root < 0 || root >= graph.num_vertices()) throw InvalidInput("root out of range");
  const double estimate = count_spanning_trees(graph);
  if (estimate > static_cast<double>(cap) + 0.5) throw EnumerationCapExceeded(estimate, cap);

  auto subtree_graph = [&](const std::vector<EdgeId>& ids) {
    std::vector<Edge> edges;
    edges.reserve(ids.size());
    for (EdgeId id : ids) edges.push_back(graph.edge(id));
    return BudgetGraph(graph.num_vertices(), std::move(edges), graph.labels());
  };

  ExactEnumReport report;
  double best = kInfinity;
  for_each_spanning_tree(graph, [&](const std::vector<EdgeId>& ids) {
    ++report.trees_enumerated;
    const RootedTree tree(subtree_graph(ids), root);
    const double value = compute_radius_dp(tree).down[static_cast<std::size_t>(root)];
    if (value < best) {
      best = value;
      report.best_tree = ids;
    }
  });

  const RootedTree tree(subtree_graph(report.best_tree), root);
  const SolveReport on_tree = solve_rooted_radius(tree);
  std::vector<double> fractions(static_cast<std::size_t>(graph.num_edges()), 0.0);
  for (std::size_t i = 0; i < report.best_tree.size(); ++i) {
    fractions[static_cast<std::size_t>(report.best_tree[i])] =
        on_tree.allocation.fraction(static_cast<EdgeId>(i));
  }
  report.solution = on_tree;
  report.solution.allocation = fractions.empty() ? Allocation() : Allocation(std::move(fractions));
  return report;
}

}  // namespace budgetgraph
