#include "budgetgraph/tree_radius.hpp"

#include <cmath>

#include "tree_split.hpp"

namespace budgetgraph {

namespace {

double augment(double edge_length, double subtree_radius) {
  // (sqrt(l) + sqrt(d))^2, expanded so leaf edges come out as exactly l
  return edge_length + subtree_radius + 2.0 * std::sqrt(edge_length * subtree_radius);
}

}  // namespace

RadiusDP compute_radius_dp(const RootedTree& tree) {
  const auto n = static_cast<std::size_t>(tree.size());
  RadiusDP dp;
  dp.down.assign(n, 0.0);
  dp.aug.assign(n, 0.0);
  const auto order = tree.preorder();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const VertexId v = *it;
    const auto vi = static_cast<std::size_t>(v);
    if (v == tree.root()) continue;
    dp.aug[vi] = augment(tree.parent_length(v), dp.down[vi]);
    dp.down[static_cast<std::size_t>(tree.parent(v))] += dp.aug[vi];
  }
  return dp;
}

namespace {

SolveReport report_from_dp(const RootedTree& tree, const RadiusDP& dp) {
  const auto n = static_cast<std::size_t>(tree.size());
  std::vector<double> edge_share(n, 1.0);
  for (std::size_t v = 0; v < n; ++v) {
    const auto vid = static_cast<VertexId>(v);
    if (vid == tree.root()) continue;
    const double q = std::sqrt(tree.parent_length(vid));
    edge_share[v] = q / (q + std::sqrt(dp.down[v]));  // exactly 1 at leaves
  }

  SolveReport report;
  report.root = tree.root();
  report.objective = dp.down[static_cast<std::size_t>(tree.root())];
  report.allocation = detail::split_budget_top_down(tree, dp.aug, edge_share);
  report.distances = tree_distances(tree, report.allocation);
  const double lb = radius_lower_bound(tree);
  report.lower_bound = lb;
  if (lb > 0.0) report.ratio_certificate = report.objective / lb;
  return report;
}

}  // namespace

SolveReport solve_rooted_radius(const RootedTree& tree) {
  return report_from_dp(tree, compute_radius_dp(tree));
}

AllRootsRadius solve_all_roots_radius(const RootedTree& tree) {
  AllRootsRadius result;
  RadiusDP& dp = result.dp;
  dp = compute_radius_dp(tree);
  const auto n = static_cast<std::size_t>(tree.size());

  // up[v]: optimal radius, rooted at v, of everything outside v's subtree
  // together with the edge (parent(v), v).
  std::vector<double> up(n, 0.0);
  std::vector<double> rest(n, 0.0);
  dp.total.assign(n, 0.0);
  for (VertexId v : tree.preorder()) {
    const auto vi = static_cast<std::size_t>(v);
    dp.total[vi] = dp.down[vi] + up[vi];
    const auto kids = tree.children(v);
    // rest[c] = total[v] - aug[c], as a sum of the remaining components.
    detail::exclusive_child_sums(kids, dp.aug, up[vi], rest);
    for (VertexId c : kids) {
      const auto ci = static_cast<std::size_t>(c);
      up[ci] = augment(tree.parent_length(c), rest[ci]);
    }
  }

  result.best_root = detail::argmin_smallest_id(dp.total);
  if (result.best_root == tree.root()) {
    result.best = report_from_dp(tree, dp);
  } else {
    result.best = solve_rooted_radius(tree.reroot(result.best_root));
  }
  return result;
}

double radius_lower_bound(const RootedTree& tree) { return tree.graph().total_length(); }

}  // namespace budgetgraph
