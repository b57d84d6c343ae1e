#include "budgetgraph/tree_median.hpp"

#include <algorithm>
#include <cmath>

#include "tree_split.hpp"

namespace budgetgraph {

namespace {

// sqrt(aug[v]) for every non-root v; the DP is accumulated in this domain.
std::vector<double> root_aug(const RootedTree& tree, std::vector<double>& root_down) {
  const auto n = static_cast<std::size_t>(tree.size());
  std::vector<double> a(n, 0.0);
  root_down.assign(n, 0.0);
  const auto order = tree.preorder();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const VertexId v = *it;
    if (v == tree.root()) continue;
    const auto vi = static_cast<std::size_t>(v);
    a[vi] = std::sqrt(static_cast<double>(tree.subtree_size(v)) * tree.parent_length(v)) +
            root_down[vi];
    root_down[static_cast<std::size_t>(tree.parent(v))] += a[vi];
  }
  return a;
}

}  // namespace

MedianDP compute_median_dp(const RootedTree& tree) {
  std::vector<double> s;
  const auto a = root_aug(tree, s);
  MedianDP dp;
  dp.down.resize(s.size());
  dp.aug.resize(a.size());
  for (std::size_t v = 0; v < s.size(); ++v) {
    dp.down[v] = s[v] * s[v];
    dp.aug[v] = a[v] * a[v];
  }
  return dp;
}

SolveReport solve_rooted_median(const RootedTree& tree) {
  std::vector<double> s;
  const auto a = root_aug(tree, s);
  const auto n = static_cast<std::size_t>(tree.size());

  std::vector<double> edge_share(n, 1.0);
  for (std::size_t v = 0; v < n; ++v) {
    const auto vid = static_cast<VertexId>(v);
    if (vid == tree.root()) continue;
    const double edge_part = std::sqrt(static_cast<double>(tree.subtree_size(vid)) * tree.parent_length(vid));
    edge_share[v] = edge_part / a[v];
  }

  SolveReport report;
  report.root = tree.root();
  const double sr = s[static_cast<std::size_t>(tree.root())];
  report.objective = sr * sr;
  report.average = report.objective / static_cast<double>(n);
  report.allocation = detail::split_budget_top_down(tree, a, edge_share);
  report.distances = tree_distances(tree, report.allocation);
  return report;
}

AllRootsMedian solve_all_roots_median(const RootedTree& tree) {
  std::vector<double> s;
  const auto a = root_aug(tree, s);
  const auto n = static_cast<std::size_t>(tree.size());
  const double total_nodes = static_cast<double>(n);

  AllRootsMedian result;
  MedianDP& dp = result.dp;
  dp.down.resize(n);
  dp.aug.resize(n);
  dp.total.resize(n);

  // up[v]: sqrt of the optimal sum, from v, over everything outside v's
  // subtree reached through the edge (parent(v), v); n - n_v vertices.
  std::vector<double> up(n, 0.0);
  std::vector<double> rest(n, 0.0);
  for (VertexId v : tree.preorder()) {
    const auto vi = static_cast<std::size_t>(v);
    const double st = s[vi] + up[vi];
    dp.down[vi] = s[vi] * s[vi];
    dp.aug[vi] = a[vi] * a[vi];
    dp.total[vi] = st * st;
    const auto kids = tree.children(v);
    detail::exclusive_child_sums(kids, a, up[vi], rest);
    for (VertexId c : kids) {
      const auto ci = static_cast<std::size_t>(c);
      const double outside = total_nodes - static_cast<double>(tree.subtree_size(c));
      up[ci] = std::sqrt(outside * tree.parent_length(c)) + rest[ci];
    }
  }
  result.best_root = detail::argmin_smallest_id(dp.total);
  return result;
}

std::vector<VertexId> unweighted_tree_medians(const RootedTree& tree) {
  const VertexId n = tree.size();
  std::vector<VertexId> medians;
  for (VertexId v = 0; v < n; ++v) {
    VertexId largest = n - tree.subtree_size(v);
    for (VertexId c : tree.children(v)) largest = std::max(largest, tree.subtree_size(c));
    if (2 * static_cast<std::int64_t>(largest) <= n) medians.push_back(v);
  }
  return medians;
}

UnrootedMedian solve_unrooted_median(const RootedTree& tree) {
  auto all = solve_all_roots_median(tree);
  UnrootedMedian result;
  result.values = std::move(all.dp.total);
  const double best = result.values[static_cast<std::size_t>(all.best_root)];
  const Tolerance tol;
  for (std::size_t v = 0; v < result.values.size(); ++v) {
    if (tol.close(result.values[v], best)) result.argmin_set.push_back(static_cast<VertexId>(v));
  }
  result.unweighted_medians = unweighted_tree_medians(tree);
  result.best = all.best_root == tree.root() ? solve_rooted_median(tree)
                                             : solve_rooted_median(tree.reroot(all.best_root));
  result.coincides = std::find(result.unweighted_medians.begin(), result.unweighted_medians.end(),
                               all.best_root) != result.unweighted_medians.end();
  return result;
}

}  // namespace budgetgraph
