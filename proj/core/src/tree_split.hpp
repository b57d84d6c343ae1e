#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "budgetgraph/graph.hpp"
#include "budgetgraph/tree.hpp"

namespace budgetgraph::detail {

// Top-down budget split shared by the radius and median solvers.
//
// Each vertex v owns `mass[v]` of the budget for the edges below it (the
// root owns 1). A child u receives mass[v] * share_weight[u] / (sum of its
// siblings' share_weight), of which edge_share[u] goes to the edge (v, u)
// and the remainder becomes mass[u].
inline Allocation split_budget_top_down(const RootedTree& tree,
                                        std::span<const double> share_weight,
                                        std::span<const double> edge_share) {
  const BudgetGraph& g = tree.graph();
  std::vector<double> fractions(static_cast<std::size_t>(g.num_edges()), 0.0);
  if (fractions.empty()) return Allocation(std::move(fractions));

  std::vector<double> mass(static_cast<std::size_t>(tree.size()), 0.0);
  mass[static_cast<std::size_t>(tree.root())] = 1.0;
  for (VertexId v : tree.preorder()) {
    const auto kids = tree.children(v);
    if (kids.empty()) continue;
    double weight_sum = 0.0;
    for (VertexId u : kids) weight_sum += share_weight[static_cast<std::size_t>(u)];
    const double m = mass[static_cast<std::size_t>(v)];
    for (VertexId u : kids) {
      const auto ui = static_cast<std::size_t>(u);
      const double share = m * share_weight[ui] / weight_sum;
      fractions[static_cast<std::size_t>(tree.parent_edge(u))] = share * edge_share[ui];
      mass[ui] = share * (1.0 - edge_share[ui]);
    }
  }

  // Renormalize away the last few ulps of drift.
  double sum = 0.0;
  for (double b : fractions) sum += b;
  for (double& b : fractions) b /= sum;
  return Allocation(std::move(fractions));
}

// out[c] = base + sum of values[j] over the children j != c, computed from
// prefix and suffix sums so nothing is subtracted.
inline void exclusive_child_sums(std::span<const VertexId> children,
                                 std::span<const double> values, double base,
                                 std::vector<double>& out) {
  const std::size_t k = children.size();
  std::vector<double> suffix(k + 1, 0.0);
  for (std::size_t i = k; i-- > 0;) {
    suffix[i] = suffix[i + 1] + values[static_cast<std::size_t>(children[i])];
  }
  double prefix = base;
  for (std::size_t i = 0; i < k; ++i) {
    out[static_cast<std::size_t>(children[i])] = prefix + suffix[i + 1];
    prefix += values[static_cast<std::size_t>(children[i])];
  }
}

// Smallest id whose value is within 1e-12 relative of the minimum.
inline VertexId argmin_smallest_id(std::span<const double> values) {
  double best = kInfinity;
  for (double v : values) best = std::min(best, v);
  const double slack = 1e-12 * std::abs(best);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] <= best + slack) return static_cast<VertexId>(i);
  }
  return kNoVertex;
}

}  // namespace budgetgraph::detail
