#pragma once

#include <vector>

#include "budgetgraph/graph.hpp"
#include "budgetgraph/tree.hpp"

namespace budgetgraph {

/// Per-vertex budget-median values (sum of weighted distances).
///
///   down[v]  optimal sum over the subtree below v, measured from v
///   aug[v]   optimal sum over that subtree plus the parent edge, measured
///            from the parent: (sqrt(n_v * l(p,v)) + sqrt(down[v]))^2
///   total[v] optimal sum over the whole tree measured from v; filled only
///            by the all-roots solver
///
/// down[v] = (sum over children u of sqrt(aug[u]))^2: k augmented subtrees
/// with optimal sums X_i share the budget as B_i proportional to sqrt(X_i),
/// the minimizer of sum X_i / B_i on the simplex.
struct MedianDP {
  std::vector<double> down;
  std::vector<double> aug;
  std::vector<double> total;
};

MedianDP compute_median_dp(const RootedTree& tree);

// Optimal allocation minimizing the sum of weighted distances from the root.
// `objective` is the sum; `average` is the sum divided by n.
SolveReport solve_rooted_median(const RootedTree& tree);

struct AllRootsMedian {
  MedianDP dp;  // dp.total[v] = optimal median sum rooted at v
  VertexId best_root = kNoVertex;
};

// O(n) rerooting carried out on square roots of the sums.
AllRootsMedian solve_all_roots_median(const RootedTree& tree);

struct UnrootedMedian {
  SolveReport best;                          // solution at the chosen vertex
  std::vector<double> values;                // optimal sum at every vertex
  std::vector<VertexId> argmin_set;          // all vertices within 1e-9 of the minimum
  std::vector<VertexId> unweighted_medians;  // node-count medians (centroids)
  bool coincides = false;                    // best.root is an unweighted median
};

UnrootedMedian solve_unrooted_median(const RootedTree& tree);

// Vertices minimizing the sum of hop distances (every component left after
// removing the vertex has at most n/2 vertices).
std::vector<VertexId> unweighted_tree_medians(const RootedTree& tree);

}  // namespace budgetgraph
