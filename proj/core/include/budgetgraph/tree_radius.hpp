#pragma once

#include <vector>

#include "budgetgraph/graph.hpp"
#include "budgetgraph/tree.hpp"

namespace budgetgraph {

/// Per-vertex budget-radius values for a rooted tree.
///
///   down[v]  optimal radius of the subtree below v, rooted at v (0 at leaves)
///   aug[v]   optimal radius of that subtree plus its parent edge, rooted at
///            the parent: (sqrt(l(p,v)) + sqrt(down[v]))^2; 0 at the root
///   total[v] optimal radius of the whole tree rooted at v; filled only by
///            solve_all_roots_radius
///
/// down[v] is the sum of aug[] over the children of v.
struct RadiusDP {
  std::vector<double> down;
  std::vector<double> aug;
  std::vector<double> total;
};

// Bottom-up pass only.
RadiusDP compute_radius_dp(const RootedTree& tree);

/// Optimal allocation minimizing the weighted radius from the tree's root.
///
/// Sibling augmented subtrees share their parent's budget in proportion to
/// their aug[] values; inside an augmented subtree the parent edge takes
/// sqrt(l) / (sqrt(l) + sqrt(down)) of the share and the rest goes below.
/// Linear time; allocation extraction is one top-down pass.
SolveReport solve_rooted_radius(const RootedTree& tree);

struct AllRootsRadius {
  RadiusDP dp;           // dp.total[v] = optimal radius rooted at v
  VertexId best_root = kNoVertex;
  SolveReport best;      // full solution at best_root
};

// Two passes (bottom-up, then top-down rerooting). Ties for the best root go
// to the smallest vertex id.
AllRootsRadius solve_all_roots_radius(const RootedTree& tree);

// Sum of edge lengths; never exceeds the optimal radius at any root.
double radius_lower_bound(const RootedTree& tree);

}  // namespace budgetgraph
