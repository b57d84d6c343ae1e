#pragma once

#include <span>
#include <vector>

#include "budgetgraph/graph.hpp"
#include "budgetgraph/tree.hpp"

namespace budgetgraph {

/// Finite metric on points 0..n-1, stored as a dense symmetric matrix.
class MetricSpace {
 public:
  // Row-major n x n matrix. Requires a zero diagonal, symmetry and positive
  // off-diagonal entries; with `validate_triangle` also checks
  // d(i,k) <= d(i,j) + d(j,k) + 1e-9 * scale.
  static MetricSpace from_matrix(std::vector<double> distances, std::size_t n,
                                 bool validate_triangle = true);
  // Euclidean (L2) distances between coordinate rows of equal dimension.
  static MetricSpace from_points(std::span<const std::vector<double>> points,
                                 bool validate_triangle = true);

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return dist_[i * n_ + j]; }
  double scale() const { return scale_; }
  bool validates_triangle() const { return validate_triangle_; }

 private:
  MetricSpace(std::vector<double> distances, std::size_t n, bool validate_triangle);

  std::vector<double> dist_;
  std::size_t n_ = 0;
  double scale_ = 0.0;
  bool validate_triangle_ = true;
};

struct MinimumSpanningTree {
  std::vector<std::size_t> parent;  // parent[0] == 0 (root)
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // (parent, child), insertion order
  double weight = 0.0;  // LB
};

// Prim's algorithm on the dense matrix, O(n^2). Ties go to the smaller index.
MinimumSpanningTree mst(const MetricSpace& metric);

struct HamiltonianPath {
  std::vector<std::size_t> order;
  double weight = 0.0;
};

// Preorder walk of the MST (children by ascending index) with shortcutting.
// Throws InvalidInput when triangle validation is enabled and a shortcut is
// longer than the tree walk it replaces.
HamiltonianPath hamiltonian_path(const MetricSpace& metric, const MinimumSpanningTree& tree);

// Position of each path vertex on [0, 1]: cumulative hop length over the
// total path weight. Requires a positive path weight.
std::vector<double> unfold_to_line(const MetricSpace& metric, const HamiltonianPath& path);

// Binary search tree over sorted positions; vertex i is position i. Each
// range [lo, hi] is rooted at lo + (hi - lo) / 2 and edge lengths are
// differences of positions.
RootedTree balanced_tree(std::span<const double> positions);

// Level-proportional allocation: every edge level gets 1/levels of the
// budget, split within the level in proportion to edge length.
Allocation level_allocation(const RootedTree& tree);

struct ApproxReport {
  RootedTree tree;                   // vertex i is hp_order[i]; unit-length line
  Allocation tree_allocation;        // exact optimum on `tree`
  std::vector<std::size_t> hp_order;
  BudgetGraph graph;                 // complete graph on the metric
  Allocation graph_allocation;       // tree_allocation moved onto `graph`, 0 elsewhere
  double radius = 0.0;               // weighted radius of graph_allocation from root_point
  double line_radius = 0.0;          // optimal tree radius times hp_weight (>= radius)
  std::size_t root_point = 0;
  double lb = 0.0;                   // MST weight
  double hp_weight = 0.0;
  double ratio_bound = 0.0;          // 2 * ceil(log2 n)^2
  double achieved_ratio_vs_lb = 0.0;
  std::vector<double> distances;     // per point, from root_point
};

// Complete graph with edges (i, j), i < j, in lexicographic order.
BudgetGraph complete_graph(const MetricSpace& metric);
EdgeId complete_graph_edge(std::size_t n, std::size_t i, std::size_t j);

// MST -> Hamiltonian path -> unit line -> balanced tree -> exact tree solve.
ApproxReport approx_metric_radius(const MetricSpace& metric);

double approx_ratio_bound(std::size_t n);

}  // namespace budgetgraph
