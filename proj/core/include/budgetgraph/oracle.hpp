#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "budgetgraph/graph.hpp"

namespace budgetgraph {

// Reference solvers for small instances. They share no code with the tree
// recurrences and exist to check them.

struct OracleConfig {
  int max_iters = 20000;
  double step_scale = 0.25;  // step at iteration t is step_scale / sqrt(t)
  double tol = 1e-6;
  int restarts = 5;          // first restart from `initial` (or uniform), rest Dirichlet
  std::uint64_t seed = 0;
  // Newton refinement on the shortest-path tree of the best iterate.
  bool polish = true;
  std::optional<std::vector<double>> initial;

  void validate() const;
};

struct OracleReport {
  SolveReport solution;
  double subgradient_objective = kInfinity;  // best iterate before refinement
  bool subgradient_converged = false;        // last 10% improved by <= tol (relative)
  bool converged = false;                    // refinement reached tol, or subgradient did
  int iterations = 0;                        // subgradient steps over all restarts
  int best_restart = 0;
  double off_tree_mass = 0.0;  // budget on edges outside the final shortest-path tree
};

// Projected subgradient descent on the budget simplex for the weighted
// radius from `root`. Deterministic given cfg.seed.
OracleReport numeric_optimize_radius(const BudgetGraph& graph, VertexId root,
                                     const OracleConfig& cfg = {});

// Same scheme for the sum of weighted distances from `root`.
OracleReport numeric_optimize_median(const BudgetGraph& graph, VertexId root,
                                     const OracleConfig& cfg = {});

// One projected subgradient step for the radius objective: the gradient of
// the distance to the farthest vertex (smallest id on ties) with `step`
// length, projected back onto the simplex. Exposed for testing.
std::vector<double> radius_subgradient_step(const BudgetGraph& graph, VertexId root,
                                            const std::vector<double>& fractions, double step);

// Euclidean projection onto {x : x_i >= floor, sum x_i = 1}.
std::vector<double> project_to_simplex(std::vector<double> x, double floor = 0.0);

class EnumerationCapExceeded : public std::runtime_error {
 public:
  EnumerationCapExceeded(double estimate, std::uint64_t cap);
  double estimate() const { return estimate_; }

 private:
  double estimate_;
};

// Number of spanning trees by the matrix-tree theorem (floating point).
double count_spanning_trees(const BudgetGraph& graph);

// Calls `visit` with the edge ids of every spanning tree, in lexicographic
// order of the include/exclude decisions over edge ids.
void for_each_spanning_tree(const BudgetGraph& graph,
                            const std::function<void(const std::vector<EdgeId>&)>& visit);

struct ExactEnumReport {
  SolveReport solution;
  std::vector<EdgeId> best_tree;
  std::uint64_t trees_enumerated = 0;
};

// Minimum over spanning trees of the exact tree radius at `root`. Refuses
// with EnumerationCapExceeded when the tree count exceeds `cap`.
ExactEnumReport exact_small_graph_radius(const BudgetGraph& graph, VertexId root,
                                         std::uint64_t cap = 1'000'000);

}  // namespace budgetgraph
