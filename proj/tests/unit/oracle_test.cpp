#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "budgetgraph/oracle.hpp"
#include "budgetgraph/tree_median.hpp"
#include "budgetgraph/tree_radius.hpp"
#include "generators.hpp"
#include "oracles.hpp"

namespace budgetgraph {
namespace {

using testing::Rng;

BudgetGraph triangle() { return BudgetGraph(3, {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}}); }

BudgetGraph k4() {
  std::vector<Edge> edges;
  for (VertexId u = 0; u < 4; ++u) {
    for (VertexId v = u + 1; v < 4; ++v) edges.push_back({u, v, 1.0});
  }
  return BudgetGraph(4, std::move(edges));
}

TEST(Simplex, Projection) {
  const auto p = project_to_simplex({0.5, 0.5, 0.5});
  for (double x : p) EXPECT_NEAR(x, 1.0 / 3, 1e-15);
  const auto q = project_to_simplex({2.0, 0.0, -1.0});
  EXPECT_NEAR(q[0], 1.0, 1e-15);
  EXPECT_NEAR(q[2], 0.0, 1e-15);
  const auto r = project_to_simplex({2.0, 0.0, -1.0}, 0.01);
  EXPECT_NEAR(r[1], 0.01, 1e-15);
  EXPECT_NEAR(std::accumulate(r.begin(), r.end(), 0.0), 1.0, 1e-15);
}

TEST(SpanningTrees, Counts) {
  EXPECT_NEAR(count_spanning_trees(triangle()), 3.0, 1e-9);
  EXPECT_NEAR(count_spanning_trees(k4()), 16.0, 1e-9);
  std::uint64_t seen = 0;
  for_each_spanning_tree(k4(), [&](const std::vector<EdgeId>& ids) {
    EXPECT_EQ(ids.size(), 3u);
    ++seen;
  });
  EXPECT_EQ(seen, 16u);
}

TEST(ExactEnum, TriangleAndK4) {
  const ExactEnumReport tri = exact_small_graph_radius(triangle(), 0);
  EXPECT_NEAR(tri.solution.objective, 2.0, 1e-12);
  EXPECT_EQ(tri.trees_enumerated, 3u);
  EXPECT_EQ(tri.solution.allocation.fraction(2), 0.0);
  EXPECT_NEAR(exact_small_graph_radius(k4(), 2).solution.objective, 3.0, 1e-12);
}

TEST(ExactEnum, TreeInputMatchesTreeSolver) {
  Rng rng(51);
  const BudgetGraph g = testing::random_tree(rng, 7);
  EXPECT_NEAR(exact_small_graph_radius(g, 3).solution.objective, solve_rooted_radius(RootedTree(g, 3)).objective,
              1e-12);
}

TEST(ExactEnum, RefusesAboveCap) {
  std::vector<Edge> edges;
  for (VertexId u = 0; u < 9; ++u) {
    for (VertexId v = u + 1; v < 9; ++v) edges.push_back({u, v, 1.0});
  }
  const BudgetGraph k9(9, edges);  // 9^7 trees
  try {
    exact_small_graph_radius(k9, 0);
    FAIL() << "expected refusal";
  } catch (const EnumerationCapExceeded& e) {
    EXPECT_NEAR(e.estimate(), std::pow(9.0, 7.0), 1.0);
  }
}

TEST(NumericRadius, SmallCases) {
  EXPECT_NEAR(numeric_optimize_radius(testing::case_b(), 0).solution.objective, 3.0 + 2.0 * std::sqrt(2.0),
              1e-4 * 5.83);
  EXPECT_NEAR(numeric_optimize_radius(testing::path_graph(3), 0).solution.objective, 4.0, 4e-6);
  const OracleReport tri = numeric_optimize_radius(triangle(), 1);
  EXPECT_NEAR(tri.solution.objective, 2.0, 2e-4);
  EXPECT_TRUE(tri.converged);
}

TEST(NumericMedian, SmallCases) {
  EXPECT_NEAR(numeric_optimize_median(testing::path_graph(3), 0).solution.objective, 3.0 + 2.0 * std::sqrt(2.0),
              1e-4);
  EXPECT_NEAR(numeric_optimize_median(testing::star_graph(3), 0).solution.objective, 9.0, 9e-6);
}

TEST(NumericOracle, DeterministicGivenSeed) {
  Rng rng(52);
  const BudgetGraph g = testing::random_connected_graph(rng, 6, 0.5);
  OracleConfig cfg;
  cfg.seed = 7;
  cfg.max_iters = 500;
  const OracleReport a = numeric_optimize_radius(g, 0, cfg);
  const OracleReport b = numeric_optimize_radius(g, 0, cfg);
  EXPECT_EQ(a.solution.objective, b.solution.objective);
  EXPECT_EQ(std::vector<double>(a.solution.allocation.fractions().begin(), a.solution.allocation.fractions().end()),
            std::vector<double>(b.solution.allocation.fractions().begin(), b.solution.allocation.fractions().end()));
}

TEST(NumericOracle, ConfigValidation) {
  OracleConfig cfg;
  cfg.tol = 0.0;
  EXPECT_THROW(numeric_optimize_radius(triangle(), 0, cfg), InvalidInput);
  cfg = {};
  cfg.max_iters = 0;
  EXPECT_THROW(numeric_optimize_radius(triangle(), 0, cfg), InvalidInput);
}

TEST(OracleProperty, TreesMatchExactSolvers) {
  Rng rng(53);
  OracleConfig cfg;
  cfg.max_iters = 4000;
  for (int trial = 0; trial < 30; ++trial) {
    const auto n = static_cast<VertexId>(testing::uniform_int(rng, 2, 8));
    const BudgetGraph g = testing::random_tree(rng, n, 0.1, 10.0, testing::random_shape(rng));
    const auto root = static_cast<VertexId>(testing::uniform_int(rng, 0, n - 1));
    const RootedTree tree(g, root);
    EXPECT_LE(testing::relative_error(numeric_optimize_radius(g, root, cfg).solution.objective,
                                      solve_rooted_radius(tree).objective),
              1e-4);
    EXPECT_LE(testing::relative_error(numeric_optimize_median(g, root, cfg).solution.objective,
                                      solve_rooted_median(tree).objective),
              1e-4);
  }
}

TEST(OracleProperty, GraphsMatchEnumerationAndConcentrateOnATree) {
  Rng rng(54);
  OracleConfig cfg;
  cfg.max_iters = 4000;
  for (int trial = 0; trial < 25; ++trial) {
    const auto n = static_cast<VertexId>(testing::uniform_int(rng, 3, 6));
    const BudgetGraph g = testing::random_connected_graph(rng, n, 0.5);
    const auto root = static_cast<VertexId>(testing::uniform_int(rng, 0, n - 1));
    const OracleReport num = numeric_optimize_radius(g, root, cfg);
    const double exact = exact_small_graph_radius(g, root).solution.objective;
    EXPECT_GE(num.solution.objective, exact * (1 - 1e-9));
    EXPECT_LE(testing::relative_error(num.solution.objective, exact), 1e-4);
    EXPECT_LE(num.off_tree_mass, 1e-3);
  }
}

TEST(OracleProperty, SubgradientDirectionIsDescent) {
  // Moving budget onto an edge of the current farthest path never raises the
  // radius beyond second order.
  Rng rng(55);
  const double eps = 1e-6;
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = static_cast<VertexId>(testing::uniform_int(rng, 2, 8));
    const BudgetGraph g = testing::random_connected_graph(rng, n, 0.4);
    std::vector<double> f(static_cast<std::size_t>(g.num_edges()));
    double sum = 0.0;
    for (double& x : f) sum += (x = testing::uniform(rng, 0.05, 1.0));
    for (double& x : f) x /= sum;
    const Allocation alloc(f);
    const auto root = static_cast<VertexId>(testing::uniform_int(rng, 0, n - 1));
    const auto d = testing::bellman_ford(g, alloc, root);
    const auto far = static_cast<VertexId>(std::max_element(d.begin(), d.end()) - d.begin());
    const double base = evaluate_radius(g, alloc, root);
    for (EdgeId e : testing::path_edges(g, alloc, root, far)) {
      std::vector<double> h = f;
      h[static_cast<std::size_t>(e)] += eps;
      for (double& x : h) x /= 1.0 + eps;
      const double moved = evaluate_radius(g, Allocation(h), root);
      EXPECT_LE(moved, base * (1 + 2 * eps));
    }
    const auto stepped = radius_subgradient_step(g, root, f, 1e-3);
    EXPECT_NEAR(std::accumulate(stepped.begin(), stepped.end(), 0.0), 1.0, 1e-12);
  }
}

}  // namespace
}  // namespace budgetgraph
