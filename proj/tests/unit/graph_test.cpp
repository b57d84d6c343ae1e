#include <gtest/gtest.h>

#include <cmath>

#include "budgetgraph/graph.hpp"
#include "generators.hpp"
#include "oracles.hpp"

namespace budgetgraph {
namespace {

using testing::Rng;

TEST(EdgeWeight, Definition) {
  EXPECT_DOUBLE_EQ(edge_weight(1.0, 0.5, 1.0), 2.0);
  EXPECT_DOUBLE_EQ(edge_weight(3.0, 0.25, 2.0), 6.0);
}

TEST(EdgeWeight, ZeroBudgetIsInfinite) { EXPECT_EQ(edge_weight(1.0, 0.0, 1.0), kInfinity); }

TEST(BudgetGraph, RejectsBadInput) {
  EXPECT_THROW(BudgetGraph(0, {}), InvalidInput);
  EXPECT_THROW(BudgetGraph(2, {{0, 1, 0.0}}), InvalidInput);
  EXPECT_THROW(BudgetGraph(2, {{0, 1, -1.0}}), InvalidInput);
  EXPECT_THROW(BudgetGraph(2, {{0, 0, 1.0}, {0, 1, 1.0}}), InvalidInput);
  EXPECT_THROW(BudgetGraph(2, {{0, 1, 1.0}, {1, 0, 2.0}}), InvalidInput);
  EXPECT_THROW(BudgetGraph(4, {{0, 1, 1.0}, {2, 3, 1.0}}), InvalidInput);
  EXPECT_THROW(BudgetGraph(2, {{0, 2, 1.0}}), InvalidInput);
  EXPECT_THROW(BudgetGraph(2, {{0, 1, 1.0}}, {"a", "a"}), InvalidInput);
}

TEST(BudgetGraph, NeighborsSortedAndKeys) {
  const BudgetGraph g(4, {{3, 0, 1.0}, {0, 1, 2.0}, {2, 0, 3.0}}, {"d", "a", "c", "b"});
  auto nb = g.neighbors(0);
  ASSERT_EQ(nb.size(), 3u);
  EXPECT_EQ(nb[0].to, 1);
  EXPECT_EQ(nb[1].to, 2);
  EXPECT_EQ(nb[2].to, 3);
  EXPECT_EQ(g.edge_key(0), "d-b");  // label of the smaller id first
  EXPECT_EQ(g.find_vertex("c"), 2);
  EXPECT_FALSE(g.find_vertex("z"));
  EXPECT_EQ(g.find_edge(1, 0), 1);
  EXPECT_TRUE(g.is_tree());
  EXPECT_DOUBLE_EQ(g.total_length(), 6.0);
}

TEST(Allocation, Validation) {
  EXPECT_NO_THROW(Allocation({0.25, 0.75}));
  EXPECT_THROW(Allocation({0.5, 0.6}), InvalidInput);
  EXPECT_THROW(Allocation({-0.1, 1.1}), InvalidInput);
  EXPECT_THROW(Allocation({0.5, 0.5}, 0.0), InvalidInput);
  EXPECT_NO_THROW(Allocation({0.5, 0.5 + 5e-10}));
  const Allocation a({0.25, 0.75}, 4.0);
  EXPECT_DOUBLE_EQ(a.budget(1), 3.0);
  EXPECT_DOUBLE_EQ(a.with_budget(2.0).budget(1), 1.5);
}

TEST(WeightedDistances, PathWithHalfBudgets) {
  const BudgetGraph g = testing::path_graph(3);
  const auto d = weighted_distances(g, Allocation({0.5, 0.5}), 0);
  EXPECT_DOUBLE_EQ(d[0], 0.0);
  EXPECT_DOUBLE_EQ(d[1], 2.0);
  EXPECT_DOUBLE_EQ(d[2], 4.0);
}

TEST(WeightedDistances, ZeroBudgetSpokeIsUnreachable) {
  const BudgetGraph g = testing::star_graph(3);
  const auto d = weighted_distances(g, Allocation({0.5, 0.5, 0.0}), 0);
  EXPECT_EQ(d[3], kInfinity);
  EXPECT_EQ(evaluate_radius(g, Allocation({0.5, 0.5, 0.0}), 0), kInfinity);
}

TEST(Evaluate, CaseBThirdsAndQuarters) {
  const BudgetGraph g = testing::case_b();
  EXPECT_NEAR(evaluate_radius(g, Allocation({1.0 / 3, 1.0 / 3, 1.0 / 3}), 0), 6.0, 1e-12);
  EXPECT_NEAR(evaluate_radius(g, Allocation({0.5, 0.25, 0.25}), 0), 6.0, 1e-12);
}

TEST(Evaluate, SingleVertex) {
  const BudgetGraph g(1, {});
  EXPECT_EQ(evaluate_radius(g, Allocation(), 0), 0.0);
  EXPECT_EQ(evaluate_median(g, Allocation(), 0).sum, 0.0);
}

TEST(Evaluate, MedianOnTwoEdgePath) {
  // sum = 2/b + 1/(1 - b), minimized by calculus.
  const auto best = testing::golden_section([](double b) { return 2.0 / b + 1.0 / (1.0 - b); }, 1e-6, 1 - 1e-6);
  const BudgetGraph g = testing::path_graph(3);
  const MedianValue m = evaluate_median(g, Allocation({best.x, 1.0 - best.x}), 0);
  EXPECT_NEAR(m.sum, 3.0 + 2.0 * std::sqrt(2.0), 1e-9);
  EXPECT_NEAR(m.average, m.sum / 3.0, 1e-15);
}

TEST(EvaluateProperty, BudgetAndLengthScaling) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = static_cast<VertexId>(testing::uniform_int(rng, 2, 12));
    const BudgetGraph g = testing::random_connected_graph(rng, n, 0.3);
    std::vector<double> f(static_cast<std::size_t>(g.num_edges()));
    double sum = 0.0;
    for (double& x : f) sum += (x = testing::uniform(rng, 0.01, 1.0));
    for (double& x : f) x /= sum;
    const Allocation unit(f);
    const double B = testing::log_uniform(rng, 0.01, 100.0);
    const VertexId root = static_cast<VertexId>(testing::uniform_int(rng, 0, n - 1));
    const double r1 = evaluate_radius(g, unit, root);
    EXPECT_LE(testing::relative_error(evaluate_radius(g, unit.with_budget(B), root), r1 / B), 1e-12);

    const double c = testing::log_uniform(rng, 0.1, 10.0);
    std::vector<Edge> scaled = g.edges();
    for (Edge& e : scaled) e.length *= c;
    const BudgetGraph gc(n, scaled);
    EXPECT_LE(testing::relative_error(evaluate_radius(gc, unit, root), c * r1), 1e-12);
    EXPECT_LE(testing::relative_error(evaluate_median(gc, unit, root).sum, c * evaluate_median(g, unit, root).sum),
              1e-12);
  }
}

TEST(EvaluateProperty, TriangleAndBellmanFordAgreement) {
  Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = static_cast<VertexId>(testing::uniform_int(rng, 2, 15));
    const BudgetGraph g = testing::random_connected_graph(rng, n, 0.4);
    std::vector<double> f(static_cast<std::size_t>(g.num_edges()));
    double sum = 0.0;
    for (double& x : f) sum += (x = testing::uniform(rng, 0.0, 1.0) < 0.1 ? 0.0 : testing::uniform(rng, 0.01, 1.0));
    if (sum == 0.0) continue;
    for (double& x : f) x /= sum;
    const Allocation alloc(f);
    const VertexId src = static_cast<VertexId>(testing::uniform_int(rng, 0, n - 1));
    const auto d = weighted_distances(g, alloc, src);
    const auto ref = testing::bellman_ford(g, alloc, src);
    for (VertexId v = 0; v < n; ++v) {
      const auto i = static_cast<std::size_t>(v);
      if (std::isinf(ref[i])) {
        EXPECT_TRUE(std::isinf(d[i]));
      } else {
        EXPECT_LE(testing::relative_error(d[i], ref[i]), 1e-12);
      }
    }
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      const Edge& ed = g.edge(e);
      const double w = edge_weight(ed.length, alloc.fraction(e), 1.0);
      const auto u = static_cast<std::size_t>(ed.u), v = static_cast<std::size_t>(ed.v);
      if (std::isfinite(d[u]) && std::isfinite(w)) EXPECT_LE(d[v], (d[u] + w) * (1 + 1e-12));
      if (std::isfinite(d[v]) && std::isfinite(w)) EXPECT_LE(d[u], (d[v] + w) * (1 + 1e-12));
    }
  }
}

TEST(Tolerance, RelativeWithFloor) {
  const Tolerance tol;
  EXPECT_TRUE(tol.close(1.0, 1.0 + 5e-10));
  EXPECT_FALSE(tol.close(1.0, 1.0 + 5e-9));
  EXPECT_TRUE(tol.close(0.0, 5e-13));
  EXPECT_TRUE(tol.close(kInfinity, kInfinity));
  EXPECT_FALSE(tol.close(kInfinity, 1.0));
}

}  // namespace
}  // namespace budgetgraph
