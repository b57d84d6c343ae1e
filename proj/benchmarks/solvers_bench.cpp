#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "budgetgraph/metric_approx.hpp"
#include "budgetgraph/oracle.hpp"
#include "budgetgraph/tree_median.hpp"
#include "budgetgraph/tree_radius.hpp"

namespace bg = budgetgraph;

namespace {

// Random recursive tree: vertex v attaches to a uniform earlier vertex.
bg::BudgetGraph random_tree(bg::VertexId n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> length(0.01, 100.0);
  std::vector<bg::Edge> edges;
  edges.reserve(static_cast<std::size_t>(n));
  for (bg::VertexId v = 1; v < n; ++v) {
    edges.push_back({std::uniform_int_distribution<bg::VertexId>(0, v - 1)(rng), v, length(rng)});
  }
  return bg::BudgetGraph(n, std::move(edges));
}

bg::BudgetGraph path(bg::VertexId n) {
  std::vector<bg::Edge> edges;
  edges.reserve(static_cast<std::size_t>(n));
  for (bg::VertexId v = 1; v < n; ++v) edges.push_back({v - 1, v, 1.0});
  return bg::BudgetGraph(n, std::move(edges));
}

std::vector<std::vector<double>> cloud(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::vector<double>> pts(n, std::vector<double>(2));
  for (auto& p : pts) {
    for (double& x : p) x = unit(rng);
  }
  return pts;
}

void BM_RootedRadius(benchmark::State& state) {
  const bg::BudgetGraph g = random_tree(static_cast<bg::VertexId>(state.range(0)), 1);
  const bg::RootedTree t(g, 0);
  for (auto _ : state) benchmark::DoNotOptimize(bg::solve_rooted_radius(t).objective);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RootedRadius)->RangeMultiplier(8)->Range(1 << 6, 1 << 18)->Complexity(benchmark::oN);

void BM_AllRootsRadius(benchmark::State& state) {
  const bg::BudgetGraph g = random_tree(static_cast<bg::VertexId>(state.range(0)), 2);
  const bg::RootedTree t(g, 0);
  for (auto _ : state) benchmark::DoNotOptimize(bg::solve_all_roots_radius(t).best.objective);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_AllRootsRadius)->RangeMultiplier(8)->Range(1 << 6, 1 << 18)->Complexity(benchmark::oN);

void BM_AllRootsRadiusPath(benchmark::State& state) {
  const bg::BudgetGraph g = path(static_cast<bg::VertexId>(state.range(0)));
  const bg::RootedTree t(g, 0);
  for (auto _ : state) benchmark::DoNotOptimize(bg::solve_all_roots_radius(t).best.objective);
}
BENCHMARK(BM_AllRootsRadiusPath)->Arg(1'000'001)->Unit(benchmark::kMillisecond);

void BM_AllRootsMedian(benchmark::State& state) {
  const bg::BudgetGraph g = random_tree(static_cast<bg::VertexId>(state.range(0)), 3);
  const bg::RootedTree t(g, 0);
  for (auto _ : state) benchmark::DoNotOptimize(bg::solve_all_roots_median(t).best_root);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_AllRootsMedian)->RangeMultiplier(8)->Range(1 << 6, 1 << 18)->Complexity(benchmark::oN);

void BM_ApproxPipeline(benchmark::State& state) {
  const bg::MetricSpace m = bg::MetricSpace::from_points(cloud(static_cast<std::size_t>(state.range(0)), 4));
  for (auto _ : state) benchmark::DoNotOptimize(bg::approx_metric_radius(m).radius);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ApproxPipeline)->RangeMultiplier(4)->Range(16, 1024)->Unit(benchmark::kMillisecond);

void BM_NumericOracleSmallGraph(benchmark::State& state) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> length(0.1, 10.0);
  std::vector<bg::Edge> edges;
  for (bg::VertexId u = 0; u < 6; ++u) {
    for (bg::VertexId v = u + 1; v < 6; ++v) edges.push_back({u, v, length(rng)});
  }
  const bg::BudgetGraph g(6, std::move(edges));
  for (auto _ : state) benchmark::DoNotOptimize(bg::numeric_optimize_radius(g, 0).solution.objective);
}
BENCHMARK(BM_NumericOracleSmallGraph)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
