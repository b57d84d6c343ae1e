#include "budgetgraph/metric_approx.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "budgetgraph/tree_radius.hpp"

namespace budgetgraph {

MetricSpace::MetricSpace(std::vector<double> distances, std::size_t n, bool validate_triangle)
    : dist_(std::move(distances)), n_(n), validate_triangle_(validate_triangle) {
  if (n_ == 0) throw InvalidInput("metric space needs at least one point");
  if (dist_.size() != n_ * n_) throw InvalidInput("distance matrix is not n x n");
  for (std::size_t i = 0; i < n_; ++i) {
    if ((*this)(i, i) != 0.0) throw InvalidInput("distance matrix diagonal must be zero");
    for (std::size_t j = 0; j < n_; ++j) {
      const double d = (*this)(i, j);
      if (!std::isfinite(d)) throw InvalidInput("distance matrix has a non-finite entry");
      if (d != (*this)(j, i)) throw InvalidInput("distance matrix is not symmetric");
      if (i != j && !(d > 0.0)) {
        throw InvalidInput("distinct points " + std::to_string(i) + " and " + std::to_string(j) +
                           " are at distance zero");
      }
      scale_ = std::max(scale_, d);
    }
  }
  if (validate_triangle_) {
    const double slack = 1e-9 * scale_;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        for (std::size_t k = 0; k < n_; ++k)
          if ((*this)(i, k) > (*this)(i, j) + (*this)(j, k) + slack) {
            throw InvalidInput("triangle inequality violated at (" + std::to_string(i) + ", " +
                               std::to_string(j) + ", " + std::to_string(k) + ")");
          }
  }
}

MetricSpace MetricSpace::from_matrix(std::vector<double> distances, std::size_t n,
                                     bool validate_triangle) {
  return MetricSpace(std::move(distances), n, validate_triangle);
}

MetricSpace MetricSpace::from_points(std::span<const std::vector<double>> points,
                                     bool validate_triangle) {
  const std::size_t n = points.size();
  if (n == 0) throw InvalidInput("point set is empty");
  const std::size_t dim = points[0].size();
  if (dim == 0) throw InvalidInput("points need at least one coordinate");
  for (const auto& p : points) {
    if (p.size() != dim) throw InvalidInput("points have differing dimensions");
  }
  std::vector<double> dist(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double sq = 0.0;
      for (std::size_t c = 0; c < dim; ++c) {
        const double diff = points[i][c] - points[j][c];
        sq += diff * diff;
      }
      dist[i * n + j] = dist[j * n + i] = std::sqrt(sq);
    }
  }
  return MetricSpace(std::move(dist), n, validate_triangle);
}

MinimumSpanningTree mst(const MetricSpace& metric) {
  const std::size_t n = metric.size();
  MinimumSpanningTree tree;
  tree.parent.assign(n, 0);
  std::vector<double> key(n, kInfinity);
  std::vector<char> in_tree(n, 0);
  key[0] = 0.0;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t next = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (!in_tree[v] && (next == n || key[v] < key[next])) next = v;
    }
    in_tree[next] = 1;
    if (step > 0) {
      tree.edges.emplace_back(tree.parent[next], next);
      tree.weight += key[next];
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (!in_tree[v] && metric(next, v) < key[v]) {
        key[v] = metric(next, v);
        tree.parent[v] = next;
      }
    }
  }
  return tree;
}

HamiltonianPath hamiltonian_path(const MetricSpace& metric, const MinimumSpanningTree& tree) {
  const std::size_t n = metric.size();
  std::vector<std::vector<std::size_t>> children(n);
  for (const auto& [p, c] : tree.edges) children[p].push_back(c);
  for (auto& list : children) std::sort(list.begin(), list.end());

  // Weighted depth in the MST, for checking each shortcut against the walk.
  std::vector<double> depth(n, 0.0);
  HamiltonianPath path;
  path.order.reserve(n);
  std::vector<std::size_t> stack{0};
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    if (v != 0) depth[v] = depth[tree.parent[v]] + metric(tree.parent[v], v);
    if (!path.order.empty()) {
      const std::size_t prev = path.order.back();
      const double hop = metric(prev, v);
      // The walk climbs from prev to parent(v), an ancestor of prev, then
      // descends one edge.
      const double walk = depth[prev] + depth[v] - 2.0 * depth[tree.parent[v]];
      if (metric.validates_triangle() && hop > walk + 1e-9 * metric.scale()) {
        throw InvalidInput("triangle inequality violated while shortcutting " +
                           std::to_string(prev) + " -> " + std::to_string(v));
      }
      path.weight += hop;
    }
    path.order.push_back(v);
    for (auto it = children[v].rbegin(); it != children[v].rend(); ++it) stack.push_back(*it);
  }
  return path;
}

std::vector<double> unfold_to_line(const MetricSpace& metric, const HamiltonianPath& path) {
  if (!(path.weight > 0.0)) throw InvalidInput("cannot unfold a path of zero weight");
  std::vector<double> positions(path.order.size(), 0.0);
  double acc = 0.0;
  for (std::size_t i = 1; i < path.order.size(); ++i) {
    acc += metric(path.order[i - 1], path.order[i]);
    positions[i] = acc / path.weight;
  }
  positions.back() = 1.0;
  return positions;
}

RootedTree balanced_tree(std::span<const double> positions) {
  const auto n = static_cast<VertexId>(positions.size());
  if (n == 0) throw InvalidInput("balanced tree needs at least one position");
  for (std::size_t i = 1; i < positions.size(); ++i) {
    if (!(positions[i] > positions[i - 1])) throw InvalidInput("positions must be strictly increasing");
  }
  struct Range {
    VertexId lo, hi, parent;
  };
  std::vector<Edge> edges;
  edges.reserve(positions.size());
  VertexId root = n == 0 ? 0 : (n - 1) / 2;
  std::vector<Range> stack{{0, n - 1, kNoVertex}};
  while (!stack.empty()) {
    const Range r = stack.back();
    stack.pop_back();
    if (r.lo > r.hi) continue;
    const VertexId mid = r.lo + (r.hi - r.lo) / 2;
    if (r.parent != kNoVertex) {
      edges.push_back({r.parent, mid,
                       std::abs(positions[static_cast<std::size_t>(mid)] -
                                positions[static_cast<std::size_t>(r.parent)])});
    }
    stack.push_back({mid + 1, r.hi, mid});
    stack.push_back({r.lo, mid - 1, mid});
  }
  return RootedTree(BudgetGraph(n, std::move(edges)), root);
}

Allocation level_allocation(const RootedTree& tree) {
  const BudgetGraph& g = tree.graph();
  const auto levels = edge_levels(tree);
  std::vector<double> fractions(static_cast<std::size_t>(g.num_edges()), 0.0);
  for (const auto& level : levels) {
    double level_length = 0.0;
    for (EdgeId e : level) level_length += g.edge(e).length;
    for (EdgeId e : level) {
      fractions[static_cast<std::size_t>(e)] =
          g.edge(e).length / level_length / static_cast<double>(levels.size());
    }
  }
  return Allocation(std::move(fractions));
}

EdgeId complete_graph_edge(std::size_t n, std::size_t i, std::size_t j) {
  if (i > j) std::swap(i, j);
  return static_cast<EdgeId>(i * n - i * (i + 1) / 2 + (j - i - 1));
}

BudgetGraph complete_graph(const MetricSpace& metric) {
  const std::size_t n = metric.size();
  std::vector<Edge> edges;
  edges.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      edges.push_back({static_cast<VertexId>(i), static_cast<VertexId>(j), metric(i, j)});
  return BudgetGraph(static_cast<VertexId>(n), std::move(edges));
}

double approx_ratio_bound(std::size_t n) {
  if (n <= 1) return 0.0;
  const double depth = std::ceil(std::log2(static_cast<double>(n)));
  return 2.0 * depth * depth;
}

ApproxReport approx_metric_radius(const MetricSpace& metric) {
  const std::size_t n = metric.size();
  const MinimumSpanningTree spanning = mst(metric);
  const HamiltonianPath path = hamiltonian_path(metric, spanning);

  if (n == 1) {
    return ApproxReport{RootedTree(BudgetGraph(1, {}), 0), Allocation(), path.order,
                        complete_graph(metric), Allocation(), 0.0, 0.0, 0, 0.0, 0.0, 0.0, 0.0,
                        {0.0}};
  }

  const auto positions = unfold_to_line(metric, path);
  RootedTree tree = balanced_tree(positions);
  SolveReport line_solution = solve_rooted_radius(tree);

  BudgetGraph graph = complete_graph(metric);
  std::vector<double> fractions(static_cast<std::size_t>(graph.num_edges()), 0.0);
  std::vector<double> distances(n, 0.0);
  for (VertexId v : tree.preorder()) {
    if (v == tree.root()) continue;
    const EdgeId te = tree.parent_edge(v);
    const std::size_t a = path.order[static_cast<std::size_t>(tree.parent(v))];
    const std::size_t b = path.order[static_cast<std::size_t>(v)];
    const double f = line_solution.allocation.fraction(te);
    fractions[static_cast<std::size_t>(complete_graph_edge(n, a, b))] = f;
    distances[b] = distances[a] + edge_weight(metric(a, b), f);
  }

  ApproxReport report{std::move(tree), line_solution.allocation, path.order, std::move(graph),
                      Allocation(std::move(fractions)), 0.0, 0.0, 0, 0.0, 0.0, 0.0, 0.0,
                      std::move(distances)};
  report.root_point = path.order[static_cast<std::size_t>(report.tree.root())];
  report.radius = *std::max_element(report.distances.begin(), report.distances.end());
  report.line_radius = line_solution.objective * path.weight;
  report.lb = spanning.weight;
  report.hp_weight = path.weight;
  report.ratio_bound = approx_ratio_bound(n);
  report.achieved_ratio_vs_lb = report.radius / report.lb;
  return report;
}

}  // namespace budgetgraph
