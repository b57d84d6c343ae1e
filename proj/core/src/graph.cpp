#include "budgetgraph/graph.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <queue>
#include <set>
#include <utility>

namespace budgetgraph {

bool Tolerance::close(double a, double b) const {
  if (a == b) return true;  // covers matching infinities
  if (!std::isfinite(a) || !std::isfinite(b)) return false;
  return std::abs(a - b) <= std::max(abs, rel * std::max(std::abs(a), std::abs(b)));
}

BudgetGraph::BudgetGraph(VertexId num_vertices, std::vector<Edge> edges,
                         std::vector<std::string> labels)
    : num_vertices_(num_vertices), edges_(std::move(edges)), labels_(std::move(labels)) {
  if (num_vertices_ < 1) throw InvalidInput("graph must have at least one vertex");
  const auto n = static_cast<std::size_t>(num_vertices_);

  if (labels_.empty()) {
    labels_.reserve(n);
    for (VertexId v = 0; v < num_vertices_; ++v) labels_.push_back(std::to_string(v));
  } else if (labels_.size() != n) {
    throw InvalidInput("label count does not match vertex count");
  }
  for (VertexId v = 0; v < num_vertices_; ++v) {
    if (!label_index_.emplace(labels_[static_cast<std::size_t>(v)], v).second) {
      throw InvalidInput("duplicate vertex label '" + labels_[static_cast<std::size_t>(v)] + "'");
    }
  }

  std::set<std::pair<VertexId, VertexId>> seen;
  for (const Edge& e : edges_) {
    if (e.u < 0 || e.v < 0 || e.u >= num_vertices_ || e.v >= num_vertices_) {
      throw InvalidInput("edge endpoint out of range");
    }
    if (e.u == e.v) throw InvalidInput("self-loop at vertex '" + label(e.u) + "'");
    if (!(e.length > 0.0) || !std::isfinite(e.length)) {
      throw InvalidInput("non-positive length on edge " + label(e.u) + "-" + label(e.v));
    }
    if (!seen.emplace(std::min(e.u, e.v), std::max(e.u, e.v)).second) {
      throw InvalidInput("duplicate edge " + label(e.u) + "-" + label(e.v));
    }
  }

  // CSR adjacency sorted by neighbor id.
  std::vector<std::size_t> degree(n, 0);
  for (const Edge& e : edges_) {
    ++degree[static_cast<std::size_t>(e.u)];
    ++degree[static_cast<std::size_t>(e.v)];
  }
  adjacency_offsets_.assign(n + 1, 0);
  std::partial_sum(degree.begin(), degree.end(), adjacency_offsets_.begin() + 1);
  adjacency_.resize(adjacency_offsets_.back());
  std::vector<std::size_t> cursor(adjacency_offsets_.begin(), adjacency_offsets_.end() - 1);
  for (EdgeId id = 0; id < num_edges(); ++id) {
    const Edge& e = edge(id);
    adjacency_[cursor[static_cast<std::size_t>(e.u)]++] = {e.v, id};
    adjacency_[cursor[static_cast<std::size_t>(e.v)]++] = {e.u, id};
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(adjacency_offsets_[v]),
              adjacency_.begin() + static_cast<std::ptrdiff_t>(adjacency_offsets_[v + 1]),
              [](const Incidence& a, const Incidence& b) { return a.to < b.to; });
  }

  std::vector<char> visited(n, 0);
  std::vector<VertexId> stack{0};
  visited[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (const Incidence& inc : neighbors(v)) {
      if (!visited[static_cast<std::size_t>(inc.to)]) {
        visited[static_cast<std::size_t>(inc.to)] = 1;
        ++reached;
        stack.push_back(inc.to);
      }
    }
  }
  if (reached != n) throw InvalidInput("graph is disconnected");
}

std::span<const Incidence> BudgetGraph::neighbors(VertexId v) const {
  const auto i = static_cast<std::size_t>(v);
  return std::span<const Incidence>(adjacency_).subspan(
      adjacency_offsets_[i], adjacency_offsets_[i + 1] - adjacency_offsets_[i]);
}

std::optional<VertexId> BudgetGraph::find_vertex(std::string_view name) const {
  auto it = label_index_.find(std::string(name));
  if (it == label_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<EdgeId> BudgetGraph::find_edge(VertexId u, VertexId v) const {
  for (const Incidence& inc : neighbors(u)) {
    if (inc.to == v) return inc.edge;
  }
  return std::nullopt;
}

std::string BudgetGraph::edge_key(EdgeId id) const {
  const Edge& e = edge(id);
  return label(std::min(e.u, e.v)) + "-" + label(std::max(e.u, e.v));
}

double BudgetGraph::total_length() const {
  double sum = 0.0;
  for (const Edge& e : edges_) sum += e.length;
  return sum;
}

Allocation::Allocation(std::vector<double> fractions, double total_budget)
    : fractions_(std::move(fractions)), total_budget_(total_budget) {
  if (!(total_budget_ > 0.0) || !std::isfinite(total_budget_)) {
    throw InvalidInput("total budget must be positive");
  }
  double sum = 0.0;
  for (double b : fractions_) {
    if (!(b >= 0.0) || !std::isfinite(b)) throw InvalidInput("budget fractions must be non-negative");
    sum += b;
  }
  if (!fractions_.empty() && std::abs(sum - 1.0) > 1e-9) {
    throw InvalidInput("budget fractions sum to " + std::to_string(sum) + ", expected 1");
  }
}

Allocation Allocation::uniform(EdgeId num_edges, double total_budget) {
  if (num_edges <= 0) return Allocation({}, total_budget);
  return Allocation(std::vector<double>(static_cast<std::size_t>(num_edges),
                                        1.0 / static_cast<double>(num_edges)),
                    total_budget);
}

Allocation Allocation::with_budget(double total_budget) const {
  return Allocation(fractions_, total_budget);
}

double edge_weight(double length, double fraction, double budget) {
  if (fraction <= 0.0) return kInfinity;
  return length / (fraction * budget);
}

namespace {

void check_sizes(const BudgetGraph& graph, const Allocation& allocation, VertexId v) {
  if (allocation.size() != static_cast<std::size_t>(graph.num_edges())) {
    throw InvalidInput("allocation does not cover the graph's edges");
  }
  if (v < 0 || v >= graph.num_vertices()) throw InvalidInput("vertex out of range");
}

}  // namespace

std::vector<double> weighted_distances(const BudgetGraph& graph,
                                       const Allocation& allocation,
                                       VertexId source) {
  check_sizes(graph, allocation, source);
  const auto n = static_cast<std::size_t>(graph.num_vertices());
  std::vector<double> dist(n, kInfinity);
  using Item = std::pair<double, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[static_cast<std::size_t>(source)] = 0.0;
  queue.emplace(0.0, source);
  while (!queue.empty()) {
    auto [d, v] = queue.top();
    queue.pop();
    if (d > dist[static_cast<std::size_t>(v)]) continue;
    for (const Incidence& inc : graph.neighbors(v)) {
      const double w = edge_weight(graph.edge(inc.edge).length, allocation.fraction(inc.edge),
                                   allocation.total_budget());
      if (!std::isfinite(w)) continue;
      const double nd = d + w;
      if (nd < dist[static_cast<std::size_t>(inc.to)]) {
        dist[static_cast<std::size_t>(inc.to)] = nd;
        queue.emplace(nd, inc.to);
      }
    }
  }
  return dist;
}

double evaluate_radius(const BudgetGraph& graph, const Allocation& allocation,
                       VertexId root) {
  if (graph.num_vertices() == 1) return 0.0;
  const auto dist = weighted_distances(graph, allocation, root);
  return *std::max_element(dist.begin(), dist.end());
}

MedianValue evaluate_median(const BudgetGraph& graph, const Allocation& allocation,
                            VertexId root) {
  if (graph.num_vertices() == 1) return {0.0, 0.0};
  const auto dist = weighted_distances(graph, allocation, root);
  const double sum = std::accumulate(dist.begin(), dist.end(), 0.0);
  return {sum, sum / static_cast<double>(graph.num_vertices())};
}

}  // namespace budgetgraph
