#include "budgetgraph/tree.hpp"

#include <utility>

namespace budgetgraph {

RootedTree::RootedTree(BudgetGraph graph, VertexId root)
    : RootedTree(std::make_shared<const BudgetGraph>(std::move(graph)), root) {}

RootedTree::RootedTree(std::shared_ptr<const BudgetGraph> graph, VertexId root)
    : graph_(std::move(graph)), root_(root) {
  if (!graph_) throw InvalidInput("null graph");
  if (!graph_->is_tree()) {
    throw InvalidInput("graph is not a tree: " + std::to_string(graph_->num_edges()) +
                       " edges for " + std::to_string(graph_->num_vertices()) + " vertices");
  }
  if (root_ < 0 || root_ >= graph_->num_vertices()) throw InvalidInput("root out of range");
  build();
}

void RootedTree::build() {
  const auto n = static_cast<std::size_t>(graph_->num_vertices());
  parent_.assign(n, kNoVertex);
  parent_edge_.assign(n, kNoEdge);
  preorder_.clear();
  preorder_.reserve(n);

  // BFS order; connectivity plus n-1 edges already guarantees acyclicity.
  std::vector<char> seen(n, 0);
  preorder_.push_back(root_);
  seen[idx(root_)] = 1;
  for (std::size_t head = 0; head < preorder_.size(); ++head) {
    const VertexId v = preorder_[head];
    for (const Incidence& inc : graph_->neighbors(v)) {
      if (seen[idx(inc.to)]) continue;
      seen[idx(inc.to)] = 1;
      parent_[idx(inc.to)] = v;
      parent_edge_[idx(inc.to)] = inc.edge;
      preorder_.push_back(inc.to);
    }
  }

  child_offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) {
    if (parent_[v] != kNoVertex) ++child_offsets_[idx(parent_[v]) + 1];
  }
  for (std::size_t v = 0; v < n; ++v) child_offsets_[v + 1] += child_offsets_[v];
  child_list_.assign(n > 0 ? n - 1 : 0, kNoVertex);
  std::vector<std::size_t> cursor(child_offsets_.begin(), child_offsets_.end() - 1);
  for (std::size_t v = 0; v < n; ++v) {  // ascending id keeps children sorted
    if (parent_[v] != kNoVertex) child_list_[cursor[idx(parent_[v])]++] = static_cast<VertexId>(v);
  }

  subtree_size_.assign(n, 1);
  for (auto it = preorder_.rbegin(); it != preorder_.rend(); ++it) {
    if (parent_[idx(*it)] != kNoVertex) subtree_size_[idx(parent_[idx(*it)])] += subtree_size_[idx(*it)];
  }
}

double RootedTree::parent_length(VertexId v) const {
  const EdgeId e = parent_edge(v);
  return e == kNoEdge ? 0.0 : graph_->edge(e).length;
}

std::span<const VertexId> RootedTree::children(VertexId v) const {
  return std::span<const VertexId>(child_list_)
      .subspan(child_offsets_[idx(v)], child_offsets_[idx(v) + 1] - child_offsets_[idx(v)]);
}

std::vector<double> tree_distances(const RootedTree& tree, const Allocation& allocation) {
  const BudgetGraph& g = tree.graph();
  if (allocation.size() != static_cast<std::size_t>(g.num_edges())) {
    throw InvalidInput("allocation does not cover the tree's edges");
  }
  std::vector<double> dist(static_cast<std::size_t>(tree.size()), 0.0);
  for (VertexId v : tree.preorder()) {
    if (v == tree.root()) continue;
    const EdgeId e = tree.parent_edge(v);
    dist[static_cast<std::size_t>(v)] =
        dist[static_cast<std::size_t>(tree.parent(v))] +
        edge_weight(g.edge(e).length, allocation.fraction(e), allocation.total_budget());
  }
  return dist;
}

std::vector<std::vector<EdgeId>> edge_levels(const RootedTree& tree) {
  std::vector<int> depth(static_cast<std::size_t>(tree.size()), 0);
  std::vector<std::vector<EdgeId>> levels;
  for (VertexId v : tree.preorder()) {
    if (v == tree.root()) continue;
    const int d = depth[static_cast<std::size_t>(tree.parent(v))];
    depth[static_cast<std::size_t>(v)] = d + 1;
    if (levels.size() <= static_cast<std::size_t>(d)) levels.resize(static_cast<std::size_t>(d) + 1);
    levels[static_cast<std::size_t>(d)].push_back(tree.parent_edge(v));
  }
  return levels;
}

}  // namespace budgetgraph
