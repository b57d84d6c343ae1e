#pragma once

#include <memory>
#include <span>
#include <vector>

#include "budgetgraph/graph.hpp"

namespace budgetgraph {

/// A tree-shaped BudgetGraph with a designated root.
///
/// Children are ordered by vertex id. `preorder()` lists every vertex with
/// parents before children, so bottom-up passes iterate it in reverse and no
/// pass recurses (paths with 10^6 vertices are fine).
class RootedTree {
 public:
  RootedTree(BudgetGraph graph, VertexId root);
  RootedTree(std::shared_ptr<const BudgetGraph> graph, VertexId root);

  const BudgetGraph& graph() const { return *graph_; }
  const std::shared_ptr<const BudgetGraph>& shared_graph() const { return graph_; }

  VertexId root() const { return root_; }
  VertexId size() const { return graph_->num_vertices(); }

  VertexId parent(VertexId v) const { return parent_[idx(v)]; }
  EdgeId parent_edge(VertexId v) const { return parent_edge_[idx(v)]; }
  // Length of the edge to the parent; 0 at the root.
  double parent_length(VertexId v) const;
  std::span<const VertexId> children(VertexId v) const;
  bool is_leaf(VertexId v) const { return children(v).empty(); }
  VertexId subtree_size(VertexId v) const { return subtree_size_[idx(v)]; }
  std::span<const VertexId> preorder() const { return preorder_; }

  RootedTree reroot(VertexId new_root) const { return RootedTree(graph_, new_root); }

 private:
  static std::size_t idx(VertexId v) { return static_cast<std::size_t>(v); }
  void build();

  std::shared_ptr<const BudgetGraph> graph_;
  VertexId root_;
  std::vector<VertexId> parent_;
  std::vector<EdgeId> parent_edge_;
  std::vector<std::size_t> child_offsets_;
  std::vector<VertexId> child_list_;
  std::vector<VertexId> subtree_size_;
  std::vector<VertexId> preorder_;
};

// Root-to-vertex weighted distances along tree paths, O(n).
std::vector<double> tree_distances(const RootedTree& tree, const Allocation& allocation);

// Per-level edge sets: level i holds the edges between depth i and i + 1.
std::vector<std::vector<EdgeId>> edge_levels(const RootedTree& tree);

}  // namespace budgetgraph
