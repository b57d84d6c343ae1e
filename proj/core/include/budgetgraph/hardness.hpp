#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "budgetgraph/graph.hpp"

namespace budgetgraph {

struct StarSolution {
  double radius = 0.0;
  double center_fraction = 0.0;  // share of B on the edge from the root to the star center
  double spoke_fraction = 0.0;   // share of B on each of the k spokes
};

// Root joined by a unit edge to a center carrying k spokes of length x.
// Optimal radius (1 + sqrt(x k))^2 / B.
StarSolution star_optimal_radius(double spoke_length, int spokes, double budget = 1.0);

/// Set-cover instance with sets of at most three elements.
class SetCoverInstance {
 public:
  // `sets` holds indices into `universe`. Throws InvalidInput when the
  // instance is empty, a set is empty, has more than 3 or repeated
  // elements, or an element is not covered by any set.
  SetCoverInstance(std::vector<std::string> universe, std::vector<std::vector<std::size_t>> sets);

  const std::vector<std::string>& universe() const { return universe_; }
  const std::vector<std::vector<std::size_t>>& sets() const { return sets_; }

 private:
  std::vector<std::string> universe_;
  std::vector<std::vector<std::size_t>> sets_;
};

// {"universe": [...], "sets": [[...], ...]}; set members name universe entries.
SetCoverInstance parse_setcover_json(std::string_view text);

// Edge lengths of the gadget edges from a set-node to the element-nodes it
// covers, by the number c of covered elements: x = 1, y = (sqrt6 - 1)^2 / 2,
// z = (sqrt8 - 1)^2 / 3. They make the star costs (1 + sqrt(c * len))^2
// equal 4, 6 and 8.
double gadget_length(std::size_t covered);

enum class NodeRole { kRoot, kElement, kSetNode };

struct NodeInfo {
  NodeRole role = NodeRole::kRoot;
  std::size_t element = 0;           // kElement
  std::size_t set = 0;               // kSetNode
  std::vector<std::size_t> subset;   // kSetNode: covered universe indices
};

/// Rooted-radius instance built from a set-cover instance.
///
/// Labels: "r" for the root, "e<element>" for element-nodes and
/// "s<set>_<a>.<b>..." for set-nodes. A set with k elements gets one
/// set-node per nonempty subset (2^k - 1 of them), each joined to the root by
/// a unit edge and to its subset's element-nodes by gadget_length(|subset|).
struct ReductionOutput {
  SetCoverInstance instance;
  BudgetGraph graph;
  VertexId root = 0;
  std::vector<NodeInfo> roles;                    // by vertex id
  std::vector<std::vector<VertexId>> set_nodes;   // per set
  std::vector<VertexId> element_nodes;            // per element
};

ReductionOutput reduce_setcover(const SetCoverInstance& instance);

struct Witness {
  Allocation allocation;       // fractions of budget_cost
  double budget_cost = 0.0;    // budget that yields radius exactly 1
  std::vector<double> per_set_cost;
};

// `element_to_set[i]` is the set chosen to cover element i; it must contain
// the element. Each set with chosen elements spends (1 + sqrt(c * len))^2 on
// the star through the set-node for exactly those elements and 1 on every
// other root edge of its gadget; unused sets spend 1 per root edge.
Witness cover_to_allocation(const ReductionOutput& reduction,
                            const std::vector<std::size_t>& element_to_set);

// sum_j (2^|S_j| - 1) + 2 |E| + (number of sets used); 7|S| + 2|E| + used
// when every set has three elements.
double expected_cover_cost(const SetCoverInstance& instance,
                           const std::vector<std::size_t>& element_to_set);

// {"assignment": {"<element>": <set index>, ...}}.
std::vector<std::size_t> parse_cover_json(const SetCoverInstance& instance, std::string_view text);

}  // namespace budgetgraph
