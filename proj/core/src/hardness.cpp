#include "budgetgraph/hardness.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <nlohmann/json.hpp>

namespace budgetgraph {

using nlohmann::json;

StarSolution star_optimal_radius(double spoke_length, int spokes, double budget) {
  if (!(spoke_length > 0.0)) throw InvalidInput("spoke length must be positive");
  if (spokes < 1) throw InvalidInput("star needs at least one spoke");
  if (!(budget > 0.0)) throw InvalidInput("budget must be positive");
  const double s = std::sqrt(spoke_length * spokes);
  StarSolution out;
  out.radius = (1.0 + s) * (1.0 + s) / budget;
  out.center_fraction = 1.0 / (1.0 + s);
  out.spoke_fraction = (1.0 - out.center_fraction) / spokes;
  return out;
}

SetCoverInstance::SetCoverInstance(std::vector<std::string> universe,
                                   std::vector<std::vector<std::size_t>> sets)
    : universe_(std::move(universe)), sets_(std::move(sets)) {
  if (universe_.empty() || sets_.empty()) throw InvalidInput("set-cover instance is empty");
  std::vector<std::string> names = universe_;
  std::sort(names.begin(), names.end());
  if (std::adjacent_find(names.begin(), names.end()) != names.end()) {
    throw InvalidInput("universe has a repeated element");
  }
  std::vector<char> covered(universe_.size(), 0);
  for (std::size_t j = 0; j < sets_.size(); ++j) {
    auto& set = sets_[j];
    if (set.empty() || set.size() > 3) {
      throw InvalidInput("set " + std::to_string(j) + " must have 1 to 3 elements");
    }
    std::sort(set.begin(), set.end());
    if (std::adjacent_find(set.begin(), set.end()) != set.end()) {
      throw InvalidInput("set " + std::to_string(j) + " repeats an element");
    }
    for (std::size_t i : set) {
      if (i >= universe_.size()) throw InvalidInput("set " + std::to_string(j) + " names an unknown element");
      covered[i] = 1;
    }
  }
  for (std::size_t i = 0; i < universe_.size(); ++i) {
    if (!covered[i]) throw InvalidInput("element '" + universe_[i] + "' is in no set");
  }
}

namespace {

std::string element_name(const json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_integer()) return std::to_string(value.get<long long>());
  throw InvalidInput("set-cover elements must be strings or integers");
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("JSON parse error: ") + e.what());
  }
}

// Nonempty subsets of a k-set as bit masks, by size then lexicographically.
std::vector<unsigned> subset_masks(std::size_t k) {
  std::vector<unsigned> masks;
  for (unsigned mask = 1; mask < (1u << k); ++mask) masks.push_back(mask);
  std::stable_sort(masks.begin(), masks.end(), [](unsigned a, unsigned b) {
    if (std::popcount(a) != std::popcount(b)) return std::popcount(a) < std::popcount(b);
    // lower bit (earlier element) first
    return std::countr_zero(a ^ b) == std::countr_zero(a & (a ^ b));
  });
  return masks;
}

}  // namespace

SetCoverInstance parse_setcover_json(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object() || !doc.contains("universe") || !doc.contains("sets") ||
      !doc["universe"].is_array() || !doc["sets"].is_array()) {
    throw InvalidInput("set-cover JSON needs \"universe\" and \"sets\" arrays");
  }
  std::vector<std::string> universe;
  std::map<std::string, std::size_t> index;
  for (const json& e : doc["universe"]) {
    universe.push_back(element_name(e));
    index.emplace(universe.back(), universe.size() - 1);
  }
  std::vector<std::vector<std::size_t>> sets;
  for (const json& s : doc["sets"]) {
    if (!s.is_array()) throw InvalidInput("each set must be an array");
    std::vector<std::size_t> members;
    for (const json& e : s) {
      auto it = index.find(element_name(e));
      if (it == index.end()) throw InvalidInput("set member '" + element_name(e) + "' is not in the universe");
      members.push_back(it->second);
    }
    sets.push_back(std::move(members));
  }
  return SetCoverInstance(std::move(universe), std::move(sets));
}

double gadget_length(std::size_t covered) {
  switch (covered) {
    case 1:
      return 1.0;
    case 2:
      return (std::sqrt(6.0) - 1.0) * (std::sqrt(6.0) - 1.0) / 2.0;
    case 3:
      return (std::sqrt(8.0) - 1.0) * (std::sqrt(8.0) - 1.0) / 3.0;
    default:
      throw InvalidInput("gadget covers 1 to 3 elements");
  }
}

ReductionOutput reduce_setcover(const SetCoverInstance& instance) {
  const auto& universe = instance.universe();
  const auto& sets = instance.sets();

  std::vector<std::string> labels{"r"};
  std::vector<NodeInfo> roles{NodeInfo{}};
  std::vector<VertexId> element_nodes;
  for (std::size_t i = 0; i < universe.size(); ++i) {
    element_nodes.push_back(static_cast<VertexId>(labels.size()));
    labels.push_back("e" + universe[i]);
    roles.push_back({NodeRole::kElement, i, 0, {}});
  }

  std::vector<Edge> edges;
  std::vector<std::vector<VertexId>> set_nodes(sets.size());
  for (std::size_t j = 0; j < sets.size(); ++j) {
    const auto& set = sets[j];
    for (unsigned mask : subset_masks(set.size())) {
      std::vector<std::size_t> subset;
      std::string name = "s" + std::to_string(j) + "_";
      for (std::size_t b = 0; b < set.size(); ++b) {
        if (!(mask & (1u << b))) continue;
        if (!subset.empty()) name += ".";
        name += universe[set[b]];
        subset.push_back(set[b]);
      }
      const auto node = static_cast<VertexId>(labels.size());
      set_nodes[j].push_back(node);
      labels.push_back(std::move(name));
      edges.push_back({0, node, 1.0});
      const double len = gadget_length(subset.size());
      for (std::size_t i : subset) edges.push_back({node, element_nodes[i], len});
      roles.push_back({NodeRole::kSetNode, 0, j, std::move(subset)});
    }
  }

  const auto n = static_cast<VertexId>(labels.size());
  return ReductionOutput{instance, BudgetGraph(n, std::move(edges), std::move(labels)), 0,
                         std::move(roles), std::move(set_nodes), std::move(element_nodes)};
}

namespace {

std::vector<std::vector<std::size_t>> covered_by_set(const SetCoverInstance& instance,
                                                     const std::vector<std::size_t>& element_to_set) {
  const auto& sets = instance.sets();
  if (element_to_set.size() != instance.universe().size()) {
    throw InvalidInput("cover must assign every element exactly once");
  }
  std::vector<std::vector<std::size_t>> chosen(sets.size());
  for (std::size_t i = 0; i < element_to_set.size(); ++i) {
    const std::size_t j = element_to_set[i];
    if (j >= sets.size()) throw InvalidInput("cover names an unknown set for '" + instance.universe()[i] + "'");
    if (!std::binary_search(sets[j].begin(), sets[j].end(), i)) {
      throw InvalidInput("element '" + instance.universe()[i] + "' is not in set " + std::to_string(j));
    }
    chosen[j].push_back(i);
  }
  return chosen;
}

}  // namespace

Witness cover_to_allocation(const ReductionOutput& reduction,
                            const std::vector<std::size_t>& element_to_set) {
  const auto chosen = covered_by_set(reduction.instance, element_to_set);
  const BudgetGraph& g = reduction.graph;
  std::vector<double> budgets(static_cast<std::size_t>(g.num_edges()), 0.0);
  Witness witness;
  witness.per_set_cost.assign(chosen.size(), 0.0);

  for (std::size_t j = 0; j < chosen.size(); ++j) {
    for (VertexId node : reduction.set_nodes[j]) {
      const NodeInfo& info = reduction.roles[static_cast<std::size_t>(node)];
      const EdgeId root_edge = *g.find_edge(reduction.root, node);
      if (chosen[j].empty() || info.subset != chosen[j]) {
        budgets[static_cast<std::size_t>(root_edge)] = 1.0;  // weight 1 at unit length
        witness.per_set_cost[j] += 1.0;
        continue;
      }
      // Star through this set-node scaled to radius exactly 1.
      const std::size_t c = chosen[j].size();
      const double s = std::sqrt(static_cast<double>(c) * gadget_length(c));
      const double star_cost = (1.0 + s) * (1.0 + s);
      budgets[static_cast<std::size_t>(root_edge)] = 1.0 + s;
      for (std::size_t i : chosen[j]) {
        const EdgeId spoke = *g.find_edge(node, reduction.element_nodes[i]);
        budgets[static_cast<std::size_t>(spoke)] = (star_cost - (1.0 + s)) / static_cast<double>(c);
      }
      witness.per_set_cost[j] += star_cost;
    }
  }

  for (double c : witness.per_set_cost) witness.budget_cost += c;
  for (double& b : budgets) b /= witness.budget_cost;
  witness.allocation = Allocation(std::move(budgets), witness.budget_cost);
  return witness;
}

double expected_cover_cost(const SetCoverInstance& instance,
                           const std::vector<std::size_t>& element_to_set) {
  const auto chosen = covered_by_set(instance, element_to_set);
  double cost = 2.0 * static_cast<double>(instance.universe().size());
  for (std::size_t j = 0; j < chosen.size(); ++j) {
    cost += static_cast<double>((1u << instance.sets()[j].size()) - 1);
    if (!chosen[j].empty()) cost += 1.0;
  }
  return cost;
}

std::vector<std::size_t> parse_cover_json(const SetCoverInstance& instance, std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object() || !doc.contains("assignment") || !doc["assignment"].is_object()) {
    throw InvalidInput("cover JSON needs an \"assignment\" object");
  }
  const auto& universe = instance.universe();
  std::vector<std::size_t> element_to_set(universe.size(), instance.sets().size());
  for (const auto& [name, value] : doc["assignment"].items()) {
    auto it = std::find(universe.begin(), universe.end(), name);
    if (it == universe.end()) throw InvalidInput("cover assigns unknown element '" + name + "'");
    if (!value.is_number_unsigned()) throw InvalidInput("set index for '" + name + "' must be a non-negative integer");
    element_to_set[static_cast<std::size_t>(it - universe.begin())] = value.get<std::size_t>();
  }
  for (std::size_t i = 0; i < universe.size(); ++i) {
    if (element_to_set[i] == instance.sets().size()) {
      throw InvalidInput("element '" + universe[i] + "' is not covered");
    }
  }
  return element_to_set;
}

}  // namespace budgetgraph
