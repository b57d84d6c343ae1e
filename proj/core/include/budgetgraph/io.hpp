#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "budgetgraph/graph.hpp"

namespace budgetgraph {

// Text formats. Every parser throws InvalidInput with a line or key hint.
//
// Edge list: one "<u> <v> <length>" per line; '#' starts a comment.
// JSON graph: {"nodes": [...], "edges": [{"u": .., "v": .., "len": ..}]};
//   "nodes" is optional (endpoints are collected from the edges).
// Labels get ids in sorted order: numerically if every label is an integer,
// lexicographically otherwise.
BudgetGraph parse_edge_list(std::string_view text);
BudgetGraph parse_graph_json(std::string_view text);
// Dispatches on the first non-blank character ('{' selects JSON).
BudgetGraph load_graph(std::string_view text);
BudgetGraph load_graph_file(const std::filesystem::path& path);

std::string graph_to_json(const BudgetGraph& graph);

// Allocation JSON: {"budget": B, "fractions": {"u-v": b, ...}}. Keys may
// name either orientation; edges absent from the map get 0.
Allocation parse_allocation_json(const BudgetGraph& graph, std::string_view text);
std::string allocation_to_json(const BudgetGraph& graph, const Allocation& allocation);

// (canonical key, fraction) sorted by key.
std::vector<std::pair<std::string, double>> keyed_fractions(const BudgetGraph& graph,
                                                            const Allocation& allocation);

std::string read_file(const std::filesystem::path& path);

// Comma/whitespace separated numeric rows; '#' comments and blank lines are
// skipped, as is a leading header row that does not parse as numbers.
std::vector<std::vector<double>> parse_numeric_csv(std::string_view text);

}  // namespace budgetgraph
