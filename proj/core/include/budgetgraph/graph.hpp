#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace budgetgraph {

using VertexId = std::int32_t;
using EdgeId = std::int32_t;

inline constexpr VertexId kNoVertex = -1;
inline constexpr EdgeId kNoEdge = -1;
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Malformed or semantically invalid input (parse errors, bad lengths,
// disconnected graphs, invalid covers). Maps to CLI exit status 1.
class InvalidInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computed result failed a self-check. Maps to CLI exit status 2.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Relative tolerance with an absolute floor.
struct Tolerance {
  double rel = 1e-9;
  double abs = 1e-12;

  bool close(double a, double b) const;
};

struct Edge {
  VertexId u = kNoVertex;
  VertexId v = kNoVertex;
  double length = 0.0;
};

struct Incidence {
  VertexId to = kNoVertex;
  EdgeId edge = kNoEdge;
};

/// Connected undirected graph with strictly positive edge lengths.
///
/// Vertices are dense ids 0..n-1 with optional external labels (defaulting to
/// the decimal id). The constructor validates every invariant and throws
/// InvalidInput on violation; instances are immutable afterwards.
class BudgetGraph {
 public:
  BudgetGraph(VertexId num_vertices, std::vector<Edge> edges,
              std::vector<std::string> labels = {});

  VertexId num_vertices() const { return num_vertices_; }
  EdgeId num_edges() const { return static_cast<EdgeId>(edges_.size()); }
  bool is_tree() const { return num_edges() + 1 == num_vertices_; }

  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[static_cast<std::size_t>(e)]; }

  // Incident edges of v, ordered by neighbor id.
  std::span<const Incidence> neighbors(VertexId v) const;

  const std::string& label(VertexId v) const {
    return labels_[static_cast<std::size_t>(v)];
  }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<VertexId> find_vertex(std::string_view label) const;
  std::optional<EdgeId> find_edge(VertexId u, VertexId v) const;

  // "<label(min id)>-<label(max id)>".
  std::string edge_key(EdgeId e) const;

  double total_length() const;

 private:
  VertexId num_vertices_;
  std::vector<Edge> edges_;
  std::vector<std::string> labels_;
  std::vector<std::size_t> adjacency_offsets_;
  std::vector<Incidence> adjacency_;
  std::unordered_map<std::string, VertexId> label_index_;
};

/// Per-edge budget fractions summing to 1, plus the total budget B they
/// are fractions of. An edge-less instance carries an empty allocation.
class Allocation {
 public:
  Allocation() = default;
  explicit Allocation(std::vector<double> fractions, double total_budget = 1.0);

  static Allocation uniform(EdgeId num_edges, double total_budget = 1.0);

  std::span<const double> fractions() const { return fractions_; }
  double fraction(EdgeId e) const { return fractions_[static_cast<std::size_t>(e)]; }
  double total_budget() const { return total_budget_; }
  // Absolute budget B * b_e.
  double budget(EdgeId e) const { return total_budget_ * fraction(e); }
  std::size_t size() const { return fractions_.size(); }

  Allocation with_budget(double total_budget) const;

 private:
  std::vector<double> fractions_;
  double total_budget_ = 1.0;
};

struct SolveReport {
  double objective = 0.0;
  Allocation allocation;
  std::vector<double> distances;
  VertexId root = kNoVertex;
  std::optional<double> lower_bound;
  std::optional<double> ratio_certificate;
  // Median solvers only: objective / n.
  std::optional<double> average;
};

struct MedianValue {
  double sum = 0.0;
  double average = 0.0;
};

// w(e) = length / (fraction * budget); +inf for a zero fraction.
double edge_weight(double length, double fraction, double budget = 1.0);

std::vector<double> weighted_distances(const BudgetGraph& graph,
                                       const Allocation& allocation,
                                       VertexId source);

double evaluate_radius(const BudgetGraph& graph, const Allocation& allocation,
                       VertexId root);

MedianValue evaluate_median(const BudgetGraph& graph,
                            const Allocation& allocation, VertexId root);

}  // namespace budgetgraph
