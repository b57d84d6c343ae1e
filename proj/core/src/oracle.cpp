#include "budgetgraph/oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <queue>
#include <random>

namespace budgetgraph {

void OracleConfig::validate() const {
  if (max_iters < 1) throw InvalidInput("oracle max_iters must be >= 1");
  if (!(tol > 0.0)) throw InvalidInput("oracle tol must be positive");
  if (restarts < 1) throw InvalidInput("oracle restarts must be >= 1");
  if (!(step_scale > 0.0)) throw InvalidInput("oracle step_scale must be positive");
}

std::vector<double> project_to_simplex(std::vector<double> x, double floor) {
  const std::size_t m = x.size();
  if (m == 0) return x;
  const double mass = 1.0 - floor * static_cast<double>(m);
  std::vector<double> sorted(m);
  for (std::size_t i = 0; i < m; ++i) sorted[i] = x[i] - floor;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    cumulative += sorted[i];
    const double candidate = (cumulative - mass) / static_cast<double>(i + 1);
    if (sorted[i] - candidate > 0.0) theta = candidate;
  }
  for (double& v : x) v = floor + std::max(v - floor - theta, 0.0);
  return x;
}

namespace {

// Shortest paths under w(e) = l(e) / b(e), keeping the predecessor edge.
struct ShortestPathTree {
  std::vector<double> dist;
  std::vector<EdgeId> pred;
  std::vector<VertexId> settled;  // in order of settlement
};

ShortestPathTree shortest_paths(const BudgetGraph& g, const std::vector<double>& b, VertexId root) {
  const auto n = static_cast<std::size_t>(g.num_vertices());
  ShortestPathTree sp{std::vector<double>(n, kInfinity), std::vector<EdgeId>(n, kNoEdge), {}};
  std::vector<char> done(n, 0);
  using Item = std::pair<double, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  sp.dist[static_cast<std::size_t>(root)] = 0.0;
  queue.emplace(0.0, root);
  while (!queue.empty()) {
    const auto [d, v] = queue.top();
    queue.pop();
    if (done[static_cast<std::size_t>(v)]) continue;
    done[static_cast<std::size_t>(v)] = 1;
    sp.settled.push_back(v);
    for (const Incidence& inc : g.neighbors(v)) {
      const double be = b[static_cast<std::size_t>(inc.edge)];
      if (be <= 0.0) continue;
      const double nd = d + g.edge(inc.edge).length / be;
      if (nd < sp.dist[static_cast<std::size_t>(inc.to)]) {
        sp.dist[static_cast<std::size_t>(inc.to)] = nd;
        sp.pred[static_cast<std::size_t>(inc.to)] = inc.edge;
        queue.emplace(nd, inc.to);
      }
    }
  }
  return sp;
}

VertexId other_end(const BudgetGraph& g, EdgeId e, VertexId v) {
  const Edge& edge = g.edge(e);
  return edge.u == v ? edge.v : edge.u;
}

enum class Objective { kRadius, kMedian };

double objective_value(const ShortestPathTree& sp, Objective kind) {
  if (kind == Objective::kRadius) return *std::max_element(sp.dist.begin(), sp.dist.end());
  return std::accumulate(sp.dist.begin(), sp.dist.end(), 0.0);
}

// Number of vertices whose shortest path uses each tree edge.
std::vector<double> usage_counts(const BudgetGraph& g, const ShortestPathTree& sp) {
  std::vector<double> below(static_cast<std::size_t>(g.num_vertices()), 1.0);
  std::vector<double> count(static_cast<std::size_t>(g.num_edges()), 0.0);
  for (auto it = sp.settled.rbegin(); it != sp.settled.rend(); ++it) {
    const EdgeId e = sp.pred[static_cast<std::size_t>(*it)];
    if (e == kNoEdge) continue;
    count[static_cast<std::size_t>(e)] = below[static_cast<std::size_t>(*it)];
    below[static_cast<std::size_t>(other_end(g, e, *it))] += below[static_cast<std::size_t>(*it)];
  }
  return count;
}

std::vector<double> subgradient(const BudgetGraph& g, const std::vector<double>& b,
                                const ShortestPathTree& sp, Objective kind) {
  std::vector<double> grad(b.size(), 0.0);
  if (kind == Objective::kRadius) {
    // Farthest vertex, smallest id on ties.
    VertexId far = 0;
    for (std::size_t v = 1; v < sp.dist.size(); ++v) {
      if (sp.dist[v] > sp.dist[static_cast<std::size_t>(far)]) far = static_cast<VertexId>(v);
    }
    for (VertexId v = far; sp.pred[static_cast<std::size_t>(v)] != kNoEdge;) {
      const EdgeId e = sp.pred[static_cast<std::size_t>(v)];
      const double be = b[static_cast<std::size_t>(e)];
      grad[static_cast<std::size_t>(e)] = -g.edge(e).length / (be * be);
      v = other_end(g, e, v);
    }
  } else {
    const auto count = usage_counts(g, sp);
    for (std::size_t e = 0; e < b.size(); ++e) {
      if (count[e] > 0.0) grad[e] = -g.edge(static_cast<EdgeId>(e)).length * count[e] / (b[e] * b[e]);
    }
  }
  return grad;
}

std::vector<double> step_along(const std::vector<double>& b, const std::vector<double>& grad,
                               double step, double floor) {
  double norm = 0.0;
  for (double gi : grad) norm += gi * gi;
  norm = std::sqrt(norm);
  if (!(norm > 0.0) || !std::isfinite(norm)) return b;
  std::vector<double> next(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) next[i] = b[i] - step * grad[i] / norm;
  return project_to_simplex(std::move(next), floor);
}

struct Refined {
  std::vector<double> fractions;
  bool converged = false;
};

// Radius on the fixed tree `edges`: minimize the total budget subject to
// every root-to-leaf weighted length <= 1, by a log-barrier Newton method.
// The optimal budget equals the optimal radius at unit budget.
Refined refine_radius(const BudgetGraph& g, const std::vector<double>& b, const ShortestPathTree& sp,
                      double tol) {
  const auto n = static_cast<std::size_t>(g.num_vertices());
  std::vector<EdgeId> tree_edges;
  std::vector<int> var_of(static_cast<std::size_t>(g.num_edges()), -1);
  std::vector<char> has_child(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    const EdgeId e = sp.pred[v];
    if (e == kNoEdge) continue;
    var_of[static_cast<std::size_t>(e)] = static_cast<int>(tree_edges.size());
    tree_edges.push_back(e);
    has_child[static_cast<std::size_t>(other_end(g, e, static_cast<VertexId>(v)))] = 1;
  }
  const std::size_t m = tree_edges.size();
  Refined out{std::vector<double>(b.size(), 0.0), true};
  if (m == 0) return out;

  // Root-to-leaf paths as variable index lists.
  std::vector<std::vector<int>> paths;
  for (std::size_t v = 0; v < n; ++v) {
    if (has_child[v] || sp.pred[v] == kNoEdge) continue;
    std::vector<int> path;
    for (auto u = static_cast<VertexId>(v); sp.pred[static_cast<std::size_t>(u)] != kNoEdge;) {
      const EdgeId e = sp.pred[static_cast<std::size_t>(u)];
      path.push_back(var_of[static_cast<std::size_t>(e)]);
      u = other_end(g, e, u);
    }
    paths.push_back(std::move(path));
  }
  Eigen::VectorXd len(static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i) len[static_cast<Eigen::Index>(i)] = g.edge(tree_edges[i]).length;

  auto load = [&](const Eigen::VectorXd& x, const std::vector<int>& path) {
    double s = 0.0;
    for (int i : path) s += len[i] / x[i];
    return s;
  };
  // Barrier objective; +inf outside the feasible region.
  auto phi = [&](const Eigen::VectorXd& x, double t) {
    if ((x.array() <= 0.0).any()) return kInfinity;
    double value = t * x.sum();
    for (const auto& path : paths) {
      const double slack = 1.0 - load(x, path);
      if (!(slack > 0.0)) return kInfinity;
      value -= std::log(slack);
    }
    return value;
  };

  Eigen::VectorXd x(static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i) x[static_cast<Eigen::Index>(i)] = b[static_cast<std::size_t>(tree_edges[i])];
  double worst = 0.0;
  for (const auto& path : paths) worst = std::max(worst, load(x, path));
  x *= 1.25 * worst;

  const double constraints = static_cast<double>(paths.size());
  double t = static_cast<double>(m) / x.sum();
  bool centered = true;
  for (int outer = 0; outer < 80; ++outer) {
    centered = false;
    for (int iter = 0; iter < 200; ++iter) {
      Eigen::VectorXd grad = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(m), t);
      Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
      for (const auto& path : paths) {
        const double slack = 1.0 - load(x, path);
        Eigen::VectorXd dg = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
        for (int i : path) {
          dg[i] = -len[i] / (x[i] * x[i]);
          hess(i, i) += 2.0 * len[i] / (x[i] * x[i] * x[i]) / slack;
        }
        grad += dg / slack;
        hess += dg * dg.transpose() / (slack * slack);
      }
      const Eigen::VectorXd dx = -hess.ldlt().solve(grad);
      const double decrement = -grad.dot(dx);
      if (!std::isfinite(decrement)) break;
      if (decrement / 2.0 <= 1e-13) {
        centered = true;
        break;
      }
      const double base = phi(x, t);
      double s = 1.0;
      while (s > 1e-16 && phi(x + s * dx, t) > base - 0.25 * s * decrement) s *= 0.5;
      if (s <= 1e-16) {
        centered = true;  // no further progress available in floating point
        break;
      }
      x += s * dx;
    }
    if (constraints / t <= 1e-2 * tol * x.sum()) break;
    t *= 8.0;
  }
  out.converged = centered && constraints / t <= 1e-2 * tol * x.sum();
  const double total = x.sum();
  for (std::size_t i = 0; i < m; ++i) {
    out.fractions[static_cast<std::size_t>(tree_edges[i])] = x[static_cast<Eigen::Index>(i)] / total;
  }
  return out;
}

// Median on the fixed tree: minimize sum_e c_e / x_e on the simplex, with
// c_e = l(e) * (vertices routed through e). Equality-constrained Newton.
Refined refine_median(const BudgetGraph& g, const std::vector<double>& b, const ShortestPathTree& sp,
                      double tol) {
  const auto count = usage_counts(g, sp);
  std::vector<std::size_t> vars;
  for (std::size_t e = 0; e < b.size(); ++e) {
    if (count[e] > 0.0) vars.push_back(e);
  }
  Refined out{std::vector<double>(b.size(), 0.0), true};
  if (vars.empty()) return out;
  const std::size_t m = vars.size();
  std::vector<double> c(m), x(m);
  double mass = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    c[i] = g.edge(static_cast<EdgeId>(vars[i])).length * count[vars[i]];
    x[i] = b[vars[i]];
    mass += x[i];
  }
  for (double& xi : x) xi /= mass;
  auto value = [&](const std::vector<double>& y) {
    double f = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (!(y[i] > 0.0)) return kInfinity;
      f += c[i] / y[i];
    }
    return f;
  };

  out.converged = false;
  std::vector<double> dx(m), trial(m);
  for (int iter = 0; iter < 500; ++iter) {
    // H = diag(2c/x^3), grad = -c/x^2; step keeps sum(x) fixed.
    double hinv_grad = 0.0;
    double hinv_one = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double hinv = x[i] * x[i] * x[i] / (2.0 * c[i]);
      hinv_grad += hinv * (-c[i] / (x[i] * x[i]));
      hinv_one += hinv;
    }
    const double nu = -hinv_grad / hinv_one;
    double decrement = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double hinv = x[i] * x[i] * x[i] / (2.0 * c[i]);
      const double grad = -c[i] / (x[i] * x[i]);
      dx[i] = -hinv * (grad + nu);
      decrement -= grad * dx[i];
    }
    const double f = value(x);
    if (decrement / 2.0 <= 1e-3 * tol * f) {
      out.converged = true;
      break;
    }
    double s = 1.0;
    for (; s > 1e-16; s *= 0.5) {
      for (std::size_t i = 0; i < m; ++i) trial[i] = x[i] + s * dx[i];
      if (value(trial) <= f - 0.25 * s * decrement) break;
    }
    if (s <= 1e-16) {
      out.converged = true;
      break;
    }
    x = trial;
  }
  double total = std::accumulate(x.begin(), x.end(), 0.0);
  for (std::size_t i = 0; i < m; ++i) out.fractions[vars[i]] = x[i] / total;
  return out;
}

// Rebuilds settlement order for an arbitrary predecessor tree rooted at root.
ShortestPathTree tree_from_pred(const BudgetGraph& g, VertexId root, std::vector<EdgeId> pred) {
  const auto n = static_cast<std::size_t>(g.num_vertices());
  std::vector<std::vector<VertexId>> children(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (pred[v] != kNoEdge) {
      children[static_cast<std::size_t>(other_end(g, pred[v], static_cast<VertexId>(v)))].push_back(
          static_cast<VertexId>(v));
    }
  }
  ShortestPathTree t{{}, std::move(pred), {root}};
  for (std::size_t i = 0; i < t.settled.size(); ++i) {
    for (VertexId c : children[static_cast<std::size_t>(t.settled[i])]) t.settled.push_back(c);
  }
  return t;
}

// Edge-exchange search over spanning trees. Each candidate tree differs from
// the current shortest-path tree in one edge and is re-solved by `refine`;
// the first strict improvement is taken. Stops at a local optimum.
template <typename Refine, typename Value>
void exchange_search(const BudgetGraph& g, VertexId root, std::vector<double>& x, double& value,
                     const Refine& refine, const Value& evaluate) {
  const auto m = static_cast<std::size_t>(g.num_edges());
  for (int round = 0; round < 200; ++round) {
    const auto sp = shortest_paths(g, x, root);
    std::vector<char> on_tree(m, 0);
    for (EdgeId e : sp.pred) {
      if (e != kNoEdge) on_tree[static_cast<std::size_t>(e)] = 1;
    }
    bool improved = false;
    for (std::size_t e = 0; e < m && !improved; ++e) {
      if (on_tree[e]) continue;
      const Edge& edge = g.edge(static_cast<EdgeId>(e));
      for (const auto [v, u] : {std::pair{edge.v, edge.u}, std::pair{edge.u, edge.v}}) {
        if (v == root) continue;
        bool cycle = false;
        for (VertexId w = u; w != root && !cycle; w = other_end(g, sp.pred[static_cast<std::size_t>(w)], w)) {
          cycle = w == v;
        }
        if (cycle) continue;
        std::vector<EdgeId> pred = sp.pred;
        const EdgeId dropped = pred[static_cast<std::size_t>(v)];
        pred[static_cast<std::size_t>(v)] = static_cast<EdgeId>(e);
        std::vector<double> start = x;
        start[e] = x[static_cast<std::size_t>(dropped)];
        start[static_cast<std::size_t>(dropped)] = 0.0;
        Refined r = refine(start, tree_from_pred(g, root, std::move(pred)));
        const double candidate = evaluate(r.fractions);
        if (candidate < value * (1.0 - 1e-12)) {
          x = std::move(r.fractions);
          value = candidate;
          improved = true;
          break;
        }
      }
    }
    if (!improved) return;
  }
}

std::vector<double> dirichlet_point(std::size_t m, std::mt19937_64& rng) {
  std::exponential_distribution<double> exp1(1.0);
  std::vector<double> x(m);
  for (double& v : x) v = exp1(rng) + 1e-12;
  const double sum = std::accumulate(x.begin(), x.end(), 0.0);
  for (double& v : x) v /= sum;
  return x;
}

OracleReport optimize(const BudgetGraph& g, VertexId root, const OracleConfig& cfg, Objective kind) {
  cfg.validate();
  if (root < 0 || root >= g.num_vertices()) throw InvalidInput("root out of range");
  const auto m = static_cast<std::size_t>(g.num_edges());
  OracleReport report;
  report.solution.root = root;
  if (m == 0) {
    report.solution.objective = 0.0;
    report.solution.distances = {0.0};
    report.subgradient_objective = 0.0;
    report.subgradient_converged = report.converged = true;
    if (kind == Objective::kMedian) report.solution.average = 0.0;
    return report;
  }
  if (cfg.initial && cfg.initial->size() != m) throw InvalidInput("initial point has the wrong size");

  const double floor = 1e-9 / static_cast<double>(m);
  std::mt19937_64 rng(cfg.seed);
  const int checkpoint = std::max(1, (cfg.max_iters * 9) / 10);

  double best_value = kInfinity;
  std::vector<double> best_fractions;
  bool best_refined_converged = false;
  bool any_subgradient_converged = false;

  for (int restart = 0; restart < cfg.restarts; ++restart) {
    std::vector<double> b;
    if (restart == 0) {
      b = cfg.initial ? *cfg.initial : std::vector<double>(m, 1.0 / static_cast<double>(m));
    } else {
      b = dirichlet_point(m, rng);
    }
    b = project_to_simplex(std::move(b), floor);

    double run_best = kInfinity;
    std::vector<double> run_best_b = b;
    double value_at_checkpoint = kInfinity;
    for (int t = 1; t <= cfg.max_iters; ++t) {
      const auto sp = shortest_paths(g, b, root);
      const double f = objective_value(sp, kind);
      if (f < run_best) {
        run_best = f;
        run_best_b = b;
      }
      if (t == checkpoint) value_at_checkpoint = run_best;
      ++report.iterations;
      const auto grad = subgradient(g, b, sp, kind);
      b = step_along(b, grad, cfg.step_scale / std::sqrt(static_cast<double>(t)), floor);
    }
    const bool run_converged =
        std::isfinite(run_best) && (value_at_checkpoint - run_best) <= cfg.tol * run_best;
    any_subgradient_converged = any_subgradient_converged || run_converged;
    report.subgradient_objective = std::min(report.subgradient_objective, run_best);

    std::vector<double> candidate = run_best_b;
    double candidate_value = run_best;
    bool refined_converged = false;
    if (cfg.polish) {
      const auto sp = shortest_paths(g, run_best_b, root);
      Refined refined = kind == Objective::kRadius ? refine_radius(g, run_best_b, sp, cfg.tol)
                                                   : refine_median(g, run_best_b, sp, cfg.tol);
      const double refined_value = objective_value(shortest_paths(g, refined.fractions, root), kind);
      if (refined_value <= candidate_value) {
        candidate = std::move(refined.fractions);
        candidate_value = refined_value;
        refined_converged = refined.converged;
      }
      const auto refine = [&](const std::vector<double>& start, const ShortestPathTree& tree) {
        return kind == Objective::kRadius ? refine_radius(g, start, tree, cfg.tol)
                                          : refine_median(g, start, tree, cfg.tol);
      };
      const auto evaluate = [&](const std::vector<double>& f) {
        return objective_value(shortest_paths(g, f, root), kind);
      };
      exchange_search(g, root, candidate, candidate_value, refine, evaluate);
    }
    if (candidate_value < best_value) {
      best_value = candidate_value;
      best_fractions = std::move(candidate);
      best_refined_converged = refined_converged;
      report.best_restart = restart;
    }
  }

  report.subgradient_converged = any_subgradient_converged;
  report.converged = best_refined_converged || any_subgradient_converged;

  const double sum = std::accumulate(best_fractions.begin(), best_fractions.end(), 0.0);
  for (double& v : best_fractions) v /= sum;
  report.solution.allocation = Allocation(best_fractions);
  const auto sp = shortest_paths(g, best_fractions, root);
  report.solution.distances = sp.dist;
  report.solution.objective = objective_value(sp, kind);
  if (kind == Objective::kMedian) {
    report.solution.average = report.solution.objective / static_cast<double>(g.num_vertices());
  }
  std::vector<char> on_tree(m, 0);
  for (EdgeId e : sp.pred) {
    if (e != kNoEdge) on_tree[static_cast<std::size_t>(e)] = 1;
  }
  for (std::size_t e = 0; e < m; ++e) {
    if (!on_tree[e]) report.off_tree_mass += best_fractions[e];
  }
  return report;
}

}  // namespace

std::vector<double> radius_subgradient_step(const BudgetGraph& graph, VertexId root,
                                            const std::vector<double>& fractions, double step) {
  const auto sp = shortest_paths(graph, fractions, root);
  return step_along(fractions, subgradient(graph, fractions, sp, Objective::kRadius), step, 0.0);
}

OracleReport numeric_optimize_radius(const BudgetGraph& graph, VertexId root, const OracleConfig& cfg) {
  return optimize(graph, root, cfg, Objective::kRadius);
}

OracleReport numeric_optimize_median(const BudgetGraph& graph, VertexId root, const OracleConfig& cfg) {
  return optimize(graph, root, cfg, Objective::kMedian);
}

}  // namespace budgetgraph
