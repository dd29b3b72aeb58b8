#pragma once

// Maximum-entropy state visitation over the flow polytope of a
// local-dynamics graph, and the policy read off the optimal occupancy.

#include <cstddef>
#include <string>
#include <vector>

#include "easee/graph_builder.hpp"

namespace easee {

// Edge masses aligned with graph.edges(): edge_mass[i] = p_t(from, action) for
// edges leaving layer t. node_mass[v] = p_t(v) for v in layer t (root = 1).
struct OccupancyMeasure {
  std::vector<double> edge_mass;
  std::vector<double> node_mass;
};

struct SolverConfig {
  std::vector<double> entropy_weights;  // length d; empty means 1/d each
  double tolerance = 1e-6;
  std::size_t max_iters = 10000;
  double floor = 1e-12;
};

struct SolveResult {
  OccupancyMeasure occupancy;
  double objective = 0.0;
  double gap = 0.0;  // Frank-Wolfe duality gap at the returned iterate
  std::size_t iterations = 0;
  bool converged = false;  // false: max_iters reached, best iterate returned
  std::vector<double> trace;  // objective after every iteration, starting point first
};

// Per-edge probabilities aligned with graph.edges(); the out-edges of every
// node with at least one out-edge sum to one.
struct ExplorationPolicy {
  std::vector<double> prob;
  double objective_value = 0.0;
  double gap_certificate = 0.0;
};

std::vector<double> uniform_weights(std::size_t depth);
std::vector<double> final_layer_weights(std::size_t depth);
// "uniform", "final" or "csv:<path>" (comma/whitespace separated, length d).
std::vector<double> parse_weights(const std::string& spec, std::size_t depth);

// Throws InfeasibleGraph when a layer is empty or no path reaches layer d,
// ValidationError on bad weights or tolerance.
SolveResult solve_occupancy(const LocalDynamicsGraph& graph, const SolverConfig& config = {});

ExplorationPolicy extract_policy(const LocalDynamicsGraph& graph, const OccupancyMeasure& occ,
                                 double floor = 1e-12);

OccupancyMeasure forward_marginals(const LocalDynamicsGraph& graph, const ExplorationPolicy& policy);

// Sum over t = 1..d of w_t * H(p_t), with 0 log 0 = 0. Empty weights mean 1/d.
double objective(const LocalDynamicsGraph& graph, const OccupancyMeasure& occ,
                 const std::vector<double>& weights = {});

// Largest violation of each polytope constraint; all zero for a feasible point.
struct FeasibilityReport {
  double negativity = 0.0;
  double root = 0.0;
  double flow = 0.0;       // |inflow - outflow| at non-final nodes
  double layer_sum = 0.0;  // |sum_v p_t(v) - 1|
  bool ok(double tol) const { return negativity <= tol && root <= tol && flow <= tol && layer_sum <= tol; }
};

FeasibilityReport check_occupancy(const LocalDynamicsGraph& graph, const OccupancyMeasure& occ);

// Probability of `a` at node v (0 for actions without an out-edge).
double policy_prob(const LocalDynamicsGraph& graph, const ExplorationPolicy& policy, NodeId v, Action a);

std::string policy_to_json(const LocalDynamicsGraph& graph, const ExplorationPolicy& policy);
ExplorationPolicy policy_from_json(const LocalDynamicsGraph& graph, const std::string& text);

}  // namespace easee
