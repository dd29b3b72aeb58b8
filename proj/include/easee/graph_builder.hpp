#pragma once

// Local-dynamics graph: the depth-d prefix tree of action sequences with
// equivalent sequences sharing a node, pruned to a layered DAG.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "easee/action_algebra.hpp"

namespace easee {

using NodeId = std::size_t;
inline constexpr NodeId kRoot = 0;

// A way of reaching a node: start at `origin` and play `suffix`. Only suffixes
// that are proper prefixes of some side of the equivalence set are kept, since
// only those can still complete into a rewrite.
struct StoredPath {
  NodeId origin = 0;
  ActionSequence suffix;

  friend auto operator<=>(const StoredPath&, const StoredPath&) = default;
};

struct GraphNode {
  NodeId id = 0;
  ActionSequence canonical;  // shortlex-minimal sequence reaching the node
  std::size_t depth = 0;     // == canonical.size() == layer index
  std::vector<StoredPath> stored;
};

struct Edge {
  NodeId from = 0;
  Action action = 0;
  NodeId to = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Counters collected while building; used by tests and the complexity report.
struct BuildStats {
  std::size_t expansions = 0;      // (node, action) pairs expanded
  std::size_t omega_checks = 0;    // stored-path extensions compared against omega
  std::size_t rule_merges = 0;     // edges resolved by a direct omega match
  std::size_t oracle_merges = 0;   // edges resolved only by the closure fallback
  std::size_t oracle_budget_hits = 0;
  std::size_t forced_merges = 0;   // two existing nodes identified after the fact
  std::size_t pruned_edges = 0;
  std::size_t removed_nodes = 0;
  std::vector<std::string> warnings;
};

struct BuildOptions {
  // Closure-size cap for the fallback that looks for an existing node
  // equivalent to a new candidate. 0 disables the fallback.
  std::size_t oracle_budget = 2000;
  // Hard cap on live nodes; construction throws BudgetExceeded past it.
  std::size_t max_nodes = 2000000;
};

class LocalDynamicsGraph {
 public:
  LocalDynamicsGraph() = default;

  // Validates layering: node ids sorted by depth, node 0 is the root, every
  // edge goes from layer t to layer t+1, every non-root node has an in-edge,
  // and canonical lengths match depths. Throws ValidationError otherwise.
  LocalDynamicsGraph(ActionSet actions, EquivalenceSet omega, std::size_t depth,
                     std::vector<GraphNode> nodes, std::vector<Edge> edges, BuildStats stats = {});

  const ActionSet& actions() const { return actions_; }
  const EquivalenceSet& omega() const { return omega_; }
  std::size_t depth() const { return depth_; }
  std::size_t node_count() const { return nodes_.size(); }
  const std::vector<GraphNode>& nodes() const { return nodes_; }
  const GraphNode& node(NodeId id) const;  // throws UnknownNode
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::vector<NodeId>>& layers() const { return layers_; }
  const BuildStats& stats() const { return stats_; }

  // Out-edges of a node, sorted by action. Indices into edges() are
  // out_edge_offset(v) + i.
  std::span<const Edge> out_edges(NodeId v) const;
  std::size_t out_edge_offset(NodeId v) const { return out_begin_.at(v); }
  const std::vector<std::size_t>& in_edge_indices(NodeId v) const { return in_edges_.at(v); }
  std::optional<NodeId> child(NodeId v, Action a) const;
  bool is_final(NodeId v) const { return node(v).depth == depth_; }

 private:
  ActionSet actions_;
  EquivalenceSet omega_;
  std::size_t depth_ = 0;
  std::vector<GraphNode> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> out_begin_;
  std::vector<std::vector<std::size_t>> in_edges_;
  std::vector<std::vector<NodeId>> layers_;
  BuildStats stats_;
};

// Breadth-first expansion from the empty sequence. Expanding node n with action
// a looks at every stored path (u, s) of n: when s.a is a side of an
// equivalence pair with partner w, the edge points at the node reached by
// playing w from u, if that node already exists. Otherwise a budgeted closure
// search looks for an existing node holding an equivalent sequence, and only
// then is a new node created. Edges that do not go one layer deeper are
// pruned at the end.
LocalDynamicsGraph build_graph(const ActionSet& actions, const EquivalenceSet& omega,
                               std::size_t depth, const BuildOptions& options = {});

std::size_t depth_of(const LocalDynamicsGraph& graph, NodeId node);

struct ComplexityReport {
  std::size_t expansions = 0;
  std::size_t omega_checks = 0;
  double bound = 0.0;  // |A|^(2d) * |omega| * d, with |omega| floored at 1
  bool within_bound = false;
};

ComplexityReport node_count_bound_check(const LocalDynamicsGraph& graph);

// JSON text with fields actions, depth, nodes, edges, omega.
std::string graph_to_json(const LocalDynamicsGraph& graph);
LocalDynamicsGraph graph_from_json(const std::string& text);

}  // namespace easee
