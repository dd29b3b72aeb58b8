#include "easee/graph_builder.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "easee/error.hpp"

namespace easee {

LocalDynamicsGraph::LocalDynamicsGraph(ActionSet actions, EquivalenceSet omega, std::size_t depth,
                                       std::vector<GraphNode> nodes, std::vector<Edge> edges,
                                       BuildStats stats)
    : actions_(std::move(actions)),
      omega_(std::move(omega)),
      depth_(depth),
      nodes_(std::move(nodes)),
      edges_(std::move(edges)),
      stats_(std::move(stats)) {
  if (depth_ < 1) throw DepthZero();
  if (nodes_.empty()) throw ValidationError("graph has no nodes");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const auto& n = nodes_[i];
    if (n.id != i) throw ValidationError("node ids must be 0..n-1 in order");
    if (n.canonical.size() != n.depth) throw ValidationError("canonical length differs from depth");
    if (n.depth > depth_) throw ValidationError("node deeper than graph depth");
    if (i > 0 && n.depth < nodes_[i - 1].depth) throw ValidationError("nodes must be sorted by depth");
    for (std::size_t k = 0; k < n.canonical.size(); ++k)
      if (n.canonical[k] >= actions_.size()) throw ValidationError("canonical uses unknown action");
  }
  if (nodes_[0].depth != 0) throw ValidationError("node 0 must be the root");
  if (nodes_.size() > 1 && nodes_[1].depth == 0) throw ValidationError("only one root allowed");

  std::sort(edges_.begin(), edges_.end());
  out_begin_.assign(nodes_.size() + 1, 0);
  in_edges_.assign(nodes_.size(), {});
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto& e = edges_[i];
    if (e.from >= nodes_.size() || e.to >= nodes_.size())
      throw ValidationError("edge references unknown node");
    if (e.action >= actions_.size()) throw ValidationError("edge uses unknown action");
    if (i > 0 && edges_[i - 1].from == e.from && edges_[i - 1].action == e.action)
      throw ValidationError("two edges share (from, action)");
    if (nodes_[e.to].depth != nodes_[e.from].depth + 1)
      throw ValidationError("edge does not go exactly one layer deeper");
    ++out_begin_[e.from + 1];
    in_edges_[e.to].push_back(i);
  }
  for (std::size_t v = 0; v < nodes_.size(); ++v) out_begin_[v + 1] += out_begin_[v];
  for (std::size_t v = 1; v < nodes_.size(); ++v)
    if (in_edges_[v].empty()) throw ValidationError("node " + std::to_string(v) + " has no in-edge");

  layers_.assign(depth_ + 1, {});
  for (const auto& n : nodes_) layers_[n.depth].push_back(n.id);
}

const GraphNode& LocalDynamicsGraph::node(NodeId id) const {
  if (id >= nodes_.size()) throw UnknownNode("unknown node " + std::to_string(id));
  return nodes_[id];
}

std::span<const Edge> LocalDynamicsGraph::out_edges(NodeId v) const {
  if (v >= nodes_.size()) throw UnknownNode("unknown node " + std::to_string(v));
  return std::span<const Edge>(edges_).subspan(out_begin_[v], out_begin_[v + 1] - out_begin_[v]);
}

std::optional<NodeId> LocalDynamicsGraph::child(NodeId v, Action a) const {
  for (const auto& e : out_edges(v))
    if (e.action == a) return e.to;
  return std::nullopt;
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

struct WorkNode {
  std::size_t depth = 0;
  ActionSequence canonical;
  std::vector<std::size_t> out;
  std::set<StoredPath> stored;
  bool expanded = false;
};

std::size_t tree_size(std::size_t branching, std::size_t depth) {
  std::size_t total = 0;
  std::size_t layer = 1;
  for (std::size_t t = 0; t <= depth; ++t) {
    if (total > kNone - layer) return kNone;
    total += layer;
    if (t < depth) layer = (layer > kNone / branching) ? kNone : layer * branching;
  }
  return total;
}

class Builder {
 public:
  Builder(const ActionSet& actions, const EquivalenceSet& omega, std::size_t depth,
          const BuildOptions& options)
      : actions_(actions), omega_(omega), depth_(depth), options_(options) {
    for (const auto& [v, w] : omega_.pairs()) {
      partners_[v].push_back(w);
      partners_[w].push_back(v);
      for (const auto* side : {&v, &w}) {
        for (std::size_t k = 1; k < side->size(); ++k) proper_prefixes_.insert(side->substr(0, k));
        if (side->size() > depth_)
          stats_.warnings.push_back("equivalence side longer than depth " + std::to_string(depth_) +
                                    " can never fire: " + to_string(*side, actions_));
      }
    }
    for (auto& [side, list] : partners_) {
      std::sort(list.begin(), list.end());
      list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    node_cap_ = tree_size(actions_.size(), depth_);
  }



  LocalDynamicsGraph run() {
    create_root();
    std::vector<std::size_t> frontier{0};
    for (std::size_t level = 0; level < depth_ && !frontier.empty(); ++level) {
      std::vector<std::size_t> next;
      for (std::size_t x : frontier) expand_all(x, next);
      frontier = std::move(next);
    }
    // Merges can pull a node up to a shallower layer after its layer was
    // processed; keep expanding until every node above the last layer is done.
    for (;;) {
      const auto dist = distances();
      std::vector<std::pair<std::size_t, std::size_t>> todo;
      for (std::size_t v = 0; v < nodes_.size(); ++v)
        if (find(v) == v && dist[v] < depth_ && !nodes_[v].expanded) todo.emplace_back(dist[v], v);
      if (todo.empty()) break;
      std::sort(todo.begin(), todo.end());
      std::vector<std::size_t> sink;
      for (const auto& [d, v] : todo) expand_all(v, sink);
    }
    if (stats_.forced_merges > 0)
      stats_.warnings.push_back("merged " + std::to_string(stats_.forced_merges) +
                                " pairs of existing nodes identified by distinct rewrites");
    return finalize();
  }

 private:
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void create_root() {
    WorkNode root;
    root.out.assign(actions_.size(), kNone);
    nodes_.push_back(std::move(root));
    parent_.push_back(0);
    seq_index_.emplace(ActionSequence{}, 0);
  }

  std::size_t create(std::size_t parent, Action a) {
    if (nodes_.size() + 1 > node_cap_)
      throw BudgetExceeded("graph construction produced more nodes than the full tree");
    if (nodes_.size() + 1 > options_.max_nodes)
      throw BudgetExceeded("graph construction passed " + std::to_string(options_.max_nodes) + " nodes");
    WorkNode n;
    n.depth = nodes_[parent].depth + 1;
    n.canonical = nodes_[parent].canonical.with(a);
    n.out.assign(actions_.size(), kNone);
    const std::size_t id = nodes_.size();
    seq_index_.emplace(n.canonical, id);
    nodes_.push_back(std::move(n));
    parent_.push_back(id);
    return id;
  }

  std::optional<std::size_t> follow(std::size_t u, const ActionSequence& w) {
    std::size_t x = find(u);
    for (std::size_t k = 0; k < w.size(); ++k) {
      const std::size_t next = nodes_[x].out[w[k]];
      if (next == kNone) return std::nullopt;
      x = find(next);
    }
    return x;
  }

  void expand_all(std::size_t x, std::vector<std::size_t>& created) {
    const std::size_t v = find(x);
    if (nodes_[v].expanded) return;
    nodes_[v].expanded = true;
    for (std::size_t a = 0; a < actions_.size(); ++a) expand(v, static_cast<Action>(a), created);
  }

  void expand(std::size_t v, Action a, std::vector<std::size_t>& created) {
    v = find(v);
    ++stats_.expansions;
    const ActionSequence single{a};
    // Copy: merges below may rewrite this node's stored set.
    const std::vector<StoredPath> paths(nodes_[v].stored.begin(), nodes_[v].stored.end());

    std::set<std::size_t> targets;
    auto consider = [&](std::size_t origin, const ActionSequence& extended) {
      ++stats_.omega_checks;
      const auto it = partners_.find(extended);
      if (it == partners_.end()) return;
      for (const auto& w : it->second)
        if (auto t = follow(origin, w)) targets.insert(*t);
    };
    consider(v, single);
    for (const auto& p : paths) consider(p.origin, p.suffix.with(a));

    const ActionSequence candidate = nodes_[v].canonical.with(a);
    if (!targets.empty()) {
      ++stats_.rule_merges;
    } else if (auto t = oracle_lookup(candidate)) {
      ++stats_.oracle_merges;
      targets.insert(*t);
    }
    if (nodes_[v].out[a] != kNone) targets.insert(find(nodes_[v].out[a]));

    std::size_t target;
    if (targets.empty()) {
      target = create(v, a);
      created.push_back(target);
    } else {
      target = *targets.begin();
      for (auto it = std::next(targets.begin()); it != targets.end(); ++it) {
        if (find(*it) != find(target)) {
          ++stats_.forced_merges;
          merge(target, *it);
        }
      }
      target = find(target);
    }

    v = find(v);
    if (nodes_[v].out[a] != kNone && find(nodes_[v].out[a]) != target) {
      ++stats_.forced_merges;
      merge(target, nodes_[v].out[a]);
      target = find(target);
      v = find(v);
    }
    nodes_[v].out[a] = target;
    seq_index_.emplace(candidate, target);

    auto& stored = nodes_[target].stored;
    if (proper_prefixes_.count(single)) stored.insert({v, single});
    for (const auto& p : paths) {
      auto extended = p.suffix.with(a);
      if (proper_prefixes_.count(extended)) stored.insert({p.origin, std::move(extended)});
    }
  }

  // Looks for an existing node holding a sequence equivalent to `candidate`.
  std::optional<std::size_t> oracle_lookup(const ActionSequence& candidate) {
    if (options_.oracle_budget == 0 || omega_.empty()) return std::nullopt;
    std::optional<std::size_t> found;
    const ClosureBudget budget{candidate.size() + omega_.longest_side(), options_.oracle_budget};
    try {
      visit_closure(candidate, omega_, budget, [&](const ActionSequence& w) {
        const auto it = seq_index_.find(w);
        if (it == seq_index_.end()) return false;
        found = find(it->second);
        return true;
      });
    } catch (const BudgetExceeded&) {
      ++stats_.oracle_budget_hits;
    }
    return found;
  }

  // Identifies two nodes and, by congruence, their same-action children.
  void merge(std::size_t a, std::size_t b) {
    std::vector<std::pair<std::size_t, std::size_t>> work{{a, b}};
    while (!work.empty()) {
      auto [x, y] = work.back();
      work.pop_back();
      x = find(x);
      y = find(y);
      if (x == y) continue;
      if (y < x) std::swap(x, y);
      parent_[y] = x;
      auto& keep = nodes_[x];
      auto& drop = nodes_[y];
      keep.depth = std::min(keep.depth, drop.depth);
      if (shortlex_less(drop.canonical, keep.canonical)) keep.canonical = drop.canonical;
      keep.stored.insert(drop.stored.begin(), drop.stored.end());
      drop.stored.clear();
      // Re-expand unless both halves were already expanded.
      keep.expanded = keep.expanded && drop.expanded;
      for (std::size_t k = 0; k < actions_.size(); ++k) {
        if (keep.out[k] == kNone) {
          keep.out[k] = drop.out[k];
        } else if (drop.out[k] != kNone) {
          work.emplace_back(keep.out[k], drop.out[k]);
        }
      }
      drop.out.clear();
    }
  }

  std::vector<std::size_t> distances() {
    std::vector<std::size_t> dist(nodes_.size(), kNone);
    std::deque<std::size_t> queue{find(0)};
    dist[find(0)] = 0;
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t next : nodes_[u].out) {
        if (next == kNone) continue;
        const std::size_t t = find(next);
        if (dist[t] == kNone) {
          dist[t] = dist[u] + 1;
          queue.push_back(t);
        }
      }
    }
    return dist;
  }

  LocalDynamicsGraph finalize() {
    const auto dist = distances();
    std::vector<std::pair<std::size_t, std::size_t>> order;
    for (std::size_t v = 0; v < nodes_.size(); ++v) {
      if (find(v) != v) continue;
      if (dist[v] == kNone) {
        ++stats_.removed_nodes;
        continue;
      }
      order.emplace_back(dist[v], v);
    }
    std::sort(order.begin(), order.end());
    if (order.empty() || order.front().second != find(0))
      throw ValidationError("internal: root lost during construction");

    // Keep only edges that go exactly one layer deeper, then drop whatever the
    // root can no longer reach.
    std::vector<std::vector<std::pair<Action, std::size_t>>> kept(nodes_.size());
    for (const auto& [d, u] : order) {
      for (std::size_t k = 0; k < nodes_[u].out.size(); ++k) {
        if (nodes_[u].out[k] == kNone) continue;
        const std::size_t t = find(nodes_[u].out[k]);
        if (dist[t] == d + 1 && d < depth_) {
          kept[u].emplace_back(static_cast<Action>(k), t);
        } else {
          ++stats_.pruned_edges;
        }
      }
    }
    std::vector<bool> reached(nodes_.size(), false);
    reached[order.front().second] = true;
    for (const auto& [d, u] : order) {
      if (!reached[u]) continue;
      for (const auto& [a, t] : kept[u]) reached[t] = true;
    }

    std::vector<std::size_t> new_id(nodes_.size(), kNone);
    std::vector<GraphNode> nodes;
    for (const auto& [d, u] : order) {
      if (!reached[u]) {
        ++stats_.removed_nodes;
        continue;
      }
      new_id[u] = nodes.size();
      GraphNode n;
      n.id = nodes.size();
      n.depth = d;
      nodes.push_back(std::move(n));
    }

    std::vector<Edge> edges;
    for (const auto& [d, u] : order) {
      if (new_id[u] == kNone) continue;
      for (const auto& [a, t] : kept[u]) edges.push_back({new_id[u], a, new_id[t]});
    }
    std::sort(edges.begin(), edges.end());

    // Canonical = shortlex-min over root paths; edges are sorted by source id
    // and ids are sorted by layer, so parents are final before children.
    std::vector<bool> has_canon(nodes.size(), false);
    has_canon[0] = true;
    for (const auto& e : edges) {
      auto cand = nodes[e.from].canonical.with(e.action);
      if (!has_canon[e.to] || shortlex_less(cand, nodes[e.to].canonical)) {
        nodes[e.to].canonical = std::move(cand);
        has_canon[e.to] = true;
      }
    }

    for (const auto& [d, u] : order) {
      if (new_id[u] == kNone) continue;
      std::set<StoredPath> remapped;
      for (const auto& p : nodes_[u].stored) {
        const std::size_t o = find(p.origin);
        if (new_id[o] != kNone) remapped.insert({new_id[o], p.suffix});
      }
      nodes[new_id[u]].stored.assign(remapped.begin(), remapped.end());
    }

    return LocalDynamicsGraph(actions_, omega_, depth_, std::move(nodes), std::move(edges),
                              std::move(stats_));
  }

  const ActionSet& actions_;
  const EquivalenceSet& omega_;
  std::size_t depth_;
  BuildOptions options_;
  std::size_t node_cap_ = 0;

  std::vector<WorkNode> nodes_;
  std::vector<std::size_t> parent_;
  std::map<ActionSequence, std::vector<ActionSequence>> partners_;
  std::unordered_set<ActionSequence, ActionSequenceHash> proper_prefixes_;
  std::unordered_map<ActionSequence, std::size_t, ActionSequenceHash> seq_index_;
  BuildStats stats_;
};

}  // namespace

LocalDynamicsGraph build_graph(const ActionSet& actions, const EquivalenceSet& omega,
                               std::size_t depth, const BuildOptions& options) {
  if (depth < 1) throw DepthZero();
  if (actions.size() == 0) throw ValidationError("empty action set");
  for (const auto& [v, w] : omega.pairs())
    for (const auto* side : {&v, &w})
      for (std::size_t k = 0; k < side->size(); ++k)
        if ((*side)[k] >= actions.size()) throw ValidationError("equivalence uses unknown action");
  return Builder(actions, omega, depth, options).run();
}

std::size_t depth_of(const LocalDynamicsGraph& graph, NodeId node) {
  return graph.node(node).depth;
}

ComplexityReport node_count_bound_check(const LocalDynamicsGraph& graph) {
  ComplexityReport r;
  r.expansions = graph.stats().expansions;
  r.omega_checks = graph.stats().omega_checks;
  const double a = static_cast<double>(graph.actions().size());
  const double d = static_cast<double>(graph.depth());
  const double omega = static_cast<double>(std::max<std::size_t>(graph.omega().size(), 1));
  r.bound = std::pow(a, 2.0 * d) * omega * d;
  r.within_bound = static_cast<double>(r.expansions) <= r.bound;
  return r;
}

}  // namespace easee
