#include <deque>
#include <map>

#include "doctest.h"
#include "easee/error.hpp"
#include "easee/graph_builder.hpp"
#include "oracles.hpp"

using namespace easee;

namespace {

const char* kFig2 = "actions: a1 a2\nequiv: a1 a1 ~ -\nequiv: a2 a1 ~ a1 a2\n";

// The priors used in the gridworld, DoorKey and Catcher experiments.
const std::vector<std::pair<const char*, const char*>> kPriors = {
    {"cardinal-1", "actions: right left up down\nequiv: right left ~ left right\n"},
    {"cardinal-2", "actions: right left up down\nequiv: right left ~ left right\nequiv: up down ~ down up\n"},
    {"cardinal-3",
     "actions: right left up down\nequiv: right left ~ left right\nequiv: up down ~ down up\n"
     "equiv: right left ~ -\n"},
    {"cardinal-4",
     "actions: right left up down\nequiv: right left ~ left right\nequiv: up down ~ down up\n"
     "equiv: right left ~ -\nequiv: up down ~ -\n"},
    {"rotation-1", "actions: forward left right\nequiv: right left ~ -\n"},
    {"rotation-2", "actions: forward left right\nequiv: right left ~ -\nequiv: left right ~ -\n"},
    {"rotation-3",
     "actions: forward left right\nequiv: right left ~ -\nequiv: left right ~ -\nequiv: right right ~ left left\n"},
    {"doorkey",
     "actions: forward left right pickup open\nequiv: right left ~ -\nequiv: left right ~ -\n"
     "equiv: left left ~ right right\nequiv: open ~ open open\nequiv: pickup ~ pickup pickup\n"},
    {"catcher", "actions: left right\nequiv: left right ~ right left\n"},
    // Every pair of moves commuting.
    {"cardinal-2-all",
     "actions: right left up down\nequiv: right left ~ left right\nequiv: up down ~ down up\n"
     "equiv: right up ~ up right\nequiv: right down ~ down right\nequiv: left up ~ up left\n"
     "equiv: left down ~ down left\n"},
    {"cardinal-4-all",
     "actions: right left up down\nequiv: right left ~ left right\nequiv: up down ~ down up\n"
     "equiv: right up ~ up right\nequiv: right down ~ down right\nequiv: left up ~ up left\n"
     "equiv: left down ~ down left\nequiv: right left ~ -\nequiv: up down ~ -\n"},
};

LocalDynamicsGraph build(const char* dsl, std::size_t d) {
  const auto prior = parse_prior(dsl);
  return build_graph(prior.actions, prior.omega, d);
}

std::vector<std::size_t> layer_sizes(const LocalDynamicsGraph& g) {
  std::vector<std::size_t> out;
  for (const auto& layer : g.layers()) out.push_back(layer.size());
  return out;
}

// Kahn's algorithm; true iff every node gets ordered.
bool acyclic(const LocalDynamicsGraph& g) {
  std::vector<std::size_t> indegree(g.node_count(), 0);
  for (const auto& e : g.edges()) ++indegree[e.to];
  std::deque<NodeId> ready;
  for (NodeId v = 0; v < g.node_count(); ++v)
    if (indegree[v] == 0) ready.push_back(v);
  std::size_t seen = 0;
  while (!ready.empty()) {
    const auto v = ready.front();
    ready.pop_front();
    ++seen;
    for (const auto& e : g.out_edges(v))
      if (--indegree[e.to] == 0) ready.push_back(e.to);
  }
  return seen == g.node_count();
}

void check_structure(const LocalDynamicsGraph& g) {
  CHECK(acyclic(g));
  CHECK(g.node(kRoot).depth == 0);
  CHECK(g.node(kRoot).canonical.empty());
  for (const auto& e : g.edges()) CHECK(g.node(e.to).depth == g.node(e.from).depth + 1);
  for (NodeId v = 1; v < g.node_count(); ++v) CHECK_FALSE(g.in_edge_indices(v).empty());
  std::size_t total = 0;
  for (std::size_t t = 0; t < g.layers().size(); ++t) {
    total += g.layers()[t].size();
    for (auto v : g.layers()[t]) CHECK(g.node(v).depth == t);
  }
  CHECK(total == g.node_count());
  for (const auto& n : g.nodes()) CHECK(n.canonical.size() == n.depth);
}

void check_sound(const LocalDynamicsGraph& g) {
  const ClosureBudget budget{g.depth() + g.omega().longest_side(), 1000000};
  for (const auto& e : g.edges())
    CHECK(equivalent(g.node(e.from).canonical.with(e.action), g.node(e.to).canonical, g.omega(), budget));
  for (const auto& n : g.nodes())
    for (const auto& p : n.stored) {
      const auto reach = concat(g.node(p.origin).canonical, p.suffix);
      CHECK(equivalent(reach, n.canonical, g.omega(),
                       {std::max(reach.size(), n.canonical.size()) + g.omega().longest_side(), 1000000}));
    }
}

}  // namespace

TEST_CASE("two-action example yields the five-node DAG") {
  const auto g = build(kFig2, 2);
  REQUIRE(g.node_count() == 5);
  const std::vector<ActionSequence> canon = {{}, {0}, {1}, {0, 1}, {1, 1}};
  for (NodeId v = 0; v < 5; ++v) CHECK(g.node(v).canonical == canon[v]);
  const std::vector<Edge> expected = {{0, 0, 1}, {0, 1, 2}, {1, 1, 3}, {2, 0, 3}, {2, 1, 4}};
  CHECK(g.edges() == expected);
  CHECK_FALSE(g.child(1, 0).has_value());  // a1 a1 ~ empty: the edge back to the root is pruned
  CHECK(g.stats().pruned_edges >= 1);
  CHECK(depth_of(g, 0) == 0);
  CHECK(depth_of(g, 3) == 2);
  CHECK(depth_of(g, 1) == 1);
  CHECK_THROWS_AS(depth_of(g, 5), UnknownNode);
  check_structure(g);
  check_sound(g);
}

TEST_CASE("empty prior gives the full tree") {
  for (std::size_t k = 1; k <= 3; ++k) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < k; ++i) names.push_back("x" + std::to_string(i));
    for (std::size_t d = 1; d <= 4; ++d) {
      const auto g = build_graph(ActionSet(names), EquivalenceSet{}, d);
      std::size_t expected = 0, layer = 1;
      for (std::size_t t = 0; t <= d; ++t, layer *= k) expected += layer;
      CHECK(g.node_count() == expected);
      check_structure(g);
    }
  }
}

TEST_CASE("rotation prior at depth 2 has layers 1, 3, 6") {
  const auto g = build(kPriors[6].second, 2);
  CHECK(layer_sizes(g) == std::vector<std::size_t>{1, 3, 6});
}

TEST_CASE("per-layer node counts match the enumeration oracle") {
  for (const auto& [name, dsl] : kPriors) {
    const auto prior = parse_prior(dsl);
    for (int d = 1; d <= 4; ++d) {
      CAPTURE(name);
      CAPTURE(d);
      const auto g = build_graph(prior.actions, prior.omega, d);
      oracle::Partition part(static_cast<int>(prior.actions.size()), oracle::pairs_of(prior.omega),
                             d + static_cast<int>(prior.omega.longest_side()));
      CHECK(layer_sizes(g) == part.layer_counts(d));
      check_structure(g);
      check_sound(g);
    }
  }
}

TEST_CASE("full commutation with inverses leaves the lattice of positions") {
  // Layer t holds the 4t cells at L1 distance t from the start.
  const auto g = build(kPriors.back().second, 6);
  CHECK(layer_sizes(g) == std::vector<std::size_t>{1, 4, 8, 12, 16, 20, 24});
}

TEST_CASE("builder output is deterministic") {
  for (const auto& [name, dsl] : kPriors) {
    const auto a = build(dsl, 5);
    const auto b = build(dsl, 5);
    CHECK(graph_to_json(a) == graph_to_json(b));
  }
}

TEST_CASE("depth zero is rejected") {
  CHECK_THROWS_AS(build(kFig2, 0), DepthZero);
}

TEST_CASE("long sides produce a warning") {
  const auto g = build("actions: a b\nequiv: a a a a ~ b b b b\n", 2);
  CHECK_FALSE(g.stats().warnings.empty());
  CHECK(g.node_count() == 7);
}

TEST_CASE("length-growing pairs prune self-loops") {
  // down ~ down down: playing down twice lands on the node reached by one down.
  const auto g = build("actions: up down\nequiv: down ~ down down\n", 3);
  check_structure(g);
  check_sound(g);
  oracle::Partition part(2, oracle::pairs_of(parse_prior("actions: up down\nequiv: down ~ down down\n").omega), 5);
  CHECK(layer_sizes(g) == part.layer_counts(3));
}

TEST_CASE("expansion counts against the complexity bound") {
  const auto fig2 = node_count_bound_check(build(kFig2, 2));
  CHECK(fig2.expansions <= 2 * 4 * 2 * 2);
  CHECK(fig2.within_bound);

  const auto tree = node_count_bound_check(build_graph(ActionSet({"a", "b"}), EquivalenceSet{}, 3));
  CHECK(tree.expansions == 14);

  const auto rot = node_count_bound_check(build(kPriors[6].second, 6));
  CHECK(static_cast<double>(rot.expansions) < rot.bound);
}

TEST_CASE("JSON round trip is bit-stable") {
  for (const auto& [name, dsl] : kPriors) {
    const auto g = build(dsl, 4);
    const auto text = graph_to_json(g);
    const auto back = graph_from_json(text);
    CHECK(graph_to_json(back) == text);
    CHECK(back.node_count() == g.node_count());
    CHECK(back.edges() == g.edges());
  }
  CHECK_THROWS_AS(graph_from_json("{"), ValidationError);
  CHECK_THROWS_AS(graph_from_json(R"({"actions":["a"],"depth":1,"nodes":[],"edges":[],"omega":"actions: a\n"})"),
                  ValidationError);
}

TEST_CASE("constructor rejects broken layering") {
  const ActionSet actions({"a"});
  std::vector<GraphNode> nodes(2);
  nodes[0] = {0, {}, 0, {}};
  nodes[1] = {1, {0}, 1, {}};
  CHECK_NOTHROW(LocalDynamicsGraph(actions, {}, 1, nodes, {{0, 0, 1}}));
  CHECK_THROWS_AS(LocalDynamicsGraph(actions, {}, 1, nodes, {}), ValidationError);
  CHECK_THROWS_AS(LocalDynamicsGraph(actions, {}, 1, nodes, {{1, 0, 0}}), ValidationError);
  CHECK_THROWS_AS(LocalDynamicsGraph(actions, {}, 0, nodes, {{0, 0, 1}}), DepthZero);
}

TEST_CASE("node budget stops runaway trees") {
  const auto prior = parse_prior("actions: left right\n");
  CHECK_THROWS_AS(build_graph(prior.actions, prior.omega, 30), BudgetExceeded);
  BuildOptions small;
  small.max_nodes = 10;
  CHECK_THROWS_AS(build_graph(prior.actions, prior.omega, 3, small), BudgetExceeded);
  CHECK(build_graph(prior.actions, prior.omega, 2, small).node_count() == 7);
}
