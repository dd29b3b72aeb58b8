#pragma once

// Graphs shared by the solver tests and the acceptance run.

#include <random>
#include <vector>

#include "easee/error.hpp"
#include "easee/policy_solver.hpp"
#include "oracles.hpp"

namespace fixtures {

using namespace easee;

inline LocalDynamicsGraph build(const char* dsl, std::size_t d) {
  const auto prior = parse_prior(dsl);
  return build_graph(prior.actions, prior.omega, d);
}

inline oracle::Dag dag_of(const LocalDynamicsGraph& g) {
  oracle::Dag dag;
  dag.depth = static_cast<int>(g.depth());
  for (const auto& n : g.nodes()) dag.node_depth.push_back(static_cast<int>(n.depth));
  for (const auto& e : g.edges()) dag.edges.emplace_back(static_cast<int>(e.from), static_cast<int>(e.to));
  return dag;
}

// Small graphs (<= 12 nodes) for the grid-search comparison.
inline std::vector<LocalDynamicsGraph> small_graphs() {
  const char* kFig2 = "actions: a1 a2\nequiv: a1 a1 ~ -\nequiv: a2 a1 ~ a1 a2\n";
  const char* kRotation3 =
      "actions: forward left right\nequiv: right left ~ -\nequiv: left right ~ -\nequiv: right right ~ left left\n";
  const char* kCatcher = "actions: left right\nequiv: left right ~ right left\n";
  std::vector<LocalDynamicsGraph> out;
  out.push_back(build(kFig2, 2));
  out.push_back(build(kRotation3, 2));
  out.push_back(build(kCatcher, 2));
  out.push_back(build(kCatcher, 3));
  out.push_back(build("actions: a b\n", 2));
  out.push_back(build("actions: a\n", 5));
  out.push_back(build("actions: up down\nequiv: down ~ down down\n", 3));
  out.push_back(build("actions: right left up down\nequiv: right left ~ left right\nequiv: up down ~ down up\n"
                      "equiv: right left ~ -\nequiv: up down ~ -\n",
                      1));
  out.push_back(build("actions: forward left right pickup open\nequiv: open ~ open open\n", 1));
  out.push_back(build("actions: a b c\nequiv: a b ~ b a\nequiv: a c ~ -\nequiv: c a ~ -\nequiv: b b ~ -\n", 2));
  // Random two-action priors, keeping the graphs that stay small.
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> len(0, 2), bit(0, 1);
  while (out.size() < 20) {
    EquivalenceSet omega;
    for (int k = 0; k < 2; ++k) {
      ActionSequence v, w;
      for (int i = len(rng) + 1; i > 0; --i) v.push_back(static_cast<Action>(bit(rng)));
      for (int i = len(rng); i > 0; --i) w.push_back(static_cast<Action>(bit(rng)));
      if (!(v == w)) omega.add(v, w);
    }
    try {
      auto g = build_graph(ActionSet({"a", "b"}), omega, 3);
      bool nonempty = true;
      for (const auto& layer : g.layers()) nonempty = nonempty && !layer.empty();
      if (nonempty && g.node_count() <= 12) out.push_back(std::move(g));
    } catch (const InfeasibleGraph&) {
    }
  }
  return out;
}

}  // namespace fixtures
