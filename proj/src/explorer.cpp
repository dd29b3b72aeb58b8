#include "easee/explorer.hpp"

#include <sstream>
#include <unordered_set>

#include "easee/error.hpp"

namespace easee {

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void SequenceCursor::advance(Action a) {
  const auto next = graph_->child(node_, a);
  if (!next) {
    reset();
    return;
  }
  node_ = *next;
  ++steps_;
  if (steps_ >= graph_->depth() || graph_->out_edges(node_).empty()) reset();
}

void SequenceCursor::jump(NodeId v) {
  if (v >= graph_->node_count()) throw UnknownNode("node " + std::to_string(v) + " is not in the graph");
  node_ = v;
  steps_ = graph_->nodes()[v].depth;
}

Action sample_exploration_action(const SequenceCursor& cursor, const ExplorationPolicy& policy, RngStream& rng) {
  const auto& g = cursor.graph();
  const auto out = g.out_edges(cursor.node());
  if (cursor.steps_taken() >= g.depth() || out.empty()) throw CursorAtFinalLayer();
  if (policy.prob.size() != g.edges().size()) throw ValidationError("policy does not match the graph's edges");
  const auto base = g.out_edge_offset(cursor.node());
  const double u = rng.uniform();
  double cum = 0.0;
  std::size_t last = out.size();
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double p = policy.prob[base + i];
    if (p <= 0.0) continue;
    cum += p;
    last = i;
    if (u < cum) return out[i].action;
  }
  // Rounding left the cumulative sum just under one.
  if (last == out.size()) throw ValidationError("policy has no mass at node " + std::to_string(cursor.node()));
  return out[last].action;
}

Action sample_uniform_action(std::size_t action_count, RngStream& rng) {
  const double u = rng.uniform();
  const double p = 1.0 / static_cast<double>(action_count);
  double cum = 0.0;
  for (std::size_t a = 0; a + 1 < action_count; ++a) {
    cum += p;
    if (u < cum) return static_cast<Action>(a);
  }
  return static_cast<Action>(action_count - 1);
}

Explorer::Explorer(std::size_t action_count) : action_count_(action_count) {
  if (action_count < 1) throw ValidationError("explorer needs at least one action");
}

Explorer::Explorer(const LocalDynamicsGraph& graph, const ExplorationPolicy& policy)
    : action_count_(graph.actions().size()), policy_(&policy), cursor_(graph) {
  if (policy.prob.size() != graph.edges().size()) throw ValidationError("policy does not match the graph's edges");
}

Action Explorer::explore(RngStream& rng) const {
  return guided() ? sample_exploration_action(*cursor_, *policy_, rng) : sample_uniform_action(action_count_, rng);
}

void Explorer::observe(Action a) {
  if (cursor_) cursor_->advance(a);
}

void Explorer::reset() {
  if (cursor_) cursor_->reset();
}

std::string VisitLog::to_csv() const {
  std::ostringstream out;
  out << "episode,step,new_state_count_cumulative\n";
  for (const auto& r : records) out << r.episode << ',' << r.step << ',' << r.unique_states << '\n';
  return out.str();
}

VisitLog run_pure_exploration(Environment& env, Explorer& explorer, std::size_t episodes, std::size_t horizon,
                              RngStream& rng, std::uint64_t reset_seed) {
  if (horizon < 1) throw ValidationError("horizon must be at least 1");
  VisitLog log;
  std::unordered_set<std::string> seen;
  log.records.reserve(episodes * (horizon + 1));
  for (std::size_t e = 0; e < episodes; ++e) {
    env.reset(derive_seed(reset_seed, e));
    explorer.reset();
    seen.insert(env.encode());
    log.records.push_back({e, 0, seen.size()});
    for (std::size_t t = 1; t <= horizon && !env.done(); ++t) {
      const Action a = explorer.explore(rng);
      env.step(a);
      explorer.observe(a);
      seen.insert(env.encode());
      log.records.push_back({e, t, seen.size()});
    }
    log.unique_after_episode.push_back(seen.size());
  }
  log.unique_states = seen.size();
  return log;
}

}  // namespace easee
