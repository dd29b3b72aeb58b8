#pragma once

// Runtime side of the exploration policy: a cursor that follows executed
// actions through the local-dynamics graph, and samplers that replace
// uniform exploratory actions.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "easee/envs.hpp"
#include "easee/graph_builder.hpp"
#include "easee/policy_solver.hpp"

namespace easee {

// Seeded 64-bit Mersenne Twister that counts its draws.
class RngStream {
 public:
  static constexpr const char* kAlgorithm = "mt19937_64";

  explicit RngStream(std::uint64_t seed) : engine_(seed), seed_(seed) {}

  std::uint64_t next() {
    ++draws_;
    return engine_();
  }
  // 53 random bits mapped to [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t draws() const { return draws_; }

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
  std::uint64_t draws_ = 0;
};

// Seed for stream `index` derived from a base seed (splitmix64 finalizer), so
// parallel workers get unrelated streams.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

class SequenceCursor {
 public:
  explicit SequenceCursor(const LocalDynamicsGraph& graph) : graph_(&graph) {}

  const LocalDynamicsGraph& graph() const { return *graph_; }
  NodeId node() const { return node_; }
  std::size_t steps_taken() const { return steps_; }

  void reset() {
    node_ = kRoot;
    steps_ = 0;
  }
  // Follows the edge labelled `a`. Resets to the root when the edge is
  // missing (pruned), when depth d is reached, or when the new node has no
  // way forward.
  void advance(Action a);
  // Test hook: place the cursor on a node (steps_taken = its depth).
  void jump(NodeId v);

 private:
  const LocalDynamicsGraph* graph_;
  NodeId node_ = kRoot;
  std::size_t steps_ = 0;
};

// Inverse-CDF draw (one uniform) from pi(v, .) over the node's out-edges in
// action order. Throws CursorAtFinalLayer when the node has no out-edge.
Action sample_exploration_action(const SequenceCursor& cursor, const ExplorationPolicy& policy, RngStream& rng);

// Inverse-CDF draw over equal weights; one uniform per call, like the guided
// sampler, so both modes consume the stream in lockstep.
Action sample_uniform_action(std::size_t action_count, RngStream& rng);

// Source of exploratory actions: either uniform or guided by a graph and
// its policy. The graph and policy must outlive the explorer.
class Explorer {
 public:
  static Explorer uniform(std::size_t action_count) { return Explorer(action_count); }
  Explorer(const LocalDynamicsGraph& graph, const ExplorationPolicy& policy);

  bool guided() const { return policy_ != nullptr; }
  Action explore(RngStream& rng) const;
  // Call with every executed action, exploratory or not.
  void observe(Action a);
  void reset();
  // Null for the uniform explorer.
  const SequenceCursor* cursor() const { return cursor_ ? &*cursor_ : nullptr; }

 private:
  explicit Explorer(std::size_t action_count);

  std::size_t action_count_;
  const ExplorationPolicy* policy_ = nullptr;
  std::optional<SequenceCursor> cursor_;
};

struct VisitRecord {
  std::size_t episode;
  std::size_t step;
  std::size_t unique_states;  // cumulative, after this step
};

struct VisitLog {
  std::vector<VisitRecord> records;
  std::vector<std::size_t> unique_after_episode;
  std::size_t unique_states = 0;

  // Columns: episode, step, new_state_count_cumulative. Step 0 is the reset.
  std::string to_csv() const;
};

// Every action comes from the explorer. Episodes end after `horizon` steps
// or when the environment says done; episode e resets the environment with
// derive_seed(reset_seed, e), so runs with the same reset_seed see the same
// starts whatever the explorer.
VisitLog run_pure_exploration(Environment& env, Explorer& explorer, std::size_t episodes, std::size_t horizon,
                              RngStream& rng, std::uint64_t reset_seed = 0);

}  // namespace easee
