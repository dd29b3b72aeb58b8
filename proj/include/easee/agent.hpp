#pragma once

// Tabular Q-learning with epsilon-greedy control, where exploratory actions
// come from an Explorer (uniform or guided by the exploration policy).

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "easee/envs.hpp"
#include "easee/explorer.hpp"

namespace easee {

class QTable {
 public:
  explicit QTable(std::size_t action_count) : action_count_(action_count) {}

  std::size_t action_count() const { return action_count_; }
  std::size_t size() const { return table_.size(); }
  // Zeros for unseen states.
  std::vector<double> values(const std::string& state) const;
  double get(const std::string& state, Action a) const;
  std::vector<double>& row(const std::string& state);
  double max_value(const std::string& state) const;
  // Ties go to the lowest action index.
  Action greedy(const std::string& state) const;

 private:
  std::size_t action_count_;
  std::unordered_map<std::string, std::vector<double>> table_;
};

// One-step update Q(s,a) += alpha * (r + gamma * max Q(s',.) - Q(s,a)), with
// no bootstrap past a terminal step.
void q_update(QTable& q, const std::string& state, Action a, double reward, const std::string& next, bool terminal,
              double alpha, double gamma);

// Linear from `start` to `end` over the first `fraction` of the episodes,
// then flat.
struct EpsilonSchedule {
  double start = 1.0;
  double end = 0.05;
  double fraction = 0.2;
  double at(std::size_t episode, std::size_t episodes) const;
};

struct AgentConfig {
  double alpha = 0.1;
  double gamma = 0.99;
  EpsilonSchedule epsilon;
  std::size_t episodes = 1000;
  std::size_t max_steps = 0;  // per episode; 0 runs until the environment ends
  std::uint64_t seed = 0;
  // Reset every episode with the same seed (one layout per run) instead of
  // a fresh seed per episode.
  bool fixed_reset = false;
  // Both set: exploratory actions follow the policy. Both null: uniform.
  const LocalDynamicsGraph* graph = nullptr;
  const ExplorationPolicy* policy = nullptr;

  void validate() const;  // throws ValidationError
};

struct CurvePoint {
  std::size_t episode;
  double ret;
  double epsilon;
  std::size_t unique_states;
};

struct LearningCurve {
  std::vector<CurvePoint> points;

  // Mean return over all episodes (area under the curve per episode).
  double area() const;
  // Columns: episode, return, epsilon, unique_states_so_far.
  std::string to_csv() const;
};

inline constexpr std::uint64_t kActionStream = 0xac710aULL;

struct TrainResult {
  LearningCurve curve;
  QTable q;
};

// Episode e resets the environment with derive_seed(config.seed, e), or e = 0
// throughout under fixed_reset. Actions draw from
// RngStream(derive_seed(config.seed, kActionStream)).
TrainResult train(Environment& env, const AgentConfig& config);

// Mean return of greedy rollouts (no learning).
double evaluate(Environment& env, const QTable& q, std::size_t episodes, std::uint64_t seed,
                std::size_t max_steps = 0);

}  // namespace easee
