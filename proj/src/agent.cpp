#include "easee/agent.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_set>

#include "easee/error.hpp"

namespace easee {

std::vector<double> QTable::values(const std::string& state) const {
  auto it = table_.find(state);
  return it == table_.end() ? std::vector<double>(action_count_, 0.0) : it->second;
}

double QTable::get(const std::string& state, Action a) const {
  auto it = table_.find(state);
  return it == table_.end() ? 0.0 : it->second.at(a);
}

std::vector<double>& QTable::row(const std::string& state) {
  auto it = table_.find(state);
  if (it == table_.end()) it = table_.emplace(state, std::vector<double>(action_count_, 0.0)).first;
  return it->second;
}

double QTable::max_value(const std::string& state) const {
  auto it = table_.find(state);
  if (it == table_.end()) return 0.0;
  return *std::max_element(it->second.begin(), it->second.end());
}

Action QTable::greedy(const std::string& state) const {
  auto it = table_.find(state);
  if (it == table_.end()) return 0;
  // max_element returns the first maximum.
  return static_cast<Action>(std::max_element(it->second.begin(), it->second.end()) - it->second.begin());
}

void q_update(QTable& q, const std::string& state, Action a, double reward, const std::string& next, bool terminal,
              double alpha, double gamma) {
  const double target = reward + (terminal ? 0.0 : gamma * q.max_value(next));
  auto& r = q.row(state);
  r.at(a) += alpha * (target - r[a]);
}

double EpsilonSchedule::at(std::size_t episode, std::size_t episodes) const {
  const double span = fraction * static_cast<double>(episodes);
  if (span <= 0.0 || static_cast<double>(episode) >= span) return end;
  return start + (end - start) * static_cast<double>(episode) / span;
}

void AgentConfig::validate() const {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ValidationError("alpha must be in (0, 1]");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw ValidationError("gamma must be in [0, 1]");
  for (double e : {epsilon.start, epsilon.end})
    if (!(e >= 0.0 && e <= 1.0)) throw ValidationError("epsilon must stay in [0, 1]");
  if (!(epsilon.fraction >= 0.0 && epsilon.fraction <= 1.0)) throw ValidationError("anneal fraction must be in [0, 1]");
  if ((graph == nullptr) != (policy == nullptr)) throw ValidationError("graph and policy go together");
}

double LearningCurve::area() const {
  if (points.empty()) return 0.0;
  double total = 0.0;
  for (const auto& p : points) total += p.ret;
  return total / static_cast<double>(points.size());
}

std::string LearningCurve::to_csv() const {
  std::ostringstream out;
  out.precision(17);
  out << "episode,return,epsilon,unique_states_so_far\n";
  for (const auto& p : points) out << p.episode << ',' << p.ret << ',' << p.epsilon << ',' << p.unique_states << '\n';
  return out.str();
}

TrainResult train(Environment& env, const AgentConfig& config) {
  config.validate();
  if (config.graph && config.graph->actions().size() != env.action_count())
    throw ValidationError("graph actions do not match the environment");
  Explorer explorer = config.graph ? Explorer(*config.graph, *config.policy) : Explorer::uniform(env.action_count());
  RngStream rng(derive_seed(config.seed, kActionStream));
  TrainResult result{{}, QTable(env.action_count())};
  std::unordered_set<std::string> seen;
  result.curve.points.reserve(config.episodes);

  for (std::size_t e = 0; e < config.episodes; ++e) {
    const double eps = config.epsilon.at(e, config.episodes);
    env.reset(derive_seed(config.seed, config.fixed_reset ? 0 : e));
    explorer.reset();
    std::string state = env.encode();
    seen.insert(state);
    double ret = 0.0;
    for (std::size_t t = 0; !env.done() && (config.max_steps == 0 || t < config.max_steps); ++t) {
      const bool explore = rng.uniform() < eps;
      const Action a = explore ? explorer.explore(rng) : result.q.greedy(state);
      const auto step = env.step(a);
      explorer.observe(a);
      std::string next = env.encode();
      q_update(result.q, state, a, step.reward, next, step.done, config.alpha, config.gamma);
      ret += step.reward;
      seen.insert(next);
      state = std::move(next);
    }
    result.curve.points.push_back({e, ret, eps, seen.size()});
  }
  return result;
}

double evaluate(Environment& env, const QTable& q, std::size_t episodes, std::uint64_t seed, std::size_t max_steps) {
  if (episodes == 0) return 0.0;
  double total = 0.0;
  for (std::size_t e = 0; e < episodes; ++e) {
    env.reset(derive_seed(seed, e));
    for (std::size_t t = 0; !env.done() && (max_steps == 0 || t < max_steps); ++t)
      total += env.step(q.greedy(env.encode())).reward;
  }
  return total / static_cast<double>(episodes);
}

}  // namespace easee
