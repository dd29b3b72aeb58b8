#include "easee/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include "easee/agent.hpp"
#include "easee/envs.hpp"
#include "easee/error.hpp"
#include "easee/explorer.hpp"

namespace easee {

namespace {

constexpr std::uint64_t kExploreStream = 0xe4b10e;

struct Solved {
  std::string variant;
  std::size_t depth;
  LocalDynamicsGraph graph;
  ExplorationPolicy policy;
};

ReportRow row(const ExperimentConfig& c, const std::string& variant, std::size_t depth,
              std::optional<std::uint64_t> seed, std::optional<std::size_t> episode, const char* metric, double value) {
  return {c.env, variant, depth, seed, episode, metric, value};
}

std::string csv_line(const ReportRow& r) {
  std::ostringstream out;
  out.precision(17);
  out << r.env << ',' << r.omega_variant << ',' << r.depth << ',';
  if (r.seed) out << *r.seed;
  out << ',';
  if (r.episode) out << *r.episode;
  out << ',' << r.metric << ',' << r.value << '\n';
  return out.str();
}

constexpr const char* kReportHeader = "env,omega_variant,depth,seed,episode,metric,value\n";

// Rows for one seed of one (variant, depth).
Report seed_rows(const ExperimentConfig& c, const Solved& s, std::uint64_t seed) {
  Report out;
  auto env = make_env(c.env);
  switch (c.kind) {
    case ExperimentKind::PureExplorationRatio:
    case ExperimentKind::PureExplorationCounts: {
      Explorer guided(s.graph, s.policy);
      auto uniform = Explorer::uniform(env->action_count());
      RngStream r1(derive_seed(seed, kExploreStream)), r2(derive_seed(seed, kExploreStream));
      const auto a = run_pure_exploration(*env, guided, c.episodes, c.horizon, r1, seed);
      const auto b = run_pure_exploration(*env, uniform, c.episodes, c.horizon, r2, seed);
      if (c.kind == ExperimentKind::PureExplorationRatio) {
        out.push_back(row(c, s.variant, s.depth, seed, {}, "unique_states", static_cast<double>(a.unique_states)));
        out.push_back(row(c, "uniform", s.depth, seed, {}, "unique_states", static_cast<double>(b.unique_states)));
        out.push_back(row(c, s.variant, s.depth, seed, {}, "ratio_vs_uniform",
                          static_cast<double>(a.unique_states) / static_cast<double>(b.unique_states)));
      } else {
        for (std::size_t e = 0; e < c.episodes; ++e) {
          out.push_back(row(c, s.variant, s.depth, seed, e + 1, "unique_states",
                            static_cast<double>(a.unique_after_episode[e])));
          out.push_back(row(c, "uniform", s.depth, seed, e + 1, "unique_states",
                            static_cast<double>(b.unique_after_episode[e])));
        }
      }
      break;
    }
    case ExperimentKind::QLearnCurve: {
      AgentConfig ac;
      ac.episodes = c.episodes;
      ac.seed = seed;
      ac.fixed_reset = c.fixed_reset;
      if (c.env == "cardinal" || c.env == "rotation") ac.max_steps = c.horizon;
      for (int mode = 0; mode < 2; ++mode) {
        ac.graph = mode == 0 ? &s.graph : nullptr;
        ac.policy = mode == 0 ? &s.policy : nullptr;
        const auto result = train(*env, ac);
        const std::string variant = mode == 0 ? s.variant : "uniform";
        const auto& pts = result.curve.points;
        for (std::size_t start = 0; start < pts.size(); start += c.curve_bin) {
          const std::size_t end = std::min(pts.size(), start + c.curve_bin);
          double sum = 0.0;
          for (std::size_t i = start; i < end; ++i) sum += pts[i].ret;
          out.push_back(row(c, variant, s.depth, seed, end, "mean_return", sum / static_cast<double>(end - start)));
        }
        out.push_back(row(c, variant, s.depth, seed, {}, "mean_return", result.curve.area()));
      }
      break;
    }
  }
  return out;
}

}  // namespace

ExperimentKind parse_experiment_kind(const std::string& name) {
  if (name == "pure_exploration_ratio") return ExperimentKind::PureExplorationRatio;
  if (name == "pure_exploration_counts") return ExperimentKind::PureExplorationCounts;
  if (name == "qlearn_curve") return ExperimentKind::QLearnCurve;
  throw ValidationError("unknown experiment kind '" + name + "'");
}

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::PureExplorationRatio: return "pure_exploration_ratio";
    case ExperimentKind::PureExplorationCounts: return "pure_exploration_counts";
    case ExperimentKind::QLearnCurve: return "qlearn_curve";
  }
  return "?";
}

void ExperimentConfig::validate() const {
  if (seeds.empty()) throw ValidationError("experiment needs at least one seed");
  if (variants.empty()) throw ValidationError("experiment needs at least one prior");
  if (depths.empty()) throw ValidationError("experiment needs at least one depth");
  for (auto d : depths)
    if (d < 1) throw DepthZero();
  if (episodes < 1) throw ValidationError("episodes must be at least 1");
  if (horizon < 1) throw ValidationError("horizon must be at least 1");
  if (curve_bin < 1) throw ValidationError("curve bin must be at least 1");
  make_env(env);
}

Report run_experiment(const ExperimentConfig& config) {
  config.validate();
  std::vector<Solved> solved;
  Report report;
  for (const auto& variant : config.variants) {
    for (auto depth : config.depths) {
      const auto prior = builtin_omega(config.env, variant);
      Solved s{variant, depth, build_graph(prior.actions, prior.omega, depth), {}};
      const auto result = solve_occupancy(s.graph);
      s.policy = extract_policy(s.graph, result.occupancy);
      s.policy.gap_certificate = result.gap;
      solved.push_back(std::move(s));
    }
  }

  // One job per (graph, seed); workers pull jobs and fill their slot.
  const std::size_t jobs = solved.size() * config.seeds.size();
  std::vector<Report> slots(jobs);
  std::atomic<std::size_t> next{0};
  std::mutex io;
  std::ofstream partial;
  if (!config.out_csv.empty()) {
    partial.open(config.out_csv + ".partial");
    partial << kReportHeader;
  }
  std::exception_ptr failure;
  auto worker = [&] {
    for (std::size_t j; (j = next++) < jobs;) {
      try {
        const auto& s = solved[j / config.seeds.size()];
        slots[j] = seed_rows(config, s, config.seeds[j % config.seeds.size()]);
        if (partial.is_open()) {
          std::lock_guard lock(io);
          for (const auto& r : slots[j]) partial << csv_line(r);
          partial.flush();
        }
      } catch (...) {
        std::lock_guard lock(io);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const std::size_t n_threads = std::max<std::size_t>(1, std::min(config.threads, jobs));
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < n_threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  // The uniform baseline does not depend on the prior, so each (depth, seed)
  // keeps only its first copy.
  std::set<std::tuple<std::size_t, std::uint64_t, std::optional<std::size_t>, std::string>> baseline;
  for (std::size_t g = 0; g < solved.size(); ++g) {
    const auto& s = solved[g];
    report.push_back(row(config, s.variant, s.depth, {}, {}, "node_count", static_cast<double>(s.graph.node_count())));
    report.push_back(row(config, s.variant, s.depth, {}, {}, "objective_value", s.policy.objective_value));
    for (std::size_t k = 0; k < config.seeds.size(); ++k) {
      for (auto& r : slots[g * config.seeds.size() + k]) {
        if (r.omega_variant == "uniform" && !baseline.emplace(r.depth, *r.seed, r.episode, r.metric).second) continue;
        report.push_back(std::move(r));
      }
    }
  }
  if (!config.out_csv.empty()) {
    partial.close();
    std::ofstream(config.out_csv) << report_to_csv(report);
    std::remove((config.out_csv + ".partial").c_str());
  }
  return report;
}

std::string report_to_csv(const Report& report) {
  std::string out = kReportHeader;
  for (const auto& r : report) out += csv_line(r);
  return out;
}

Report report_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line + "\n" != kReportHeader) throw ValidationError("not a report CSV");
  Report out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream fields(line);
    for (std::string cell; std::getline(fields, cell, ',');) f.push_back(cell);
    if (line.back() == ',') f.emplace_back();
    if (f.size() != 7) throw ValidationError("report line " + std::to_string(lineno) + ": expected 7 fields");
    try {
      ReportRow r;
      r.env = f[0];
      r.omega_variant = f[1];
      r.depth = std::stoul(f[2]);
      if (!f[3].empty()) r.seed = std::stoull(f[3]);
      if (!f[4].empty()) r.episode = std::stoul(f[4]);
      r.metric = f[5];
      r.value = std::stod(f[6]);
      out.push_back(std::move(r));
    } catch (const std::exception&) {
      throw ValidationError("report line " + std::to_string(lineno) + ": bad number");
    }
  }
  return out;
}

std::vector<SummaryRow> summarize(const Report& report) {
  if (report.empty()) throw EmptyReport();
  using Key = std::tuple<std::string, std::string, std::size_t, std::optional<std::size_t>, std::string>;
  std::map<Key, std::vector<double>> groups;
  std::vector<Key> order;
  for (const auto& r : report) {
    Key k{r.env, r.omega_variant, r.depth, r.episode, r.metric};
    auto [it, inserted] = groups.try_emplace(k);
    if (inserted) order.push_back(k);
    it->second.push_back(r.value);
  }
  std::vector<SummaryRow> out;
  for (const auto& k : order) {
    const auto& v = groups[k];
    SummaryRow s{std::get<0>(k), std::get<1>(k), std::get<2>(k), std::get<3>(k), std::get<4>(k), v.size()};
    for (double x : v) s.mean += x;
    s.mean /= static_cast<double>(v.size());
    if (v.size() > 1) {
      double ss = 0.0;
      for (double x : v) ss += (x - s.mean) * (x - s.mean);
      s.sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
      const double half = 1.96 * s.sd / std::sqrt(static_cast<double>(v.size()));
      s.ci_defined = true;
      s.ci_low = s.mean - half;
      s.ci_high = s.mean + half;
    } else {
      s.ci_low = s.ci_high = s.mean;
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::string summary_to_csv(const std::vector<SummaryRow>& summary) {
  std::ostringstream out;
  out.precision(17);
  out << "env,omega_variant,depth,episode,metric,n,mean,sd,ci_low,ci_high,ci_defined\n";
  for (const auto& s : summary) {
    out << s.env << ',' << s.omega_variant << ',' << s.depth << ',';
    if (s.episode) out << *s.episode;
    out << ',' << s.metric << ',' << s.n << ',' << s.mean << ',' << s.sd << ',';
    if (s.ci_defined)
      out << s.ci_low << ',' << s.ci_high << ",1\n";
    else
      out << ",,0\n";
  }
  return out.str();
}

}  // namespace easee
