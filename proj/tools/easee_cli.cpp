// Command-line entry point: build-graph, solve-policy, explore, qlearn,
// report, envs list.
//
// Exit codes: 0 success, 2 invalid input, 3 solver did not converge (the best
// iterate is still written).

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "easee/agent.hpp"
#include "easee/envs.hpp"
#include "easee/error.hpp"
#include "easee/harness.hpp"

namespace fs = std::filesystem;
using namespace easee;

namespace {

constexpr int kInvalid = 2;
constexpr int kNotConverged = 3;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read " + path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

// Writes to <dir>/<name>, or stdout without --out.
void emit(const std::string& dir, const std::string& name, const std::string& text) {
  if (dir.empty()) {
    std::cout << text;
    return;
  }
  fs::create_directories(dir);
  const auto path = fs::path(dir) / name;
  std::ofstream(path) << text;
  std::cerr << "wrote " << path.string() << '\n';
}

// "builtin:<variant>" (needs an env) or a DSL file.
Prior load_prior(const std::string& spec, const std::string& env) {
  if (spec.rfind("builtin:", 0) == 0) {
    if (env.empty()) throw ValidationError("builtin priors need --env");
    return builtin_omega(env, spec.substr(8));
  }
  return parse_prior(slurp(spec));
}

struct Common {
  std::uint64_t seed = 0;
  std::string out;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "Base seed");
  cmd->add_option("--out", c.out, "Output directory (stdout when omitted)");
}

std::vector<std::uint64_t> seed_range(const std::vector<std::uint64_t>& listed, std::size_t count, std::uint64_t base) {
  if (!listed.empty()) return listed;
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(base + i);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exploration guided by action-sequence equivalences"};
  app.require_subcommand(1);
  int status = 0;

  // build-graph
  Common bg;
  std::string bg_env, bg_omega;
  std::size_t bg_depth = 4;
  auto* build = app.add_subcommand("build-graph", "Build the local-dynamics graph for a prior");
  add_common(build, bg);
  build->add_option("--env", bg_env, "Environment for builtin priors");
  build->add_option("--omega", bg_omega, "builtin:<variant> or a prior file")->required();
  build->add_option("--depth", bg_depth, "Graph depth");
  build->callback([&] {
    const auto prior = load_prior(bg_omega, bg_env);
    const auto g = build_graph(prior.actions, prior.omega, bg_depth);
    for (const auto& w : g.stats().warnings) std::cerr << "warning: " << w << '\n';
    std::cerr << g.node_count() << " nodes, " << g.edges().size() << " edges\n";
    emit(bg.out, "graph.json", graph_to_json(g) + "\n");
  });

  // solve-policy
  Common sp;
  std::string sp_graph, sp_weights = "uniform";
  SolverConfig sp_cfg;
  auto* solve = app.add_subcommand("solve-policy", "Solve for the maximum-entropy exploration policy");
  add_common(solve, sp);
  solve->add_option("--graph", sp_graph, "Graph JSON file")->required();
  solve->add_option("--weights", sp_weights, "uniform | final | csv:<path>");
  solve->add_option("--tol", sp_cfg.tolerance, "Duality-gap tolerance");
  solve->add_option("--max-iters", sp_cfg.max_iters, "Iteration cap");
  solve->callback([&] {
    const auto g = graph_from_json(slurp(sp_graph));
    sp_cfg.entropy_weights = parse_weights(sp_weights, g.depth());
    const auto r = solve_occupancy(g, sp_cfg);
    auto policy = extract_policy(g, r.occupancy);
    policy.objective_value = r.objective;
    policy.gap_certificate = r.gap;
    std::cerr << "objective " << r.objective << ", gap " << r.gap << ", " << r.iterations << " iterations\n";
    emit(sp.out, "policy.json", policy_to_json(g, policy) + "\n");
    if (!r.converged) {
      std::cerr << "not converged: gap above tolerance after " << r.iterations << " iterations\n";
      status = kNotConverged;
    }
  });

  // explore
  Common ex;
  std::string ex_env, ex_omega, ex_baseline = "easee";
  std::size_t ex_depth = 4, ex_episodes = 100, ex_horizon = 100;
  auto* explore = app.add_subcommand("explore", "Pure exploration and visited-state counts");
  add_common(explore, ex);
  explore->add_option("--env", ex_env, "Environment")->required();
  explore->add_option("--omega", ex_omega, "builtin:<variant> or a prior file");
  explore->add_option("--depth", ex_depth, "Graph depth");
  explore->add_option("--episodes", ex_episodes, "Episodes");
  explore->add_option("--horizon", ex_horizon, "Steps per episode");
  explore->add_option("--baseline", ex_baseline, "easee | uniform")->check(CLI::IsMember({"easee", "uniform"}));
  explore->callback([&] {
    auto env = make_env(ex_env);
    LocalDynamicsGraph g;
    ExplorationPolicy p;
    std::optional<Explorer> explorer;
    if (ex_baseline == "easee") {
      if (ex_omega.empty()) throw ValidationError("--baseline easee needs --omega");
      const auto prior = load_prior(ex_omega, ex_env);
      g = build_graph(prior.actions, prior.omega, ex_depth);
      p = extract_policy(g, solve_occupancy(g).occupancy);
      explorer.emplace(g, p);
    } else {
      explorer.emplace(Explorer::uniform(env->action_count()));
    }
    RngStream rng(derive_seed(ex.seed, 0xe4b10e));
    const auto log = run_pure_exploration(*env, *explorer, ex_episodes, ex_horizon, rng, ex.seed);
    std::cerr << log.unique_states << " unique states\n";
    emit(ex.out, "visits.csv", log.to_csv());
  });

  // qlearn
  Common ql;
  std::string ql_env, ql_omega, ql_mode = "easee";
  std::size_t ql_depth = 4, ql_seed_count = 1;
  std::vector<std::uint64_t> ql_seeds;
  AgentConfig ql_cfg;
  auto* qlearn = app.add_subcommand("qlearn", "Tabular Q-learning with guided or uniform exploration");
  add_common(qlearn, ql);
  qlearn->add_option("--env", ql_env, "Environment")->required();
  qlearn->add_option("--omega", ql_omega, "builtin:<variant> or a prior file");
  qlearn->add_option("--depth", ql_depth, "Graph depth");
  qlearn->add_option("--mode", ql_mode, "easee | uniform")->check(CLI::IsMember({"easee", "uniform"}));
  qlearn->add_option("--seeds", ql_seeds, "Explicit seed list")->delimiter(',');
  qlearn->add_option("--seed-count", ql_seed_count, "Seeds --seed, --seed+1, ... when --seeds is absent");
  qlearn->add_option("--episodes", ql_cfg.episodes, "Training episodes");
  qlearn->add_option("--max-steps", ql_cfg.max_steps, "Step cap per episode (0: until done)");
  qlearn->add_option("--alpha", ql_cfg.alpha, "Learning rate");
  qlearn->add_option("--gamma", ql_cfg.gamma, "Discount");
  qlearn->add_flag("--fixed-reset", ql_cfg.fixed_reset, "Same reset seed every episode");
  qlearn->callback([&] {
    auto env = make_env(ql_env);
    LocalDynamicsGraph g;
    ExplorationPolicy p;
    if (ql_mode == "easee") {
      if (ql_omega.empty()) throw ValidationError("--mode easee needs --omega");
      const auto prior = load_prior(ql_omega, ql_env);
      g = build_graph(prior.actions, prior.omega, ql_depth);
      p = extract_policy(g, solve_occupancy(g).occupancy);
      ql_cfg.graph = &g;
      ql_cfg.policy = &p;
    }
    for (auto seed : seed_range(ql_seeds, ql_seed_count, ql.seed)) {
      ql_cfg.seed = seed;
      const auto r = train(*env, ql_cfg);
      std::cout << "seed " << seed << " mean_return " << r.curve.area() << '\n';
      if (!ql.out.empty()) emit(ql.out, "curve_" + ql_mode + "_seed" + std::to_string(seed) + ".csv", r.curve.to_csv());
    }
  });

  // report
  Common rp;
  ExperimentConfig rp_cfg;
  std::string rp_kind = "pure_exploration_ratio", rp_from;
  std::size_t rp_seed_count = 20;
  std::vector<std::uint64_t> rp_seeds;
  auto* report = app.add_subcommand("report", "Run an experiment sweep and summarize across seeds");
  add_common(report, rp);
  report->add_option("--kind", rp_kind, "pure_exploration_ratio | pure_exploration_counts | qlearn_curve");
  report->add_option("--env", rp_cfg.env, "Environment");
  report->add_option("--variants", rp_cfg.variants, "Builtin prior names")->delimiter(',');
  report->add_option("--depths", rp_cfg.depths, "Graph depths")->delimiter(',');
  report->add_option("--episodes", rp_cfg.episodes, "Episodes per seed");
  report->add_option("--horizon", rp_cfg.horizon, "Steps per episode");
  report->add_option("--seeds", rp_seeds, "Explicit seed list")->delimiter(',');
  report->add_option("--seed-count", rp_seed_count, "Seeds --seed, --seed+1, ... when --seeds is absent");
  report->add_option("--threads", rp_cfg.threads, "Worker threads");
  report->add_option("--curve-bin", rp_cfg.curve_bin, "Episodes per learning-curve point");
  report->add_flag("--fixed-reset", rp_cfg.fixed_reset, "Same reset seed every episode (qlearn)");
  report->add_option("--from", rp_from, "Summarize an existing report CSV instead of running");
  report->callback([&] {
    Report rows;
    if (!rp_from.empty()) {
      rows = report_from_csv(slurp(rp_from));
    } else {
      rp_cfg.kind = parse_experiment_kind(rp_kind);
      rp_cfg.seeds = seed_range(rp_seeds, rp_seed_count, rp.seed);
      if (!rp.out.empty()) {
        fs::create_directories(rp.out);
        rp_cfg.out_csv = (fs::path(rp.out) / "report.csv").string();
      }
      rows = run_experiment(rp_cfg);
      if (rp.out.empty()) std::cout << report_to_csv(rows) << '\n';
    }
    emit(rp.out, "summary.csv", summary_to_csv(summarize(rows)));
  });

  // envs list
  Common el;
  auto* envs = app.add_subcommand("envs", "Environment catalogue");
  auto* list = envs->add_subcommand("list", "List environments, actions and builtin priors");
  add_common(list, el);
  envs->require_subcommand(1);
  list->callback([&] {
    std::ostringstream out;
    for (const auto& name : env_names()) {
      const auto env = make_env(name);
      out << name << "\tactions:";
      for (std::size_t a = 0; a < env->action_count(); ++a) out << ' ' << env->actions().name(static_cast<Action>(a));
      out << "\tpriors:";
      for (const auto& v : builtin_variants(name)) out << ' ' << v;
      out << '\n';
    }
    emit(el.out, "envs.txt", out.str());
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  }
  return status;
}
