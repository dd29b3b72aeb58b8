// Python bindings for the core library.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "easee/agent.hpp"
#include "easee/error.hpp"
#include "easee/harness.hpp"

namespace py = pybind11;
using namespace easee;

namespace {

// A graph together with its solved policy, so exploration can refer to both.
struct Solved {
  LocalDynamicsGraph graph;
  SolveResult result;
  ExplorationPolicy policy;
};

std::shared_ptr<Solved> solve(const LocalDynamicsGraph& g, const std::string& weights, double tol,
                              std::size_t max_iters) {
  SolverConfig c;
  c.entropy_weights = parse_weights(weights, g.depth());
  c.tolerance = tol;
  c.max_iters = max_iters;
  auto s = std::make_shared<Solved>(Solved{g, solve_occupancy(g, c), {}});
  s->policy = extract_policy(s->graph, s->result.occupancy);
  s->policy.objective_value = s->result.objective;
  s->policy.gap_certificate = s->result.gap;
  return s;
}

py::dict row_dict(const ReportRow& r) {
  py::dict d;
  d["env"] = r.env;
  d["omega_variant"] = r.omega_variant;
  d["depth"] = r.depth;
  d["seed"] = r.seed ? py::cast(*r.seed) : py::none();
  d["episode"] = r.episode ? py::cast(*r.episode) : py::none();
  d["metric"] = r.metric;
  d["value"] = r.value;
  return d;
}

}  // namespace

PYBIND11_MODULE(_easee, m) {
  m.doc() = "Exploration guided by action-sequence equivalences";

  auto base = py::register_exception<Error>(m, "EaseeError");
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", base.ptr());
  py::register_exception<InfeasibleGraph>(m, "InfeasibleGraph", base.ptr());
  py::register_exception<UnknownEnv>(m, "UnknownEnv", base.ptr());
  py::register_exception<UnknownVariant>(m, "UnknownVariant", base.ptr());
  py::register_exception<EmptyReport>(m, "EmptyReport", base.ptr());

  py::class_<Prior>(m, "Prior")
      .def_property_readonly("actions", [](const Prior& p) { return p.actions.names(); })
      .def_property_readonly("pairs",
                             [](const Prior& p) {
                               std::vector<std::pair<std::string, std::string>> out;
                               for (const auto& [v, w] : p.omega.pairs())
                                 out.emplace_back(to_string(v, p.actions), to_string(w, p.actions));
                               return out;
                             })
      .def("to_dsl", [](const Prior& p) { return to_dsl(p.actions, p.omega); });

  m.def("parse_prior", [](const std::string& text) { return parse_prior(text); }, py::arg("text"));
  m.def("builtin_omega", &builtin_omega, py::arg("env"), py::arg("variant"));
  m.def("builtin_variants", &builtin_variants, py::arg("env"));
  m.def("env_names", &env_names);
  m.def("equivalent",
        [](const Prior& p, const std::string& s, const std::string& t) {
          const auto a = parse_sequence(s, p.actions), b = parse_sequence(t, p.actions);
          return equivalent(a, b, p.omega, default_budget(std::max(a.size(), b.size()), p.omega));
        },
        py::arg("prior"), py::arg("s"), py::arg("t"));

  py::class_<LocalDynamicsGraph>(m, "Graph")
      .def_property_readonly("depth", &LocalDynamicsGraph::depth)
      .def_property_readonly("node_count", &LocalDynamicsGraph::node_count)
      .def_property_readonly("edge_count", [](const LocalDynamicsGraph& g) { return g.edges().size(); })
      .def_property_readonly("layer_sizes",
                             [](const LocalDynamicsGraph& g) {
                               std::vector<std::size_t> out;
                               for (const auto& l : g.layers()) out.push_back(l.size());
                               return out;
                             })
      .def_property_readonly("warnings", [](const LocalDynamicsGraph& g) { return g.stats().warnings; })
      .def("to_json", &graph_to_json)
      .def_static("from_json", &graph_from_json, py::arg("text"));

  m.def("build_graph", [](const Prior& p, std::size_t depth) { return build_graph(p.actions, p.omega, depth); },
        py::arg("prior"), py::arg("depth"));

  py::class_<Solved, std::shared_ptr<Solved>>(m, "Policy")
      .def_property_readonly("objective", [](const Solved& s) { return s.result.objective; })
      .def_property_readonly("gap", [](const Solved& s) { return s.result.gap; })
      .def_property_readonly("converged", [](const Solved& s) { return s.result.converged; })
      .def_property_readonly("iterations", [](const Solved& s) { return s.result.iterations; })
      .def_property_readonly("graph", [](const Solved& s) { return s.graph; })
      .def("prob", [](const Solved& s, NodeId v, Action a) { return policy_prob(s.graph, s.policy, v, a); },
           py::arg("node"), py::arg("action"))
      .def("feasible",
           [](const Solved& s, double tol) { return check_occupancy(s.graph, s.result.occupancy).ok(tol); },
           py::arg("tol") = 1e-9)
      .def("to_json", [](const Solved& s) { return policy_to_json(s.graph, s.policy); });

  m.def("solve_policy", &solve, py::arg("graph"), py::arg("weights") = "uniform", py::arg("tol") = 1e-6,
        py::arg("max_iters") = 10000);

  py::class_<Environment>(m, "Environment")
      .def_property_readonly("name", &Environment::name)
      .def_property_readonly("actions", [](const Environment& e) { return e.actions().names(); })
      .def("reset", &Environment::reset, py::arg("seed") = 0)
      .def("step",
           [](Environment& e, Action a) {
             const auto r = e.step(a);
             return py::make_tuple(r.reward, r.done);
           },
           py::arg("action"))
      .def_property_readonly("done", &Environment::done)
      .def("encode", [](const Environment& e) { return py::bytes(e.encode()); });

  m.def("make_env", &make_env, py::arg("name"));

  m.def("explore",
        [](const std::string& env_name, std::shared_ptr<Solved> policy, std::size_t episodes, std::size_t horizon,
           std::uint64_t seed) {
          auto env = make_env(env_name);
          Explorer ex = policy ? Explorer(policy->graph, policy->policy) : Explorer::uniform(env->action_count());
          RngStream rng(derive_seed(seed, 0xe4b10e));
          const auto log = run_pure_exploration(*env, ex, episodes, horizon, rng, seed);
          return log.unique_after_episode;
        },
        py::arg("env"), py::arg("policy") = nullptr, py::arg("episodes") = 100, py::arg("horizon") = 100,
        py::arg("seed") = 0,
        "Cumulative unique states after each episode; uniform exploration without a policy.");

  m.def("qlearn",
        [](const std::string& env_name, std::shared_ptr<Solved> policy, std::size_t episodes, std::uint64_t seed,
           bool fixed_reset, std::size_t max_steps) {
          auto env = make_env(env_name);
          AgentConfig c;
          c.episodes = episodes;
          c.seed = seed;
          c.fixed_reset = fixed_reset;
          c.max_steps = max_steps;
          if (policy) {
            c.graph = &policy->graph;
            c.policy = &policy->policy;
          }
          const auto r = train(*env, c);
          std::vector<double> returns;
          for (const auto& p : r.curve.points) returns.push_back(p.ret);
          return returns;
        },
        py::arg("env"), py::arg("policy") = nullptr, py::arg("episodes") = 1000, py::arg("seed") = 0,
        py::arg("fixed_reset") = false, py::arg("max_steps") = 0, "Per-episode returns of tabular Q-learning.");

  m.def("run_experiment",
        [](const std::string& kind, const std::string& env, std::vector<std::string> variants,
           std::vector<std::size_t> depths, std::size_t episodes, std::size_t horizon, std::vector<std::uint64_t> seeds,
           std::size_t threads) {
          ExperimentConfig c;
          c.kind = parse_experiment_kind(kind);
          c.env = env;
          c.variants = std::move(variants);
          c.depths = std::move(depths);
          c.episodes = episodes;
          c.horizon = horizon;
          c.seeds = std::move(seeds);
          c.threads = threads;
          Report r;
          {
            py::gil_scoped_release release;
            r = run_experiment(c);
          }
          py::list out;
          for (const auto& row : r) out.append(row_dict(row));
          return out;
        },
        py::arg("kind"), py::arg("env"), py::arg("variants"), py::arg("depths"), py::arg("episodes") = 100,
        py::arg("horizon") = 100, py::arg("seeds") = std::vector<std::uint64_t>{0}, py::arg("threads") = 1);

  m.def("summarize_csv", [](const std::string& report_csv) { return summary_to_csv(summarize(report_from_csv(report_csv))); },
        py::arg("report_csv"));
}
