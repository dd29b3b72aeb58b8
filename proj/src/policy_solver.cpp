#include "easee/policy_solver.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include "easee/error.hpp"
#include "json.hpp"

namespace easee {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kProximal = 1e-8;

std::vector<double> resolve_weights(const LocalDynamicsGraph& g, const std::vector<double>& w) {
  if (w.empty()) return uniform_weights(g.depth());
  if (w.size() != g.depth())
    throw ValidationError("expected " + std::to_string(g.depth()) + " entropy weights, got " +
                          std::to_string(w.size()));
  double sum = 0.0;
  for (double x : w) {
    if (!std::isfinite(x) || x < 0.0) throw ValidationError("entropy weights must be finite and >= 0");
    sum += x;
  }
  if (sum <= 0.0) throw ValidationError("entropy weights must have a positive sum");
  return w;
}

// Weight of the layer each node sits in; the root layer carries no entropy.
std::vector<double> node_weights(const LocalDynamicsGraph& g, const std::vector<double>& w) {
  std::vector<double> out(g.node_count(), 0.0);
  for (const auto& n : g.nodes())
    if (n.depth > 0) out[n.id] = w[n.depth - 1];
  return out;
}

// A node is viable when some path from it reaches the final layer.
std::vector<bool> viable_nodes(const LocalDynamicsGraph& g) {
  std::vector<bool> viable(g.node_count(), false);
  for (NodeId v = g.node_count(); v-- > 0;) {
    if (g.is_final(v)) {
      viable[v] = true;
      continue;
    }
    for (const auto& e : g.out_edges(v))
      if (viable[e.to]) {
        viable[v] = true;
        break;
      }
  }
  return viable;
}

std::vector<double> node_mass_of(const LocalDynamicsGraph& g, const std::vector<double>& x) {
  std::vector<double> p(g.node_count(), 0.0);
  p[kRoot] = 1.0;
  const auto& edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) p[edges[i].to] += x[i];
  return p;
}

double neg_p_log_p(double p) { return p > 0.0 ? -p * std::log(p) : 0.0; }

double weighted_entropy(const std::vector<double>& p, const std::vector<double>& wn) {
  double total = 0.0;
  for (std::size_t v = 0; v < p.size(); ++v)
    if (wn[v] != 0.0) total += wn[v] * neg_p_log_p(p[v]);
  return total;
}

void require_feasible_structure(const LocalDynamicsGraph& g, const std::vector<bool>& viable) {
  for (std::size_t t = 0; t < g.layers().size(); ++t)
    if (g.layers()[t].empty()) throw InfeasibleGraph("layer " + std::to_string(t) + " is empty");
  if (!viable[kRoot]) throw InfeasibleGraph("no path from the root reaches the final layer");
}

// Value-to-go over the layered DAG for a linear functional c on edges, taking
// the best (or worst) allowed out-edge at every node. Out-edges are visited in
// action order with a strict comparison, so ties go to the lowest action.
struct PathTable {
  std::vector<double> value;
  std::vector<std::size_t> choice;
};

template <typename Allowed>
PathTable extreme_paths(const LocalDynamicsGraph& g, const std::vector<double>& c, bool maximize,
                        Allowed&& allowed) {
  const double none = maximize ? -kInf : kInf;
  PathTable t{std::vector<double>(g.node_count(), none), std::vector<std::size_t>(g.node_count(), 0)};
  for (NodeId v = g.node_count(); v-- > 0;) {
    if (g.is_final(v)) {
      t.value[v] = 0.0;
      continue;
    }
    const auto base = g.out_edge_offset(v);
    const auto out = g.out_edges(v);
    for (std::size_t k = 0; k < out.size(); ++k) {
      const auto idx = base + k;
      if (!allowed(idx) || t.value[out[k].to] == none) continue;
      const double cand = c[idx] + t.value[out[k].to];
      if (maximize ? cand > t.value[v] : cand < t.value[v]) {
        t.value[v] = cand;
        t.choice[v] = idx;
      }
    }
  }
  return t;
}

void path_from(const LocalDynamicsGraph& g, const PathTable& t, NodeId v, std::vector<std::size_t>& path) {
  path.clear();
  while (!g.is_final(v)) {
    path.push_back(t.choice[v]);
    v = g.edges()[t.choice[v]].to;
  }
}

// Maximizer of a concave function on [0, hi] from its derivative and second
// derivative: safeguarded Newton inside a bisection bracket.
template <typename Slope, typename Curve>
double line_search(Slope&& slope, Curve&& curve, double hi) {
  if (slope(hi) >= 0.0) return hi;
  double lo = 0.0;
  double eta = 0.5 * hi;
  for (int k = 0; k < 100; ++k) {
    const double d = slope(eta);
    if (d > 0.0) {
      lo = eta;
    } else {
      hi = eta;
    }
    if (d == 0.0 || hi - lo <= 1e-16 * hi) break;
    const double h = curve(eta);
    const double newton = h < 0.0 ? eta - d / h : -1.0;
    eta = (newton > lo && newton < hi) ? newton : 0.5 * (lo + hi);
  }
  return eta;
}

// Newton step for the entropy objective restricted to the face of the
// polytope spanned by the current support {e : x_e > 0}, followed by an exact
// line search on the true objective. The Hessian is block-diagonal by head
// node (every in-edge of v feeds the same p_v); a small proximal term
// rho / x_e makes it definite along flow rearrangements that leave all node
// masses unchanged. Returns the step length taken.
double newton_face_step(const LocalDynamicsGraph& g, const std::vector<double>& wn, double rho,
                        std::vector<double>& x, std::vector<double>& p) {
  const auto& edges = g.edges();
  const std::size_t n = g.node_count();
  std::vector<long> row(n, -1);
  long m = 0;
  for (NodeId v = 0; v < n; ++v)
    if (!g.is_final(v) && p[v] > 0.0) row[v] = m++;

  // Per head node: inverse Hessian block M = D^-1 - beta q q^T with
  // D = diag(rho / x_e), q = D^-1 1.
  std::vector<double> dinv(edges.size(), 0.0);
  std::vector<double> beta(n, 0.0);
  std::vector<double> g_edge(edges.size(), 0.0);
  for (NodeId v = 1; v < n; ++v) {
    if (p[v] <= 0.0) continue;
    const double alpha = wn[v] / p[v];
    double qsum = 0.0;
    for (auto i : g.in_edge_indices(v)) {
      if (x[i] <= 0.0) continue;
      dinv[i] = x[i] / rho;
      qsum += dinv[i];
      g_edge[i] = -wn[v] * (std::log(p[v]) + 1.0);
    }
    beta[v] = alpha / (1.0 + alpha * qsum);
  }
  // Apply a signed column of A^T (edge i: +1 at its source row, -1 at its
  // head row when the head is not final).
  auto a_entries = [&](std::size_t i, auto&& emit) {
    if (row[edges[i].from] >= 0) emit(row[edges[i].from], 1.0);
    if (row[edges[i].to] >= 0) emit(row[edges[i].to], -1.0);
  };

  std::vector<Eigen::Triplet<double>> trip;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
  std::vector<std::size_t> in;
  for (NodeId v = 1; v < n; ++v) {
    if (p[v] <= 0.0) continue;
    in.clear();
    for (auto i : g.in_edge_indices(v))
      if (x[i] > 0.0) in.push_back(i);
    // rhs = A M g for this block; S += A M A^T.
    double qg = 0.0;
    for (auto i : in) qg += dinv[i] * g_edge[i];
    for (auto i : in) {
      const double mg = dinv[i] * g_edge[i] - beta[v] * dinv[i] * qg;
      a_entries(i, [&](long r, double s) { rhs[r] += s * mg; });
      for (auto j : in) {
        const double mij = (i == j ? dinv[i] : 0.0) - beta[v] * dinv[i] * dinv[j];
        if (mij == 0.0) continue;
        a_entries(i, [&](long r, double si) {
          a_entries(j, [&](long c, double sj) { trip.emplace_back(r, c, si * sj * mij); });
        });
      }
    }
  }
  Eigen::SparseMatrix<double> schur(m, m);
  schur.setFromTriplets(trip.begin(), trip.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(schur);
  if (solver.info() != Eigen::Success) return 0.0;
  const Eigen::VectorXd nu = solver.solve(rhs);
  if (solver.info() != Eigen::Success || !nu.allFinite()) return 0.0;

  // dx = M (g - A^T nu), block by block.
  std::vector<double> dx(edges.size(), 0.0);
  std::vector<double> dp(n, 0.0);
  std::vector<double> r_edge(edges.size(), 0.0);
  for (NodeId v = 1; v < n; ++v) {
    if (p[v] <= 0.0) continue;
    double qr = 0.0;
    in.clear();
    for (auto i : g.in_edge_indices(v)) {
      if (x[i] <= 0.0) continue;
      in.push_back(i);
      double r = g_edge[i];
      a_entries(i, [&](long k, double s) { r -= s * nu[k]; });
      r_edge[i] = r;
      qr += dinv[i] * r;
    }
    for (auto i : in) {
      dx[i] = dinv[i] * r_edge[i] - beta[v] * dinv[i] * qr;
      dp[v] += dx[i];
    }
  }

  double eta_max = 1e3;
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (dx[i] < 0.0) eta_max = std::min(eta_max, x[i] / -dx[i]);
  std::vector<NodeId> moved;
  for (NodeId v = 1; v < n; ++v)
    if (dp[v] != 0.0) moved.push_back(v);
  auto slope = [&](double eta) {
    double d = 0.0;
    for (auto v : moved) d -= wn[v] * dp[v] * (std::log(std::max(p[v] + eta * dp[v], 1e-300)) + 1.0);
    return d;
  };
  auto curve = [&](double eta) {
    double h = 0.0;
    for (auto v : moved) h -= wn[v] * dp[v] * dp[v] / std::max(p[v] + eta * dp[v], 1e-300);
    return h;
  };
  if (!(eta_max > 0.0) || moved.empty() || !(slope(0.0) > 0.0)) return 0.0;
  const double eta = line_search(slope, curve, eta_max);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (dx[i] == 0.0) continue;
    const double nx = x[i] + eta * dx[i];
    x[i] = (dx[i] < 0.0 && eta >= eta_max && x[i] / -dx[i] <= eta_max) ? 0.0 : std::max(0.0, nx);
  }
  p = node_mass_of(g, x);
  return eta;
}

}  // namespace

std::vector<double> uniform_weights(std::size_t depth) {
  if (depth < 1) throw DepthZero();
  return std::vector<double>(depth, 1.0 / static_cast<double>(depth));
}

std::vector<double> final_layer_weights(std::size_t depth) {
  if (depth < 1) throw DepthZero();
  std::vector<double> w(depth, 0.0);
  w.back() = 1.0;
  return w;
}

std::vector<double> parse_weights(const std::string& spec, std::size_t depth) {
  if (spec == "uniform") return uniform_weights(depth);
  if (spec == "final") return final_layer_weights(depth);
  if (spec.rfind("csv:", 0) == 0) {
    const auto path = spec.substr(4);
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read weights file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    auto text = buf.str();
    std::replace(text.begin(), text.end(), ',', ' ');
    std::istringstream fields(text);
    std::vector<double> w;
    std::string tok;
    while (fields >> tok) {
      try {
        std::size_t used = 0;
        w.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw ValidationError("bad weight '" + tok + "' in " + path);
      }
    }
    if (w.size() != depth)
      throw ValidationError("weights file has " + std::to_string(w.size()) + " entries, depth is " +
                            std::to_string(depth));
    double sum = 0.0;
    for (double x : w) {
      if (!std::isfinite(x) || x < 0.0) throw ValidationError("weights must be finite and >= 0");
      sum += x;
    }
    if (sum <= 0.0) throw ValidationError("weights must have a positive sum");
    return w;
  }
  throw ValidationError("weights must be uniform, final or csv:<path>, got '" + spec + "'");
}

SolveResult solve_occupancy(const LocalDynamicsGraph& g, const SolverConfig& config) {
  if (!(config.tolerance > 0.0)) throw ValidationError("solver tolerance must be positive");
  if (!(config.floor > 0.0)) throw ValidationError("solver floor must be positive");
  const auto w = resolve_weights(g, config.entropy_weights);
  const auto wn = node_weights(g, w);
  const auto viable = viable_nodes(g);
  require_feasible_structure(g, viable);

  const auto& edges = g.edges();
  const std::size_t n_edges = edges.size();

  // Start from the policy that is uniform over viable out-edges; on a tree
  // this is already optimal.
  std::vector<double> x(n_edges, 0.0);
  std::vector<double> p(g.node_count(), 0.0);
  p[kRoot] = 1.0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (g.is_final(v) || p[v] == 0.0) continue;
    const auto base = g.out_edge_offset(v);
    const auto out = g.out_edges(v);
    std::size_t k = 0;
    for (const auto& e : out) k += viable[e.to] ? 1 : 0;
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (!viable[out[i].to]) continue;
      x[base + i] = p[v] / static_cast<double>(k);
      p[out[i].to] += x[base + i];
    }
  }

  SolveResult result;
  std::vector<double> c(n_edges, 0.0);
  std::vector<std::size_t> best, worst;
  std::vector<std::pair<NodeId, double>> delta;
  auto slope = [&](double eta) {
    double d = 0.0;
    for (const auto& [node, sign] : delta)
      d -= wn[node] * sign * (std::log(std::max(p[node] + eta * sign, 1e-300)) + 1.0);
    return d;
  };
  auto curve = [&](double eta) {
    double h = 0.0;
    for (const auto& [node, sign] : delta) h -= wn[node] / std::max(p[node] + eta * sign, 1e-300);
    return h;
  };

  std::vector<double> saved;
  auto reproject = [&](std::vector<double>& y) {
    OccupancyMeasure occ{y, node_mass_of(g, y)};
    y = forward_marginals(g, extract_policy(g, occ, 0.0)).edge_mass;
  };

  std::size_t iter = 0;
  for (;; ++iter) {
    p = node_mass_of(g, x);
    for (std::size_t i = 0; i < n_edges; ++i) {
      const NodeId to = edges[i].to;
      c[i] = -wn[to] * (std::log(std::max(p[to], config.floor)) + 1.0);
    }
    auto up = extreme_paths(g, c, true, [&](std::size_t i) { return viable[edges[i].to]; });
    double lin_x = 0.0;
    for (std::size_t i = 0; i < n_edges; ++i) lin_x += c[i] * x[i];
    result.gap = std::max(0.0, up.value[kRoot] - lin_x);
    result.trace.push_back(weighted_entropy(p, wn));
    if (result.gap <= config.tolerance) {
      result.converged = true;
      break;
    }
    if (iter >= config.max_iters) break;

    // Sweep of pairwise steps, one per node, deepest first: shift flow through
    // v from its worst continuation inside the current support to its best
    // continuation. Continuation values are refreshed from the current masses
    // as the sweep moves up. Every step keeps all constraints and is an exact
    // line search on the true objective, so the objective never decreases. At
    // the root this is the classic pairwise Frank-Wolfe step.
    PathTable down{std::vector<double>(g.node_count(), kInf), std::vector<std::size_t>(g.node_count(), 0)};
    for (auto v : g.layers().back()) down.value[v] = 0.0;
    for (NodeId v = g.node_count(); v-- > 0;) {
      if (g.is_final(v)) continue;
      const auto base = g.out_edge_offset(v);
      const auto out = g.out_edges(v);
      up.value[v] = -kInf;
      down.value[v] = kInf;
      for (std::size_t k = 0; k < out.size(); ++k) {
        const NodeId to = out[k].to;
        const double q = -wn[to] * (std::log(std::max(p[to], config.floor)) + 1.0);
        if (viable[to] && q + up.value[to] > up.value[v]) {
          up.value[v] = q + up.value[to];
          up.choice[v] = base + k;
        }
        if (x[base + k] > 0.0 && down.value[to] != kInf && q + down.value[to] < down.value[v]) {
          down.value[v] = q + down.value[to];
          down.choice[v] = base + k;
        }
      }
      if (p[v] <= 0.0 || down.value[v] == kInf) continue;
      if (!(up.value[v] - down.value[v] > 1e-15)) continue;
      path_from(g, up, v, best);
      path_from(g, down, v, worst);
      double eta_max = kInf;
      delta.clear();
      for (std::size_t t = 0; t < best.size(); ++t) {
        if (best[t] == worst[t]) continue;
        eta_max = std::min(eta_max, x[worst[t]]);
        if (edges[best[t]].to != edges[worst[t]].to) {
          delta.emplace_back(edges[best[t]].to, 1.0);
          delta.emplace_back(edges[worst[t]].to, -1.0);
        }
      }
      if (!(eta_max > 0.0) || eta_max == kInf || delta.empty() || !(slope(0.0) > 0.0)) continue;
      const double eta = line_search(slope, curve, eta_max);
      if (!(eta > 0.0)) continue;
      for (std::size_t t = 0; t < best.size(); ++t) {
        if (best[t] == worst[t]) continue;
        x[best[t]] += eta;
        // The blocking edge lands exactly on zero.
        x[worst[t]] = (eta >= eta_max && x[worst[t]] <= eta_max) ? 0.0 : std::max(0.0, x[worst[t]] - eta);
      }
      for (const auto& [node, sign] : delta) p[node] = std::max(0.0, p[node] + eta * sign);
    }
    // The sweep fixes the support; Newton then converges quickly on it.
    // The linear solve leaves a small flow residual, so the Newton iterate is
    // pushed back onto the polytope through its policy and kept only if the
    // objective does not drop.
    p = node_mass_of(g, x);
    const double before = weighted_entropy(p, wn);
    saved = x;
    if (newton_face_step(g, wn, kProximal, x, p) > 0.0) {
      reproject(x);
      p = node_mass_of(g, x);
      if (weighted_entropy(p, wn) < before) x = saved;
    }
  }

  result.iterations = iter;
  result.occupancy.edge_mass = std::move(x);
  result.occupancy.node_mass = node_mass_of(g, result.occupancy.edge_mass);
  result.objective = weighted_entropy(result.occupancy.node_mass, wn);
  return result;
}

ExplorationPolicy extract_policy(const LocalDynamicsGraph& g, const OccupancyMeasure& occ, double floor) {
  if (occ.edge_mass.size() != g.edges().size())
    throw ValidationError("occupancy does not match the graph's edges");
  ExplorationPolicy policy;
  policy.prob.assign(g.edges().size(), 0.0);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const auto base = g.out_edge_offset(v);
    const auto n = g.out_edges(v).size();
    if (n == 0) continue;
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += occ.edge_mass[base + i];
    for (std::size_t i = 0; i < n; ++i)
      policy.prob[base + i] = total > floor ? occ.edge_mass[base + i] / total : 1.0 / static_cast<double>(n);
  }
  policy.objective_value = weighted_entropy(node_mass_of(g, occ.edge_mass), node_weights(g, uniform_weights(g.depth())));
  return policy;
}

OccupancyMeasure forward_marginals(const LocalDynamicsGraph& g, const ExplorationPolicy& policy) {
  if (policy.prob.size() != g.edges().size()) throw ValidationError("policy does not match the graph's edges");
  OccupancyMeasure occ;
  occ.edge_mass.assign(g.edges().size(), 0.0);
  occ.node_mass.assign(g.node_count(), 0.0);
  occ.node_mass[kRoot] = 1.0;
  // Edges are sorted by source and ids by layer, so a node's mass is complete
  // before its first out-edge is reached.
  const auto& edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    occ.edge_mass[i] = occ.node_mass[edges[i].from] * policy.prob[i];
    occ.node_mass[edges[i].to] += occ.edge_mass[i];
  }
  return occ;
}

double objective(const LocalDynamicsGraph& g, const OccupancyMeasure& occ, const std::vector<double>& weights) {
  const auto w = resolve_weights(g, weights);
  if (occ.node_mass.size() != g.node_count()) throw ValidationError("occupancy does not match the graph's nodes");
  return weighted_entropy(occ.node_mass, node_weights(g, w));
}

FeasibilityReport check_occupancy(const LocalDynamicsGraph& g, const OccupancyMeasure& occ) {
  if (occ.edge_mass.size() != g.edges().size() || occ.node_mass.size() != g.node_count())
    throw ValidationError("occupancy does not match the graph");
  FeasibilityReport r;
  for (double x : occ.edge_mass) r.negativity = std::max(r.negativity, -x);
  for (double x : occ.node_mass) r.negativity = std::max(r.negativity, -x);
  const auto inflow = node_mass_of(g, occ.edge_mass);
  r.root = std::abs(occ.node_mass[kRoot] - 1.0);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    r.flow = std::max(r.flow, std::abs(inflow[v] - occ.node_mass[v]));
    if (g.is_final(v)) continue;
    double out = 0.0;
    const auto base = g.out_edge_offset(v);
    for (std::size_t i = 0; i < g.out_edges(v).size(); ++i) out += occ.edge_mass[base + i];
    r.flow = std::max(r.flow, std::abs(out - inflow[v]));
  }
  for (const auto& layer : g.layers()) {
    double sum = 0.0;
    for (auto v : layer) sum += occ.node_mass[v];
    r.layer_sum = std::max(r.layer_sum, std::abs(sum - 1.0));
  }
  return r;
}

double policy_prob(const LocalDynamicsGraph& g, const ExplorationPolicy& policy, NodeId v, Action a) {
  const auto base = g.out_edge_offset(v);
  const auto out = g.out_edges(v);
  for (std::size_t i = 0; i < out.size(); ++i)
    if (out[i].action == a) return policy.prob[base + i];
  return 0.0;
}

std::string policy_to_json(const LocalDynamicsGraph& g, const ExplorationPolicy& policy) {
  using Json = nlohmann::ordered_json;
  Json j;
  j["objective_value"] = policy.objective_value;
  j["gap_certificate"] = policy.gap_certificate;
  Json nodes = Json::array();
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const auto out = g.out_edges(v);
    if (out.empty()) continue;
    Json actions = Json::array();
    const auto base = g.out_edge_offset(v);
    for (std::size_t i = 0; i < out.size(); ++i)
      actions.push_back(Json::array({g.actions().name(out[i].action), policy.prob[base + i]}));
    nodes.push_back({{"id", v}, {"actions", std::move(actions)}});
  }
  j["nodes"] = std::move(nodes);
  return j.dump(2) + "\n";
}

ExplorationPolicy policy_from_json(const LocalDynamicsGraph& g, const std::string& text) {
  using Json = nlohmann::json;
  ExplorationPolicy policy;
  policy.prob.assign(g.edges().size(), -1.0);
  try {
    const auto j = Json::parse(text);
    policy.objective_value = j.at("objective_value").get<double>();
    policy.gap_certificate = j.at("gap_certificate").get<double>();
    for (const auto& jn : j.at("nodes")) {
      const auto v = jn.at("id").get<NodeId>();
      if (v >= g.node_count()) throw ValidationError("policy names unknown node " + std::to_string(v));
      double sum = 0.0;
      for (const auto& pair : jn.at("actions")) {
        const auto a = g.actions().index_of(pair.at(0).get<std::string>());
        const double prob = pair.at(1).get<double>();
        if (!(prob >= 0.0)) throw ValidationError("negative probability in policy");
        const auto base = g.out_edge_offset(v);
        const auto out = g.out_edges(v);
        std::size_t k = 0;
        while (k < out.size() && out[k].action != a) ++k;
        if (k == out.size()) throw ValidationError("policy uses an action with no edge at node " + std::to_string(v));
        policy.prob[base + k] = prob;
        sum += prob;
      }
      if (std::abs(sum - 1.0) > 1e-9) throw ValidationError("policy at node " + std::to_string(v) + " does not sum to 1");
    }
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("policy JSON: ") + e.what());
  }
  for (double p : policy.prob)
    if (p < 0.0) throw ValidationError("policy JSON does not cover every out-edge");
  return policy;
}

}  // namespace easee
