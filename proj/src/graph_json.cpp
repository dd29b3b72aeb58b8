#include "json.hpp"

#include "easee/error.hpp"
#include "easee/graph_builder.hpp"

namespace easee {

namespace {

using Json = nlohmann::ordered_json;

Json names_of(const ActionSequence& s, const ActionSet& actions) {
  Json out = Json::array();
  for (std::size_t i = 0; i < s.size(); ++i) out.push_back(actions.name(s[i]));
  return out;
}

}  // namespace

std::string graph_to_json(const LocalDynamicsGraph& graph) {
  const auto& actions = graph.actions();
  Json j;
  j["actions"] = actions.names();
  j["depth"] = graph.depth();
  Json nodes = Json::array();
  for (const auto& n : graph.nodes())
    nodes.push_back({{"id", n.id}, {"canonical", names_of(n.canonical, actions)}, {"depth", n.depth}});
  j["nodes"] = std::move(nodes);
  Json edges = Json::array();
  for (const auto& e : graph.edges())
    edges.push_back({{"from", e.from}, {"action", actions.name(e.action)}, {"to", e.to}});
  j["edges"] = std::move(edges);
  j["omega"] = to_dsl(actions, graph.omega());
  return j.dump(2) + "\n";
}

LocalDynamicsGraph graph_from_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ValidationError(std::string("graph JSON: ") + e.what());
  }
  try {
    auto prior = parse_prior(j.at("omega").get<std::string>());
    ActionSet actions(j.at("actions").get<std::vector<std::string>>());
    if (!(actions == prior.actions))
      throw ValidationError("graph JSON: 'actions' disagrees with the omega declaration");
    const auto depth = j.at("depth").get<std::size_t>();
    std::vector<GraphNode> nodes;
    for (const auto& jn : j.at("nodes")) {
      GraphNode n;
      n.id = jn.at("id").get<std::size_t>();
      n.depth = jn.at("depth").get<std::size_t>();
      for (const auto& name : jn.at("canonical")) n.canonical.push_back(actions.index_of(name.get<std::string>()));
      nodes.push_back(std::move(n));
    }
    std::vector<Edge> edges;
    for (const auto& je : j.at("edges"))
      edges.push_back({je.at("from").get<std::size_t>(), actions.index_of(je.at("action").get<std::string>()),
                       je.at("to").get<std::size_t>()});
    return LocalDynamicsGraph(std::move(actions), std::move(prior.omega), depth, std::move(nodes),
                              std::move(edges));
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("graph JSON: ") + e.what());
  } catch (const ParseError& e) {
    throw ValidationError(std::string("graph JSON omega: ") + e.what());
  }
}

}  // namespace easee
