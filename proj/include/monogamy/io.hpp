#pragma once

#include <string>

#include <json.hpp>

#include "monogamy/graphs.hpp"
#include "monogamy/marginals.hpp"
#include "monogamy/quantum.hpp"

namespace monogamy::io {

using nlohmann::json;

// Malformed documents throw Error(ParseError); semantic problems keep the
// code raised by the constructor they feed.

json to_json(const DistTable& table);
DistTable table_from_json(const json& j);

/// {"observables":[{"id","k"}...], "edges":[{"i","j","table"}...]}
json to_json(const MarginalScenario& scenario);
MarginalScenario scenario_from_json(const json& j);

/// {"feasible":true,"joint":...} or {"feasible":false,"witness":{...}}.
json to_json(const JointWitness& result, const MarginalScenario& scenario);

/// {"dims":[...],"entries":[re,im,...]} in row-major order.
json to_json(const quantum::DensityOp& rho);
quantum::DensityOp density_from_json(const json& j);

/// {"n":..,"edges":[[i,j],...],"tag":..}; optional booleans
/// "edge_transitive" and "vertex_transitive" default to false.
json to_json(const graphs::Graph& g);
graphs::Graph graph_from_json(const json& j);

json parse(const std::string& text);
json read_file(const std::string& path);

}  // namespace monogamy::io
