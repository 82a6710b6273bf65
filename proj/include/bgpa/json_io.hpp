#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bgpa/spa.hpp"
#include "bgpa/tower.hpp"

namespace bgpa {

using Json = nlohmann::ordered_json;

struct GraphInput {
  BipartiteGraph graph;
  std::optional<std::vector<double>> spin;  // indexed like the graph
};

/// `{vertices: [{id, parity}], edges: [{even, odd}], spin?: {id: value}}`;
/// a top-level `graph` member is unwrapped first.
GraphInput graph_from_json(const Json& j);
Json graph_to_json(const BipartiteGraph& g, const std::vector<double>* spin = nullptr);

/// Uses the given spin (its modulus is set when the modulus law holds) or
/// the Perron spin when none is given.
AlgebraPtr algebra_from_input(GraphInput input, double tol = kDefaultTolerance);

/// A list of generators, each `{perm: {v: w}}` (partial maps must extend
/// uniquely), `{blocks: {"v,w": [[re, im], ...]}}` (row-major), both, or a
/// torus flag `{torus: true | "scalar" | "edge"}`. Also accepts
/// `{generators: [...], torus: ...}` and a top-level `group` member.
GroupSpec group_from_json(const PlanarAlgebra& algebra, const Json& j, double tol = kDefaultTolerance);
Json group_to_json(const PlanarAlgebra& algebra, const GroupSpec& spec);

Json load_json_file(const std::string& path);

Json modulus_to_json(const BipartiteGraph& g, const ModulusCheck& check);
Json tower_to_json(const FixedTower& tower);
Json spa_report_to_json(const SPAReport& report);
std::string spa_report_table(const SPAReport& report);
Json principal_to_json(const PrincipalGraphResult& result);
Json comparison_to_json(const GraphComparison& comparison);
Json error_to_json(std::string_view kind, const std::string& message);

}  // namespace bgpa
