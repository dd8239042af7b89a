#pragma once

#include <string>

#include "json.hpp"

#include "mgmw/net_model.hpp"

namespace mgmw {

// Graph file format (JSON, 1-based edge ids):
//   edges      : count, or list of [tx, rx] node pairs
//   p2p_rates  : array of positive reals, one per edge
//   X, Y       : arrays of id arrays               (direct sets), or
//   topology   : list of [tx, rx] (or use `edges`) plus
//   multiuser_pairs : list of [a, b]               (node-exclusive derivation)
//   regions    : list of {"pair": [a, b], <kind>} with kind one of
//                "fixed": [c_ab, c_ba]
//                "gaussian_bc": {"P":..., "Nk":..., "Nl":...}
//                "sampled": [[r_a, r_b], ...]
// Loading never validates interference invariants; call validate_graph.
NetworkGraph graph_from_json(const nlohmann::json& j);
nlohmann::json graph_to_json(const NetworkGraph& g);

NetworkGraph load_graph(const std::string& path);
void save_graph(const NetworkGraph& g, const std::string& path);

}  // namespace mgmw
