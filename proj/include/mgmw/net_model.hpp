#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mgmw/capacity.hpp"

namespace mgmw {

using EdgeId = int;
using EdgeSet = std::vector<EdgeId>;  // sorted, unique

// A schedulable unit: a single edge, or an unordered multiuser pair (k < l).
struct Link {
    EdgeId k = -1;
    EdgeId l = -1;  // -1 for a point-to-point link

    static Link p2p(EdgeId e) { return {e, -1}; }
    static Link multiuser(EdgeId a, EdgeId b);

    bool is_p2p() const { return l < 0; }
    bool touches(EdgeId e) const { return k == e || l == e; }
    auto operator<=>(const Link&) const = default;
};

struct Endpoints {
    int tx;
    int rx;
};

struct NetworkGraph {
    int edge_count = 0;
    std::vector<double> p2p_rate;
    std::vector<EdgeSet> main_ifs;       // X
    std::vector<EdgeSet> secondary_ifs;  // Y
    std::map<std::pair<EdgeId, EdgeId>, CapacityRegion> regions;  // key (k,l), k<l
    std::vector<Endpoints> endpoints;    // empty unless built from a topology
    std::vector<std::pair<EdgeId, EdgeId>> declared_pairs;  // topology input, kept for round trips

    bool in_main(EdgeId of, EdgeId e) const;
    bool in_secondary(EdgeId of, EdgeId e) const;
    const CapacityRegion& region(EdgeId a, EdgeId b) const;
    bool all_regions_fixed() const;
};

struct InterferenceSets {
    std::vector<EdgeSet> main_ifs;
    std::vector<EdgeSet> secondary_ifs;
};

// Node-exclusive model: edges sharing any node conflict, except declared
// multiuser pairs (shared transmitter or shared receiver), which go to Y.
InterferenceSets derive_node_exclusive_sets(const std::vector<Endpoints>& topology,
                                            const std::vector<std::pair<EdgeId, EdgeId>>& pairs);

// Point-to-point links by edge, then multiuser links lexicographically.
std::vector<Link> enumerate_links(const NetworkGraph& g);

struct Violation {
    std::string kind;
    std::vector<EdgeId> edges;
    bool operator==(const Violation&) const = default;
};

std::vector<Violation> validate_graph(const NetworkGraph& g);

// Throws InvalidGraph listing the violations, if any.
void require_valid(const NetworkGraph& g);

// Same edges with every multiuser pair demoted to main interference: the graph
// GMM effectively schedules on.
NetworkGraph point_to_point_view(const NetworkGraph& g);

std::string to_string(const Link& link);  // 1-based, e.g. "3" or "(4,5)"

}  // namespace mgmw
