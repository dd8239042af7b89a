#include "mgmw/net_model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "mgmw/errors.hpp"

namespace mgmw {

Link Link::multiuser(EdgeId a, EdgeId b) {
    if (a == b) throw InvalidMultiuserPair("multiuser link needs two distinct edges");
    return {std::min(a, b), std::max(a, b)};
}

bool NetworkGraph::in_main(EdgeId of, EdgeId e) const {
    const auto& s = main_ifs[of];
    return std::binary_search(s.begin(), s.end(), e);
}

bool NetworkGraph::in_secondary(EdgeId of, EdgeId e) const {
    const auto& s = secondary_ifs[of];
    return std::binary_search(s.begin(), s.end(), e);
}

const CapacityRegion& NetworkGraph::region(EdgeId a, EdgeId b) const {
    auto it = regions.find({std::min(a, b), std::max(a, b)});
    if (it == regions.end()) {
        throw InvalidGraph("no capacity region for pair (" + std::to_string(a + 1) + "," +
                           std::to_string(b + 1) + ")");
    }
    return it->second;
}

bool NetworkGraph::all_regions_fixed() const {
    return std::all_of(regions.begin(), regions.end(),
                       [](const auto& kv) { return kv.second.is_fixed(); });
}

InterferenceSets derive_node_exclusive_sets(const std::vector<Endpoints>& topology,
                                            const std::vector<std::pair<EdgeId, EdgeId>>& pairs) {
    const int n = static_cast<int>(topology.size());
    std::set<std::pair<int, int>> declared;
    for (auto [a, b] : pairs) {
        if (a < 0 || b < 0 || a >= n || b >= n || a == b) {
            throw InvalidMultiuserPair("pair (" + std::to_string(a + 1) + "," +
                                       std::to_string(b + 1) + ") names an unknown or repeated edge");
        }
        const auto& ea = topology[a];
        const auto& eb = topology[b];
        bool same_tx = ea.tx == eb.tx;
        bool same_rx = ea.rx == eb.rx;
        if (same_tx == same_rx) {
            // Either no shared node role, or parallel edges.
            throw InvalidMultiuserPair("edges " + std::to_string(a + 1) + " and " +
                                       std::to_string(b + 1) +
                                       " share neither exactly a transmitter nor a receiver");
        }
        declared.insert({std::min(a, b), std::max(a, b)});
    }

    InterferenceSets out;
    out.main_ifs.assign(n, {});
    out.secondary_ifs.assign(n, {});
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (a == b) continue;
            const auto& ea = topology[a];
            const auto& eb = topology[b];
            bool share = ea.tx == eb.tx || ea.tx == eb.rx || ea.rx == eb.tx || ea.rx == eb.rx;
            if (!share) continue;
            if (declared.count({std::min(a, b), std::max(a, b)})) {
                out.secondary_ifs[a].push_back(b);
            } else {
                out.main_ifs[a].push_back(b);
            }
        }
    }
    return out;
}

std::vector<Link> enumerate_links(const NetworkGraph& g) {
    std::vector<Link> links;
    links.reserve(g.edge_count);
    for (EdgeId e = 0; e < g.edge_count; ++e) links.push_back(Link::p2p(e));
    for (EdgeId k = 0; k < g.edge_count; ++k) {
        for (EdgeId l : g.secondary_ifs[k]) {
            if (l > k) links.push_back({k, l});
        }
    }
    return links;
}

namespace {

bool sorted_unique(const EdgeSet& s) {
    return std::adjacent_find(s.begin(), s.end(), std::greater_equal<>()) == s.end();
}

}  // namespace

std::vector<Violation> validate_graph(const NetworkGraph& g) {
    std::vector<Violation> v;
    const int n = g.edge_count;
    if (n <= 0) {
        v.push_back({"EmptyGraph", {}});
        return v;
    }
    if (static_cast<int>(g.p2p_rate.size()) != n || static_cast<int>(g.main_ifs.size()) != n ||
        static_cast<int>(g.secondary_ifs.size()) != n) {
        v.push_back({"SizeMismatch", {}});
        return v;
    }
    for (EdgeId e = 0; e < n; ++e) {
        if (!(g.p2p_rate[e] > 0.0) || !std::isfinite(g.p2p_rate[e])) {
            v.push_back({"NonPositiveRate", {e}});
        }
        for (const auto* set : {&g.main_ifs[e], &g.secondary_ifs[e]}) {
            if (!sorted_unique(*set)) v.push_back({"UnsortedSet", {e}});
            for (EdgeId o : *set) {
                if (o < 0 || o >= n) v.push_back({"UnknownEdge", {e, o}});
            }
        }
    }
    if (!v.empty()) return v;

    for (EdgeId e = 0; e < n; ++e) {
        if (g.in_main(e, e) || g.in_secondary(e, e)) v.push_back({"SelfInterference", {e}});
        for (EdgeId o : g.main_ifs[e]) {
            if (g.in_secondary(e, o)) v.push_back({"OverlappingSets", {e, o}});
            if (o != e && !g.in_main(o, e)) v.push_back({"MainAsymmetry", {e, o}});
        }
        for (EdgeId o : g.secondary_ifs[e]) {
            if (o != e && !g.in_secondary(o, e)) v.push_back({"SecondaryAsymmetry", {e, o}});
            if (o > e && g.in_secondary(o, e) && !g.regions.count({e, o})) {
                v.push_back({"MissingRegion", {e, o}});
            }
        }
    }
    for (const auto& [key, region] : g.regions) {
        auto [a, b] = key;
        if (a < 0 || b >= n || a >= b || !g.in_secondary(a, b)) {
            v.push_back({"OrphanRegion", {a, b}});
            continue;
        }
        const double tol = 1e-9 * std::max(1.0, std::max(g.p2p_rate[a], g.p2p_rate[b]));
        if (std::abs(region.ck - g.p2p_rate[a]) > tol || std::abs(region.cl - g.p2p_rate[b]) > tol) {
            v.push_back({"RegionCornerMismatch", {a, b}});
        }
    }
    return v;
}

void require_valid(const NetworkGraph& g) {
    auto v = validate_graph(g);
    if (v.empty()) return;
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << "; ";
        os << v[i].kind;
        for (EdgeId e : v[i].edges) os << ' ' << e + 1;
    }
    throw InvalidGraph(os.str());
}

NetworkGraph point_to_point_view(const NetworkGraph& g) {
    NetworkGraph out = g;
    for (int e = 0; e < g.edge_count; ++e) {
        auto& x = out.main_ifs[e];
        x.insert(x.end(), g.secondary_ifs[e].begin(), g.secondary_ifs[e].end());
        std::sort(x.begin(), x.end());
        out.secondary_ifs[e].clear();
    }
    out.regions.clear();
    out.declared_pairs.clear();
    return out;
}

std::string to_string(const Link& link) {
    if (link.is_p2p()) return std::to_string(link.k + 1);
    return "(" + std::to_string(link.k + 1) + "," + std::to_string(link.l + 1) + ")";
}

}  // namespace mgmw
