#include "mgmw/graph_io.hpp"

#include <fstream>

#include "mgmw/errors.hpp"

namespace mgmw {

using nlohmann::json;

namespace {

EdgeId edge_id(const json& v, int edge_count, const std::string& where) {
    if (!v.is_number_integer()) throw ConfigError(where + ": edge ids must be integers");
    int id = v.get<int>();
    if (id < 1 || id > edge_count) {
        throw ConfigError(where + ": edge id " + std::to_string(id) + " is out of range");
    }
    return id - 1;
}

std::vector<EdgeSet> read_sets(const json& j, int n, const std::string& name) {
    if (!j.is_array() || static_cast<int>(j.size()) != n) {
        throw ConfigError(name + ": expected one id list per edge");
    }
    std::vector<EdgeSet> out(n);
    for (int e = 0; e < n; ++e) {
        for (const auto& v : j[e]) out[e].push_back(edge_id(v, n, name));
        std::sort(out[e].begin(), out[e].end());
    }
    return out;
}

json write_sets(const std::vector<EdgeSet>& s) {
    json out = json::array();
    for (const auto& set : s) {
        json row = json::array();
        for (EdgeId e : set) row.push_back(e + 1);
        out.push_back(row);
    }
    return out;
}

std::pair<EdgeId, EdgeId> read_pair(const json& p, int n, const std::string& where) {
    if (!p.is_array() || p.size() != 2) throw ConfigError(where + ": expected a pair [a, b]");
    return {edge_id(p[0], n, where), edge_id(p[1], n, where)};
}

CapacityRegion read_region(const json& r, const NetworkGraph& g, EdgeId a, EdgeId b) {
    const bool swap = a > b;
    const EdgeId k = std::min(a, b), l = std::max(a, b);
    if (r.contains("fixed")) {
        auto v = r.at("fixed").get<std::vector<double>>();
        if (v.size() != 2) throw ConfigError("regions.fixed: expected [c_ab, c_ba]");
        if (swap) std::swap(v[0], v[1]);
        return make_fixed_region(g.p2p_rate[k], g.p2p_rate[l], v[0], v[1]);
    }
    if (r.contains("gaussian_bc")) {
        const auto& gb = r.at("gaussian_bc");
        double nk = gb.at("Nk").get<double>(), nl = gb.at("Nl").get<double>();
        if (swap) std::swap(nk, nl);
        return make_gaussian_region(gb.at("P").get<double>(), nk, nl);
    }
    if (r.contains("sampled")) {
        std::vector<RatePair> pts;
        for (const auto& p : r.at("sampled")) {
            double x = p.at(0).get<double>(), y = p.at(1).get<double>();
            pts.push_back(swap ? RatePair{y, x} : RatePair{x, y});
        }
        return make_sampled_region(std::move(pts));
    }
    throw ConfigError("regions: entry needs one of fixed, gaussian_bc, sampled");
}

json write_region(const CapacityRegion& r) {
    json out;
    if (const auto* f = std::get_if<FixedPoint>(&r.shape)) {
        out["fixed"] = {f->ckl, f->clk};
    } else if (const auto* gb = std::get_if<GaussianBC>(&r.shape)) {
        out["gaussian_bc"] = {{"P", gb->power}, {"Nk", gb->noise_k}, {"Nl", gb->noise_l}};
    } else {
        json pts = json::array();
        for (const auto& p : std::get<SampledBoundary>(r.shape).points) pts.push_back({p.rk, p.rl});
        out["sampled"] = pts;
    }
    return out;
}

}  // namespace

NetworkGraph graph_from_json(const json& j) {
    NetworkGraph g;
    try {
        const json& edges = j.contains("topology") && !j.contains("edges") ? j.at("topology") : j.at("edges");
        if (edges.is_number_integer()) {
            g.edge_count = edges.get<int>();
        } else if (edges.is_array()) {
            g.edge_count = static_cast<int>(edges.size());
            for (const auto& e : edges) g.endpoints.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
        } else {
            throw ConfigError("edges: expected a count or a list of [tx, rx]");
        }
        if (j.contains("topology")) {
            g.endpoints.clear();
            for (const auto& e : j.at("topology")) g.endpoints.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
            g.edge_count = static_cast<int>(g.endpoints.size());
        }
        const int n = g.edge_count;
        g.p2p_rate = j.at("p2p_rates").get<std::vector<double>>();
        if (static_cast<int>(g.p2p_rate.size()) != n) throw ConfigError("p2p_rates: one rate per edge");

        if (j.contains("X") || j.contains("Y")) {
            g.main_ifs = j.contains("X") ? read_sets(j.at("X"), n, "X") : std::vector<EdgeSet>(n);
            g.secondary_ifs = j.contains("Y") ? read_sets(j.at("Y"), n, "Y") : std::vector<EdgeSet>(n);
        } else {
            if (g.endpoints.empty()) throw ConfigError("need X/Y sets or a topology");
            if (j.contains("multiuser_pairs")) {
                for (const auto& p : j.at("multiuser_pairs")) g.declared_pairs.push_back(read_pair(p, n, "multiuser_pairs"));
            }
            auto sets = derive_node_exclusive_sets(g.endpoints, g.declared_pairs);
            g.main_ifs = std::move(sets.main_ifs);
            g.secondary_ifs = std::move(sets.secondary_ifs);
        }

        if (j.contains("regions")) {
            for (const auto& r : j.at("regions")) {
                auto [a, b] = read_pair(r.at("pair"), n, "regions.pair");
                g.regions.insert_or_assign({std::min(a, b), std::max(a, b)}, read_region(r, g, a, b));
            }
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("graph file: ") + e.what());
    }
    return g;
}

json graph_to_json(const NetworkGraph& g) {
    json j;
    if (g.endpoints.empty()) {
        j["edges"] = g.edge_count;
    } else {
        json e = json::array();
        for (const auto& p : g.endpoints) e.push_back({p.tx, p.rx});
        j["edges"] = e;
    }
    j["p2p_rates"] = g.p2p_rate;
    j["X"] = write_sets(g.main_ifs);
    j["Y"] = write_sets(g.secondary_ifs);
    json regions = json::array();
    for (const auto& [key, r] : g.regions) {
        json entry = write_region(r);
        entry["pair"] = {key.first + 1, key.second + 1};
        regions.push_back(entry);
    }
    j["regions"] = regions;
    return j;
}

NetworkGraph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open graph file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("graph file '" + path + "': " + e.what());
    }
    return graph_from_json(j);
}

void save_graph(const NetworkGraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write '" + path + "'");
    out << graph_to_json(g).dump(2) << '\n';
}

}  // namespace mgmw
