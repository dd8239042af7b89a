// Shared test helpers: fixture loading, random graph generators and an
// independent checker for the rate-allocation constraints. The checker reads
// the interference sets directly and never goes through LinkTable.
#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mgmw/graph_io.hpp"
#include "mgmw/rate_alloc.hpp"

namespace testsupport {

using namespace mgmw;

inline NetworkGraph fixture(const std::string& name) {
    return load_graph(std::string(MGMW_FIXTURES) + "/" + name + ".json");
}

inline bool in(const EdgeSet& s, EdgeId e) { return std::binary_search(s.begin(), s.end(), e); }

// Is (rk, rl) a boundary point of the region (corners excluded)?
inline bool on_boundary(const CapacityRegion& r, double rk, double rl, double tol = 1e-7) {
    if (const auto* f = std::get_if<FixedPoint>(&r.shape)) {
        return std::abs(rk - f->ckl) <= tol && std::abs(rl - f->clk) <= tol;
    }
    if (const auto* s = std::get_if<SampledBoundary>(&r.shape)) {
        for (std::size_t i = 0; i + 1 < s->points.size(); ++i) {
            const auto& a = s->points[i];
            const auto& b = s->points[i + 1];
            if (rk < a.rk - tol || rk > b.rk + tol) continue;
            double t = (rk - a.rk) / (b.rk - a.rk);
            if (std::abs(a.rl + t * (b.rl - a.rl) - rl) <= tol) return true;
        }
        return false;
    }
    const auto& g = std::get<GaussianBC>(r.shape);
    // Invert the k rate for the power split, then compare the l rate.
    double alpha = (std::exp2(2.0 * rk) - 1.0) * g.noise_k / g.power;
    double expect = 0.5 * std::log2(1.0 + (1.0 - alpha) * g.power / (alpha * g.power + g.noise_l));
    return alpha > -tol && alpha < 1.0 + tol && std::abs(expect - rl) <= 1e-6;
}

// Checks a full-length rate vector against the allocation rules. Returns a
// description of the first violation, or nothing.
inline std::optional<std::string> check_constraints(const NetworkGraph& g, const std::vector<double>& r) {
    const int n = g.edge_count;
    auto on = [&](EdgeId e) { return r[e] > 0.0; };
    for (int l = 0; l < n; ++l) {
        if (r[l] < 0) return "negative rate on " + std::to_string(l + 1);
        if (!on(l)) continue;
        for (EdgeId k : g.main_ifs[l]) {
            if (on(k)) return "conflict: edges " + std::to_string(l + 1) + " and " + std::to_string(k + 1);
        }
        std::vector<EdgeId> partners;
        for (EdgeId k : g.secondary_ifs[l]) {
            if (on(k)) partners.push_back(k);
        }
        if (partners.size() > 1) return "pairing: edge " + std::to_string(l + 1) + " has two active partners";
        if (partners.empty()) {
            if (std::abs(r[l] - g.p2p_rate[l]) > 1e-9) return "edge " + std::to_string(l + 1) + " alone below c_l";
            continue;
        }
        EdgeId k = partners[0];
        EdgeId a = std::min(k, l), b = std::max(k, l);
        if (!on_boundary(g.region(a, b), r[a], r[b])) {
            return "pairing: pair (" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ") off its region";
        }
        for (EdgeId j : g.secondary_ifs[k]) {
            if (j != l && on(j)) return "pairing: third edge " + std::to_string(j + 1) + " next to a pair";
        }
    }
    // Maximality: every idle edge must be blocked by some active edge.
    for (int j = 0; j < n; ++j) {
        if (on(j)) continue;
        bool blocked = false;
        for (int m = 0; m < n && !blocked; ++m) {
            if (on(m) && (in(g.main_ifs[m], j) || in(g.secondary_ifs[m], j))) blocked = true;
        }
        if (!blocked) return "maximality: edge " + std::to_string(j + 1) + " could be added";
    }
    return std::nullopt;
}

enum class RegionKind { fixed, sampled, gaussian, mixed };

// Random convex fixed pair strictly beating time sharing.
template <class Rng>
RatePair random_fixed_pair(Rng& rng, double ck, double cl, bool tree_condition = false) {
    std::uniform_real_distribution<double> u(0.05, 0.999);
    for (;;) {
        double x = std::round(u(rng) * ck * 100) / 100, y = std::round(u(rng) * cl * 100) / 100;
        if (!(x > 0 && y > 0 && x < ck && y < cl && x / ck + y / cl > 1.0 + 1e-3)) continue;
        if (tree_condition && !(x * x + y * y > std::max(ck * x, cl * y))) continue;
        return {x, y};
    }
}

template <class Rng>
CapacityRegion random_region(Rng& rng, double ck, double cl, RegionKind kind, bool tree_condition = false) {
    if (kind == RegionKind::mixed) kind = static_cast<RegionKind>(rng() % 3);
    if (kind == RegionKind::fixed) {
        RatePair p = random_fixed_pair(rng, ck, cl, tree_condition);
        return make_fixed_region(ck, cl, p.rk, p.rl);
    }
    if (kind == RegionKind::sampled) {
        // Points on a superellipse (x/ck)^p + (y/cl)^p = 1 with p in (1, 3].
        std::uniform_real_distribution<double> u(1.2, 3.0);
        double p = u(rng);
        int m = 2 + static_cast<int>(rng() % 4);
        std::vector<RatePair> pts{{0.0, cl}, {ck, 0.0}};
        for (int i = 1; i <= m; ++i) {
            double t = static_cast<double>(i) / (m + 1);
            double x = ck * t;
            double y = cl * std::pow(1.0 - std::pow(t, p), 1.0 / p);
            pts.push_back({x, y});
        }
        return make_sampled_region(pts);
    }
    std::uniform_real_distribution<double> u(0.5, 4.0);
    return make_gaussian_region(u(rng) * 10.0, u(rng), u(rng));
}

struct RandomGraphOptions {
    int min_edges = 2;
    int max_edges = 8;
    bool pairs = true;      // declare multiuser pairs
    bool tree = false;      // tree topology instead of a random multigraph-free graph
    bool tree_condition = false;
    RegionKind regions = RegionKind::fixed;
};

// Node-exclusive graph over random endpoints. Pairs are disjoint and share
// exactly one node as common transmitter or common receiver.
template <class Rng>
NetworkGraph random_graph(Rng& rng, const RandomGraphOptions& o) {
    const int E = o.min_edges + static_cast<int>(rng() % (o.max_edges - o.min_edges + 1));
    std::vector<Endpoints> ep;
    if (o.tree) {
        for (int v = 1; v <= E; ++v) {
            int p = static_cast<int>(rng() % v);
            if (rng() % 2) ep.push_back({p, v});
            else ep.push_back({v, p});
        }
    } else {
        const int nodes = std::max(3, E / 2 + 2);
        while (static_cast<int>(ep.size()) < E) {
            int a = static_cast<int>(rng() % nodes), b = static_cast<int>(rng() % nodes);
            if (a == b) continue;
            bool dup = std::any_of(ep.begin(), ep.end(), [&](const Endpoints& x) {
                return (x.tx == a && x.rx == b) || (x.tx == b && x.rx == a);
            });
            if (!dup) ep.push_back({a, b});
        }
    }
    std::vector<std::pair<EdgeId, EdgeId>> pairs;
    if (o.pairs) {
        std::vector<std::pair<EdgeId, EdgeId>> cand;
        for (int a = 0; a < E; ++a) {
            for (int b = a + 1; b < E; ++b) {
                bool bc = ep[a].tx == ep[b].tx && ep[a].rx != ep[b].rx;
                bool mac = ep[a].rx == ep[b].rx && ep[a].tx != ep[b].tx;
                bool other = ep[a].tx == ep[b].rx || ep[a].rx == ep[b].tx;
                if ((bc || mac) && !other) cand.push_back({a, b});
            }
        }
        std::shuffle(cand.begin(), cand.end(), rng);
        std::vector<bool> used(E, false);
        for (auto [a, b] : cand) {
            if (!used[a] && !used[b] && rng() % 3 != 0) {
                used[a] = used[b] = true;
                pairs.push_back({a, b});
            }
        }
    }
    auto sets = derive_node_exclusive_sets(ep, pairs);
    NetworkGraph g;
    g.edge_count = E;
    g.endpoints = ep;
    g.declared_pairs = pairs;
    g.main_ifs = std::move(sets.main_ifs);
    g.secondary_ifs = std::move(sets.secondary_ifs);
    std::uniform_int_distribution<int> rate(4, 40);
    for (int e = 0; e < E; ++e) g.p2p_rate.push_back(rate(rng) / 4.0);
    for (auto [a, b] : pairs) {
        auto reg = random_region(rng, g.p2p_rate[a], g.p2p_rate[b], o.regions, o.tree_condition);
        // Gaussian regions fix their own axis intercepts.
        g.p2p_rate[a] = reg.ck;
        g.p2p_rate[b] = reg.cl;
        g.regions.emplace(std::make_pair(std::min(a, b), std::max(a, b)), reg);
    }
    return g;
}

template <class Rng>
std::vector<double> random_queues(Rng& rng, int n) {
    std::vector<double> q(n);
    std::uniform_int_distribution<int> d(0, 30);
    for (double& x : q) x = d(rng) % 5 == 0 ? 0.0 : d(rng);
    if (std::all_of(q.begin(), q.end(), [](double x) { return x == 0.0; })) q[0] = 1.0;
    return q;
}

}  // namespace testsupport
