#include "mgmw/rate_alloc.hpp"

#include <algorithm>
#include <map>

#include "independent_sets.hpp"
#include "mgmw/errors.hpp"
#include "mgmw/lp.hpp"

namespace mgmw {

namespace {

using detail::Bits;

EdgeSet blocked_by(const NetworkGraph& g, const Link& a) {
    EdgeSet out;
    auto add = [&](EdgeId e) {
        out.insert(out.end(), g.main_ifs[e].begin(), g.main_ifs[e].end());
        out.insert(out.end(), g.secondary_ifs[e].begin(), g.secondary_ifs[e].end());
    };
    add(a.k);
    if (!a.is_p2p()) add(a.l);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    out.erase(std::remove_if(out.begin(), out.end(), [&](EdgeId e) { return a.touches(e); }),
              out.end());
    return out;
}

bool hits(const EdgeSet& s, const Link& b) {
    auto in = [&](EdgeId e) { return std::binary_search(s.begin(), s.end(), e); };
    return in(b.k) || (!b.is_p2p() && in(b.l));
}

bool share_edge(const Link& a, const Link& b) {
    return a.touches(b.k) || (!b.is_p2p() && a.touches(b.l));
}

// A link instantiated at one operating pair.
struct Instance {
    int link;  // index into the LinkTable
    RatePair pair;
};

void require_exact_size(const LinkTable& t) {
    if (t.size() > kMaxExactLinks) {
        throw TooLargeForExact(std::to_string(t.size()) + " links exceed the exact-enumeration limit of " +
                               std::to_string(kMaxExactLinks));
    }
}

std::vector<Bits> instance_conflicts(const LinkTable& t, const std::vector<Instance>& inst) {
    const std::size_t n = inst.size();
    std::vector<Bits> c(n, Bits(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (inst[i].link == inst[j].link || t.conflict(inst[i].link, inst[j].link)) {
                c[i].set(j);
                c[j].set(i);
            }
        }
    }
    return c;
}

RateVector to_vector(const LinkTable& t, const std::vector<Instance>& inst,
                     const std::vector<int>& members, const EdgeSet& edges) {
    RateVector r;
    r.rates.assign(edges.size(), 0.0);
    auto pos = [&](EdgeId e) {
        return static_cast<std::size_t>(std::lower_bound(edges.begin(), edges.end(), e) - edges.begin());
    };
    for (int m : members) {
        const Link& link = t.links()[inst[m].link];
        r.active.push_back({link, inst[m].pair});
        r.rates[pos(link.k)] = inst[m].pair.rk;
        if (!link.is_p2p()) r.rates[pos(link.l)] = inst[m].pair.rl;
    }
    std::sort(r.active.begin(), r.active.end());
    return r;
}

int multiuser_count(const RateVector& r) {
    return static_cast<int>(std::count_if(r.active.begin(), r.active.end(),
                                          [](const ActiveLink& a) { return !a.link.is_p2p(); }));
}

void sort_unique(std::vector<RateVector>& v) {
    std::stable_sort(v.begin(), v.end(), [](const RateVector& a, const RateVector& b) {
        int ma = multiuser_count(a), mb = multiuser_count(b);
        if (ma != mb) return ma < mb;
        return rate_vector_less(a.rates, b.rates);
    });
    // Identical rates from different link sets are one vector; keep the first.
    std::vector<RateVector> out;
    for (auto& r : v) {
        bool dup = std::any_of(out.begin(), out.end(),
                               [&](const RateVector& o) { return o.rates == r.rates; });
        if (!dup) out.push_back(std::move(r));
    }
    v = std::move(out);
}

bool within(const EdgeSet& edges, const Link& l) {
    auto in = [&](EdgeId e) { return std::binary_search(edges.begin(), edges.end(), e); };
    return in(l.k) && (l.is_p2p() || in(l.l));
}

void add_instances(const NetworkGraph& g, const LinkTable& t, int idx, RegionMode mode,
                   std::vector<Instance>& out) {
    const Link& link = t.links()[idx];
    if (link.is_p2p()) {
        out.push_back({idx, {g.p2p_rate[link.k], 0.0}});
        return;
    }
    for (const RatePair& p : operating_pairs(g.region(link.k, link.l), mode)) out.push_back({idx, p});
}

}  // namespace

bool links_conflict(const NetworkGraph& g, const Link& a, const Link& b) {
    if (a == b) return false;
    return share_edge(a, b) || hits(blocked_by(g, a), b) || hits(blocked_by(g, b), a);
}

LinkTable::LinkTable(const NetworkGraph& g) : links_(enumerate_links(g)) {
    const int n = size();
    conflict_.assign(n, std::vector<bool>(n, false));
    adj_.assign(n, {});
    edge_mask_.assign(n, 0);
    std::vector<EdgeSet> blocked(n);
    for (int i = 0; i < n; ++i) {
        blocked[i] = blocked_by(g, links_[i]);
        edge_mask_[i] = std::uint64_t{1} << links_[i].k;
        if (!links_[i].is_p2p()) edge_mask_[i] |= std::uint64_t{1} << links_[i].l;
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const Link& a = links_[i];
            const Link& b = links_[j];
            if (share_edge(a, b) || hits(blocked[i], b) || hits(blocked[j], a)) {
                conflict_[i][j] = conflict_[j][i] = true;
                adj_[i].push_back(j);
                adj_[j].push_back(i);
            }
        }
    }
}

bool LinkTable::conflict(int a, int b) const { return conflict_[a][b]; }

int LinkTable::index_of(const Link& link) const {
    auto it = std::lower_bound(links_.begin(), links_.end(), link, [](const Link& x, const Link& y) {
        // Canonical order: point-to-point links first, then pairs.
        if (x.is_p2p() != y.is_p2p()) return x.is_p2p();
        return x < y;
    });
    if (it == links_.end() || !(*it == link)) return -1;
    return static_cast<int>(it - links_.begin());
}

std::vector<RatePair> operating_pairs(const CapacityRegion& r, RegionMode mode) {
    if (r.is_fixed()) return {r.fixed_pair()};
    if (mode.kind == RegionMode::fixed) throw RegionNotFixed("multiuser region is not a fixed point");
    std::vector<RatePair> out;
    for (const RatePair& p : sample_boundary(r, mode.samples)) {
        if (!is_corner(p)) out.push_back(p);
    }
    return out;
}

EdgeSet edges_of(const std::vector<Link>& links) {
    EdgeSet e;
    for (const Link& l : links) {
        e.push_back(l.k);
        if (!l.is_p2p()) e.push_back(l.l);
    }
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    return e;
}

bool rate_vector_less(const std::vector<double>& a, const std::vector<double>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::vector<RateVector> enumerate_rate_vectors(const NetworkGraph& g, const EdgeSet& edges,
                                               RegionMode mode) {
    LinkTable t(g);
    require_exact_size(t);
    std::vector<Instance> inst;
    for (int i = 0; i < t.size(); ++i) {
        if (within(edges, t.links()[i])) add_instances(g, t, i, mode, inst);
    }
    auto conflict = instance_conflicts(t, inst);
    std::vector<RateVector> out;
    detail::for_each_maximal_independent_set(conflict, [&](const std::vector<int>& members) {
        out.push_back(to_vector(t, inst, members, edges));
    });
    sort_unique(out);
    return out;
}

std::vector<RateVector> enumerate_mgmw_reachable(const NetworkGraph& g,
                                                 const std::vector<Link>& links,
                                                 const std::vector<RatePair>& pinned,
                                                 RegionMode completion_mode) {
    LinkTable t(g);
    require_exact_size(t);
    const EdgeSet edges = edges_of(links);

    // Instances: the set's own links at their operating pairs first, then
    // every other link over the set's edges as completion candidates.
    std::vector<Instance> inst;
    std::vector<bool> is_member;
    std::vector<int> member_link;
    for (std::size_t i = 0; i < links.size(); ++i) {
        int idx = t.index_of(links[i]);
        if (idx < 0) throw InvalidGraph("link " + to_string(links[i]) + " is not in the graph");
        RatePair p;
        if (links[i].is_p2p()) {
            p = {g.p2p_rate[links[i].k], 0.0};
        } else if (!pinned.empty()) {
            p = pinned[i];
        } else {
            p = g.region(links[i].k, links[i].l).fixed_pair();
        }
        inst.push_back({idx, p});
        member_link.push_back(idx);
    }
    const std::size_t n_members = inst.size();
    for (int i = 0; i < t.size(); ++i) {
        if (std::find(member_link.begin(), member_link.end(), i) != member_link.end()) continue;
        if (within(edges, t.links()[i])) add_instances(g, t, i, completion_mode, inst);
    }
    auto conflict = instance_conflicts(t, inst);
    const std::size_t n = inst.size();

    Bits member_bits(n);
    for (std::size_t i = 0; i < n_members; ++i) member_bits.set(i);

    std::vector<RateVector> out;
    detail::for_each_maximal_independent_set(conflict, member_bits, [&](const std::vector<int>& s) {
        // Equal weights: point-to-point members are taken before multiuser
        // ones, so the point-to-point part must itself be maximal.
        for (std::size_t i = 0; i < n_members; ++i) {
            const Link& li = t.links()[inst[i].link];
            if (!li.is_p2p() || std::find(s.begin(), s.end(), static_cast<int>(i)) != s.end()) continue;
            bool covered = std::any_of(s.begin(), s.end(), [&](int m) {
                return t.links()[inst[m].link].is_p2p() && conflict[i].test(m);
            });
            if (!covered) return;
        }
        Bits free(n);
        for (std::size_t j = n_members; j < n; ++j) {
            bool ok = std::none_of(s.begin(), s.end(), [&](int m) { return conflict[j].test(m); });
            if (ok) free.set(j);
        }
        if (free.none()) {
            out.push_back(to_vector(t, inst, s, edges));
            return;
        }
        detail::for_each_maximal_independent_set(conflict, free, [&](const std::vector<int>& c) {
            std::vector<int> all(s);
            all.insert(all.end(), c.begin(), c.end());
            out.push_back(to_vector(t, inst, all, edges));
        });
    });
    sort_unique(out);
    return out;
}

bool stability_region_contains(const NetworkGraph& g, std::span<const double> lambda, double gamma) {
    EdgeSet all(g.edge_count);
    for (int e = 0; e < g.edge_count; ++e) all[e] = e;
    RegionMode mode;
    if (!g.all_regions_fixed()) mode.kind = RegionMode::sampled;
    auto vectors = enumerate_rate_vectors(g, all, mode);

    LpProblem lp;
    lp.maximize = false;
    for (std::size_t i = 0; i < vectors.size(); ++i) lp.add_variable(0.0);
    std::vector<double> ones(vectors.size(), 1.0);
    lp.add_row(ones, Sense::eq, 1.0);
    for (int e = 0; e < g.edge_count; ++e) {
        std::vector<double> row(vectors.size());
        for (std::size_t i = 0; i < vectors.size(); ++i) row[i] = gamma * vectors[i].rates[e];
        lp.add_row(std::move(row), Sense::ge, lambda[e]);
    }
    return solve_lp(lp).status == LpStatus::optimal;
}

}  // namespace mgmw
