#include "mgmw/pooling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "mgmw/errors.hpp"

namespace mgmw {

namespace {

struct PairBits {
    int k_bit, l_bit, kl_bit;  // link indices in the canonical list
};

std::vector<PairBits> pair_bits(const LinkTable& t) {
    std::vector<PairBits> out;
    for (int i = 0; i < t.size(); ++i) {
        const Link& l = t.links()[i];
        if (l.is_p2p()) continue;
        out.push_back({t.index_of(Link::p2p(l.k)), t.index_of(Link::p2p(l.l)), i});
    }
    return out;
}

bool structure_ok(std::uint32_t mask, const std::vector<PairBits>& pairs, PoolingMode mode) {
    for (const auto& p : pairs) {
        int k = (mask >> p.k_bit) & 1, l = (mask >> p.l_bit) & 1, kl = (mask >> p.kl_bit) & 1;
        if (mode == PoolingMode::fixed) {
            if (k && l) return false;
        } else if (k + l + kl > 1) {
            return false;
        }
    }
    return true;
}

// Coefficients of a link's weight as a linear function of the queues.
std::vector<double> weight_coeffs(const NetworkGraph& g, const Link& l) {
    std::vector<double> c(g.edge_count, 0.0);
    if (l.is_p2p()) {
        c[l.k] = g.p2p_rate[l.k];
    } else {
        RatePair p = g.region(l.k, l.l).fixed_pair();
        c[l.k] = p.rk;
        c[l.l] = p.rl;
    }
    return c;
}

std::vector<std::vector<double>> columns(const std::vector<RateVector>& v) {
    std::vector<std::vector<double>> out;
    out.reserve(v.size());
    for (const auto& r : v) out.push_back(r.rates);
    return out;
}

std::vector<std::vector<double>> link_rows(const NetworkGraph& g, const std::vector<Link>& links,
                                           const std::vector<RatePair>& pinned, const EdgeSet& edges,
                                           const std::vector<std::vector<double>>& cols) {
    auto pos = [&](EdgeId e) {
        return static_cast<std::size_t>(std::lower_bound(edges.begin(), edges.end(), e) - edges.begin());
    };
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < links.size(); ++i) {
        const Link& l = links[i];
        std::vector<double> row(cols.size());
        if (l.is_p2p()) {
            for (std::size_t j = 0; j < cols.size(); ++j) row[j] = cols[j][pos(l.k)];
        } else {
            RatePair p = pinned.empty() ? g.region(l.k, l.l).fixed_pair() : pinned[i];
            for (std::size_t j = 0; j < cols.size(); ++j) {
                row[j] = p.rk * cols[j][pos(l.k)] + p.rl * cols[j][pos(l.l)];
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

PoolingMatrices assemble(const NetworkGraph& g, const std::vector<Link>& links,
                         const std::vector<RatePair>& pinned,
                         std::vector<std::vector<double>> all,
                         std::vector<std::vector<double>> reachable) {
    PoolingMatrices m;
    m.edges = edges_of(links);
    m.all = std::move(all);
    m.reachable = std::move(reachable);
    m.link_rows_all = link_rows(g, links, pinned, m.edges, m.all);
    m.link_rows_reachable = link_rows(g, links, pinned, m.edges, m.reachable);
    return m;
}

std::vector<Link> links_from_mask(const LinkTable& t, std::uint32_t mask) {
    std::vector<Link> out;
    for (int i = 0; i < t.size(); ++i) {
        if (mask >> i & 1) out.push_back(t.links()[i]);
    }
    return out;
}

}  // namespace

bool is_candidate_structure(const NetworkGraph& g, const std::vector<Link>& links, PoolingMode mode) {
    if (links.empty()) return false;
    LinkTable t(g);
    std::uint32_t mask = 0;
    for (const Link& l : links) {
        int i = t.index_of(l);
        if (i < 0 || i >= 32) return false;
        mask |= std::uint32_t{1} << i;
    }
    return structure_ok(mask, pair_bits(t), mode);
}

std::optional<std::vector<double>> find_witness_queues(const NetworkGraph& g,
                                                       const std::vector<Link>& links) {
    const int n = g.edge_count;
    LpProblem lp;
    lp.maximize = false;
    for (int e = 0; e < n; ++e) lp.add_variable(0.0);
    lp.add_row(std::vector<double>(n, 1.0), Sense::eq, 1.0);
    const auto ref = weight_coeffs(g, links.front());
    auto diff_row = [&](const Link& l) {
        auto c = weight_coeffs(g, l);
        for (int e = 0; e < n; ++e) c[e] -= ref[e];
        return c;
    };
    for (std::size_t i = 1; i < links.size(); ++i) lp.add_row(diff_row(links[i]), Sense::eq, 0.0);
    for (const Link& l : enumerate_links(g)) {
        if (std::find(links.begin(), links.end(), l) != links.end()) continue;
        lp.add_row(diff_row(l), Sense::le, -kWitnessMargin);
    }
    auto sol = solve_lp(lp);
    if (sol.status != LpStatus::optimal) return std::nullopt;
    return sol.x;
}

std::vector<CandidateSet> candidate_mw_subsets(const NetworkGraph& g, PoolingMode mode,
                                               bool verify_witness) {
    LinkTable t(g);
    if (t.size() > kMaxExactLinks) {
        throw TooLargeForExact(std::to_string(t.size()) + " links exceed the exact-enumeration limit");
    }
    const bool witness = verify_witness && mode == PoolingMode::fixed;
    if (witness && !g.all_regions_fixed()) throw RegionNotFixed("witness check needs fixed rates");
    auto pairs = pair_bits(t);
    std::vector<CandidateSet> out;
    const std::uint32_t limit = std::uint32_t{1} << t.size();
    for (std::uint32_t mask = 1; mask < limit; ++mask) {
        if (!structure_ok(mask, pairs, mode)) continue;
        CandidateSet c;
        c.links = links_from_mask(t, mask);
        c.edges = edges_of(c.links);
        if (witness) {
            c.witness_queues = find_witness_queues(g, c.links);
            if (!c.witness_queues) continue;
        }
        out.push_back(std::move(c));
    }
    return out;
}

PoolingMatrices pooling_matrices(const NetworkGraph& g, const std::vector<Link>& links,
                                 const std::vector<RatePair>& pinned, RegionMode vectors_mode) {
    const EdgeSet edges = edges_of(links);
    return assemble(g, links, pinned, columns(enumerate_rate_vectors(g, edges, vectors_mode)),
                    columns(enumerate_mgmw_reachable(g, links, pinned, vectors_mode)));
}

LowerBound sigma_lower_lp(const PoolingMatrices& m) {
    const int nl = static_cast<int>(m.link_rows_all.size());
    LpProblem lp;
    lp.maximize = true;
    for (int r = 0; r < nl; ++r) lp.add_variable(0.0);
    const int tau = lp.add_variable(1.0);
    for (std::size_t j = 0; j < m.all.size(); ++j) {
        std::vector<double> row(nl + 1, 0.0);
        for (int r = 0; r < nl; ++r) row[r] = m.link_rows_all[r][j];
        lp.add_row(std::move(row), Sense::le, 1.0);
    }
    for (std::size_t j = 0; j < m.reachable.size(); ++j) {
        std::vector<double> row(nl + 1, 0.0);
        for (int r = 0; r < nl; ++r) row[r] = m.link_rows_reachable[r][j];
        row[tau] = -1.0;
        lp.add_row(std::move(row), Sense::ge, 0.0);
    }
    auto sol = solve_lp(lp);
    if (sol.status != LpStatus::optimal) {
        throw ConstructionFailed("lower-bound LP did not reach an optimum");
    }
    LowerBound out;
    out.tau = sol.x[tau];
    out.x.assign(sol.x.begin(), sol.x.begin() + nl);
    return out;
}

double sigma_ratio_bound(const PoolingMatrices& m) {
    auto colsum = [](const std::vector<std::vector<double>>& rows, std::size_t j) {
        double s = 0.0;
        for (const auto& r : rows) s += r[j];
        return s;
    };
    double num = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < m.reachable.size(); ++j) num = std::min(num, colsum(m.link_rows_reachable, j));
    double den = 0.0;
    for (std::size_t j = 0; j < m.all.size(); ++j) den = std::max(den, colsum(m.link_rows_all, j));
    return num / den;
}

UpperBound sigma_upper_lp(const PoolingMatrices& m) {
    const std::size_t na = m.all.size(), nr = m.reachable.size(), ne = m.edges.size();
    LpProblem lp;
    lp.maximize = false;
    for (std::size_t j = 0; j < na; ++j) lp.add_variable(1.0);
    for (std::size_t j = 0; j < nr; ++j) lp.add_variable(0.0);
    for (std::size_t e = 0; e < ne; ++e) {
        std::vector<double> row(na + nr, 0.0);
        for (std::size_t j = 0; j < na; ++j) row[j] = m.all[j][e];
        for (std::size_t j = 0; j < nr; ++j) row[na + j] = -m.reachable[j][e];
        lp.add_row(std::move(row), Sense::ge, 0.0);
    }
    std::vector<double> sum_beta(na + nr, 0.0);
    for (std::size_t j = 0; j < nr; ++j) sum_beta[na + j] = 1.0;
    lp.add_row(std::move(sum_beta), Sense::eq, 1.0);
    auto sol = solve_lp(lp);
    if (sol.status != LpStatus::optimal) {
        throw ConstructionFailed("upper-bound LP did not reach an optimum");
    }
    UpperBound out;
    out.gamma.assign(sol.x.begin(), sol.x.begin() + na);
    out.beta.assign(sol.x.begin() + na, sol.x.end());
    out.sigma = 0.0;
    for (double v : out.gamma) out.sigma += v;
    out.mu.assign(ne, 0.0);
    out.nu.assign(ne, 0.0);
    for (std::size_t e = 0; e < ne; ++e) {
        for (std::size_t j = 0; j < na; ++j) out.mu[e] += m.all[j][e] * out.gamma[j];
        for (std::size_t j = 0; j < nr; ++j) out.nu[e] += m.reachable[j][e] * out.beta[j];
        if (out.sigma > 0) out.mu[e] /= out.sigma;
    }
    return out;
}

LowerBound sigma_lower_lp(const NetworkGraph& g, const std::vector<Link>& links) {
    return sigma_lower_lp(pooling_matrices(g, links));
}

double sigma_ratio_bound(const NetworkGraph& g, const std::vector<Link>& links) {
    return sigma_ratio_bound(pooling_matrices(g, links));
}

UpperBound sigma_upper_lp(const NetworkGraph& g, const std::vector<Link>& links) {
    return sigma_upper_lp(pooling_matrices(g, links));
}

GraphBounds graph_sigma_bounds(const NetworkGraph& g, bool verify_witness, bool keep_witnesses) {
    GraphBounds out{1.0, 1.0, {}};
    std::map<EdgeSet, std::vector<std::vector<double>>> all_cache;
    for (auto& c : candidate_mw_subsets(g, PoolingMode::fixed, verify_witness)) {
        auto it = all_cache.find(c.edges);
        if (it == all_cache.end()) {
            it = all_cache.emplace(c.edges, columns(enumerate_rate_vectors(g, c.edges))).first;
        }
        auto m = assemble(g, c.links, {}, it->second,
                          columns(enumerate_mgmw_reachable(g, c.links)));
        SetBounds sb;
        sb.lower = sigma_lower_lp(m);
        sb.upper = sigma_upper_lp(m);
        sb.tau = sb.lower.tau;
        sb.sigma_upper = sb.upper.sigma;
        sb.ratio = sigma_ratio_bound(m);
        out.sigma_lower = std::min(out.sigma_lower, sb.tau);
        out.sigma_upper = std::min(out.sigma_upper, sb.sigma_upper);
        if (!keep_witnesses) {
            sb.lower.x.clear();
            sb.upper = UpperBound{sb.upper.sigma, {}, {}, {}, {}};
        }
        sb.set = std::move(c);
        out.per_set.push_back(std::move(sb));
    }
    return out;
}

VariableEstimate vr_sigma_hat(const NetworkGraph& g, int samples) {
    RegionMode mode{RegionMode::sampled, samples};
    VariableEstimate best{std::numeric_limits<double>::infinity(), {}, {}};
    std::map<EdgeSet, std::vector<std::vector<double>>> all_cache;
    for (const auto& c : candidate_mw_subsets(g, PoolingMode::variable, false)) {
        auto it = all_cache.find(c.edges);
        if (it == all_cache.end()) {
            it = all_cache.emplace(c.edges, columns(enumerate_rate_vectors(g, c.edges, mode))).first;
        }
        // Grid over the operating pairs of the set's multiuser links.
        std::vector<std::vector<RatePair>> grids;
        std::vector<std::size_t> slots;
        for (std::size_t i = 0; i < c.links.size(); ++i) {
            const Link& l = c.links[i];
            if (l.is_p2p()) continue;
            grids.push_back(operating_pairs(g.region(l.k, l.l), mode));
            slots.push_back(i);
        }
        std::vector<std::size_t> idx(grids.size(), 0);
        for (;;) {
            std::vector<RatePair> pinned(c.links.size());
            for (std::size_t s = 0; s < slots.size(); ++s) pinned[slots[s]] = grids[s][idx[s]];
            auto m = assemble(g, c.links, pinned, it->second,
                              columns(enumerate_mgmw_reachable(g, c.links, pinned, mode)));
            double sigma = sigma_upper_lp(m).sigma;
            if (sigma < best.sigma_hat) best = {sigma, c.links, pinned};
            std::size_t s = 0;
            while (s < idx.size() && ++idx[s] == grids[s].size()) idx[s++] = 0;
            if (s == idx.size()) break;
        }
    }
    return best;
}

}  // namespace mgmw
