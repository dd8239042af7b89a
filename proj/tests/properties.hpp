// Property checkers shared by the unit suite (small counts) and the acceptance
// binary (full counts). Each returns a tally instead of asserting so both
// harnesses can report in their own way.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mgmw/pooling.hpp"
#include "mgmw/sched.hpp"
#include "mgmw/sim.hpp"
#include "support.hpp"

namespace props {

using namespace mgmw;

struct Tally {
    long cases = 0;
    long failures = 0;
    std::string first;

    void fail(const std::string& what) {
        if (failures++ == 0) first = what;
    }
    bool ok() const { return cases > 0 && failures == 0; }
    std::string summary() const {
        return std::to_string(cases) + " cases, " + std::to_string(failures) + " failures" +
               (first.empty() ? "" : " (first: " + first + ")");
    }
};

// Every scheduler's output satisfies the allocation rules. Even cases use
// fixed regions and run all four schedulers; odd cases use mixed region kinds
// on smaller graphs and skip fixed-rate MGMW, which rejects them.
inline Tally scheduler_constraints(int cases, std::uint64_t seed) {
    Tally t;
    std::mt19937_64 rng(seed);
    for (int i = 0; i < cases; ++i) {
        testsupport::RandomGraphOptions o;
        const bool mixed = i % 2 == 1;
        if (mixed) {
            o.regions = testsupport::RegionKind::mixed;
            o.max_edges = 5;
        }
        auto g = testsupport::random_graph(rng, o);
        auto q = testsupport::random_queues(rng, g.edge_count);
        ++t.cases;
        for (auto kind : {SchedulerKind::mgmw, SchedulerKind::vrmgmw, SchedulerKind::gmm,
                          SchedulerKind::maxweight}) {
            if (mixed && kind == SchedulerKind::mgmw) continue;
            auto r = make_scheduler(g, kind)->schedule(q);
            if (auto err = testsupport::check_constraints(g, r.rates)) {
                t.fail("case " + std::to_string(i) + " " + to_string(kind) + ": " + *err);
            }
        }
        auto gm = gmm_schedule(g, q);
        if (auto err = testsupport::check_constraints(point_to_point_view(g), gm.rates)) {
            t.fail("case " + std::to_string(i) + " gmm in the point-to-point view: " + *err);
        }
    }
    return t;
}

// Without secondary interference MGMW and GMM make the same decision.
inline Tally mgmw_matches_gmm(int graphs, std::uint64_t seed, int queues_per_graph = 5) {
    Tally t;
    std::mt19937_64 rng(seed);
    for (int i = 0; i < graphs; ++i) {
        testsupport::RandomGraphOptions o;
        o.pairs = false;
        o.max_edges = 10;
        auto g = testsupport::random_graph(rng, o);
        ++t.cases;
        for (int k = 0; k < queues_per_graph; ++k) {
            auto q = testsupport::random_queues(rng, g.edge_count);
            if (mgmw_schedule(g, q).rates != gmm_schedule(g, q).rates) {
                t.fail("graph " + std::to_string(i) + " queue draw " + std::to_string(k));
            }
        }
    }
    return t;
}

// Weight of a link under the fixed pairs, computed straight from the graph.
inline double link_weight(const NetworkGraph& g, const Link& l, const std::vector<double>& q) {
    if (l.is_p2p()) return g.p2p_rate[l.k] * q[l.k];
    auto p = g.region(l.k, l.l).fixed_pair();
    return p.rk * q[l.k] + p.rl * q[l.l];
}

struct PoolingTally {
    Tally chain;     // ratio <= tau <= sigma_U <= 1
    Tally witness;   // LP certificates and witness queues re-verified
};

// Bound ordering and certificate arithmetic on every candidate set of g.
inline PoolingTally pooling_checks(const NetworkGraph& g, const std::string& label) {
    constexpr double tol = 1e-7;
    PoolingTally out;
    const auto all_links = enumerate_links(g);
    const auto sets = candidate_mw_subsets(g, PoolingMode::fixed, true);
    for (std::size_t s = 0; s < sets.size(); ++s) {
        const auto& c = sets[s];
        const std::string where = label + " set " + std::to_string(s);
        auto m = pooling_matrices(g, c.links);
        auto lo = sigma_lower_lp(m);
        auto up = sigma_upper_lp(m);
        const double ratio = sigma_ratio_bound(m);

        ++out.chain.cases;
        if (!(ratio <= lo.tau + tol && lo.tau <= up.sigma + tol && up.sigma <= 1.0 + tol && ratio > 0)) {
            out.chain.fail(where + ": ratio " + std::to_string(ratio) + " tau " + std::to_string(lo.tau) +
                           " sigma_U " + std::to_string(up.sigma));
        }

        ++out.witness.cases;
        // Lower-bound multipliers.
        for (double x : lo.x) {
            if (x < -tol) out.witness.fail(where + ": negative multiplier");
        }
        for (std::size_t j = 0; j < m.all.size(); ++j) {
            double v = 0;
            for (std::size_t r = 0; r < lo.x.size(); ++r) v += lo.x[r] * m.link_rows_all[r][j];
            if (v > 1.0 + tol) out.witness.fail(where + ": multipliers exceed 1 on a rate vector");
        }
        for (std::size_t j = 0; j < m.reachable.size(); ++j) {
            double v = 0;
            for (std::size_t r = 0; r < lo.x.size(); ++r) v += lo.x[r] * m.link_rows_reachable[r][j];
            if (v < lo.tau - tol) out.witness.fail(where + ": reachable vector below tau");
        }
        // Upper-bound column weights: M gamma >= M~ beta, sum beta = 1,
        // sum gamma = sigma_U.
        double gsum = 0, bsum = 0;
        for (double v : up.gamma) {
            if (v < -tol) out.witness.fail(where + ": negative gamma");
            gsum += v;
        }
        for (double v : up.beta) {
            if (v < -tol) out.witness.fail(where + ": negative beta");
            bsum += v;
        }
        if (std::abs(bsum - 1.0) > tol) out.witness.fail(where + ": beta does not sum to 1");
        if (std::abs(gsum - up.sigma) > tol) out.witness.fail(where + ": gamma does not sum to sigma_U");
        for (std::size_t e = 0; e < m.edges.size(); ++e) {
            double served = 0, reach = 0;
            for (std::size_t j = 0; j < m.all.size(); ++j) served += up.gamma[j] * m.all[j][e];
            for (std::size_t j = 0; j < m.reachable.size(); ++j) reach += up.beta[j] * m.reachable[j][e];
            if (served < reach - tol) out.witness.fail(where + ": M gamma below M~ beta");
        }
        // Witness queues: exactly the set's links share the top weight.
        const auto& q = *c.witness_queues;
        const double top = link_weight(g, c.links.front(), q);
        for (const auto& l : all_links) {
            const double w = link_weight(g, l, q);
            const bool member = std::find(c.links.begin(), c.links.end(), l) != c.links.end();
            if (member && std::abs(w - top) > 1e-9) out.witness.fail(where + ": members differ in weight");
            if (!member && w > top - kWitnessMargin + 1e-9) out.witness.fail(where + ": outsider reaches the top");
        }
    }
    return out;
}

// Max-Weight is stable at 0.9 times random convex combinations of the rate
// vectors, after checking that stability_region_contains accepts them.
inline Tally maxweight_stability(const NetworkGraph& g, const std::string& label, int points,
                                 long horizon, std::uint64_t seed) {
    Tally t;
    std::mt19937_64 rng(seed);
    EdgeSet everything(g.edge_count);
    for (int e = 0; e < g.edge_count; ++e) everything[e] = e;
    const auto vectors = enumerate_rate_vectors(g, everything);
    std::uniform_int_distribution<std::size_t> pick(0, vectors.size() - 1);
    std::exponential_distribution<double> weight(1.0);
    for (int p = 0; p < points; ++p) {
        std::vector<double> lambda(g.edge_count, 0.0);
        double total = 0;
        std::vector<std::pair<std::size_t, double>> mix;
        for (int k = 0; k < 3; ++k) {
            mix.push_back({pick(rng), weight(rng)});
            total += mix.back().second;
        }
        for (auto [idx, w] : mix) {
            for (int e = 0; e < g.edge_count; ++e) lambda[e] += 0.9 * w / total * vectors[idx].rates[e];
        }
        ++t.cases;
        const std::string where = label + " point " + std::to_string(p);
        if (!stability_region_contains(g, lambda)) {
            t.fail(where + ": not accepted by stability_region_contains");
            continue;
        }
        BernoulliArrivals arr(lambda);
        SimOptions o;
        o.horizon = horizon;
        o.seed = seed + static_cast<std::uint64_t>(p);
        auto tr = run_simulation(g, SchedulerKind::maxweight, arr, o);
        auto est = estimate_stability(tr, 0.5, default_thresholds(g));
        if (est.verdict != Verdict::stable) {
            t.fail(where + ": verdict " + to_string(est.verdict) + " slope " + std::to_string(est.slope));
        }
    }
    return t;
}

inline const std::vector<std::string>& fixture_names() {
    static const std::vector<std::string> names{"fig2", "fig3_ring", "fig5", "fig6a",
                                                "fig7a", "fig7a_literal", "tree"};
    return names;
}

}  // namespace props
