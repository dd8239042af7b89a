#include "mgmw/adversarial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mgmw/errors.hpp"

namespace mgmw {

namespace {

bool contains(const std::vector<Link>& links, const Link& l) {
    return std::find(links.begin(), links.end(), l) != links.end();
}

std::vector<double> full_length(const EdgeSet& edges, const std::vector<double>& col, int n) {
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < edges.size(); ++i) out[edges[i]] = col[i];
    return out;
}

// Packets that event 1 puts on each edge when vector r is drawn: the rates of
// the set's own links that r serves. Completion links get nothing.
std::vector<double> served_by_set(const std::vector<Link>& links, const std::vector<double>& r) {
    std::vector<double> out(r.size(), 0.0);
    for (const Link& l : links) {
        if (l.is_p2p()) {
            if (r[l.k] > 0) out[l.k] = r[l.k];
        } else if (r[l.k] > 0 && r[l.l] > 0) {
            out[l.k] = r[l.k];
            out[l.l] = r[l.l];
        }
    }
    return out;
}

void check_epsilon(double eps, bool allow_zero) {
    bool ok = allow_zero ? (eps >= 0.0 && eps < 1.0) : (eps > 0.0 && eps < 1.0);
    if (!ok) throw BadEpsilon("epsilon " + std::to_string(eps) + " is outside the allowed range");
}

std::vector<double> decomposition_or(const PoolingMatrices& m, std::vector<double> omega) {
    if (!omega.empty()) {
        if (omega.size() != m.reachable.size()) {
            throw ConfigError("decomposition has " + std::to_string(omega.size()) + " weights for " +
                              std::to_string(m.reachable.size()) + " vectors");
        }
        return omega;
    }
    return sigma_upper_lp(m).beta;
}

}  // namespace

std::vector<PairRoles> pair_roles(const NetworkGraph& g, const std::vector<Link>& links,
                                  const std::vector<RatePair>& pinned) {
    std::vector<PairRoles> out;
    for (std::size_t i = 0; i < links.size(); ++i) {
        const Link& l = links[i];
        if (l.is_p2p()) continue;
        RatePair p = pinned.empty() ? g.region(l.k, l.l).fixed_pair() : pinned[i];
        PairRoles r{l.k, l.l, g.p2p_rate[l.k], g.p2p_rate[l.l], p.rk, p.rl};
        if (!contains(links, Link::p2p(l.k)) && contains(links, Link::p2p(l.l))) {
            r = {l.l, l.k, g.p2p_rate[l.l], g.p2p_rate[l.k], p.rl, p.rk};
        }
        out.push_back(r);
    }
    return out;
}

std::vector<double> lemma1_initial_queues(const NetworkGraph& g, const std::vector<Link>& links,
                                          double common_weight) {
    auto roles = pair_roles(g, links);
    double p = -std::numeric_limits<double>::infinity();
    for (const auto& r : roles) {
        double den = r.cl * r.ckl + r.ck * r.clk - r.cl * r.ck;
        if (den <= 0.0) {
            throw ConvexityViolated("pair " + to_string(Link::multiuser(r.k, r.l)) +
                                    " does not beat time sharing");
        }
        double num = (r.ck * r.ck - r.ck * r.ckl) * (r.cl - r.clk) + r.cl * r.clk * r.clk;
        p = std::max(p, num / den);
    }
    double K = common_weight;
    if (K <= 0.0) {
        if (roles.empty()) {
            K = *std::max_element(g.p2p_rate.begin(), g.p2p_rate.end());
        } else {
            // Leaves Q_k - p >= 1 for every pair.
            for (const auto& r : roles) K = std::max(K, r.ck * (p + 1.0) + r.ck * r.ck - r.ck * r.ckl);
        }
    }
    std::vector<double> q(g.edge_count, 0.0);
    for (const Link& l : links) {
        if (l.is_p2p()) q[l.k] = K / g.p2p_rate[l.k];
    }
    for (const auto& r : roles) {
        double qk = (K + r.ck * r.ckl - r.ck * r.ck) / r.ck;
        q[r.k] = qk;
        q[r.l] = (qk * (r.ck - r.ckl) + r.ck * r.ck - r.ck * r.ckl) / r.clk;
    }
    return q;
}

QueueRelationCheck check_theorem2_relations(const NetworkGraph& g, const std::vector<Link>& links,
                                            std::span<const double> q) {
    const auto roles = pair_roles(g, links);
    // A point-to-point link on a pair's k edge is bound by the shifted term
    // instead; both cannot equal the common weight at once.
    auto is_pair_k = [&](EdgeId e) {
        return std::any_of(roles.begin(), roles.end(), [&](const PairRoles& r) { return r.k == e; });
    };
    std::vector<double> w;
    for (const Link& l : links) {
        if (l.is_p2p() && !is_pair_k(l.k)) w.push_back(q[l.k] * g.p2p_rate[l.k]);
    }
    QueueRelationCheck out{0.0, std::numeric_limits<double>::infinity()};
    for (const auto& r : roles) {
        double shifted = q[r.k] * r.ck + r.ck * r.ck - r.ck * r.ckl;
        w.push_back(q[r.k] * r.ckl + q[r.l] * r.clk);
        w.push_back(shifted);
        out.min_margin = std::min(out.min_margin, shifted - (q[r.l] * r.cl + r.cl * r.clk));
    }
    if (!w.empty()) {
        auto [lo, hi] = std::minmax_element(w.begin(), w.end());
        out.max_equality_error = *hi - *lo;
    }
    return out;
}

QueueRelationCheck check_theorem5_relations(const NetworkGraph& g, const std::vector<Link>& links,
                                            const std::vector<RatePair>& operating,
                                            std::span<const double> q) {
    std::vector<double> w;
    QueueRelationCheck out{0.0, std::numeric_limits<double>::infinity()};
    for (std::size_t i = 0; i < links.size(); ++i) {
        const Link& l = links[i];
        if (l.is_p2p()) {
            w.push_back(q[l.k] * g.p2p_rate[l.k]);
            continue;
        }
        const RatePair& c = operating[i];
        w.push_back(q[l.k] * c.rk + q[l.l] * c.rl);
        // Queue ratio follows the operating point.
        out.max_equality_error = std::max(out.max_equality_error, std::abs(q[l.l] * c.rk - c.rl * q[l.k]));
    }
    if (!w.empty()) {
        auto [lo, hi] = std::minmax_element(w.begin(), w.end());
        out.max_equality_error = std::max(out.max_equality_error, *hi - *lo);
    }
    return out;
}

std::vector<double> hat_c_increments(const NetworkGraph& g, const std::vector<Link>& links,
                                     AdversaryMode mode, const std::vector<RatePair>& operating) {
    std::vector<double> c(g.edge_count, 0.0);
    auto put = [&](EdgeId e, double v) {
        if (c[e] > 0.0 && std::abs(c[e] - v) > 1e-9 * std::max(c[e], v)) {
            throw ConstructionFailed("edge " + std::to_string(e + 1) + " gets two different increments");
        }
        c[e] = v;
    };
    const double W = 1.0;
    if (mode == AdversaryMode::theorem2) {
        for (const Link& l : links) {
            if (l.is_p2p()) put(l.k, W / g.p2p_rate[l.k]);
        }
        for (const auto& r : pair_roles(g, links)) {
            double ck_hat = W / r.ck;
            double cl_hat = ck_hat * (r.ck - r.ckl) / r.clk;
            if (!(ck_hat * r.ck > cl_hat * r.cl)) {
                throw ConstructionFailed("pair " + to_string(Link::multiuser(r.k, r.l)) +
                                         " cannot keep its point-to-point edge ahead");
            }
            put(r.k, ck_hat);
            put(r.l, cl_hat);
        }
    } else {
        if (operating.size() != links.size()) throw ConfigError("one operating pair per link is required");
        for (std::size_t i = 0; i < links.size(); ++i) {
            const Link& l = links[i];
            if (l.is_p2p()) {
                put(l.k, W / g.p2p_rate[l.k]);
                continue;
            }
            const RatePair& o = operating[i];
            if (is_corner(o)) {
                throw CornerOperatingPoint("operating pair of " + to_string(l) + " is a corner");
            }
            double s = W / (o.rk * o.rk + o.rl * o.rl);
            put(l.k, s * o.rk);
            put(l.l, s * o.rl);
        }
    }
    double lo = std::numeric_limits<double>::infinity();
    for (double v : c) {
        if (v > 0.0) lo = std::min(lo, v);
    }
    if (std::isinf(lo)) throw ConstructionFailed("empty link set");
    for (double& v : c) v /= lo;
    return c;
}

std::vector<double> rationalize_weights(const std::vector<double>& w, double tolerance,
                                        long max_denominator) {
    const double per = tolerance / (2.0 * static_cast<double>(std::max<std::size_t>(w.size(), 1)));
    std::vector<double> out;
    out.reserve(w.size());
    for (double x : w) {
        // Convergents h/k of the continued fraction of x.
        double h0 = 1, h1 = std::floor(x), k0 = 0, k1 = 1;
        double rest = x - std::floor(x);
        while (std::abs(x - h1 / k1) > per && rest > 1e-15) {
            double inv = 1.0 / rest;
            double a = std::floor(inv);
            rest = inv - a;
            double h2 = a * h1 + h0, k2 = a * k1 + k0;
            if (k2 > static_cast<double>(max_denominator)) break;
            h0 = h1; h1 = h2; k0 = k1; k1 = k2;
        }
        out.push_back(h1 / k1);
    }
    double s = 0.0;
    for (double v : out) s += v;
    if (s > 0.0) {
        for (double& v : out) v /= s;
    }
    return out;
}

std::vector<double> AdversarialSpec::arrival_rate() const {
    std::vector<double> lambda(hat_c.size(), 0.0);
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        auto a = served_by_set(links, vectors[i]);
        for (std::size_t e = 0; e < lambda.size(); ++e) lambda[e] += v[i] * a[e];
    }
    for (std::size_t e = 0; e < lambda.size(); ++e) lambda[e] += epsilon * hat_c[e];
    return lambda;
}

AdversarialSpec build_theorem2_spec(const NetworkGraph& g, const std::vector<Link>& links,
                                    double epsilon, double delta_rat, std::uint64_t seed,
                                    std::vector<double> omega) {
    check_epsilon(epsilon, false);
    if (!g.all_regions_fixed()) throw RegionNotFixed("saturating traffic needs fixed multiuser rates");
    auto m = pooling_matrices(g, links);
    AdversarialSpec s;
    s.mode = AdversaryMode::theorem2;
    s.links = links;
    for (const auto& col : m.reachable) s.vectors.push_back(full_length(m.edges, col, g.edge_count));
    s.omega = decomposition_or(m, std::move(omega));
    s.v = rationalize_weights(s.omega, delta_rat);
    s.epsilon = epsilon;
    s.q0 = lemma1_initial_queues(g, links);
    s.hat_c = hat_c_increments(g, links, AdversaryMode::theorem2);
    s.seed = seed;
    return s;
}

AdversarialSpec build_theorem5_spec(const NetworkGraph& g, const std::vector<Link>& links,
                                    const std::vector<RatePair>& operating, double epsilon,
                                    std::uint64_t seed, double delta_rat) {
    check_epsilon(epsilon, true);
    AdversarialSpec s;
    s.mode = AdversaryMode::theorem5;
    s.links = links;
    s.operating = operating;
    s.hat_c = hat_c_increments(g, links, AdversaryMode::theorem5, operating);
    auto m = pooling_matrices(g, links, operating, RegionMode{RegionMode::sampled});
    for (const auto& col : m.reachable) s.vectors.push_back(full_length(m.edges, col, g.edge_count));
    s.omega = sigma_upper_lp(m).beta;
    s.v = rationalize_weights(s.omega, delta_rat);
    s.epsilon = epsilon;
    s.q0.assign(g.edge_count, 0.0);
    s.seed = seed;
    return s;
}

AdversarialArrivals::AdversarialArrivals(AdversarialSpec spec, int edge_count)
    : spec_(std::move(spec)), edge_count_(edge_count) {
    double acc = 0.0;
    for (std::size_t i = 0; i < spec_.vectors.size(); ++i) {
        acc += spec_.v[i];
        cumulative_.push_back(acc);
        served_part_.push_back(served_by_set(spec_.links, spec_.vectors[i]));
    }
    reset(spec_.seed);
}

void AdversarialArrivals::reset(std::uint64_t seed) {
    rng_ = Rng(seed);
    boosted_ = false;
}

void AdversarialArrivals::arrivals(long t, std::span<double> out) {
    std::fill(out.begin(), out.end(), 0.0);
    if (t == 0 && spec_.mode == AdversaryMode::theorem2) {
        for (int e = 0; e < edge_count_; ++e) out[e] += spec_.q0[e];
    }
    const double u = rng_.uniform() * cumulative_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    std::size_t i = std::min<std::size_t>(it - cumulative_.begin(), cumulative_.size() - 1);
    while (spec_.v[i] <= 0.0 && i > 0) --i;  // only reachable through rounding at the top
    for (int e = 0; e < edge_count_; ++e) out[e] += served_part_[i][e];
    boosted_ = rng_.bernoulli(spec_.epsilon);
    if (boosted_) {
        for (int e = 0; e < edge_count_; ++e) out[e] += spec_.hat_c[e];
    }
}

std::unique_ptr<ArrivalProcess> build_theorem2_traffic(const NetworkGraph& g,
                                                       const std::vector<Link>& links,
                                                       double epsilon, double delta_rat,
                                                       std::uint64_t seed) {
    return std::make_unique<AdversarialArrivals>(build_theorem2_spec(g, links, epsilon, delta_rat, seed),
                                                 g.edge_count);
}

std::unique_ptr<ArrivalProcess> build_theorem5_traffic(const NetworkGraph& g,
                                                       const std::vector<Link>& links,
                                                       const std::vector<RatePair>& operating,
                                                       double epsilon, std::uint64_t seed) {
    return std::make_unique<AdversarialArrivals>(build_theorem5_spec(g, links, operating, epsilon, seed),
                                                 g.edge_count);
}

}  // namespace mgmw
