#include "mgmw/sched.hpp"

#include <algorithm>
#include <cmath>

#include "mgmw/errors.hpp"

namespace mgmw {

SchedulerKind parse_scheduler(const std::string& name) {
    if (name == "mgmw") return SchedulerKind::mgmw;
    if (name == "vrmgmw") return SchedulerKind::vrmgmw;
    if (name == "gmm") return SchedulerKind::gmm;
    if (name == "maxweight") return SchedulerKind::maxweight;
    throw UnknownScheduler("unknown scheduler '" + name + "'");
}

std::string to_string(SchedulerKind k) {
    switch (k) {
        case SchedulerKind::mgmw: return "mgmw";
        case SchedulerKind::vrmgmw: return "vrmgmw";
        case SchedulerKind::gmm: return "gmm";
        case SchedulerKind::maxweight: return "maxweight";
    }
    return "?";
}

double schedule_value(const RateVector& r, std::span<const double> queues) {
    double v = 0.0;
    for (std::size_t e = 0; e < r.rates.size(); ++e) v += queues[e] * r.rates[e];
    return v;
}

namespace {

struct Candidate {
    int link;  // LinkTable index
    double weight;
    RatePair pair;
};

bool ties(double a, double b) {
    return std::abs(a - b) <= kWeightTieTolerance * std::max(std::abs(a), std::abs(b));
}

// Greedy pass shared by MGMW, variable-rate MGMW and GMM: take the heaviest
// remaining link (point-to-point first on ties, then canonical order), drop
// everything that conflicts with it, repeat.
RateVector greedy(const NetworkGraph& g, const LinkTable& t, std::vector<Candidate> cand) {
    RateVector out;
    out.rates.assign(g.edge_count, 0.0);
    std::vector<char> alive(t.size(), 0);
    for (const auto& c : cand) alive[c.link] = 1;
    std::vector<int> slot(t.size(), -1);
    for (std::size_t i = 0; i < cand.size(); ++i) slot[cand[i].link] = static_cast<int>(i);

    for (;;) {
        int best = -1;
        for (std::size_t i = 0; i < cand.size(); ++i) {
            const Candidate& c = cand[i];
            if (!alive[c.link]) continue;
            if (best < 0) {
                best = static_cast<int>(i);
                continue;
            }
            const Candidate& b = cand[best];
            if (ties(c.weight, b.weight)) {
                bool cp = t.links()[c.link].is_p2p(), bp = t.links()[b.link].is_p2p();
                if ((cp && !bp) || (cp == bp && c.link < b.link)) best = static_cast<int>(i);
            } else if (c.weight > b.weight) {
                best = static_cast<int>(i);
            }
        }
        if (best < 0) break;
        const Candidate& c = cand[best];
        const Link& link = t.links()[c.link];
        out.active.push_back({link, c.pair});
        out.rates[link.k] = c.pair.rk;
        if (!link.is_p2p()) out.rates[link.l] = c.pair.rl;
        alive[c.link] = 0;
        for (int o : t.conflicts_of(c.link)) alive[o] = 0;
    }
    std::sort(out.active.begin(), out.active.end());
    return out;
}

class Mgmw : public Scheduler {
public:
    explicit Mgmw(const NetworkGraph& g) : g_(g), t_(g) {
        if (!g.all_regions_fixed()) throw RegionNotFixed("fixed-rate MGMW needs fixed multiuser rates");
        for (int i = 0; i < t_.size(); ++i) {
            const Link& l = t_.links()[i];
            pairs_.push_back(l.is_p2p() ? RatePair{g.p2p_rate[l.k], 0.0}
                                        : g.region(l.k, l.l).fixed_pair());
        }
    }
    RateVector schedule(std::span<const double> q) const override {
        std::vector<Candidate> cand;
        cand.reserve(t_.size());
        for (int i = 0; i < t_.size(); ++i) {
            const Link& l = t_.links()[i];
            const RatePair& p = pairs_[i];
            double w = l.is_p2p() ? q[l.k] * p.rk : q[l.k] * p.rk + q[l.l] * p.rl;
            cand.push_back({i, w, p});
        }
        return greedy(g_, t_, std::move(cand));
    }

private:
    const NetworkGraph& g_;
    LinkTable t_;
    std::vector<RatePair> pairs_;
};

class VrMgmw : public Scheduler {
public:
    explicit VrMgmw(const NetworkGraph& g) : g_(g), t_(g) {}
    RateVector schedule(std::span<const double> q) const override {
        std::vector<Candidate> cand;
        cand.reserve(t_.size());
        for (int i = 0; i < t_.size(); ++i) {
            const Link& l = t_.links()[i];
            if (l.is_p2p()) {
                cand.push_back({i, q[l.k] * g_.p2p_rate[l.k], {g_.p2p_rate[l.k], 0.0}});
                continue;
            }
            if (q[l.k] <= 0.0 && q[l.l] <= 0.0) continue;
            auto wp = max_weight_point(g_.region(l.k, l.l), q[l.k], q[l.l]);
            // A corner optimum is the point-to-point configuration, which is
            // already in the list with the same weight.
            if (is_corner(wp.pair)) continue;
            cand.push_back({i, wp.weight, wp.pair});
        }
        return greedy(g_, t_, std::move(cand));
    }

private:
    const NetworkGraph& g_;
    LinkTable t_;
};

class Gmm : public Scheduler {
public:
    explicit Gmm(const NetworkGraph& g) : g_(g), t_(g) {}
    RateVector schedule(std::span<const double> q) const override {
        std::vector<Candidate> cand;
        for (int e = 0; e < g_.edge_count; ++e) {
            cand.push_back({e, q[e] * g_.p2p_rate[e], {g_.p2p_rate[e], 0.0}});
        }
        return greedy(g_, t_, std::move(cand));
    }

private:
    const NetworkGraph& g_;
    LinkTable t_;
};

class MaxWeight : public Scheduler {
public:
    explicit MaxWeight(const NetworkGraph& g) {
        EdgeSet all(g.edge_count);
        for (int e = 0; e < g.edge_count; ++e) all[e] = e;
        RegionMode mode;
        if (!g.all_regions_fixed()) mode.kind = RegionMode::sampled;
        vectors_ = enumerate_rate_vectors(g, all, mode);
    }
    RateVector schedule(std::span<const double> q) const override {
        std::size_t best = 0;
        double best_v = schedule_value(vectors_[0], q);
        for (std::size_t i = 1; i < vectors_.size(); ++i) {
            double v = schedule_value(vectors_[i], q);
            if (v > best_v) {
                best_v = v;
                best = i;
            }
        }
        return vectors_[best];
    }

private:
    std::vector<RateVector> vectors_;
};

}  // namespace

std::unique_ptr<Scheduler> make_scheduler(const NetworkGraph& g, SchedulerKind kind) {
    switch (kind) {
        case SchedulerKind::mgmw: return std::make_unique<Mgmw>(g);
        case SchedulerKind::vrmgmw: return std::make_unique<VrMgmw>(g);
        case SchedulerKind::gmm: return std::make_unique<Gmm>(g);
        case SchedulerKind::maxweight: return std::make_unique<MaxWeight>(g);
    }
    throw UnknownScheduler("unknown scheduler kind");
}

RateVector mgmw_schedule(const NetworkGraph& g, std::span<const double> q) {
    return Mgmw(g).schedule(q);
}

RateVector vr_mgmw_schedule(const NetworkGraph& g, std::span<const double> q) {
    return VrMgmw(g).schedule(q);
}

RateVector gmm_schedule(const NetworkGraph& g, std::span<const double> q) {
    return Gmm(g).schedule(q);
}

RateVector maxweight_schedule(const NetworkGraph& g, std::span<const double> q) {
    return MaxWeight(g).schedule(q);
}

std::vector<WeightedLink> fixed_link_weights(const NetworkGraph& g, std::span<const double> q) {
    std::vector<WeightedLink> out;
    for (const Link& l : enumerate_links(g)) {
        if (l.is_p2p()) {
            out.push_back({l, q[l.k] * g.p2p_rate[l.k], {g.p2p_rate[l.k], 0.0}});
        } else {
            RatePair p = g.region(l.k, l.l).fixed_pair();
            out.push_back({l, q[l.k] * p.rk + q[l.l] * p.rl, p});
        }
    }
    return out;
}

}  // namespace mgmw
