#include "mgmw/sim.hpp"

#include <algorithm>
#include <cmath>

#include "mgmw/errors.hpp"

namespace mgmw {

BernoulliArrivals::BernoulliArrivals(std::vector<double> lambda, std::vector<double> payload)
    : lambda_(std::move(lambda)), payload_(std::move(payload)) {
    if (payload_.empty()) {
        for (double l : lambda_) payload_.push_back(std::max(1.0, std::ceil(l)));
    }
    if (payload_.size() != lambda_.size()) throw ConfigError("payload and lambda sizes differ");
    for (std::size_t e = 0; e < lambda_.size(); ++e) {
        if (lambda_[e] < 0 || lambda_[e] > payload_[e]) {
            throw ConfigError("arrival rate on edge " + std::to_string(e + 1) +
                              " must lie in [0, payload]");
        }
    }
}

void BernoulliArrivals::reset(std::uint64_t seed) { rng_ = Rng(seed); }

void BernoulliArrivals::arrivals(long, std::span<double> out) {
    for (std::size_t e = 0; e < lambda_.size(); ++e) {
        // Always draw, so edge streams stay aligned across parameter changes.
        const double u = rng_.uniform();
        out[e] = u < lambda_[e] / payload_[e] ? payload_[e] : 0.0;
    }
}

Trace run_simulation(const NetworkGraph& g, SchedulerKind kind, ArrivalProcess& arrivals,
                     const SimOptions& opts) {
    if (opts.horizon < 1) throw ConfigError("horizon must be at least 1");
    auto sched = make_scheduler(g, kind);
    const int n = g.edge_count;

    Trace tr;
    tr.edge_count = n;
    tr.horizon = opts.horizon;
    tr.total_queue.reserve(opts.horizon);
    tr.total_arrived.assign(n, 0.0);
    tr.total_served.assign(n, 0.0);
    if (opts.record_edges) {
        const std::size_t cells = static_cast<std::size_t>(opts.horizon) * n;
        tr.queue.reserve(cells);
        tr.arrivals.reserve(cells);
        tr.served.reserve(cells);
    }

    std::vector<double> q(n, 0.0);
    if (!opts.initial_queue.empty()) q = opts.initial_queue;
    std::vector<double> a(n), s(n);
    arrivals.reset(opts.seed);

    for (long t = 0; t < opts.horizon; ++t) {
        arrivals.arrivals(t, a);
        for (int e = 0; e < n; ++e) q[e] += a[e];
        RateVector r = sched->schedule(q);
        double total = 0.0;
        for (int e = 0; e < n; ++e) {
            s[e] = std::min(q[e], r.rates[e]);
            q[e] -= s[e];
            total += q[e];
            tr.total_arrived[e] += a[e];
            tr.total_served[e] += s[e];
        }
        tr.total_queue.push_back(total);
        if (opts.record_edges) {
            tr.queue.insert(tr.queue.end(), q.begin(), q.end());
            tr.arrivals.insert(tr.arrivals.end(), a.begin(), a.end());
            tr.served.insert(tr.served.end(), s.begin(), s.end());
        }
        if (opts.observer) opts.observer({t, q, a, s});
    }
    tr.final_queue = q;
    return tr;
}

Trace run_simulation(const NetworkGraph& g, const std::string& scheduler, ArrivalProcess& arrivals,
                     const SimOptions& opts) {
    return run_simulation(g, parse_scheduler(scheduler), arrivals, opts);
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::stable: return "stable";
        case Verdict::unstable: return "unstable";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

StabilityThresholds default_thresholds(const NetworkGraph& g) {
    double cmax = *std::max_element(g.p2p_rate.begin(), g.p2p_rate.end());
    return {0.05 * cmax, 0.005 * cmax};
}

StabilityEstimate estimate_stability(std::span<const double> y, double window, StabilityThresholds th) {
    const long n = static_cast<long>(y.size());
    long start = n - static_cast<long>(std::ceil(window * static_cast<double>(n)));
    start = std::clamp(start, 0L, std::max(0L, n - 2));
    const long m = n - start;
    // Centred least squares on t = start..n-1.
    double tbar = 0.0, ybar = 0.0;
    for (long t = start; t < n; ++t) {
        tbar += static_cast<double>(t);
        ybar += y[t];
    }
    tbar /= static_cast<double>(m);
    ybar /= static_cast<double>(m);
    double sxy = 0.0, sxx = 0.0;
    for (long t = start; t < n; ++t) {
        const double dt = static_cast<double>(t) - tbar;
        sxy += dt * (y[t] - ybar);
        sxx += dt * dt;
    }
    const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
    Verdict v = Verdict::inconclusive;
    if (slope > th.unstable_above) v = Verdict::unstable;
    else if (slope < th.stable_below) v = Verdict::stable;
    return {slope, v};
}

StabilityEstimate estimate_stability(const Trace& trace, double window, StabilityThresholds th) {
    return estimate_stability(trace.total_queue, window, th);
}

}  // namespace mgmw
