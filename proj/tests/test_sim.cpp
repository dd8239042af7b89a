#include <numeric>

#include "doctest.h"
#include "mgmw/errors.hpp"
#include "mgmw/sim.hpp"
#include "support.hpp"

using namespace mgmw;
using testsupport::fixture;

TEST_CASE("zero arrivals keep every queue empty") {
    auto g = fixture("fig2");
    for (auto kind : {SchedulerKind::mgmw, SchedulerKind::vrmgmw, SchedulerKind::gmm, SchedulerKind::maxweight}) {
        BernoulliArrivals none(std::vector<double>(5, 0.0));
        SimOptions o;
        o.horizon = 500;
        auto tr = run_simulation(g, kind, none, o);
        CHECK(tr.total_queue.size() == 500);
        CHECK(std::all_of(tr.total_queue.begin(), tr.total_queue.end(), [](double x) { return x == 0.0; }));
    }
}

TEST_CASE("a single edge served at its arrival rate never backs up") {
    NetworkGraph g;
    g.edge_count = 1;
    g.p2p_rate = {1.0};
    g.main_ifs = {{}};
    g.secondary_ifs = {{}};
    BernoulliArrivals full({1.0});
    SimOptions o;
    o.horizon = 2000;
    o.record_edges = true;
    auto tr = run_simulation(g, SchedulerKind::mgmw, full, o);
    CHECK(*std::max_element(tr.queue.begin(), tr.queue.end()) <= 1.0);
    CHECK(tr.total_arrived[0] == 2000);
}

TEST_CASE("Bernoulli payloads") {
    BernoulliArrivals a({0.4, 2.3, 0.0});
    CHECK(a.payload() == std::vector<double>{1, 3, 1});
    a.reset(3);
    std::vector<double> out(3);
    double sum = 0;
    const int n = 200000;
    for (int t = 0; t < n; ++t) {
        a.arrivals(t, out);
        CHECK((out[1] == 0 || out[1] == 3));
        CHECK(out[2] == 0);
        sum += out[1];
    }
    CHECK(sum / n == doctest::Approx(2.3).epsilon(0.02));
    CHECK_THROWS_AS(BernoulliArrivals({1.0}, {1.0, 2.0}), ConfigError);
}

TEST_CASE("traces are conserved, nonnegative and deterministic") {
    auto g = fixture("fig2");
    std::vector<double> lam{1.5, 1.2, 0.4, 2.0, 1.0};
    for (auto kind : {SchedulerKind::mgmw, SchedulerKind::gmm, SchedulerKind::maxweight}) {
        BernoulliArrivals a(lam);
        SimOptions o;
        o.horizon = 3000;
        o.seed = 99;
        o.record_edges = true;
        o.initial_queue = {3, 0, 1, 0, 2};
        auto tr = run_simulation(g, kind, a, o);
        for (int e = 0; e < 5; ++e) {
            double q = o.initial_queue[e];
            for (long t = 0; t < o.horizon; ++t) {
                const std::size_t i = t * 5 + e;
                CHECK(tr.served[i] <= q + tr.arrivals[i] + 1e-12);
                q = q + tr.arrivals[i] - tr.served[i];
                CHECK(tr.queue[i] == doctest::Approx(q));
                CHECK(tr.queue[i] >= 0.0);
            }
            CHECK(tr.final_queue[e] ==
                  doctest::Approx(o.initial_queue[e] + tr.total_arrived[e] - tr.total_served[e]));
        }
        BernoulliArrivals again(lam);
        auto tr2 = run_simulation(g, kind, again, o);
        CHECK(tr2.queue == tr.queue);
        CHECK(tr2.total_queue == tr.total_queue);
    }
}

TEST_CASE("service never exceeds the scheduled rate") {
    auto g = fixture("fig2");
    BernoulliArrivals a({3.0, 3.0, 1.0, 4.0, 3.0});
    SimOptions o;
    o.horizon = 200;
    o.observer = [&](const SlotRecord& r) {
        for (int e = 0; e < 5; ++e) CHECK(r.served[e] <= g.p2p_rate[e]);
    };
    run_simulation(g, "mgmw", a, o);
    CHECK_THROWS_AS(run_simulation(g, "fifo", a, o), UnknownScheduler);
}

TEST_CASE("stability estimate on synthetic traces") {
    StabilityThresholds th{0.05, 0.005};
    std::vector<double> flat(1000, 0.0);
    auto s = estimate_stability(flat, 0.5, th);
    CHECK(s.slope == 0.0);
    CHECK(s.verdict == Verdict::stable);

    std::vector<double> ramp(1000);
    std::iota(ramp.begin(), ramp.end(), 0.0);
    s = estimate_stability(ramp, 0.5, th);
    CHECK(s.slope == doctest::Approx(1.0));
    CHECK(s.verdict == Verdict::unstable);

    std::vector<double> slow(1000);
    for (int t = 0; t < 1000; ++t) slow[t] = 0.01 * t;
    CHECK(estimate_stability(slow, 0.5, th).verdict == Verdict::inconclusive);

    auto g = fixture("fig2");
    CHECK(default_thresholds(g).unstable_above == doctest::Approx(0.4));
    CHECK(default_thresholds(g).stable_below == doctest::Approx(0.04));
}
