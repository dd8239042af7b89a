#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "mgmw/sched.hpp"

namespace mgmw {

// 64-bit Mersenne Twister; its output sequence is fixed by the C++ standard.
// Uniform doubles are built from the top 53 bits so traces do not depend on
// the standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    bool bernoulli(double p) { return uniform() < p; }
    std::uint64_t next() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

class ArrivalProcess {
public:
    virtual ~ArrivalProcess() = default;
    // Reset to slot 0 with the given seed.
    virtual void reset(std::uint64_t seed) = 0;
    // Fill out (one entry per edge) with the arrivals of slot t (0-based).
    virtual void arrivals(long t, std::span<double> out) = 0;
};

// Each edge independently receives `payload` packets with probability
// lambda/payload. payload defaults to max(1, ceil(lambda)).
class BernoulliArrivals : public ArrivalProcess {
public:
    explicit BernoulliArrivals(std::vector<double> lambda, std::vector<double> payload = {});
    void reset(std::uint64_t seed) override;
    void arrivals(long t, std::span<double> out) override;
    const std::vector<double>& payload() const { return payload_; }

private:
    std::vector<double> lambda_;
    std::vector<double> payload_;
    Rng rng_{0};
};

// Arbitrary i.i.d. per-slot sampler.
class BatchArrivals : public ArrivalProcess {
public:
    using Sampler = std::function<void(Rng&, std::span<double>)>;
    explicit BatchArrivals(Sampler s) : sampler_(std::move(s)) {}
    void reset(std::uint64_t seed) override { rng_ = Rng(seed); }
    void arrivals(long, std::span<double> out) override { sampler_(rng_, out); }

private:
    Sampler sampler_;
    Rng rng_{0};
};

struct SlotRecord {
    long t;
    std::span<const double> queue;     // end of slot
    std::span<const double> arrivals;
    std::span<const double> served;
};

struct SimOptions {
    long horizon = 1000;
    std::uint64_t seed = 1;
    bool record_edges = false;  // keep per-edge series in the trace
    std::vector<double> initial_queue;  // empty means zeros
    std::function<void(const SlotRecord&)> observer;  // called after every slot
};

struct Trace {
    int edge_count = 0;
    long horizon = 0;
    std::vector<double> total_queue;  // per slot, end of slot
    std::vector<double> final_queue;
    // Row-major [t * edge_count + e]; filled only with record_edges.
    std::vector<double> queue, arrivals, served;
    std::vector<double> total_arrived, total_served;  // per edge
};

Trace run_simulation(const NetworkGraph& g, SchedulerKind scheduler, ArrivalProcess& arrivals,
                     const SimOptions& opts);
Trace run_simulation(const NetworkGraph& g, const std::string& scheduler, ArrivalProcess& arrivals,
                     const SimOptions& opts);

enum class Verdict { stable, unstable, inconclusive };
std::string to_string(Verdict v);

struct StabilityEstimate {
    double slope;
    Verdict verdict;
};

struct StabilityThresholds {
    double unstable_above;
    double stable_below;
};

// Defaults: 0.05 and 0.005 times the largest point-to-point rate.
StabilityThresholds default_thresholds(const NetworkGraph& g);

// Least-squares slope of the total queue over the last `window` fraction.
StabilityEstimate estimate_stability(const Trace& trace, double window,
                                     StabilityThresholds th);
StabilityEstimate estimate_stability(std::span<const double> total_queue, double window,
                                     StabilityThresholds th);

}  // namespace mgmw
