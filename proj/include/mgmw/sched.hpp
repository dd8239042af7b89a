#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mgmw/rate_alloc.hpp"

namespace mgmw {

enum class SchedulerKind { mgmw, vrmgmw, gmm, maxweight };

SchedulerKind parse_scheduler(const std::string& name);  // throws UnknownScheduler
std::string to_string(SchedulerKind k);

struct WeightedLink {
    Link link;
    double weight;
    RatePair pair;
};

// Weights are compared with this relative slack so that ties which hold
// hold in exact arithmetic still register as ties after rounding.
constexpr double kWeightTieTolerance = 1e-12;

class Scheduler {
public:
    virtual ~Scheduler() = default;
    // queues has one entry per edge; the result covers every edge.
    virtual RateVector schedule(std::span<const double> queues) const = 0;
};

std::unique_ptr<Scheduler> make_scheduler(const NetworkGraph& g, SchedulerKind kind);

RateVector mgmw_schedule(const NetworkGraph& g, std::span<const double> queues);
RateVector vr_mgmw_schedule(const NetworkGraph& g, std::span<const double> queues);
RateVector gmm_schedule(const NetworkGraph& g, std::span<const double> queues);
RateVector maxweight_schedule(const NetworkGraph& g, std::span<const double> queues);

// Sum of queue-weighted rates.
double schedule_value(const RateVector& r, std::span<const double> queues);

// Queue-weighted rates of every link in canonical order at the fixed pairs.
std::vector<WeightedLink> fixed_link_weights(const NetworkGraph& g,
                                             std::span<const double> queues);

}  // namespace mgmw
