#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "mgmw/pooling.hpp"
#include "mgmw/sim.hpp"

namespace mgmw {

// Multiuser pair with its roles fixed: `k` is the edge that may also appear as
// a point-to-point link of the set (lower id when neither does).
struct PairRoles {
    EdgeId k;
    EdgeId l;
    double ck, cl;    // point-to-point rates
    double ckl, clk;  // operating pair, rate of k then rate of l
};

std::vector<PairRoles> pair_roles(const NetworkGraph& g, const std::vector<Link>& links,
                                  const std::vector<RatePair>& pinned = {});

// Initial queues making every link of the set share the same weight with the
// margins required by the construction. Entries outside the set's edges are 0.
// common_weight <= 0 picks a value automatically.
std::vector<double> lemma1_initial_queues(const NetworkGraph& g, const std::vector<Link>& links,
                                          double common_weight = 0.0);

// Residuals of the equal-weight relations the initial queues must satisfy;
// all entries are ~0 and `margin` > 0 when the relations hold.
struct QueueRelationCheck {
    double max_equality_error;
    double min_margin;  // smallest strict-inequality gap, +inf without pairs
};
QueueRelationCheck check_theorem2_relations(const NetworkGraph& g, const std::vector<Link>& links,
                                            std::span<const double> queues);
QueueRelationCheck check_theorem5_relations(const NetworkGraph& g, const std::vector<Link>& links,
                                            const std::vector<RatePair>& operating,
                                            std::span<const double> queues);

enum class AdversaryMode { theorem2, theorem5 };

// Per-edge increments, scaled so the smallest positive entry is 1.
// operating is used only in theorem5 mode (one pair per link of the set).
std::vector<double> hat_c_increments(const NetworkGraph& g, const std::vector<Link>& links,
                                     AdversaryMode mode,
                                     const std::vector<RatePair>& operating = {});

// Continued-fraction approximation with bounded denominator, then renormalised.
std::vector<double> rationalize_weights(const std::vector<double>& w, double tolerance = 1e-6,
                                        long max_denominator = 1000000);

struct AdversarialSpec {
    AdversaryMode mode = AdversaryMode::theorem2;
    std::vector<Link> links;
    std::vector<RatePair> operating;        // theorem5 only
    std::vector<std::vector<double>> vectors;  // full-length reachable vectors r_i
    std::vector<double> omega;              // decomposition weights
    std::vector<double> v;                  // rationalised weights
    double epsilon = 0.0;
    std::vector<double> q0;
    std::vector<double> hat_c;
    std::uint64_t seed = 1;

    // nu_hat + epsilon * k, per edge.
    std::vector<double> arrival_rate() const;
};

// omega empty: take the decomposition from the upper-bound LP witness.
AdversarialSpec build_theorem2_spec(const NetworkGraph& g, const std::vector<Link>& links,
                                    double epsilon, double delta_rat = 1e-6,
                                    std::uint64_t seed = 1,
                                    std::vector<double> omega = {});

AdversarialSpec build_theorem5_spec(const NetworkGraph& g, const std::vector<Link>& links,
                                    const std::vector<RatePair>& operating, double epsilon,
                                    std::uint64_t seed = 1, double delta_rat = 1e-6);

// Arrival generator implementing the construction. Slot 0 adds q0 on top of
// the regular arrivals.
class AdversarialArrivals : public ArrivalProcess {
public:
    explicit AdversarialArrivals(AdversarialSpec spec, int edge_count);
    void reset(std::uint64_t seed) override;
    void arrivals(long t, std::span<double> out) override;
    const AdversarialSpec& spec() const { return spec_; }
    bool last_was_boost() const { return boosted_; }

private:
    AdversarialSpec spec_;
    int edge_count_;
    std::vector<double> cumulative_;
    std::vector<std::vector<double>> served_part_;  // arrivals of event 1 per vector
    Rng rng_{0};
    bool boosted_ = false;
};

std::unique_ptr<ArrivalProcess> build_theorem2_traffic(const NetworkGraph& g,
                                                       const std::vector<Link>& links,
                                                       double epsilon, double delta_rat,
                                                       std::uint64_t seed);
std::unique_ptr<ArrivalProcess> build_theorem5_traffic(const NetworkGraph& g,
                                                       const std::vector<Link>& links,
                                                       const std::vector<RatePair>& operating,
                                                       double epsilon, std::uint64_t seed);

}  // namespace mgmw
