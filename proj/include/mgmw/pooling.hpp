#pragma once

#include <optional>
#include <vector>

#include "mgmw/lp.hpp"
#include "mgmw/rate_alloc.hpp"

namespace mgmw {

enum class PoolingMode { fixed, variable };

// A set of links that can hold the maximum weight at the same time.
struct CandidateSet {
    std::vector<Link> links;   // canonical order
    EdgeSet edges;
    std::optional<std::vector<double>> witness_queues;  // per edge of the whole graph
};

constexpr double kWitnessMargin = 1e-6;

// Structural filter only; checks one set.
bool is_candidate_structure(const NetworkGraph& g, const std::vector<Link>& links,
                            PoolingMode mode);

// Queue vector under which exactly these links share the maximum weight (fixed
// rates), found by LP; nullopt if none exists.
std::optional<std::vector<double>> find_witness_queues(const NetworkGraph& g,
                                                       const std::vector<Link>& links);

std::vector<CandidateSet> candidate_mw_subsets(const NetworkGraph& g, PoolingMode mode,
                                               bool verify_witness = true);

// Column matrices of one candidate set. Rows follow set.edges.
struct PoolingMatrices {
    EdgeSet edges;
    std::vector<std::vector<double>> all;        // columns: rate vectors over edges
    std::vector<std::vector<double>> reachable;  // columns: greedy-reachable vectors
    // One row per link of the set: the edge's rate for point-to-point links, the
    // combination c_kl*r_k + c_lk*r_l for multiuser links. Evaluated per column.
    std::vector<std::vector<double>> link_rows_all;
    std::vector<std::vector<double>> link_rows_reachable;
};

// pinned: operating pair per link of the set (multiuser entries used); empty
// means fixed pairs. vectors_mode controls how links outside the set are
// instantiated in the full vector set.
PoolingMatrices pooling_matrices(const NetworkGraph& g, const std::vector<Link>& links,
                                 const std::vector<RatePair>& pinned = {},
                                 RegionMode vectors_mode = {});

struct LowerBound {
    double tau;
    std::vector<double> x;  // one multiplier per link of the set
};

struct UpperBound {
    double sigma;
    std::vector<double> mu, nu;        // over the set's edges
    std::vector<double> gamma, beta;   // column weights on all / reachable
};

LowerBound sigma_lower_lp(const PoolingMatrices& m);
double sigma_ratio_bound(const PoolingMatrices& m);
UpperBound sigma_upper_lp(const PoolingMatrices& m);

LowerBound sigma_lower_lp(const NetworkGraph& g, const std::vector<Link>& links);
double sigma_ratio_bound(const NetworkGraph& g, const std::vector<Link>& links);
UpperBound sigma_upper_lp(const NetworkGraph& g, const std::vector<Link>& links);

struct SetBounds {
    CandidateSet set;
    double tau;
    double ratio;
    double sigma_upper;
    LowerBound lower;
    UpperBound upper;
};

struct GraphBounds {
    double sigma_lower;
    double sigma_upper;
    std::vector<SetBounds> per_set;
};

GraphBounds graph_sigma_bounds(const NetworkGraph& g, bool verify_witness = true,
                               bool keep_witnesses = false);

struct VariableEstimate {
    double sigma_hat;
    std::vector<Link> links;          // minimising candidate set
    std::vector<RatePair> pairs;      // minimising operating pairs, per link
};

VariableEstimate vr_sigma_hat(const NetworkGraph& g, int samples = 33);

}  // namespace mgmw
