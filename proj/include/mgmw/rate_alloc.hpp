#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mgmw/net_model.hpp"

namespace mgmw {

constexpr int kMaxExactLinks = 24;

// A link together with the rate pair it runs at (rk only for point-to-point).
struct ActiveLink {
    Link link;
    RatePair pair;
    auto operator<=>(const ActiveLink&) const = default;
};

struct RateVector {
    std::vector<double> rates;       // one entry per edge of the vector's edge set
    std::vector<ActiveLink> active;  // links realising it
};

// Link list plus the pairwise conflict relation as bitmasks. Built once per
// graph and shared by the enumerators and schedulers.
class LinkTable {
public:
    explicit LinkTable(const NetworkGraph& g);

    const std::vector<Link>& links() const { return links_; }
    int size() const { return static_cast<int>(links_.size()); }
    bool conflict(int a, int b) const;
    // Indices of the links that conflict with link a.
    const std::vector<int>& conflicts_of(int a) const { return adj_[a]; }
    int index_of(const Link& link) const;  // -1 if absent
    std::uint64_t edge_mask(int a) const { return edge_mask_[a]; }

private:
    std::vector<Link> links_;
    std::vector<std::vector<int>> adj_;
    std::vector<std::vector<bool>> conflict_;
    std::vector<std::uint64_t> edge_mask_;
};

// Direct definition of the link conflict relation.
bool links_conflict(const NetworkGraph& g, const Link& a, const Link& b);

// How multiuser links are instantiated when enumerating vectors.
struct RegionMode {
    enum Kind { fixed, sampled } kind = fixed;
    int samples = 33;  // boundary samples per non-fixed region in sampled mode
};

// Rate pairs a multiuser link can operate at under the given mode: the fixed
// pair, or the interior (non-corner) boundary samples.
std::vector<RatePair> operating_pairs(const CapacityRegion& r, RegionMode mode);

// All maximal conflict-free link sets over the edge subset, as rate vectors
// restricted to that subset. Sorted, deduplicated.
std::vector<RateVector> enumerate_rate_vectors(const NetworkGraph& g, const EdgeSet& edges,
                                               RegionMode mode = {});

// Rates the greedy scheduler can reach when the given links hold the maximum
// weight. pinned gives the operating pair of each multiuser link in links
// (same order, ignored for point-to-point entries); empty means the fixed pairs.
std::vector<RateVector> enumerate_mgmw_reachable(const NetworkGraph& g,
                                                 const std::vector<Link>& links,
                                                 const std::vector<RatePair>& pinned = {},
                                                 RegionMode completion_mode = {});

// Edges covered by a set of links, sorted.
EdgeSet edges_of(const std::vector<Link>& links);

// lambda is a per-edge rate vector over all edges; gamma scales the region.
bool stability_region_contains(const NetworkGraph& g, std::span<const double> lambda,
                               double gamma = 1.0);

// Canonical rate vector ordering used for deterministic output.
bool rate_vector_less(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace mgmw
