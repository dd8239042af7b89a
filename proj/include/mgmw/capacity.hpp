#pragma once

#include <compare>
#include <utility>
#include <variant>
#include <vector>

namespace mgmw {

struct RatePair {
    double rk = 0.0;
    double rl = 0.0;
    auto operator<=>(const RatePair&) const = default;
};

struct FixedPoint {
    double ckl;
    double clk;
};

// Degraded two-receiver Gaussian broadcast channel. The boundary is traced by
// the power split alpha in [0,1]: alpha = 1 is the k-corner, alpha = 0 the l-corner.
struct GaussianBC {
    double power;
    double noise_k;
    double noise_l;
};

// Piecewise-linear boundary through explicit points, sorted by ascending r_k.
// First point is (0, c_l), last is (c_k, 0).
struct SampledBoundary {
    std::vector<RatePair> points;
};

struct CapacityRegion {
    std::variant<FixedPoint, GaussianBC, SampledBoundary> shape;
    double ck = 0.0;  // axis intercept on edge k (its point-to-point rate)
    double cl = 0.0;

    bool is_fixed() const { return std::holds_alternative<FixedPoint>(shape); }
    // Operating pair for fixed-rate use. Only valid when is_fixed().
    RatePair fixed_pair() const;
};

CapacityRegion make_fixed_region(double ck, double cl, double ckl, double clk);
CapacityRegion make_gaussian_region(double power, double noise_k, double noise_l);
// Points may be given in any order; they are sorted and the corners are checked.
CapacityRegion make_sampled_region(std::vector<RatePair> points);

// Boundary point of a Gaussian BC at power split alpha.
RatePair gaussian_point(const GaussianBC& g, double alpha);

struct WeightedPoint {
    RatePair pair;
    double weight;
};

WeightedPoint max_weight_point(const CapacityRegion& region, double qk, double ql);

// n boundary points from the l-corner to the k-corner (ascending r_k).
// Fixed regions always give their three operating points.
std::vector<RatePair> sample_boundary(const CapacityRegion& region, int n);

// True when the pair sits on an axis, i.e. the multiuser link degenerates to
// a single point-to-point transmission.
bool is_corner(const RatePair& p);

}  // namespace mgmw
