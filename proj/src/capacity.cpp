#include "mgmw/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mgmw/errors.hpp"

namespace mgmw {

namespace {

constexpr double kGoldenTol = 1e-9;

double weight_of(const RatePair& p, double qk, double ql) { return qk * p.rk + ql * p.rl; }

}  // namespace

RatePair CapacityRegion::fixed_pair() const {
    const auto* f = std::get_if<FixedPoint>(&shape);
    if (!f) throw RegionNotFixed("region has no fixed operating point");
    return {f->ckl, f->clk};
}

CapacityRegion make_fixed_region(double ck, double cl, double ckl, double clk) {
    if (!(ck > 0 && cl > 0 && ckl > 0 && clk > 0)) {
        throw NotStrictlyConvexPoint("fixed region rates must be positive");
    }
    if (!(ckl < ck) || !(clk < cl) || !(ckl / ck + clk / cl > 1.0)) {
        throw NotStrictlyConvexPoint("pair (" + std::to_string(ckl) + ", " + std::to_string(clk) +
                                     ") is dominated by time sharing");
    }
    return {FixedPoint{ckl, clk}, ck, cl};
}

RatePair gaussian_point(const GaussianBC& g, double alpha) {
    double rk = 0.5 * std::log2(1.0 + alpha * g.power / g.noise_k);
    double rl = 0.5 * std::log2(1.0 + (1.0 - alpha) * g.power / (alpha * g.power + g.noise_l));
    return {rk, rl};
}

CapacityRegion make_gaussian_region(double power, double noise_k, double noise_l) {
    if (!(power > 0 && noise_k > 0 && noise_l > 0)) {
        throw NotStrictlyConvexPoint("gaussian_bc parameters must be positive");
    }
    GaussianBC g{power, noise_k, noise_l};
    return {g, gaussian_point(g, 1.0).rk, gaussian_point(g, 0.0).rl};
}

CapacityRegion make_sampled_region(std::vector<RatePair> pts) {
    std::sort(pts.begin(), pts.end(),
              [](const RatePair& a, const RatePair& b) { return a.rk < b.rk; });
    if (pts.size() < 2) throw NotStrictlyConvexPoint("sampled boundary needs both corners");
    const RatePair& lo = pts.front();
    const RatePair& hi = pts.back();
    if (lo.rk != 0.0 || !(lo.rl > 0) || hi.rl != 0.0 || !(hi.rk > 0)) {
        throw NotStrictlyConvexPoint("sampled boundary must start at (0,c_l) and end at (c_k,0)");
    }
    const double ck = hi.rk;
    const double cl = lo.rl;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (!(pts[i].rk > pts[i - 1].rk) || !(pts[i].rl < pts[i - 1].rl)) {
            throw NotStrictlyConvexPoint("sampled boundary must be strictly decreasing");
        }
    }
    for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
        const auto& a = pts[i - 1];
        const auto& b = pts[i];
        const auto& c = pts[i + 1];
        // Strict concavity: b lies strictly above the chord a-c.
        double cross = (b.rk - a.rk) * (c.rl - a.rl) - (b.rl - a.rl) * (c.rk - a.rk);
        if (!(cross < 0)) throw NotStrictlyConvexPoint("sampled boundary is not strictly concave");
        if (!(b.rk / ck + b.rl / cl > 1.0)) {
            throw NotStrictlyConvexPoint("sampled point is dominated by time sharing");
        }
    }
    return {SampledBoundary{std::move(pts)}, ck, cl};
}

bool is_corner(const RatePair& p) { return p.rk <= 0.0 || p.rl <= 0.0; }

WeightedPoint max_weight_point(const CapacityRegion& region, double qk, double ql) {
    if (qk < 0 || ql < 0) throw UndefinedWeight("queues must be nonnegative");
    if (qk == 0 && ql == 0) throw UndefinedWeight("weight undefined for zero queues");

    // Corners first; interior points must beat them strictly, so ties resolve
    // to the point-to-point configuration.
    WeightedPoint best{{region.ck, 0.0}, qk * region.ck};
    if (ql * region.cl > best.weight) best = {{0.0, region.cl}, ql * region.cl};
    auto consider = [&](const RatePair& p) {
        double w = weight_of(p, qk, ql);
        if (w > best.weight * (1.0 + 1e-12)) best = {p, w};
    };

    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, FixedPoint>) {
                consider({s.ckl, s.clk});
            } else if constexpr (std::is_same_v<T, SampledBoundary>) {
                for (const auto& p : s.points) consider(p);
            } else {
                double a = 0.0, b = 1.0;
                const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
                double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
                double f1 = weight_of(gaussian_point(s, x1), qk, ql);
                double f2 = weight_of(gaussian_point(s, x2), qk, ql);
                while (b - a > kGoldenTol) {
                    if (f1 < f2) {
                        a = x1;
                        x1 = x2;
                        f1 = f2;
                        x2 = a + phi * (b - a);
                        f2 = weight_of(gaussian_point(s, x2), qk, ql);
                    } else {
                        b = x2;
                        x2 = x1;
                        f2 = f1;
                        x1 = b - phi * (b - a);
                        f1 = weight_of(gaussian_point(s, x1), qk, ql);
                    }
                }
                consider(gaussian_point(s, 0.5 * (a + b)));
            }
        },
        region.shape);
    return best;
}

std::vector<RatePair> sample_boundary(const CapacityRegion& region, int n) {
    if (n < 3) throw UndefinedWeight("sample_boundary needs n >= 3");
    std::vector<RatePair> out;
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, FixedPoint>) {
                out = {{0.0, region.cl}, {s.ckl, s.clk}, {region.ck, 0.0}};
            } else if constexpr (std::is_same_v<T, GaussianBC>) {
                out.reserve(n);
                for (int i = 0; i < n; ++i) {
                    double alpha = static_cast<double>(i) / (n - 1);
                    out.push_back(gaussian_point(s, alpha));
                }
                out.front() = {0.0, region.cl};
                out.back() = {region.ck, 0.0};
            } else {
                // Parameter = position along the vertex index, so stored
                // vertices reappear on every grid with (n-1) a multiple of (m-1).
                const int m = static_cast<int>(s.points.size());
                out.reserve(n);
                for (int i = 0; i < n; ++i) {
                    long long num = static_cast<long long>(i) * (m - 1);
                    int seg = static_cast<int>(num / (n - 1));
                    long long rem = num % (n - 1);
                    if (seg >= m - 1) {
                        out.push_back(s.points.back());
                        continue;
                    }
                    if (rem == 0) {
                        out.push_back(s.points[seg]);
                        continue;
                    }
                    double f = static_cast<double>(rem) / (n - 1);
                    const auto& a = s.points[seg];
                    const auto& b = s.points[seg + 1];
                    out.push_back({a.rk + f * (b.rk - a.rk), a.rl + f * (b.rl - a.rl)});
                }
            }
        },
        region.shape);
    return out;
}

}  // namespace mgmw
