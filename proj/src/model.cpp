#include "boolsim/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "boolsim/reach.hpp"

namespace boolsim {

std::vector<Vec2> sample_poisson_points(const Region& region, double lambda,
                                        RngStream stream) {
    if (!(lambda > 0.0))
        throw std::invalid_argument("sample_poisson_points: lambda must be > 0");
    double a = region.area();
    if (!(a >= 0.0) || !std::isfinite(a))
        throw std::invalid_argument("sample_poisson_points: region measure invalid");
    Philox rng = stream.engine();
    std::int64_t n = rng.poisson(lambda * a);
    std::vector<Vec2> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) pts.push_back(region.uniform_point(rng));
    return pts;
}

GrainSet sample_boolean(const Region& region, double lambda,
                        const RadiusLaw& law, RngStream stream) {
    GrainSet set{{}, region, lambda, 2, stream};
    Philox rng = stream.engine();
    double a = region.area();
    if (!(a >= 0.0) || !std::isfinite(a))
        throw std::invalid_argument("sample_boolean: region measure invalid");
    if (!(lambda > 0.0))
        throw std::invalid_argument("sample_boolean: lambda must be > 0");
    std::int64_t n = rng.poisson(lambda * a);
    set.grains.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
        Vec2 p = region.uniform_point(rng);
        set.grains.push_back({p, law.sample(rng)});
    }
    return set;
}

GrainSet sample_reaching_grains(const Region& domain, const Rect& target,
                                double lambda, const RadiusLaw& law,
                                RngStream stream, double min_dist) {
    if (!(lambda > 0.0))
        throw std::invalid_argument("sample_reaching_grains: lambda must be > 0");
    if (min_dist < 0.0)
        throw std::invalid_argument("sample_reaching_grains: min_dist must be >= 0");
    GrainSet set{{}, domain, lambda, 2, stream};
    Philox rng = stream.engine();

    // No center in the domain can be farther from the target than the
    // farthest bbox corner.
    double smax = 0.0;
    for (const Vec2& c : domain.bbox().corners())
        smax = std::fmax(smax, target.dist(c));
    if (smax <= min_dist && min_dist > 0.0) return set;

    double step0 = std::fmax(std::fmin(target.width(), target.height()) / 2.0, 1e-9);
    double lo = min_dist;
    bool first = true;
    // The first shell runs even when smax = 0: a domain inside the target
    // still carries the distance-zero core.
    while (first || lo < smax) {
        first = false;
        double p_env = law.tail_geq(lo);
        if (p_env <= 0.0) break;  // tails are monotone; nothing farther can reach
        double hi = lo == 0.0 ? step0 : std::fmax(lo * 2.0, lo + step0);
        hi = std::fmin(hi, smax);
        DistanceShell shell{target, lo, hi};
        std::int64_t n = rng.poisson(lambda * p_env * shell.area());
        for (std::int64_t i = 0; i < n; ++i) {
            Vec2 p = shell.sample(rng);
            double rho = law.sample_given_at_least(lo, rng);
            if (!domain.contains(p)) continue;
            if (rho >= target.dist(p)) set.grains.push_back({p, rho});
        }
        lo = hi;
        if (lo >= smax) break;
    }
    return set;
}

GrainSet grain_scaling(const GrainSet& set, double factor) {
    if (!(factor > 0.0))
        throw std::invalid_argument("grain_scaling: factor must be > 0");
    GrainSet out = set;
    for (Grain& g : out.grains) g.radius *= factor;
    return out;
}

} // namespace boolsim
