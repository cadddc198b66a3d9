// Poisson grain sampling: homogeneous point processes on regions, restricted
// Boolean samples, and the spatially thinned "reaching grain" sampler that
// makes far-field events tractable for heavy-tailed radii.
#pragma once

#include <cstdint>
#include <vector>

#include "boolsim/geom.hpp"
#include "boolsim/radius_law.hpp"
#include "boolsim/rng.hpp"

namespace boolsim {

struct Grain {
    Vec2 center;
    double radius = 0.0;
};

inline Disc disc_of(const Grain& g) { return Disc{g.center, g.radius}; }

// A finite realization of the Boolean model restricted to source_region.
struct GrainSet {
    std::vector<Grain> grains;
    Region source_region;
    double intensity = 0.0;
    int ambient_dim = 2;
    RngStream seed;
};

// Homogeneous Poisson points on a finite-measure region: count is
// Poisson(lambda * |region|), points i.i.d. uniform given the count.
std::vector<Vec2> sample_poisson_points(const Region& region, double lambda,
                                        RngStream stream);

// xi_lambda^region: grains centered at Poisson points with i.i.d. radii.
GrainSet sample_boolean(const Region& region, double lambda,
                        const RadiusLaw& law, RngStream stream);

// The thinned process of grains centered in `domain` whose ball reaches
// `target` (radius >= distance of center to target). Distributionally equal
// to sampling the full Boolean model on the domain and keeping the grains
// that intersect the target, but sampled through geometric distance shells
// so that arbitrarily large domains cost only what the tail admits.
// `min_dist` restricts to centers at distance > min_dist from the target
// (used when the domain excludes a neighborhood of the target).
GrainSet sample_reaching_grains(const Region& domain, const Rect& target,
                                double lambda, const RadiusLaw& law,
                                RngStream stream, double min_dist = 0.0);

// Expected number of reaching grains, for cross-checks against quadrature.
double expected_reaching_count(const Region& domain, const Rect& target,
                               double lambda, const RadiusLaw& law);

// Radii scaled by `factor` in place of the originals; centers and
// zero-radius grains kept as they are.
GrainSet grain_scaling(const GrainSet& set, double factor);

} // namespace boolsim
