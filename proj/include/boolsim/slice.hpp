// Dimension reduction: the planar Boolean model induced by slicing a
// d-dimensional model with a 2-plane. The induced intensity is
// lambda' = lambda * omega_{d-2} * E[rho^{d-2}]; for d = 3 grains are drawn
// directly from the plane-hitting measure (size-biased radius, uniform
// height), with induced disc radius sigma = sqrt(rho^2 - h^2).
#pragma once

#include <cstdint>

#include "boolsim/model.hpp"
#include "boolsim/stats.hpp"

namespace boolsim {

// Volume of the unit ball in R^k.
double unit_ball_volume(int k);

// lambda' = lambda * omega_{d-2} * E[rho^{d-2}]; +inf when the moment
// diverges.
double induced_intensity(double lambda, int d, const RadiusLaw& law);

// Planar slice sample for d = 3: every disc of the sliced model meeting
// `window` (centers both inside and, via reach thinning, outside).
GrainSet sample_slice(double lambda, const RadiusLaw& law, const Rect& window,
                      RngStream stream);

// Brute-force oracle: sample the 3D model in a slab window x [-H, H] with
// H the maximum radius (bounded laws only), intersect with the plane z = 0.
GrainSet sample_slice_bruteforce(double lambda, const RadiusLaw& law,
                                 const Rect& window, RngStream stream);

struct SliceReport {
    double lambda = 0.0;
    int d = 3;
    double analytic_intensity = 0.0;       // lambda'
    // direct sampler statistics (means with standard errors)
    double direct_intensity = 0.0, direct_intensity_se = 0.0;
    double direct_sigma2 = 0.0, direct_sigma2_se = 0.0;
    BernoulliEstimate direct_origin_cover;
    // brute-force slab statistics (bounded laws)
    bool brute_available = false;
    double brute_intensity = 0.0, brute_intensity_se = 0.0;
    double brute_sigma2 = 0.0, brute_sigma2_se = 0.0;
    BernoulliEstimate brute_origin_cover;
    bool intensity_consistent = false;
    bool sigma2_consistent = false;
    bool origin_consistent = false;
};

// Direct sampler vs analytic intensity vs (for bounded laws) the 3D slab
// oracle: count intensity, E[sigma^2], origin coverage.
SliceReport slice_consistency(double lambda, const RadiusLaw& law,
                              const Rect& window, std::uint64_t n_reps,
                              RngStream stream, int threads = 1);

} // namespace boolsim
