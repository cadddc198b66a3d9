// Exact evaluation of reach intensities: the expected number of Poisson
// grains centered in a domain whose ball touches a target rectangle,
//
//   Lambda = lambda * integral over domain of P[rho >= dist(x, target)] dx.
//
// The distance to a rectangle has |grad| = 1 a.e., so the 2D integral
// collapses to a 1D integral of tail(s) times the length of the level curve
// {dist = s} clipped to the domain. Level curves are rounded-rectangle
// boundaries (4 segments + 4 quarter arcs); their clipped lengths against a
// rectangle or a disc are closed-form, leaving one adaptive 1D quadrature.
#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "boolsim/geom.hpp"
#include "boolsim/radius_law.hpp"

namespace boolsim {

struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Length of {x : dist(x, target) = s} for s > 0, unclipped.
inline double level_length(const Rect& target, double s) {
    return target.perimeter() + 2.0 * M_PI * s;
}

// Length of the level curve clipped to a closed rectangle / disc.
double level_length_in_rect(const Rect& target, double s, const Rect& clip);
double level_length_in_disc(const Rect& target, double s, const Disc& clip);

// lambda * integral over {dist(x,target) > r} of P[rho >= dist(x,target)] dx
// over the whole plane: the analytic bound on grains omitted beyond reach r.
double reach_beyond(const Rect& target, double r, double lambda,
                    const RadiusLaw& law);

// Smallest reach radius r such that reach_beyond(target, r) <= eps.
// Throws when the law has an infinite second moment (no finite reach works).
double find_guard_radius(const Rect& target, double lambda,
                         const RadiusLaw& law, double eps);

// Adaptive Simpson integration with kink-aware panels. Throws
// QuadratureError with diagnostics when the tolerance cannot be met.
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, const std::vector<double>& breakpoints,
                          double rel_tol, const std::string& what);

} // namespace boolsim
