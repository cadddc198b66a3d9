#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "boolsim/percolation.hpp"
#include "boolsim/slice.hpp"
#include "boolsim/stats.hpp"

using namespace boolsim;

TEST_CASE("unit ball volumes") {
    CHECK(unit_ball_volume(0) == doctest::Approx(1.0));
    CHECK(unit_ball_volume(1) == doctest::Approx(2.0));
    CHECK(unit_ball_volume(2) == doctest::Approx(M_PI));
    CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * M_PI / 3.0));
}

TEST_CASE("induced intensity") {
    CHECK(induced_intensity(0.5, 3, RadiusLaw::fixed(1.0)) == doctest::Approx(1.0));
    CHECK(induced_intensity(1.0, 4, RadiusLaw::fixed(1.0)) == doctest::Approx(M_PI));
    CHECK(induced_intensity(1.0, 3, RadiusLaw::pareto(3.0, 1.0)) ==
          doctest::Approx(2.0 * 1.5));
    // Divergent first moment: distinguished infinity.
    CHECK(std::isinf(induced_intensity(1.0, 3, RadiusLaw::pareto(1.0, 1.0))));
    CHECK_THROWS_AS(induced_intensity(1.0, 2, RadiusLaw::fixed(1.0)),
                    std::invalid_argument);
}

TEST_CASE("slice sampler: moments and positivity") {
    Rect window = Rect::from_center({0, 0}, 12.0, 12.0);
    RngStream base(51, 0);
    MeanVar count, sigma2;
    const int reps = 400;
    for (int r = 0; r < reps; ++r) {
        GrainSet gs = sample_slice(0.5, RadiusLaw::fixed(1.0), window,
                                   base.child("s", r));
        double n_in = 0.0, s2 = 0.0;
        for (const Grain& g : gs.grains) {
            CHECK(g.radius > 0.0);  // sigma > 0 a.s.
            if (window.contains(g.center)) {
                n_in += 1.0;
                s2 += g.radius * g.radius;
            }
        }
        count.add(n_in / window.area());
        if (n_in > 0) sigma2.add(s2 / n_in);
    }
    // lambda' = 2 lambda E[rho] = 1.0.
    CHECK(std::fabs(count.mean - 1.0) <= 4.0 * count.std_error());
    // E[sigma^2] = 2/3 for Fixed(1).
    CHECK(std::fabs(sigma2.mean - 2.0 / 3.0) <= 4.0 * sigma2.std_error());
}

TEST_CASE("slice sampler rejects laws without a finite third moment") {
    Rect window = Rect::from_center({0, 0}, 4.0, 4.0);
    CHECK_THROWS_AS(
        sample_slice(0.1, RadiusLaw::pareto(2.5, 1.0), window, RngStream(52, 0)),
        std::invalid_argument);
    CHECK_THROWS_AS(sample_slice_bruteforce(0.1, RadiusLaw::pareto(4.0, 1.0),
                                            window, RngStream(52, 1)),
                    std::invalid_argument);
}

TEST_CASE("slice consistency: direct vs slab oracle vs analytics") {
    Rect window = Rect::from_center({0, 0}, 10.0, 10.0);
    SliceReport rep =
        slice_consistency(0.5, RadiusLaw::fixed(1.0), window, 400, RngStream(53, 0));
    CHECK(rep.brute_available);
    CHECK(rep.intensity_consistent);
    CHECK(rep.sigma2_consistent);
    CHECK(rep.origin_consistent);
    CHECK(rep.analytic_intensity == doctest::Approx(1.0));
    // Origin coverage: 1 - exp(-lambda 4 pi / 3) for Fixed(1).
    double expect = 1.0 - std::exp(-0.5 * 4.0 * M_PI / 3.0);
    CHECK(rep.direct_origin_cover.lo <= expect);
    CHECK(expect <= rep.direct_origin_cover.hi);

    // Unbounded (but third-moment-finite) law: direct mode only.
    SliceReport heavy = slice_consistency(0.2, RadiusLaw::pareto(4.0, 0.5), window,
                                          300, RngStream(53, 1));
    CHECK(!heavy.brute_available);
    CHECK(heavy.intensity_consistent);
}

TEST_CASE("slice crossing probability: direct sampler vs slab oracle") {
    // Two independent routes to the sliced model must give the same crossing
    // statistics on a probe square.
    Rect window = Rect::from_center({0, 0}, 16.0, 16.0);
    Rect probe = Rect::from_center({0, 0}, 10.0, 10.0);
    RngStream base(54, 0);
    const int reps = 1500;
    std::uint64_t direct_hits = 0, brute_hits = 0;
    CrossingSolver solver;
    for (int r = 0; r < reps; ++r) {
        GrainSet a = sample_slice(0.25, RadiusLaw::fixed(1.0), window,
                                  base.child("a", r));
        if (solver.occupied_axis(probe, Axis::X, a.grains)) ++direct_hits;
        GrainSet b = sample_slice_bruteforce(0.25, RadiusLaw::fixed(1.0), window,
                                             base.child("b", r));
        if (solver.occupied_axis(probe, Axis::X, b.grains)) ++brute_hits;
    }
    BernoulliEstimate direct_est = BernoulliEstimate::from_counts(direct_hits, reps);
    BernoulliEstimate brute_est = BernoulliEstimate::from_counts(brute_hits, reps);
    INFO("direct=[", direct_est.lo, ",", direct_est.hi, "] brute=[", brute_est.lo,
         ",", brute_est.hi, "]");
    CHECK(ci_overlap(direct_est, brute_est));
}
