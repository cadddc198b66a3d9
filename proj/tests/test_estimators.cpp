#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "boolsim/estimators.hpp"
#include "boolsim/model.hpp"

using namespace boolsim;

TEST_CASE("sweep: sparse regime, duality identity, monotonicity") {
    std::vector<double> grid{1e-6, 0.1, 0.2, 0.3, 0.45};
    std::vector<SweepRow> occ = crossing_prob_sweep(
        grid, 32.0, RadiusLaw::fixed(1.0), Phase::Occupied, 1500, RngStream(61, 0));
    CHECK(occ.front().estimate.point < 0.01);
    // Monotone within CI along the grid.
    for (std::size_t i = 0; i + 1 < occ.size(); ++i)
        CHECK(occ[i].estimate.lo <= occ[i + 1].estimate.hi);
    // Vacant sweep decreasing.
    std::vector<SweepRow> vac = crossing_prob_sweep(
        grid, 32.0, RadiusLaw::fixed(1.0), Phase::Vacant, 1500, RngStream(61, 1));
    for (std::size_t i = 0; i + 1 < vac.size(); ++i)
        CHECK(vac[i + 1].estimate.lo <= vac[i].estimate.hi);
    CHECK(vac.front().estimate.point > 0.99);

    // Per-sample duality: vacant left-right = no occupied top-bottom, on a
    // shared realization.
    Rect square = Rect::from_center({0, 0}, 12.0, 12.0);
    RngStream base(61, 2);
    CrossingSolver solver;
    for (int r = 0; r < 300; ++r) {
        GrainSet gs = sample_boolean(neighborhood(square, 1.0), 0.3,
                                     RadiusLaw::fixed(1.0), base.child(r));
        bool vac_lr = vacant_crossing({square, Way::Long, Phase::Vacant}, gs.grains);
        bool occ_tb = solver.occupied_axis(square, Axis::Y, gs.grains);
        CHECK(vac_lr == !occ_tb);
    }
}

TEST_CASE("threshold bisection brackets the crossing point at small scale") {
    std::vector<double> scales{16.0};
    ThresholdEstimate occ = estimate_threshold(
        RadiusLaw::fixed(1.0), Phase::Occupied, scales, 0.5, 0.05, 2500,
        2000000, RngStream(62, 0));
    const ScaleBracket& b = occ.final_bracket();
    CHECK(b.hi - b.lo <= 0.05 + 1e-12);
    // The unit-disc Gilbert threshold is near 0.36; finite size biases the
    // bracket but not out of [0.2, 0.6].
    CHECK(b.lo > 0.2);
    CHECK(b.hi < 0.6);
    CHECK(!occ.budget_exhausted);

    // Monotone-consistent trace: no probe pair with lambda1 < lambda2 but
    // CI(lambda1) strictly above CI(lambda2).
    for (const ProbeRow& p : b.trace) {
        for (const ProbeRow& q : b.trace) {
            if (p.lambda < q.lambda) CHECK(p.estimate.lo <= q.estimate.hi);
        }
    }

    // Budget exhaustion produces a wide bracket plus the flag.
    ThresholdEstimate tight = estimate_threshold(
        RadiusLaw::fixed(1.0), Phase::Occupied, scales, 0.5, 1e-4, 2500, 12000,
        RngStream(62, 1));
    CHECK(tight.budget_exhausted);
    CHECK(tight.final_bracket().hi - tight.final_bracket().lo > 1e-4);
}

TEST_CASE("threshold estimation rejects laws with infinite second moment") {
    std::vector<double> scales{16.0};
    CHECK_THROWS_AS(
        estimate_threshold(RadiusLaw::pareto(1.8, 1.0), Phase::Occupied, scales,
                           0.5, 0.05, 500, 100000, RngStream(62, 2)),
        std::invalid_argument);
}

TEST_CASE("diameter estimate: sparse limit and monotone coupling trend") {
    DiameterEstimate tiny = estimate_lambda_D(1e-6, RadiusLaw::fixed(1.0), 400,
                                              128.0, RngStream(63, 0));
    CHECK(tiny.mean_diameter == doctest::Approx(1.0).epsilon(0.01));
    CHECK(tiny.censored_fraction == 0.0);
    CHECK(!tiny.unreliable);

    DiameterEstimate low = estimate_lambda_D(0.05, RadiusLaw::fixed(1.0), 400,
                                             128.0, RngStream(63, 1));
    DiameterEstimate mid = estimate_lambda_D(0.2, RadiusLaw::fixed(1.0), 400,
                                             128.0, RngStream(63, 2));
    CHECK(low.mean_diameter >= 1.0);
    CHECK(mid.mean_diameter + 3.0 * mid.std_error >=
          low.mean_diameter - 3.0 * low.std_error);

    // Censoring grows toward criticality and flags unreliability.
    DiameterEstimate hot = estimate_lambda_D(0.5, RadiusLaw::fixed(1.0), 150,
                                             64.0, RngStream(63, 3));
    CHECK(hot.censored_fraction > 0.5);
    CHECK(hot.unreliable);
}

TEST_CASE("censoring bracket straddles the blow-up") {
    CensorBracket cb = censoring_bracket(RadiusLaw::fixed(1.0), 0.5, 64.0, 250,
                                         0.06, RngStream(64, 0));
    CHECK(cb.lo < cb.hi);
    CHECK(cb.hi - cb.lo <= 0.06 + 1e-12);
    CHECK(cb.lo > 0.1);
    CHECK(cb.hi < 0.6);
}

TEST_CASE("grain scaling: crossings are monotone in the scale factor") {
    Rect rect({-3, -1.5}, {3, 1.5});
    CrossingQuery q{rect, Way::Short, Phase::Occupied};
    RngStream base(66, 0);
    for (int r = 0; r < 300; ++r) {
        GrainSet gs = sample_boolean(neighborhood(rect, 1.5), 0.25,
                                     RadiusLaw::uniform(0.3, 1.2), base.child(r));
        bool prev = false;
        for (double s : {0.6, 0.8, 1.0, 1.3}) {
            bool now = occupied_crossing(q, grain_scaling(gs, s).grains);
            CHECK(!(prev && !now));
            prev = now;
        }
    }
}

TEST_CASE("E event: subcritical lower bound and the stadium identity") {
    EEventReport rep = estimate_E_event(0.02, RadiusLaw::fixed(1.0), 20, 4000,
                                        RngStream(65, 0));
    CHECK(rep.informative);
    CHECK(rep.lower_bound > 0.0);
    // Emptiness of the unit neighborhood of I_0 u I_1 = [0,2] x {0}: a
    // stadium of area 4 + pi.
    double expect = std::exp(-0.02 * (4.0 + M_PI));
    CHECK(rep.empty_i01.lo <= expect);
    CHECK(expect <= rep.empty_i01.hi);

    // Strongly supercritical: truncated estimate collapses, uninformative.
    EEventReport hot =
        estimate_E_event(0.6, RadiusLaw::fixed(1.0), 8, 600, RngStream(65, 1));
    CHECK(hot.truncated.point < 0.05);
}
