#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "boolsim/multiscale.hpp"
#include "boolsim/reach.hpp"

using namespace boolsim;

TEST_CASE("bound_chain: geometric closed form at g = 0") {
    std::vector<double> g(6, 0.0);
    BoundChain bc = bound_chain(1.0 / 9.0, g);
    REQUIRE(bc.applicable);
    for (std::size_t n = 0; n < g.size(); ++n) {
        CHECK(bc.f_bounds[n] ==
              doctest::Approx(std::pow(9.0, -(static_cast<double>(n) + 2.0)))
                  .epsilon(1e-15));
    }
    // Sum over n >= 1 of 9^{-n-1} = (1/81) * (9/8) = 1/72, exactly the
    // arithmetic path f0 / (C2 - 1).
    CHECK(bc.sum_f == (1.0 / 9.0) / 8.0);
}

TEST_CASE("bound_chain: coarse closure at sum g = 1/81") {
    std::vector<double> g{1.0 / 81.0};
    BoundChain bc = bound_chain(1.0 / 9.0, g);
    REQUIRE(bc.applicable);
    CHECK(bc.coarse_total == doctest::Approx(5.0 / 81.0).epsilon(1e-15));
    CHECK(bc.coarse_total <= 5.0 / 81.0 + 1e-16);
}

TEST_CASE("bound_chain: precondition failures are verdicts") {
    std::vector<double> g{0.0};
    BoundChain bad_f = bound_chain(0.2, g);
    CHECK(!bad_f.applicable);
    CHECK(bad_f.reason == "f0 exceeds 1/C2");
    std::vector<double> big_g{0.1};
    BoundChain bad_g = bound_chain(0.05, big_g);
    CHECK(!bad_g.applicable);
    CHECK(!bad_g.reason.empty());
}

TEST_CASE("markov bound: closed-form example and dominance") {
    // Pareto(3, 1), alpha = 2, lambda = 0.01, kappa = 10: pi/2.
    CHECK(markov_bound_G(2.0, 0.01, RadiusLaw::pareto(3.0, 1.0), 10.0) ==
          doctest::Approx(M_PI / 2.0).epsilon(1e-15));
    // Fixed(1), alpha = 2: the strict tail vanishes.
    CHECK(markov_bound_G(2.0, 0.5, RadiusLaw::fixed(1.0), 100.0) == 0.0);

    // exact_G <= markov everywhere on a small grid.
    for (double alpha : {1.0, 2.0, 4.0}) {
        for (double lambda : {0.01, 0.1}) {
            for (double kappa : {10.0, 100.0}) {
                double g = exact_G(alpha, lambda, RadiusLaw::pareto(3.0, 1.0), kappa);
                double m = markov_bound_G(alpha, lambda, RadiusLaw::pareto(3.0, 1.0),
                                          kappa);
                INFO("alpha=", alpha, " lambda=", lambda, " kappa=", kappa);
                CHECK(g <= m);
                CHECK(g >= 0.0);
                CHECK(g <= 1.0);
            }
        }
    }
}

TEST_CASE("exact_G: impossibility, monotonicity, MC cross-oracle") {
    // Fixed(alpha/2): no grain outside the alpha-neighborhood reaches.
    CHECK(exact_G(4.0, 0.5, RadiusLaw::fixed(2.0), 100.0) == 0.0);

    RadiusLaw law = RadiusLaw::pareto(3.0, 1.0);
    // Monotone in kappa and lambda.
    double prev = 0.0;
    for (double kappa : {10.0, 30.0, 100.0, 1000.0}) {
        double g = exact_G(4.0, 0.1, law, kappa);
        CHECK(g >= prev);
        prev = g;
    }
    CHECK(exact_G(4.0, 0.05, law, 100.0) <= exact_G(4.0, 0.2, law, 100.0));
    // Increments beyond kappa bounded by the analytic tail.
    Rect strip = make_strip(4.0, Orientation::Horizontal);
    double g1 = exact_G(4.0, 0.1, law, 100.0);
    double g2 = exact_G(4.0, 0.1, law, 1000.0);
    CHECK(g2 - g1 <= reach_beyond(strip, 100.0 * 4.0 - 30.0, 0.1, law));

    // MC cross-oracle at one desk-scale point.
    BernoulliEstimate mc =
        estimate_G_mc(4.0, 0.1, law, 10.0, 20000, RngStream(41, 0));
    double exact = exact_G(4.0, 0.1, law, 10.0);
    INFO("exact=", exact, " mc=[", mc.lo, ",", mc.hi, "]");
    CHECK(mc.lo <= exact);
    CHECK(exact <= mc.hi);
}

TEST_CASE("estimate_F: degenerate regimes") {
    // Tiny intensity: essentially no grains, no crossing.
    BernoulliEstimate low =
        estimate_F(2.0, 1e-8, RadiusLaw::fixed(1.0), 2000, RngStream(42, 1));
    CHECK(low.point == 0.0);
    // Dense coverage regime: lambda |S(alpha)_alpha| = 200 with radius alpha.
    double alpha = 2.0;
    double area = 36.0 * alpha * alpha;
    BernoulliEstimate high = estimate_F(alpha, 200.0 / area,
                                        RadiusLaw::fixed(alpha), 2000,
                                        RngStream(42, 2));
    CHECK(high.point > 0.99);
    CHECK_THROWS_AS(estimate_F(2.0, 0.1, RadiusLaw::fixed(1.0), 0, RngStream(42, 3)),
                    std::invalid_argument);
}

TEST_CASE("estimate_F scaling invariance") {
    // F(alpha, lambda, law) = F(s alpha, lambda / s^2, s law) in law.
    RadiusLaw law = RadiusLaw::uniform(0.5, 1.5);
    const double alpha = 2.0, lambda = 0.35;
    BernoulliEstimate a =
        estimate_F(alpha, lambda, law, 6000, RngStream(43, 1));
    std::uint64_t tag = 2;
    for (double s : {2.0, 4.0}) {
        BernoulliEstimate b = estimate_F(s * alpha, lambda / (s * s), law.scaled(s),
                                         6000, RngStream(43, tag++));
        INFO("s=", s, " a=[", a.lo, ",", a.hi, "] b=[", b.lo, ",", b.hi, "]");
        CHECK(ci_overlap(a, b));
    }
}

TEST_CASE("recursion check: trivial and live regimes stay consistent") {
    // Tiny lambda: both sides near zero.
    RecursionCheck tiny = check_recursion(2.0, 1e-4, RadiusLaw::fixed(1.0), 100.0,
                                          2000, RngStream(44, 1));
    CHECK(tiny.verdict == Verdict::Consistent);
    // F(alpha) large: RHS above one, trivially consistent.
    RecursionCheck live = check_recursion(1.0, 0.5, RadiusLaw::fixed(1.0), 100.0,
                                          1500, RngStream(44, 2));
    CHECK(live.rhs_hi > 1.0);
    CHECK(live.verdict == Verdict::Consistent);
}

TEST_CASE("strip sequence geometry") {
    std::vector<Rect> strips = strip_sequence(1.0, 6);
    // S_1 horizontal [-50,50] x [-5,5].
    CHECK(strips[0].lo.x == -50.0);
    CHECK(strips[0].hi.y == 5.0);
    // S_2 vertical with short side 100.
    CHECK(strips[1].width() == 100.0);
    CHECK(strips[1].height() == 1000.0);
    // Nesting two apart.
    for (int n = 0; n + 2 < 6; ++n) CHECK(strips[n + 2].contains_rect(strips[n]));
}

TEST_CASE("H/J at a desk scale: J bounded by G, verdict consistent") {
    ScaleLadder lad;
    lad.base = 0.5;
    lad.n_max = 2;
    lad.lambda = 0.25;
    lad.law = RadiusLaw::pareto(3.0, 1.0);
    // S_{n+4} fits inside B(kappa 10^n b) from kappa ~ 5x10^4 / 10 on; use a
    // reach factor that honors the containment behind J <= G.
    lad.reach_factor = 6000.0;
    HJCheck hj = estimate_H_J(1, lad, 3000, RngStream(45, 0));
    CHECK(hj.verdict == Verdict::Consistent);
    CHECK(hj.j <= hj.g + 1e-12);
    CHECK(hj.j >= 0.0);

    // Fixed(1) with a gap beyond the radius: J exactly zero.
    ScaleLadder fx;
    fx.base = 8.0;
    fx.n_max = 2;
    fx.lambda = 0.02;
    fx.law = RadiusLaw::fixed(1.0);
    fx.reach_factor = 1000.0;
    HJCheck hj0 = estimate_H_J(1, fx, 500, RngStream(45, 1));
    CHECK(hj0.j == 0.0);
}

TEST_CASE("vacancy certificate with an empty head is tail-only and <= 1") {
    ScaleLadder lad;
    lad.base = 8.0;
    lad.n_max = 3;
    lad.lambda = 0.02;
    lad.law = RadiusLaw::fixed(1.0);
    lad.reach_factor = 1000.0;
    VacancyCertificate vc =
        vacancy_certificate(lad, 0, 1, 100, 4000, RngStream(47, 0));
    CHECK(vc.head.empty());
    CHECK(vc.lower_bound <= 1.0);
    CHECK(vc.union_upper >= 0.0);
    // The reach-factor gate guards the H containment.
    ScaleLadder close = lad;
    close.reach_factor = 100.0;
    CHECK_THROWS_AS(vacancy_certificate(close, 0, 1, 100, 1000, RngStream(47, 1)),
                    std::invalid_argument);
}

TEST_CASE("summability: golden subcritical config passes, near-critical fails") {
    ScaleLadder lad;
    lad.base = 8.0;
    lad.n_max = 5;
    lad.lambda = 0.02;
    lad.law = RadiusLaw::fixed(1.0);
    lad.reach_factor = 1000.0;
    SummabilityCertificate cert =
        summability_certificate(lad, 1, 60000, RngStream(46, 0));
    CHECK(cert.chain_applicable);
    CHECK(cert.pass);
    CHECK(cert.total <= 0.5);
    // All G terms vanish for Fixed(1) at these scales.
    for (const ScaleTerm& t : cert.scales) CHECK(t.g_value == 0.0);

    ScaleLadder hot = lad;
    hot.lambda = 0.36;  // near-critical
    SummabilityCertificate fail =
        summability_certificate(hot, 1, 2000, RngStream(46, 1));
    CHECK(!fail.pass);
}
