#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>

#include "boolsim/model.hpp"
#include "boolsim/reach.hpp"
#include "boolsim/stats.hpp"
#include "oracles.hpp"

using namespace boolsim;

TEST_CASE("zero-measure region yields an empty sample") {
    Region degenerate(Rect({0, 0}, {0, 5}));
    CHECK(sample_poisson_points(degenerate, 2.0, RngStream(1, 1)).empty());
    CHECK_THROWS_AS(sample_poisson_points(degenerate, 0.0, RngStream(1, 1)),
                    std::invalid_argument);
}

TEST_CASE("poisson counts have the right mean on the unit square") {
    Region sq(Rect({0, 0}, {1, 1}));
    MeanVar mv;
    RngStream base(7, 0);
    const int reps = 100000;
    for (int r = 0; r < reps; ++r)
        mv.add(static_cast<double>(
            sample_poisson_points(sq, 2.0, base.child("count", r)).size()));
    CHECK(std::fabs(mv.mean - 2.0) <= 3.0 * mv.std_error());
}

TEST_CASE("counts on disjoint squares are uncorrelated") {
    Region a(Rect({0, 0}, {1, 1}));
    Region b(Rect({5, 5}, {6, 6}));
    RngStream base(8, 0);
    const int reps = 20000;
    MeanVar ma, mb;
    std::vector<double> xs(reps), ys(reps);
    for (int r = 0; r < reps; ++r) {
        // One realization on the union region, counted per square: a single
        // Poisson process restricted to disjoint sets.
        Region both(Rect({0, 0}, {6, 6}));
        auto pts = sample_poisson_points(both, 2.0, base.child("cov", r));
        double ca = 0, cb = 0;
        for (const Vec2& p : pts) {
            if (a.contains(p)) ++ca;
            if (b.contains(p)) ++cb;
        }
        xs[r] = ca;
        ys[r] = cb;
        ma.add(ca);
        mb.add(cb);
    }
    double cov = 0.0;
    for (int r = 0; r < reps; ++r) cov += (xs[r] - ma.mean) * (ys[r] - mb.mean);
    cov /= reps - 1;
    // SE of the sample covariance of independent Poissons ~ sqrt(v1*v2/n).
    double se = std::sqrt(ma.variance() * mb.variance() / reps);
    CHECK(std::fabs(cov) <= 4.0 * se);
}

TEST_CASE("boolean samples: radii follow the law, centers stay inside") {
    Region sq(Rect({-2, -2}, {2, 2}));
    GrainSet gs = sample_boolean(sq, 10.0 / 16.0, RadiusLaw::fixed(1.0),
                                 RngStream(9, 1));
    for (const Grain& g : gs.grains) {
        CHECK(g.radius == 1.0);
        CHECK(sq.contains(g.center));
    }

    MeanVar mv;
    RngStream base(10, 0);
    for (int r = 0; r < 300; ++r) {
        GrainSet p = sample_boolean(sq, 3.0, RadiusLaw::pareto(3.0, 1.0),
                                    base.child("pareto", r));
        for (const Grain& g : p.grains) mv.add(g.radius);
    }
    CHECK(std::fabs(mv.mean - 1.5) <= 4.0 * mv.std_error());

    MeanVar zero_frac;
    for (int r = 0; r < 300; ++r) {
        GrainSet z = sample_boolean(
            sq, 3.0, RadiusLaw::zero_mixture(0.5, RadiusLaw::fixed(1.0)),
            base.child("zm", r));
        double zeros = 0;
        for (const Grain& g : z.grains) zeros += g.radius == 0.0 ? 1.0 : 0.0;
        if (!z.grains.empty())
            zero_frac.add(zeros / static_cast<double>(z.grains.size()));
    }
    CHECK(std::fabs(zero_frac.mean - 0.5) <= 4.0 * zero_frac.std_error());
}

TEST_CASE("reproducibility: identical stream, identical grains") {
    Region sq(Rect({0, 0}, {4, 4}));
    GrainSet a = sample_boolean(sq, 1.0, RadiusLaw::exponential(0.5), RngStream(3, 9));
    GrainSet b = sample_boolean(sq, 1.0, RadiusLaw::exponential(0.5), RngStream(3, 9));
    REQUIRE(a.grains.size() == b.grains.size());
    for (std::size_t i = 0; i < a.grains.size(); ++i) {
        CHECK(a.grains[i].center.x == b.grains[i].center.x);
        CHECK(a.grains[i].center.y == b.grains[i].center.y);
        CHECK(a.grains[i].radius == b.grains[i].radius);
    }
}

TEST_CASE("superposition: lambda1 plus independent difference equals lambda2") {
    Region sq(Rect({0, 0}, {3, 3}));
    RngStream base(11, 0);
    const int reps = 10000;
    MeanVar split, direct;
    for (int r = 0; r < reps; ++r) {
        auto p1 = sample_poisson_points(sq, 0.6, base.child("s1", r));
        auto p2 = sample_poisson_points(sq, 0.9, base.child("s2", r));
        split.add(static_cast<double>(p1.size() + p2.size()));
        direct.add(static_cast<double>(
            sample_poisson_points(sq, 1.5, base.child("d", r)).size()));
    }
    double z = (split.mean - direct.mean) /
               std::sqrt(split.std_error() * split.std_error() +
                         direct.std_error() * direct.std_error());
    CHECK(std::fabs(z) < 4.0);
    CHECK(std::fabs(split.variance() / direct.variance() - 1.0) < 0.1);
}

TEST_CASE("reaching sampler: impossibility and always-reach cases") {
    Rect target = Rect::from_center({0, 0}, 4.0, 1.0);
    // Fixed(1) grains farther than 1 never reach.
    Region far_ring = Region::difference(Region(Disc{{0, 0}, 50.0}),
                                         neighborhood(target, 2.0));
    for (int r = 0; r < 50; ++r) {
        GrainSet gs = sample_reaching_grains(far_ring, target, 0.5,
                                             RadiusLaw::fixed(1.0),
                                             RngStream(12, 100 + r), 2.0);
        CHECK(gs.grains.empty());
    }
    // Domain overlapping the target: grains inside it always reach.
    Region overlap(Rect({-1, -0.4}, {1, 0.4}));
    GrainSet gs = sample_reaching_grains(overlap, target, 10.0,
                                         RadiusLaw::zero_mixture(
                                             0.5, RadiusLaw::fixed(1.0)),
                                         RngStream(12, 7));
    MeanVar count;
    for (int r = 0; r < 2000; ++r) {
        GrainSet s = sample_reaching_grains(overlap, target, 10.0,
                                            RadiusLaw::zero_mixture(
                                                0.5, RadiusLaw::fixed(1.0)),
                                            RngStream(12, 0).child("c", r));
        count.add(static_cast<double>(s.grains.size()));
    }
    // Every center in the overlap has distance zero, so the thinning keeps
    // everything: mean count = lambda * area.
    CHECK(std::fabs(count.mean - 10.0 * 2.0 * 0.8) <= 4.0 * count.std_error());
    for (const Grain& g : gs.grains) CHECK(target.dist(g.center) <= g.radius);
}

TEST_CASE("reaching sampler count matches the quadrature intensity") {
    Rect target = Rect::from_center({0, 0}, 4.0, 1.0);
    Region domain = Region::difference(Region(Disc{{0, 0}, 40.0}),
                                       neighborhood(target, 1.0));
    RadiusLaw law = RadiusLaw::pareto(3.0, 1.0);
    double expect = expected_reaching_count(domain, target, 0.1, law);
    MeanVar count;
    RngStream base(13, 0);
    const int reps = 4000;
    for (int r = 0; r < reps; ++r) {
        GrainSet s =
            sample_reaching_grains(domain, target, 0.1, law, base.child(r), 1.0);
        count.add(static_cast<double>(s.grains.size()));
        for (const Grain& g : s.grains) {
            CHECK(domain.contains(g.center));
            CHECK(target.dist(g.center) <= g.radius);
        }
    }
    CHECK(std::fabs(count.mean - expect) <= 4.0 * count.std_error());
}

TEST_CASE("reaching sampler equals filtering a full sample (chi-square)") {
    Rect target = Rect::from_center({0, 0}, 2.0, 1.0);
    Region domain(Rect({-4, -3}, {4, 3}));
    RadiusLaw law = RadiusLaw::uniform(0.2, 1.4);
    const double lambda = 0.5;
    RngStream base(14, 0);
    const int reps = 10000;
    std::map<int, std::array<int, 2>> counts;
    for (int r = 0; r < reps; ++r) {
        GrainSet direct =
            sample_reaching_grains(domain, target, lambda, law, base.child("a", r));
        GrainSet full = sample_boolean(domain, lambda, law, base.child("b", r));
        int filtered = 0;
        for (const Grain& g : full.grains)
            if (target.dist(g.center) <= g.radius) ++filtered;
        counts[std::min<int>(static_cast<int>(direct.grains.size()), 12)][0] += 1;
        counts[std::min(filtered, 12)][1] += 1;
    }
    double chi2 = 0.0;
    int dof = -1;
    for (const auto& [k, c] : counts) {
        double total = c[0] + c[1];
        if (total < 10) continue;
        double e = total / 2.0;
        chi2 += (c[0] - e) * (c[0] - e) / e + (c[1] - e) * (c[1] - e) / e;
        ++dof;
    }
    REQUIRE(dof >= 1);
    CHECK(chi2_sf(chi2, dof) > 1e-4);
}

TEST_CASE("grain scaling") {
    GrainSet gs{{{{0, 0}, 1.0}, {{1, 1}, 0.0}, {{2, 2}, 2.5}},
                Region(Rect({0, 0}, {3, 3})), 1.0, 2, RngStream(1, 1)};
    GrainSet up = grain_scaling(gs, 2.0);
    CHECK(up.grains[0].radius == 2.0);
    CHECK(up.grains[1].radius == 0.0);  // zero-radius grains preserved
    CHECK(up.grains[2].radius == 5.0);
    CHECK(up.grains[2].center.x == 2.0);
    GrainSet same = grain_scaling(gs, 1.0);
    CHECK(same.grains[0].radius == 1.0);
    CHECK_THROWS_AS(grain_scaling(gs, 0.0), std::invalid_argument);
}
