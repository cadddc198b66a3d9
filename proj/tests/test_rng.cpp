#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "boolsim/rng.hpp"
#include "boolsim/stats.hpp"

using namespace boolsim;

TEST_CASE("identical stream reproduces bit-for-bit") {
    RngStream s(42, 7);
    Philox a = s.engine();
    Philox b = s.engine();
    for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("distinct stream ids diverge") {
    Philox a = RngStream(42, 1).engine();
    Philox b = RngStream(42, 2).engine();
    int same = 0;
    for (int i = 0; i < 256; ++i)
        if (a.next_u64() == b.next_u64()) ++same;
    CHECK(same == 0);
}

TEST_CASE("child streams are distinct and deterministic") {
    RngStream base(123, 0);
    std::set<std::uint64_t> ids;
    for (std::uint64_t i = 0; i < 10000; ++i) ids.insert(base.child("F", i).stream_id);
    CHECK(ids.size() == 10000);
    CHECK(base.child("F", 3).stream_id == base.child("F", 3).stream_id);
    CHECK(base.child("F", 3).stream_id != base.child("G", 3).stream_id);
}

TEST_CASE("uniform moments") {
    Philox rng = RngStream(7, 0).engine();
    MeanVar mv;
    for (int i = 0; i < 200000; ++i) mv.add(rng.u01());
    CHECK(std::fabs(mv.mean - 0.5) < 5.0 * mv.std_error());
    CHECK(std::fabs(mv.variance() - 1.0 / 12.0) < 1e-3);
}

TEST_CASE("poisson mean and variance across regimes") {
    for (double mu : {0.5, 3.0, 29.5, 123.4, 5000.0, 230400.0}) {
        Philox rng = RngStream(11, static_cast<std::uint64_t>(mu * 100)).engine();
        MeanVar mv;
        int n = mu > 1e5 ? 50000 : 200000;
        for (int i = 0; i < n; ++i) mv.add(static_cast<double>(rng.poisson(mu)));
        CHECK(std::fabs(mv.mean - mu) < 5.0 * mv.std_error());
        CHECK(std::fabs(mv.variance() / mu - 1.0) < 0.05);
    }
}

TEST_CASE("exponential mean") {
    Philox rng = RngStream(13, 0).engine();
    MeanVar mv;
    for (int i = 0; i < 200000; ++i) mv.add(rng.exponential(2.5));
    CHECK(std::fabs(mv.mean - 2.5) < 5.0 * mv.std_error());
}

TEST_CASE("wilson interval basics") {
    BernoulliEstimate e = BernoulliEstimate::from_counts(50, 100);
    CHECK(e.point == 0.5);
    CHECK(e.lo < 0.5);
    CHECK(e.hi > 0.5);
    CHECK(e.lo > 0.38);
    CHECK(e.hi < 0.62);
    BernoulliEstimate zero = BernoulliEstimate::from_counts(0, 10000);
    CHECK(zero.lo == 0.0);
    CHECK(zero.hi < 5e-4);
    CHECK_THROWS_AS(BernoulliEstimate::from_counts(0, 0), std::invalid_argument);
}

TEST_CASE("chi-square survival sanity") {
    CHECK(chi2_sf(0.0, 5.0) == doctest::Approx(1.0));
    // Median of chi2(1) is about 0.455.
    CHECK(chi2_sf(0.455, 1.0) == doctest::Approx(0.5).epsilon(0.01));
    CHECK(chi2_sf(100.0, 5.0) < 1e-15);
}
