#include "boolsim/slice.hpp"

#include <cmath>
#include <stdexcept>

#include "boolsim/parallel.hpp"

namespace boolsim {

double unit_ball_volume(int k) {
    if (k < 0) throw std::invalid_argument("unit_ball_volume: negative dimension");
    return std::pow(M_PI, k / 2.0) / std::tgamma(k / 2.0 + 1.0);
}

double induced_intensity(double lambda, int d, const RadiusLaw& law) {
    if (d < 3) throw std::invalid_argument("induced_intensity: need d >= 3");
    if (!(lambda > 0.0))
        throw std::invalid_argument("induced_intensity: lambda must be > 0");
    double m = law.moment(d - 2);
    if (std::isinf(m)) return kInf;
    return lambda * unit_ball_volume(d - 2) * m;
}

namespace {

// Draw the hitting mark: rho size-biased (optionally given rho >= s),
// h | rho uniform on [-rho, rho], sigma = sqrt(rho^2 - h^2) > 0 a.s.
double sample_sigma(const RadiusLaw& law, double at_least, Philox& rng) {
    double rho = at_least > 0.0 ? law.sample_size_biased_given(at_least, rng)
                                : law.sample_size_biased(rng);
    double u = 2.0 * rng.u01() - 1.0;
    return rho * std::sqrt(std::fmax(0.0, 1.0 - u * u));
}

} // namespace

GrainSet sample_slice(double lambda, const RadiusLaw& law, const Rect& window,
                      RngStream stream) {
    double lam2 = induced_intensity(lambda, 3, law);
    if (std::isinf(lam2))
        throw std::invalid_argument("sample_slice: infinite induced intensity");
    // The expected number of slice discs meeting a window is finite iff
    // E[rho^3] < inf; below that the slice covers the plane.
    if (std::isinf(law.moment(3)))
        throw std::invalid_argument("sample_slice: needs E[rho^3] < infinity");
    GrainSet set{{}, Region(window), lam2, 2, stream};
    Philox rng = stream.engine();

    // Distance shells around the window (shell 0 is the window itself) with
    // the size-biased radius tail as envelope (sigma <= rho always).
    const double m1 = law.moment(1);
    auto remaining_bound = [&](double from) {
        // Expected discs reaching from beyond `from`:
        //   lam' (perim * int P~[rho>=s] ds + 2 pi int s P~[rho>=s] ds)
        // <= lam' (perim * E[rho^2 1{rho>=from}] + pi E[rho^3 1{rho>=from}])/E[rho].
        return lam2 *
               (window.perimeter() * law.partial_moment(2, from) +
                M_PI * law.partial_moment(3, from)) /
               m1;
    };
    double step0 = std::fmax(std::fmin(window.width(), window.height()) / 2.0, 1e-9);
    double lo = 0.0;
    for (;;) {
        double p_env = law.size_biased_tail_geq(lo);
        if (p_env <= 0.0) break;
        if (lo > 0.0 && remaining_bound(lo) < 1e-12) break;
        double hi = lo == 0.0 ? step0 : std::fmax(lo * 2.0, lo + step0);
        DistanceShell shell{window, lo, hi};
        std::int64_t n = rng.poisson(lam2 * p_env * shell.area());
        for (std::int64_t i = 0; i < n; ++i) {
            Vec2 p = shell.sample(rng);
            double sigma = sample_sigma(law, lo, rng);
            if (sigma >= window.dist(p)) set.grains.push_back({p, sigma});
        }
        lo = hi;
        if (law.max_radius() <= lo) break;
    }
    return set;
}

GrainSet sample_slice_bruteforce(double lambda, const RadiusLaw& law,
                                 const Rect& window, RngStream stream) {
    double rmax = law.max_radius();
    if (std::isinf(rmax))
        throw std::invalid_argument(
            "sample_slice_bruteforce: bounded radius laws only");
    GrainSet set{{}, Region(window), lambda, 2, stream};
    Philox rng = stream.engine();
    // 3D grains in (window + rmax margin) x [-rmax, rmax]; those crossing the
    // plane project to discs of radius sqrt(rho^2 - z^2).
    Rect grown({window.lo.x - rmax, window.lo.y - rmax},
               {window.hi.x + rmax, window.hi.y + rmax});
    double volume = grown.area() * 2.0 * rmax;
    std::int64_t n = rng.poisson(lambda * volume);
    for (std::int64_t i = 0; i < n; ++i) {
        Vec2 p{rng.uniform(grown.lo.x, grown.hi.x),
               rng.uniform(grown.lo.y, grown.hi.y)};
        double z = rng.uniform(-rmax, rmax);
        double rho = law.sample(rng);
        if (std::fabs(z) > rho) continue;
        double sigma = std::sqrt(rho * rho - z * z);
        if (sigma >= window.dist(p)) set.grains.push_back({p, sigma});
    }
    return set;
}

namespace {

struct SliceStats {
    MeanVar count;     // centers inside the window per replicate
    MeanVar sigma2;    // per-replicate mean of sigma^2 (centers inside)
    std::uint64_t origin_covered = 0;
    std::uint64_t reps = 0;

    void absorb(const GrainSet& gs, const Rect& window) {
        double n_in = 0.0;
        double s2 = 0.0, s2n = 0.0;
        bool covered = false;
        for (const Grain& g : gs.grains) {
            if (window.contains(g.center)) {
                n_in += 1.0;
                s2 += g.radius * g.radius;
                s2n += 1.0;
            }
            if (!covered && norm2(g.center) <= g.radius * g.radius) covered = true;
        }
        count.add(n_in);
        if (s2n > 0.0) sigma2.add(s2 / s2n);
        if (covered) ++origin_covered;
        ++reps;
    }
};

bool two_sample_consistent(double m1, double se1, double m2, double se2) {
    double se = std::sqrt(se1 * se1 + se2 * se2);
    return std::fabs(m1 - m2) <= kZ95 * std::fmax(se, 1e-300);
}

} // namespace

SliceReport slice_consistency(double lambda, const RadiusLaw& law,
                              const Rect& window, std::uint64_t n_reps,
                              RngStream stream, int threads) {
    if (n_reps == 0)
        throw std::invalid_argument("slice_consistency: n_reps must be >= 1");
    SliceReport rep;
    rep.lambda = lambda;
    rep.analytic_intensity = induced_intensity(lambda, 3, law);

    std::vector<GrainSet> direct(n_reps, GrainSet{{}, Region(window), 0.0, 2, {}});
    for_each_replicate(n_reps, threads, [&](std::uint64_t r, std::size_t) {
        direct[r] = sample_slice(lambda, law, window, stream.child("slice", r));
    });
    SliceStats ds;
    for (const GrainSet& gs : direct) ds.absorb(gs, window);
    direct.clear();
    rep.direct_intensity = ds.count.mean / window.area();
    rep.direct_intensity_se = ds.count.std_error() / window.area();
    rep.direct_sigma2 = ds.sigma2.mean;
    rep.direct_sigma2_se = ds.sigma2.std_error();
    rep.direct_origin_cover =
        BernoulliEstimate::from_counts(ds.origin_covered, ds.reps);

    rep.brute_available = !std::isinf(law.max_radius());
    if (rep.brute_available) {
        std::vector<GrainSet> brute(n_reps, GrainSet{{}, Region(window), 0.0, 2, {}});
        for_each_replicate(n_reps, threads, [&](std::uint64_t r, std::size_t) {
            brute[r] =
                sample_slice_bruteforce(lambda, law, window, stream.child("slab", r));
        });
        SliceStats bs;
        for (const GrainSet& gs : brute) bs.absorb(gs, window);
        rep.brute_intensity = bs.count.mean / window.area();
        rep.brute_intensity_se = bs.count.std_error() / window.area();
        rep.brute_sigma2 = bs.sigma2.mean;
        rep.brute_sigma2_se = bs.sigma2.std_error();
        rep.brute_origin_cover =
            BernoulliEstimate::from_counts(bs.origin_covered, bs.reps);
        rep.intensity_consistent =
            two_sample_consistent(rep.direct_intensity, rep.direct_intensity_se,
                                  rep.brute_intensity, rep.brute_intensity_se);
        rep.sigma2_consistent =
            two_sample_consistent(rep.direct_sigma2, rep.direct_sigma2_se,
                                  rep.brute_sigma2, rep.brute_sigma2_se);
        rep.origin_consistent =
            ci_overlap(rep.direct_origin_cover, rep.brute_origin_cover);
    } else {
        rep.intensity_consistent = two_sample_consistent(
            rep.direct_intensity, rep.direct_intensity_se, rep.analytic_intensity,
            0.0);
        rep.sigma2_consistent = true;
        rep.origin_consistent = true;
    }
    return rep;
}

} // namespace boolsim
