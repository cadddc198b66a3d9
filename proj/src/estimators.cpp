#include "boolsim/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "boolsim/model.hpp"
#include "boolsim/parallel.hpp"
#include "boolsim/reach.hpp"

namespace boolsim {

namespace {

BernoulliEstimate probe_crossing(double lambda, double L, const RadiusLaw& law,
                                 Phase phase, double guard, std::uint64_t n_reps,
                                 RngStream stream, int threads) {
    const Rect square = Rect::from_center({0.0, 0.0}, L, L);
    const Region domain = neighborhood(square, guard);
    std::vector<char> hit(n_reps, 0);
    std::vector<CrossingSolver> solvers(
        static_cast<std::size_t>(effective_threads(threads)));
    for_each_replicate(n_reps, threads, [&](std::uint64_t rep, std::size_t w) {
        GrainSet gs = sample_reaching_grains(domain, square, lambda, law,
                                             stream.child("probe", rep));
        // Left-right crossing; the vacant version is its rectangle dual
        // evaluated on the same realization.
        bool occ_lr = solvers[w].occupied_axis(square, Axis::X, gs.grains);
        if (phase == Phase::Occupied) {
            hit[rep] = occ_lr ? 1 : 0;
        } else {
            bool occ_tb = solvers[w].occupied_axis(square, Axis::Y, gs.grains);
            hit[rep] = occ_tb ? 0 : 1;  // vacant left-right
        }
    });
    std::uint64_t successes = 0;
    for (char h : hit) successes += h;
    return BernoulliEstimate::from_counts(successes, n_reps);
}

double sweep_guard(double L, double lambda_max, const RadiusLaw& law) {
    const Rect square = Rect::from_center({0.0, 0.0}, L, L);
    return find_guard_radius(square, lambda_max, law, 1e-4);
}

} // namespace

std::vector<SweepRow> crossing_prob_sweep(std::span<const double> lambda_grid,
                                          double L, const RadiusLaw& law,
                                          Phase phase, std::uint64_t n_reps,
                                          RngStream stream, int threads) {
    if (lambda_grid.empty())
        throw std::invalid_argument("crossing_prob_sweep: empty grid");
    if (!std::is_sorted(lambda_grid.begin(), lambda_grid.end()))
        throw std::invalid_argument("crossing_prob_sweep: grid must be sorted");
    double guard = sweep_guard(L, lambda_grid.back(), law);
    std::vector<SweepRow> rows;
    for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
        rows.push_back({lambda_grid[i],
                        probe_crossing(lambda_grid[i], L, law, phase, guard, n_reps,
                                       stream.child("sweep", i), threads)});
    }
    return rows;
}

ThresholdEstimate estimate_threshold(const RadiusLaw& law, Phase phase,
                                     std::span<const double> scales,
                                     double p_star, double bracket_tol,
                                     std::uint64_t reps_per_probe,
                                     std::uint64_t budget, RngStream stream,
                                     int threads) {
    if (scales.empty()) throw std::invalid_argument("estimate_threshold: no scales");
    if (!(p_star > 0.0 && p_star < 1.0))
        throw std::invalid_argument("estimate_threshold: p_star must be in (0,1)");
    if (std::isinf(law.moment(2)))
        throw std::invalid_argument(
            "estimate_threshold: E[rho^2] infinite, thresholds are trivially 0");
    ThresholdEstimate est;
    est.phase = phase;
    est.p_star = p_star;
    est.bracket_tol = bracket_tol;
    est.reps_per_probe = reps_per_probe;
    est.budget = budget;

    // Occupied crossing probabilities increase with lambda; vacant decrease.
    const bool increasing = phase == Phase::Occupied;
    // Unit-order starting point: occupied area fraction near one.
    double lambda0 = 1.0 / (M_PI * law.moment(2));

    std::uint64_t used = 0;
    int probe_id = 0;
    for (double L : scales) {
        ScaleBracket bracket;
        bracket.scale = L;
        double guard = sweep_guard(L, 16.0 * lambda0, law);
        auto probe = [&](double lambda, std::uint64_t reps) {
            used += reps;
            BernoulliEstimate e =
                probe_crossing(lambda, L, law, phase, guard, reps,
                               stream.child("threshold", probe_id++), threads);
            bracket.trace.push_back({lambda, e});
            return e;
        };
        auto above = [&](const BernoulliEstimate& e) {
            return increasing ? e.point >= p_star : e.point < p_star;
        };

        const std::uint64_t pilot = std::max<std::uint64_t>(reps_per_probe / 10, 200);
        double lo = lambda0, hi = lambda0;
        // Expand downward until below target, upward until above.
        int guard_iters = 0;
        while (!above(probe(hi, pilot))) {
            hi *= 2.0;
            if (++guard_iters > 40)
                throw std::runtime_error("estimate_threshold: no upper bracket found");
        }
        guard_iters = 0;
        while (above(probe(lo, pilot))) {
            lo /= 2.0;
            if (++guard_iters > 40)
                throw std::runtime_error("estimate_threshold: no lower bracket found");
        }
        while (hi - lo > bracket_tol) {
            if (used + reps_per_probe > budget) {
                est.budget_exhausted = true;
                break;
            }
            double mid = 0.5 * (lo + hi);
            (above(probe(mid, reps_per_probe)) ? hi : lo) = mid;
        }
        bracket.lo = lo;
        bracket.hi = hi;
        est.per_scale.push_back(std::move(bracket));
        if (est.budget_exhausted) break;
    }
    est.replicates_used = used;
    return est;
}

namespace {

struct GrowthResult {
    double diameter = 0.0;
    bool censored = false;
};

// Component of I_0 grown through doubling windows; a realization stays
// consistent across growth because disjoint regions carry independent
// Poisson samples.
GrowthResult grow_component_diameter(double lambda, const RadiusLaw& law,
                                     double guard, double window_cap,
                                     RngStream rep_stream) {
    const Segment seg{{0.0, 0.0}, {1.0, 0.0}};
    const Vec2 center{0.5, 0.0};
    std::vector<Grain> grains;
    double radius = std::fmax(4.0, 4.0 * guard);
    double prev_radius = 0.0;
    int stage = 0;
    for (;;) {
        Rect box = Rect::from_center(center, 2.0 * radius, 2.0 * radius);
        Region fresh =
            prev_radius == 0.0
                ? Region(box)
                : Region::difference(
                      Region(box),
                      Region(Rect::from_center(center, 2.0 * prev_radius,
                                               2.0 * prev_radius)));
        GrainSet add =
            sample_boolean(fresh, lambda, law, rep_stream.child("grow", stage));
        grains.insert(grains.end(), add.grains.begin(), add.grains.end());

        ComponentStructure cs = build_components(grains);
        std::vector<bool> in(static_cast<std::size_t>(cs.n_components), false);
        for (std::size_t i = 0; i < grains.size(); ++i) {
            if (cs.component_of[i] >= 0 &&
                disc_meets_segment(disc_of(grains[i]), seg.a, seg.b))
                in[cs.component_of[i]] = true;
        }
        bool touches = false;
        for (std::size_t i = 0; i < grains.size() && !touches; ++i) {
            if (cs.component_of[i] < 0 || !in[cs.component_of[i]]) continue;
            // Boundary guard: an omitted grain outside the box could attach
            // to any member disc lying within `guard` of the boundary.
            double margin = radius - std::fmax(std::fabs(grains[i].center.x - center.x),
                                               std::fabs(grains[i].center.y - center.y));
            if (margin <= grains[i].radius + guard) touches = true;
        }
        if (!touches) {
            return {component_diameter(grains, seg), false};
        }
        if (2.0 * radius >= window_cap) {
            return {component_diameter(grains, seg), true};
        }
        prev_radius = radius;
        radius *= 2.0;
        ++stage;
    }
}

} // namespace

DiameterEstimate estimate_lambda_D(double lambda, const RadiusLaw& law,
                                   std::uint64_t n_reps, double window_cap,
                                   RngStream stream, int threads) {
    if (n_reps == 0)
        throw std::invalid_argument("estimate_lambda_D: n_reps must be >= 1");
    // Boundary guard solved for the largest window a replicate can reach, so
    // the omitted-grain bound holds at every growth stage.
    double guard = find_guard_radius(
        Rect::from_center({0.5, 0.0}, window_cap, window_cap), lambda, law, 1e-4);
    std::vector<double> d(n_reps, 0.0);
    std::vector<char> censored(n_reps, 0);
    for_each_replicate(n_reps, threads, [&](std::uint64_t rep, std::size_t) {
        GrowthResult g = grow_component_diameter(lambda, law, guard, window_cap,
                                                 stream.child("diam", rep));
        d[rep] = g.diameter;
        censored[rep] = g.censored ? 1 : 0;
    });
    MeanVar mv;
    std::uint64_t n_censored = 0;
    for (std::uint64_t r = 0; r < n_reps; ++r) {
        mv.add(d[r]);
        n_censored += censored[r];
    }
    DiameterEstimate est;
    est.lambda = lambda;
    est.n_reps = n_reps;
    est.mean_diameter = mv.mean;
    est.std_error = mv.std_error();
    est.censored_fraction =
        static_cast<double>(n_censored) / static_cast<double>(n_reps);
    est.unreliable = est.censored_fraction > 0.20;
    est.window_cap = window_cap;
    return est;
}

CensorBracket censoring_bracket(const RadiusLaw& law, double target_fraction,
                                double window_cap, std::uint64_t n_reps,
                                double bracket_tol, RngStream stream,
                                int threads) {
    if (!(target_fraction > 0.0 && target_fraction < 1.0))
        throw std::invalid_argument("censoring_bracket: target must be in (0,1)");
    CensorBracket cb;
    cb.target_fraction = target_fraction;
    int probe_id = 0;
    auto frac = [&](double lambda) {
        DiameterEstimate e =
            estimate_lambda_D(lambda, law, n_reps, window_cap,
                              stream.child("censor", probe_id++), threads);
        cb.trace.push_back({lambda, e.censored_fraction});
        return e.censored_fraction;
    };
    double lo = 1.0 / (M_PI * law.moment(2));
    double hi = lo;
    int guard = 0;
    while (frac(hi) < target_fraction) {
        hi *= 2.0;
        if (++guard > 30)
            throw std::runtime_error("censoring_bracket: no upper bracket");
    }
    guard = 0;
    while (frac(lo) >= target_fraction) {
        lo /= 2.0;
        if (++guard > 30)
            throw std::runtime_error("censoring_bracket: no lower bracket");
    }
    while (hi - lo > bracket_tol) {
        double mid = 0.5 * (lo + hi);
        (frac(mid) >= target_fraction ? hi : lo) = mid;
    }
    cb.lo = lo;
    cb.hi = hi;
    return cb;
}

EEventReport estimate_E_event(double lambda, const RadiusLaw& law, int k_max,
                              std::uint64_t n_reps, RngStream stream,
                              int threads) {
    if (k_max < 2) throw std::invalid_argument("estimate_E_event: k_max must be >= 2");
    if (n_reps == 0)
        throw std::invalid_argument("estimate_E_event: n_reps must be >= 1");
    const Segment i01{{0.0, 0.0}, {2.0, 0.0}};
    // Box around I_0..I_{k_max} wide enough that any component violating no
    // constraint stays clear of the boundary guard; the guard is re-solved
    // against the box it protects.
    double guard =
        find_guard_radius(Rect({0.0, -0.5}, {1.0, 0.5}), lambda, law, 1e-4);
    Rect box({0, 0}, {1, 1});
    for (int pass = 0; pass < 2; ++pass) {
        double margin = static_cast<double>(k_max) / 2.0 + guard + 1.0;
        box = Rect({-margin, -margin},
                   {static_cast<double>(k_max) + 1.0 + margin, margin});
        guard = std::fmax(guard, find_guard_radius(box, lambda, law, 1e-4));
    }

    std::vector<char> event(n_reps, 0);
    std::vector<char> empty01(n_reps, 0);
    for_each_replicate(n_reps, threads, [&](std::uint64_t rep, std::size_t) {
        GrainSet gs =
            sample_boolean(Region(box), lambda, law, stream.child("eevent", rep));
        bool touches_i01 = false;
        for (const Grain& g : gs.grains) {
            if (disc_meets_segment(disc_of(g), i01.a, i01.b)) {
                touches_i01 = true;
                break;
            }
        }
        empty01[rep] = touches_i01 ? 0 : 1;
        if (touches_i01) return;

        ComponentStructure cs = build_components(gs.grains);
        bool ok = true;
        for (int k = 2; k <= k_max && ok; ++k) {
            Segment ik{{static_cast<double>(k), 0.0},
                       {static_cast<double>(k) + 1.0, 0.0}};
            std::vector<bool> in(static_cast<std::size_t>(cs.n_components), false);
            for (std::size_t i = 0; i < gs.grains.size(); ++i) {
                if (cs.component_of[i] >= 0 &&
                    disc_meets_segment(disc_of(gs.grains[i]), ik.a, ik.b))
                    in[cs.component_of[i]] = true;
            }
            double limit = static_cast<double>(k) / 2.0;
            // Pairwise diameter of I_k with the member discs; early exit on
            // exceeding the limit.
            double dia = 1.0;  // the interval itself
            bool boundary_risk = false;
            std::vector<int> members;
            for (std::size_t i = 0; i < gs.grains.size(); ++i) {
                if (cs.component_of[i] >= 0 && in[cs.component_of[i]])
                    members.push_back(static_cast<int>(i));
            }
            for (std::size_t a = 0; a < members.size() && dia <= limit; ++a) {
                const Grain& ga = gs.grains[members[a]];
                dia = std::fmax(dia, 2.0 * ga.radius);
                dia = std::fmax(dia, norm(ga.center - ik.a) + ga.radius);
                dia = std::fmax(dia, norm(ga.center - ik.b) + ga.radius);
                double m =
                    std::fmin(std::fmin(ga.center.x - box.lo.x, box.hi.x - ga.center.x),
                              std::fmin(ga.center.y - box.lo.y, box.hi.y - ga.center.y));
                if (m <= ga.radius + guard) boundary_risk = true;
                for (std::size_t b = a + 1; b < members.size() && dia <= limit; ++b) {
                    const Grain& gb = gs.grains[members[b]];
                    dia = std::fmax(dia,
                                    norm(ga.center - gb.center) + ga.radius + gb.radius);
                }
            }
            // Boundary contact leaves the true diameter unknown: count the
            // constraint as failed so the estimate stays a lower bound.
            if (dia > limit || boundary_risk) ok = false;
        }
        event[rep] = ok ? 1 : 0;
    });
    std::uint64_t hits = 0, empties = 0;
    for (std::uint64_t r = 0; r < n_reps; ++r) {
        hits += event[r];
        empties += empty01[r];
    }
    EEventReport rep;
    rep.lambda = lambda;
    rep.k_max = k_max;
    rep.n_reps = n_reps;
    rep.truncated = BernoulliEstimate::from_counts(hits, n_reps);
    rep.empty_i01 = BernoulliEstimate::from_counts(empties, n_reps);

    // Stationarity: P[D(W_k) > k/2] = P[D(W_0) > k/2]; bound the omitted
    // constraints by the empirical diameter survival with Wilson uppers.
    std::uint64_t tail_reps = std::max<std::uint64_t>(n_reps / 4, 500);
    std::vector<double> d0(tail_reps, 0.0);
    double cap = 4.0 * (static_cast<double>(k_max) + guard + 4.0);
    for_each_replicate(tail_reps, threads, [&](std::uint64_t r, std::size_t) {
        GrowthResult g = grow_component_diameter(lambda, law, guard, cap,
                                                 stream.child("eev-tail", r));
        d0[r] = g.diameter;
    });
    double max_d = 0.0;
    for (double v : d0) max_d = std::fmax(max_d, v);
    double tail = 0.0;
    for (int k = k_max + 1; static_cast<double>(k) / 2.0 <= max_d; ++k) {
        std::uint64_t cnt = 0;
        for (double v : d0)
            if (v > static_cast<double>(k) / 2.0) ++cnt;
        tail += BernoulliEstimate::from_counts(cnt, tail_reps).hi;
    }
    rep.tail_bound = tail;
    rep.lower_bound = rep.truncated.lo - tail;
    rep.informative = rep.lower_bound > 0.0;
    return rep;
}

} // namespace boolsim
