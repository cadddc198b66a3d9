#include "boolsim/multiscale.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "boolsim/model.hpp"
#include "boolsim/parallel.hpp"
#include "boolsim/percolation.hpp"
#include "boolsim/reach.hpp"

namespace boolsim {

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Consistent: return "consistent";
        case Verdict::Violated: return "violated";
        case Verdict::Inconclusive: return "inconclusive";
        case Verdict::NotApplicable: return "not-applicable";
    }
    return "unknown";
}

BernoulliEstimate estimate_F(double alpha, double lambda, const RadiusLaw& law,
                             std::uint64_t n_reps, RngStream stream,
                             int threads) {
    if (!(alpha > 0.0 && lambda > 0.0))
        throw std::invalid_argument("estimate_F: alpha and lambda must be > 0");
    if (n_reps == 0) throw std::invalid_argument("estimate_F: n_reps must be >= 1");
    const Rect strip = make_strip(alpha, Orientation::Horizontal);
    const Region domain = neighborhood(strip, alpha);
    const Axis axis = traverse_axis(strip, Way::Short);

    std::vector<char> hit(n_reps, 0);
    int nthreads = effective_threads(threads);
    std::vector<CrossingSolver> solvers(static_cast<std::size_t>(nthreads));
    for_each_replicate(n_reps, threads, [&](std::uint64_t rep, std::size_t w) {
        GrainSet gs = sample_boolean(domain, lambda, law, stream.child("F", rep));
        hit[rep] = solvers[w].occupied_axis(strip, axis, gs.grains) ? 1 : 0;
    });
    std::uint64_t successes = 0;
    for (char h : hit) successes += h;
    return BernoulliEstimate::from_counts(successes, n_reps);
}

double exact_G(double alpha, double lambda, const RadiusLaw& law, double kappa) {
    if (!(alpha > 0.0 && lambda > 0.0))
        throw std::invalid_argument("exact_G: alpha and lambda must be > 0");
    if (!(kappa >= 10.0)) throw std::invalid_argument("exact_G: kappa must be >= 10");
    const Rect strip = make_strip(alpha, Orientation::Horizontal);
    Region domain = Region::difference(Region(Disc{{0.0, 0.0}, kappa * alpha}),
                                       neighborhood(strip, alpha));
    double big_lambda = expected_reaching_count(domain, strip, lambda, law);
    return -std::expm1(-big_lambda);
}

double markov_bound_G(double alpha, double lambda, const RadiusLaw& law,
                      double kappa) {
    return lambda * M_PI * (kappa * alpha) * (kappa * alpha) * law.tail(alpha);
}

BernoulliEstimate estimate_G_mc(double alpha, double lambda, const RadiusLaw& law,
                                double kappa, std::uint64_t n_reps,
                                RngStream stream, int threads) {
    if (n_reps == 0) throw std::invalid_argument("estimate_G_mc: n_reps must be >= 1");
    const Rect strip = make_strip(alpha, Orientation::Horizontal);
    const Region domain = Region::difference(
        Region(Disc{{0.0, 0.0}, kappa * alpha}), neighborhood(strip, alpha));
    std::vector<char> hit(n_reps, 0);
    for_each_replicate(n_reps, threads, [&](std::uint64_t rep, std::size_t) {
        GrainSet gs = sample_reaching_grains(domain, strip, lambda, law,
                                             stream.child("Gmc", rep), alpha);
        hit[rep] = gs.grains.empty() ? 0 : 1;
    });
    std::uint64_t successes = 0;
    for (char h : hit) successes += h;
    return BernoulliEstimate::from_counts(successes, n_reps);
}

RecursionCheck check_recursion(double alpha, double lambda, const RadiusLaw& law,
                               double kappa, std::uint64_t n_reps,
                               RngStream stream, int threads) {
    RecursionCheck rc;
    rc.alpha = alpha;
    rc.lambda = lambda;
    rc.kappa = kappa;
    rc.n_reps = n_reps;
    rc.lhs = estimate_F(10.0 * alpha, lambda, law, n_reps,
                        stream.child("recursion-lhs"), threads);
    rc.f_small = estimate_F(alpha, lambda, law, n_reps,
                            stream.child("recursion-rhs"), threads);
    rc.g_small = exact_G(alpha, lambda, law, kappa);
    rc.rhs_hi = kC1 * (rc.f_small.hi * rc.f_small.hi + rc.g_small);
    rc.slack = rc.rhs_hi - rc.lhs.lo;
    rc.verdict = rc.lhs.lo <= rc.rhs_hi ? Verdict::Consistent : Verdict::Violated;
    return rc;
}

BoundChain bound_chain(double f0, std::span<const double> g_seq, double c2) {
    BoundChain bc;
    bc.sum_g = 0.0;
    for (double g : g_seq) {
        if (g < 0.0) {
            bc.reason = "negative g term";
            return bc;
        }
        bc.sum_g += g;
    }
    if (!(f0 >= 0.0) || f0 > 1.0 / c2) {
        bc.reason = "f0 exceeds 1/C2";
        return bc;
    }
    if (bc.sum_g > 1.0 / (c2 * c2)) {
        bc.reason = "sum of g exceeds 1/C2^2";
        return bc;
    }
    bc.applicable = true;
    double f = f0;
    for (double g : g_seq) {
        f = f / c2 + g;
        bc.f_bounds.push_back(f);
    }
    bc.sum_f = f0 / (c2 - 1.0) + bc.sum_g * c2 / (c2 - 1.0);
    bc.coarse_total = 2.0 / (c2 * c2) + 3.0 * bc.sum_g;
    return bc;
}

namespace {

// Sum of Markov G bounds over scales n = from..infinity; +inf when the
// series fails to contract (infinite second moment).
double markov_tail_sum(const ScaleLadder& lad, int from) {
    double acc = 0.0;
    double prev = kInf;
    for (int n = from; n < from + 200000; ++n) {
        double term = markov_bound_G(lad.scale(n), lad.lambda, lad.law,
                                     lad.reach_factor);
        if (term == 0.0) return acc;
        acc += term;
        if (term < 1e-18 * std::fmax(acc, 1e-300)) return acc;
        if (term >= prev) return kInf;  // not decaying
        prev = term;
    }
    return kInf;
}

void validate_ladder(const ScaleLadder& lad) {
    if (!(lad.base > 0.0)) throw std::invalid_argument("ladder: base must be > 0");
    if (lad.n_max < 1) throw std::invalid_argument("ladder: n_max must be >= 1");
    if (!(lad.lambda > 0.0)) throw std::invalid_argument("ladder: lambda must be > 0");
    if (!(lad.reach_factor >= 10.0))
        throw std::invalid_argument("ladder: reach factor must be >= 10");
}

} // namespace

SummabilityCertificate summability_certificate(const ScaleLadder& ladder,
                                               int n_empirical,
                                               std::uint64_t n_reps,
                                               RngStream stream, int threads) {
    validate_ladder(ladder);
    if (n_empirical < 1 || n_empirical > ladder.n_max)
        throw std::invalid_argument(
            "summability: need 1 <= n_empirical <= n_max");
    SummabilityCertificate cert;
    cert.base = ladder.base;
    cert.lambda = ladder.lambda;
    cert.kappa = ladder.reach_factor;
    cert.law = ladder.law.to_string();
    cert.n_empirical = n_empirical;
    cert.n_max = ladder.n_max;
    cert.n_reps = n_reps;

    std::vector<double> g_exact(static_cast<std::size_t>(ladder.n_max) + 1, 0.0);
    for (int n = 0; n <= ladder.n_max; ++n)
        g_exact[n] = exact_G(ladder.scale(n), ladder.lambda, ladder.law,
                             ladder.reach_factor);

    // Empirical head.
    for (int n = 1; n <= n_empirical; ++n) {
        BernoulliEstimate f = estimate_F(ladder.scale(n), ladder.lambda, ladder.law,
                                         n_reps, stream.child("summability-F", n),
                                         threads);
        ScaleTerm t;
        t.n = n;
        t.alpha = ladder.scale(n);
        t.f_lo = f.lo; t.f_pt = f.point; t.f_hi = f.hi;
        t.f_empirical = true;
        t.f_trials = f.trials;
        t.g_value = g_exact[n];
        t.g_exact = true;
        t.term = f.hi + t.g_value;
        cert.scales.push_back(t);
    }

    // Chain handoff: f(alpha) := C1 * P[F(alpha)], bounded by C1 * F_hi.
    cert.chain_f0 = kC1 * cert.scales.back().f_hi;

    // g_n = C1^2 * P[G(10^{n-1} b)]: exact values while available, Markov
    // beyond the ladder, summed to infinity for the applicability gate.
    double markov_tail_from_nmax = markov_tail_sum(ladder, ladder.n_max);
    cert.chain_sum_g = 0.0;
    std::vector<double> g_seq;  // chain terms for n = n_empirical+1 .. n_max
    for (int n = n_empirical + 1; n <= ladder.n_max; ++n)
        g_seq.push_back(kC1 * kC1 * g_exact[n - 1]);
    double chain_g_tail = kC1 * kC1 * markov_tail_from_nmax;  // n > n_max
    for (double g : g_seq) cert.chain_sum_g += g;
    cert.chain_sum_g += chain_g_tail;

    if (std::isinf(cert.chain_sum_g)) {
        cert.chain_applicable = false;
        cert.chain_reason = "g series does not contract (E[rho^2] infinite?)";
    } else if (cert.chain_f0 > 1.0 / kC2) {
        cert.chain_applicable = false;
        cert.chain_reason = "C1 * F_hi at the handoff scale exceeds 1/C2";
    } else if (cert.chain_sum_g > 1.0 / (kC2 * kC2)) {
        cert.chain_applicable = false;
        cert.chain_reason = "sum of chain g terms exceeds 1/C2^2";
    } else {
        cert.chain_applicable = true;
    }

    // Chain rows n_empirical+1 .. n_max.
    double f_chain = cert.chain_f0;
    for (int n = n_empirical + 1; n <= ladder.n_max; ++n) {
        f_chain = f_chain / kC2 + g_seq[static_cast<std::size_t>(n - n_empirical - 1)];
        ScaleTerm t;
        t.n = n;
        t.alpha = ladder.scale(n);
        double f_bound = std::fmin(1.0, f_chain / kC1);
        t.f_lo = 0.0; t.f_pt = f_bound; t.f_hi = f_bound;
        t.f_empirical = false;
        t.g_value = g_exact[n];
        t.g_exact = true;
        t.term = f_bound + t.g_value;
        cert.scales.push_back(t);
    }

    // Certified tails beyond n_max: geometric closure of the chain plus the
    // Markov sum for the G side.
    double g_tail_chain = chain_g_tail;
    cert.tail_f =
        (f_chain / (kC2 - 1.0) + g_tail_chain * kC2 / (kC2 - 1.0)) / kC1;
    cert.tail_g = markov_tail_sum(ladder, ladder.n_max + 1);

    cert.total = cert.tail_f + cert.tail_g;
    for (const ScaleTerm& t : cert.scales) cert.total += t.term;
    cert.pass = cert.chain_applicable && cert.total <= 0.5;
    return cert;
}

std::vector<Rect> strip_sequence(double base, int n_max) {
    if (n_max < 1) throw std::invalid_argument("strip_sequence: n_max must be >= 1");
    std::vector<Rect> strips;
    for (int n = 1; n <= n_max; ++n) {
        double scale = std::pow(10.0, n) * base;
        strips.push_back(make_strip(
            scale, n % 2 == 1 ? Orientation::Horizontal : Orientation::Vertical));
    }
    // Consecutive strips cross each other the short way; nesting two apart.
    for (int i = 0; i + 1 < static_cast<int>(strips.size()); ++i) {
        const Rect& a = strips[i];
        const Rect& b = strips[i + 1];
        Axis la = a.long_axis();
        bool long_covers = la == Axis::X ? (a.lo.x <= b.lo.x && a.hi.x >= b.hi.x)
                                         : (a.lo.y <= b.lo.y && a.hi.y >= b.hi.y);
        bool short_inside = la == Axis::X ? (a.lo.y >= b.lo.y && a.hi.y <= b.hi.y)
                                          : (a.lo.x >= b.lo.x && a.hi.x <= b.hi.x);
        if (!long_covers || !short_inside)
            throw std::logic_error("strip_sequence: crossing invariant violated");
        if (i + 2 < static_cast<int>(strips.size()) &&
            !strips[i + 2].contains_rect(a))
            throw std::logic_error("strip_sequence: nesting invariant violated");
    }
    return strips;
}

HJCheck estimate_H_J(int n, const ScaleLadder& ladder, std::uint64_t n_reps,
                     RngStream stream, int threads) {
    validate_ladder(ladder);
    if (n < 1) throw std::invalid_argument("estimate_H_J: scale index must be >= 1");
    if (n_reps == 0) throw std::invalid_argument("estimate_H_J: n_reps must be >= 1");
    std::vector<Rect> strips = strip_sequence(ladder.base, n + 4);
    const Rect& s_n = strips[n - 1];
    const Rect& s_n2 = strips[n + 1];
    const Rect& s_n4 = strips[n + 3];

    HJCheck hj;
    hj.n = n;
    hj.alpha = ladder.scale(n);

    // H_n: short-way crossing of S_n by grains centered in S_{n+2}. Grains
    // that cannot touch S_n never enter a crossing chain, so the thinned
    // reaching sampler yields the identical event distribution.
    const Axis axis = traverse_axis(s_n, Way::Short);
    std::vector<char> hit(n_reps, 0);
    int nthreads = effective_threads(threads);
    std::vector<CrossingSolver> solvers(static_cast<std::size_t>(nthreads));
    for_each_replicate(n_reps, threads, [&](std::uint64_t rep, std::size_t w) {
        GrainSet gs = sample_reaching_grains(Region(s_n2), s_n, ladder.lambda,
                                             ladder.law, stream.child("H", rep));
        hit[rep] = solvers[w].occupied_axis(s_n, axis, gs.grains) ? 1 : 0;
    });
    std::uint64_t successes = 0;
    for (char h : hit) successes += h;
    hj.h = BernoulliEstimate::from_counts(successes, n_reps);

    // J_n: exact through the Poisson existence formula.
    Region j_domain = Region::difference(Region(s_n4), Region(s_n2));
    double lam_j =
        expected_reaching_count(j_domain, s_n, ladder.lambda, ladder.law);
    hj.j = -std::expm1(-lam_j);

    // Disjoint Poisson regions make H_n and J_n independent.
    hj.union_lo = hj.h.lo + hj.j - hj.h.lo * hj.j;
    hj.union_hi = hj.h.hi + hj.j - hj.h.hi * hj.j;

    hj.f = estimate_F(ladder.scale(n), ladder.lambda, ladder.law, n_reps,
                      stream.child("HJ-F", static_cast<std::uint64_t>(n)), threads);
    hj.g = exact_G(ladder.scale(n), ladder.lambda, ladder.law, ladder.reach_factor);
    hj.rhs_hi = hj.f.hi + hj.g;
    hj.verdict =
        hj.union_lo <= hj.rhs_hi ? Verdict::Consistent : Verdict::Violated;
    return hj;
}

namespace {

// Grains centered outside B(kappa alpha_n) can still realize J_n when the
// reach factor is too small for that containment; the excess is bounded by
// the closed-form reach integral beyond the disc.
double far_j_bound(const ScaleLadder& lad, int n) {
    Rect s_n = make_strip(lad.scale(n), Orientation::Horizontal);
    double half_diag = std::hypot(5.0 * lad.scale(n), 0.5 * lad.scale(n));
    double r_far = lad.reach_factor * lad.scale(n) - half_diag;
    return reach_beyond(s_n, r_far, lad.lambda, lad.law);
}

// Sum of far-J bounds over n = from..infinity, with the same decay guard as
// the Markov tail.
double far_j_tail_sum(const ScaleLadder& lad, int from) {
    double acc = 0.0;
    double prev = kInf;
    for (int n = from; n < from + 200000; ++n) {
        double term = far_j_bound(lad, n);
        if (term == 0.0) return acc;
        acc += term;
        if (term < 1e-18 * std::fmax(acc, 1e-300)) return acc;
        if (term >= prev) return kInf;
        prev = term;
    }
    return kInf;
}

} // namespace

VacancyCertificate vacancy_certificate(const ScaleLadder& ladder, int n_head,
                                       int n_empirical, std::uint64_t n_reps_h,
                                       std::uint64_t n_reps_f, RngStream stream,
                                       int threads) {
    validate_ladder(ladder);
    if (n_head < 0 || n_head > ladder.n_max)
        throw std::invalid_argument("vacancy: need 0 <= n_head <= n_max");
    // H_n subset F union G needs S_{n+2} inside B(kappa alpha_n): the strip
    // half-diagonal is sqrt(25.25) * 100 alpha_n.
    if (!(ladder.reach_factor >= 503.0))
        throw std::invalid_argument(
            "vacancy: reach factor must be >= 503 so that S_{n+2} fits inside "
            "the reach disc");
    VacancyCertificate vc;
    vc.n_head = n_head;
    vc.n_reps_h = n_reps_h;
    vc.scale_bounds = summability_certificate(
        ladder, n_empirical, n_reps_f, stream.child("vacancy-scales"), threads);

    double upper = 0.0;
    for (int n = 1; n <= n_head; ++n) {
        HJCheck hj = estimate_H_J(n, ladder, n_reps_h,
                                  stream.child("vacancy-HJ", n), threads);
        upper += hj.union_hi;
        vc.head.push_back(std::move(hj));
    }
    for (const ScaleTerm& t : vc.scale_bounds.scales) {
        if (t.n > n_head) upper += t.term + far_j_bound(ladder, t.n);
    }
    upper += vc.scale_bounds.tail_f + vc.scale_bounds.tail_g;
    upper += far_j_tail_sum(ladder, ladder.n_max + 1);
    vc.union_upper = upper;
    vc.lower_bound = 1.0 - upper;
    vc.informative = vc.scale_bounds.chain_applicable && vc.lower_bound > 0.0;
    vc.pass_half = vc.scale_bounds.chain_applicable && vc.lower_bound >= 0.5;
    return vc;
}

} // namespace boolsim
