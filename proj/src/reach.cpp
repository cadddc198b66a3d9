#include "boolsim/reach.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "boolsim/model.hpp"

namespace boolsim {

namespace {

// Circular interval |wrap(theta - center)| <= half. half < 0 encodes the
// empty set, half >= pi the full circle.
struct CircInterval {
    double center = 0.0;
    double half = M_PI;
};

CircInterval cos_le(double u) {
    if (u >= 1.0) return {0.0, M_PI};
    if (u < -1.0) return {0.0, -1.0};
    return {M_PI, M_PI - std::acos(u)};
}
CircInterval cos_ge(double u) {
    if (u <= -1.0) return {0.0, M_PI};
    if (u > 1.0) return {0.0, -1.0};
    return {0.0, std::acos(u)};
}
CircInterval sin_le(double v) {
    if (v >= 1.0) return {0.0, M_PI};
    if (v < -1.0) return {0.0, -1.0};
    return {1.5 * M_PI, 0.5 * M_PI + std::asin(v)};
}
CircInterval sin_ge(double v) {
    if (v <= -1.0) return {0.0, M_PI};
    if (v > 1.0) return {0.0, -1.0};
    return {0.5 * M_PI, 0.5 * M_PI - std::asin(v)};
}

double wrap_pi(double a) {
    while (a > M_PI) a -= 2.0 * M_PI;
    while (a < -M_PI) a += 2.0 * M_PI;
    return a;
}

bool in_interval(double theta, const CircInterval& c) {
    if (c.half < 0.0) return false;
    if (c.half >= M_PI) return true;
    return std::fabs(wrap_pi(theta - c.center)) <= c.half;
}

// Measure of {theta in [w0, w1] : theta lies in every interval}.
double window_measure(double w0, double w1, const std::vector<CircInterval>& cs) {
    for (const auto& c : cs)
        if (c.half < 0.0) return 0.0;
    std::vector<double> cuts{w0, w1};
    for (const auto& c : cs) {
        if (c.half >= M_PI) continue;
        for (int k = -2; k <= 2; ++k) {
            for (double edge : {c.center - c.half, c.center + c.half}) {
                double t = edge + 2.0 * M_PI * k;
                if (t > w0 && t < w1) cuts.push_back(t);
            }
        }
    }
    std::sort(cuts.begin(), cuts.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double mid = 0.5 * (cuts[i] + cuts[i + 1]);
        bool ok = true;
        for (const auto& c : cs) {
            if (!in_interval(mid, c)) { ok = false; break; }
        }
        if (ok) total += cuts[i + 1] - cuts[i];
    }
    return total;
}

// Axis-aligned segment clipped to a rectangle.
double segment_len_in_rect(Vec2 a, Vec2 b, const Rect& clip) {
    double t0 = 0.0, t1 = 1.0;
    double dx = b.x - a.x, dy = b.y - a.y;
    auto clip_axis = [&](double p0, double d, double lo, double hi) {
        if (d == 0.0) {
            if (p0 < lo || p0 > hi) { t0 = 1.0; t1 = 0.0; }
            return;
        }
        double ta = (lo - p0) / d, tb = (hi - p0) / d;
        if (ta > tb) std::swap(ta, tb);
        t0 = std::fmax(t0, ta);
        t1 = std::fmin(t1, tb);
    };
    clip_axis(a.x, dx, clip.lo.x, clip.hi.x);
    clip_axis(a.y, dy, clip.lo.y, clip.hi.y);
    if (t1 <= t0) return 0.0;
    return (t1 - t0) * std::hypot(dx, dy);
}

// Axis-aligned segment clipped to a disc.
double segment_len_in_disc(Vec2 a, Vec2 b, const Disc& clip) {
    Vec2 d = b - a;
    Vec2 rel = a - clip.center;
    double A = norm2(d);
    if (A == 0.0) return 0.0;
    double B = 2.0 * dot(rel, d);
    double C = norm2(rel) - clip.radius * clip.radius;
    double disc = B * B - 4.0 * A * C;
    if (disc <= 0.0) return 0.0;
    double root = std::sqrt(disc);
    double t0 = std::fmax(0.0, (-B - root) / (2.0 * A));
    double t1 = std::fmin(1.0, (-B + root) / (2.0 * A));
    if (t1 <= t0) return 0.0;
    return (t1 - t0) * std::sqrt(A);
}

// Quarter arc (center c, radius s, theta in [th0, th0 + pi/2]) clipped.
double arc_len_in_rect(Vec2 c, double s, double th0, const Rect& clip) {
    std::vector<CircInterval> cs;
    cs.push_back(cos_le((clip.hi.x - c.x) / s));
    cs.push_back(cos_ge((clip.lo.x - c.x) / s));
    cs.push_back(sin_le((clip.hi.y - c.y) / s));
    cs.push_back(sin_ge((clip.lo.y - c.y) / s));
    return s * window_measure(th0, th0 + 0.5 * M_PI, cs);
}

double arc_len_in_disc(Vec2 c, double s, double th0, const Disc& clip) {
    Vec2 rel = c - clip.center;
    double dc = norm(rel);
    if (dc == 0.0) return s <= clip.radius ? s * 0.5 * M_PI : 0.0;
    double cstar =
        (clip.radius * clip.radius - dc * dc - s * s) / (2.0 * s * dc);
    CircInterval ci;
    if (cstar >= 1.0) ci = {0.0, M_PI};
    else if (cstar < -1.0) ci = {0.0, -1.0};
    else {
        double phi = std::atan2(rel.y, rel.x);
        ci = {phi + M_PI, M_PI - std::acos(cstar)};
    }
    return s * window_measure(th0, th0 + 0.5 * M_PI, {ci});
}

template <typename SegFn, typename ArcFn>
double level_length_generic(const Rect& t, double s, SegFn&& seg, ArcFn&& arc) {
    double len = 0.0;
    len += seg({t.lo.x, t.lo.y - s}, {t.hi.x, t.lo.y - s});
    len += seg({t.lo.x, t.hi.y + s}, {t.hi.x, t.hi.y + s});
    len += seg({t.lo.x - s, t.lo.y}, {t.lo.x - s, t.hi.y});
    len += seg({t.hi.x + s, t.lo.y}, {t.hi.x + s, t.hi.y});
    len += arc({t.hi.x, t.hi.y}, 0.0);
    len += arc({t.lo.x, t.hi.y}, 0.5 * M_PI);
    len += arc({t.lo.x, t.lo.y}, M_PI);
    len += arc({t.hi.x, t.lo.y}, 1.5 * M_PI);
    return len;
}

double rect_overlap_area(const Rect& a, const Rect& b) {
    double w = std::fmin(a.hi.x, b.hi.x) - std::fmax(a.lo.x, b.lo.x);
    double h = std::fmin(a.hi.y, b.hi.y) - std::fmax(a.lo.y, b.lo.y);
    return w > 0.0 && h > 0.0 ? w * h : 0.0;
}

double max_corner_dist(const Rect& of, const Rect& to) {
    double m = 0.0;
    for (const Vec2& c : of.corners()) m = std::fmax(m, to.dist(c));
    return m;
}

// Adaptive Simpson on one panel.
double simpson(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double fa,
             double b, double fb, double m, double fm, double whole,
             double tol, int depth, bool& ok) {
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = simpson(a, fa, m, fm, flm);
    double right = simpson(m, fm, b, fb, frm);
    double delta = left + right - whole;
    double scale = std::fmax(1.0, std::fmax(std::fabs(a), std::fabs(b)));
    if (std::fabs(delta) <= 15.0 * tol || (b - a) < 1e-14 * scale) {
        return left + right + delta / 15.0;
    }
    if (depth <= 0) {
        ok = false;
        return left + right;
    }
    return adapt(f, a, fa, m, fm, lm, flm, left, tol / 2.0, depth - 1, ok) +
           adapt(f, m, fm, b, fb, rm, frm, right, tol / 2.0, depth - 1, ok);
}

} // namespace

double level_length_in_rect(const Rect& target, double s, const Rect& clip) {
    if (s <= 0.0) return 0.0;
    return level_length_generic(
        target, s,
        [&](Vec2 a, Vec2 b) { return segment_len_in_rect(a, b, clip); },
        [&](Vec2 c, double th0) { return arc_len_in_rect(c, s, th0, clip); });
}

double level_length_in_disc(const Rect& target, double s, const Disc& clip) {
    if (s <= 0.0) return 0.0;
    return level_length_generic(
        target, s,
        [&](Vec2 a, Vec2 b) { return segment_len_in_disc(a, b, clip); },
        [&](Vec2 c, double th0) { return arc_len_in_disc(c, s, th0, clip); });
}

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, const std::vector<double>& breakpoints,
                          double rel_tol, const std::string& what) {
    if (!(b > a)) return 0.0;
    std::vector<double> cuts{a, b};
    for (double t : breakpoints)
        if (t > a && t < b) cuts.push_back(t);
    // Geometric refinement so wide panels cannot hide narrow features.
    std::sort(cuts.begin(), cuts.end());
    std::vector<double> panels;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double lo = cuts[i], hi = cuts[i + 1];
        panels.push_back(lo);
        double anchor = std::fmax(lo, 1e-9 * (b - a));
        while (anchor * 8.0 < hi) {
            anchor *= 8.0;
            panels.push_back(anchor);
        }
    }
    panels.push_back(b);
    std::sort(panels.begin(), panels.end());
    panels.erase(std::unique(panels.begin(), panels.end()), panels.end());

    // First pass for the tolerance scale.
    double rough = 0.0;
    for (std::size_t i = 0; i + 1 < panels.size(); ++i) {
        double lo = panels[i], hi = panels[i + 1], mid = 0.5 * (lo + hi);
        rough += (hi - lo) / 6.0 * (f(lo) + 4.0 * f(mid) + f(hi));
    }
    double tol = std::fmax(std::fabs(rough), 1e-300) * rel_tol;

    bool ok = true;
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < panels.size(); ++i) {
        double lo = panels[i], hi = panels[i + 1], mid = 0.5 * (lo + hi);
        double flo = f(lo), fhi = f(hi), fmid = f(mid);
        double whole = simpson(lo, flo, hi, fhi, fmid);
        total += adapt(f, lo, flo, hi, fhi, mid, fmid, whole,
                       tol / static_cast<double>(panels.size()), 52, ok);
    }
    if (!ok) {
        throw QuadratureError("quadrature failed to converge for " + what +
                              " on [" + std::to_string(a) + ", " +
                              std::to_string(b) + "] at rel_tol " +
                              std::to_string(rel_tol));
    }
    return total;
}

namespace {

void corner_event_radii(const Rect& target, const Rect& clip,
                        std::vector<double>& out) {
    for (const Vec2& c : target.corners()) {
        for (double x : {clip.lo.x, clip.hi.x}) out.push_back(std::fabs(x - c.x));
        for (double y : {clip.lo.y, clip.hi.y}) out.push_back(std::fabs(y - c.y));
        for (const Vec2& r : clip.corners()) out.push_back(norm(r - c));
    }
}

void corner_event_radii(const Rect& target, const Disc& clip,
                        std::vector<double>& out) {
    for (const Vec2& c : target.corners()) {
        double dc = norm(c - clip.center);
        out.push_back(std::fabs(clip.radius - dc));
        out.push_back(clip.radius + dc);
        // Segment endpoints entering the clip circle.
        for (double q : {std::fabs(c.x - clip.center.x), std::fabs(c.y - clip.center.y)}) {
            double disc = clip.radius * clip.radius - q * q;
            if (disc >= 0.0) {
                double r = std::sqrt(disc);
                for (double off : {std::fabs(c.x - clip.center.x),
                                   std::fabs(c.y - clip.center.y)}) {
                    out.push_back(std::fabs(off - r));
                    out.push_back(off + r);
                }
            }
        }
    }
}

bool same_rect(const Rect& a, const Rect& b) {
    return a.lo.x == b.lo.x && a.lo.y == b.lo.y && a.hi.x == b.hi.x &&
           a.hi.y == b.hi.y;
}

// Level-set length of the target at distance s, clipped to one leaf shape.
double leaf_level_length(const Region& leaf, const Rect& target, double s) {
    if (const Rect* r = std::get_if<Rect>(&leaf.var()))
        return level_length_in_rect(target, s, *r);
    if (const Disc* d = std::get_if<Disc>(&leaf.var()))
        return level_length_in_disc(target, s, *d);
    const RoundedRect& rr = std::get<RoundedRect>(leaf.var());
    // Only neighborhoods of the target itself appear as leaves; their level
    // sets are whole level sets up to radius r.
    return s <= rr.r ? level_length(target, s) : 0.0;
}

double leaf_smax(const Region& leaf, const Rect& target) {
    if (const Disc* d = std::get_if<Disc>(&leaf.var()))
        return target.dist(d->center) + d->radius;
    if (const RoundedRect* rr = std::get_if<RoundedRect>(&leaf.var()))
        return rr->r;
    return max_corner_dist(std::get<Rect>(leaf.var()), target);
}

double leaf_area_with_target(const Region& leaf, const Rect& target) {
    if (const Rect* r = std::get_if<Rect>(&leaf.var()))
        return rect_overlap_area(target, *r);
    // Disc and neighborhood leaves must contain the target (checked earlier).
    return target.area();
}

void leaf_breakpoints(const Region& leaf, const Rect& target,
                      std::vector<double>& bps) {
    if (const Rect* r = std::get_if<Rect>(&leaf.var()))
        corner_event_radii(target, *r, bps);
    else if (const Disc* d = std::get_if<Disc>(&leaf.var()))
        corner_event_radii(target, *d, bps);
    else
        bps.push_back(std::get<RoundedRect>(leaf.var()).r);
}

void validate_leaf(const Region& leaf, const Rect& target) {
    if (std::get_if<Rect>(&leaf.var())) return;
    if (const Disc* d = std::get_if<Disc>(&leaf.var())) {
        for (const Vec2& c : target.corners())
            if (!d->contains(c))
                throw std::invalid_argument(
                    "reach integral: disc domain must contain the target");
        return;
    }
    if (const RoundedRect* rr = std::get_if<RoundedRect>(&leaf.var())) {
        if (!same_rect(rr->core, target))
            throw std::invalid_argument(
                "reach integral: rounded-rect domain must be a neighborhood of "
                "the target");
        return;
    }
    throw std::invalid_argument("reach integral: nested differences unsupported");
}

// Distance below which every level set of the target lies inside `inner`
// (so the difference integrand vanishes identically there).
double inner_cover_margin(const Region& inner, const Rect& target) {
    if (const RoundedRect* rr = std::get_if<RoundedRect>(&inner.var()))
        return same_rect(rr->core, target) ? rr->r : 0.0;
    if (const Rect* r = std::get_if<Rect>(&inner.var())) {
        if (!r->contains_rect(target)) return 0.0;
        double m = std::fmin(std::fmin(target.lo.x - r->lo.x, r->hi.x - target.hi.x),
                             std::fmin(target.lo.y - r->lo.y, r->hi.y - target.hi.y));
        return std::fmax(m, 0.0);
    }
    return 0.0;
}

} // namespace

double expected_reaching_count(const Region& domain, const Rect& target,
                               double lambda, const RadiusLaw& law) {
    if (!(lambda > 0.0))
        throw std::invalid_argument("expected_reaching_count: lambda must be > 0");
    const double rel_tol = 1e-6;
    std::vector<double> bps = law.breakpoints();

    if (const RegionDifference* diff = std::get_if<RegionDifference>(&domain.var())) {
        const Region& outer = *diff->outer;
        const Region& inner = *diff->inner;
        validate_leaf(outer, target);
        validate_leaf(inner, target);
        double area0 = leaf_area_with_target(outer, target) -
                       leaf_area_with_target(inner, target);
        area0 = std::fmax(area0, 0.0);
        double smax = leaf_smax(outer, target);
        double start = inner_cover_margin(inner, target);
        leaf_breakpoints(outer, target, bps);
        leaf_breakpoints(inner, target, bps);
        bool inner_is_target_hood =
            std::get_if<RoundedRect>(&inner.var()) != nullptr;
        auto f = [&](double s) {
            double tail = law.tail_geq(s);
            if (tail <= 0.0) return 0.0;
            double len = leaf_level_length(outer, target, s);
            // For the neighborhood-of-target exclusion the whole level set
            // is removed below `start`, which the range already handles.
            if (!inner_is_target_hood)
                len -= leaf_level_length(inner, target, s);
            return tail * std::fmax(len, 0.0);
        };
        if (start >= smax) return lambda * area0;
        return lambda * (area0 + integrate_adaptive(f, start, smax, bps, rel_tol,
                                                    "reach integral (difference)"));
    }

    validate_leaf(domain, target);
    double area0 = leaf_area_with_target(domain, target);
    double smax = leaf_smax(domain, target);
    leaf_breakpoints(domain, target, bps);
    auto f = [&](double s) {
        double tail = law.tail_geq(s);
        if (tail <= 0.0) return 0.0;
        return tail * leaf_level_length(domain, target, s);
    };
    if (smax <= 0.0) return lambda * area0;
    return lambda * (area0 + integrate_adaptive(f, 0.0, smax, bps, rel_tol,
                                                "reach integral"));
}

double reach_beyond(const Rect& target, double r, double lambda,
                    const RadiusLaw& law) {
    double it = law.integral_tail(r);
    double ist = law.integral_s_tail(r);
    if (std::isinf(it) || std::isinf(ist)) return kInf;
    return lambda * (target.perimeter() * it + 2.0 * M_PI * ist);
}

double find_guard_radius(const Rect& target, double lambda,
                         const RadiusLaw& law, double eps) {
    if (std::isinf(law.integral_s_tail(0.0)))
        throw std::invalid_argument(
            "find_guard_radius: infinite E[rho^2], no finite reach radius exists");
    if (reach_beyond(target, 0.0, lambda, law) <= eps) return 0.0;
    double hi = 1.0;
    int guard = 0;
    while (reach_beyond(target, hi, lambda, law) > eps) {
        hi *= 2.0;
        if (++guard > 200)
            throw std::runtime_error("find_guard_radius: search did not terminate");
    }
    double lo = hi / 2.0;
    for (int i = 0; i < 80; ++i) {
        double mid = 0.5 * (lo + hi);
        (reach_beyond(target, mid, lambda, law) > eps ? lo : hi) = mid;
    }
    return hi;
}

} // namespace boolsim
