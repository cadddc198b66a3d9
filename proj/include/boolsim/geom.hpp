// Planar geometry: axis-aligned rectangles, discs, rounded rectangles
// (r-neighborhoods), set differences, and the exact closed-set predicates
// used by crossing detection. All sets are closed; boundary contact counts.
#pragma once

#include <array>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <variant>

#include "boolsim/rng.hpp"

namespace boolsim {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(Vec2 a, double s) { return {a.x * s, a.y * s}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm2(Vec2 a) { return dot(a, a); }
inline double norm(Vec2 a) { return std::sqrt(norm2(a)); }

enum class Axis { X, Y };
inline Axis other(Axis a) { return a == Axis::X ? Axis::Y : Axis::X; }

enum class Orientation { Horizontal, Vertical };

struct Rect {
    Vec2 lo;
    Vec2 hi;

    Rect() = default;
    Rect(Vec2 l, Vec2 h) : lo(l), hi(h) {
        if (!(lo.x <= hi.x && lo.y <= hi.y))
            throw std::invalid_argument("Rect: lo must be <= hi componentwise");
    }

    static Rect from_center(Vec2 c, double w, double h) {
        if (w < 0.0 || h < 0.0) throw std::invalid_argument("Rect: negative size");
        return Rect({c.x - w / 2.0, c.y - h / 2.0}, {c.x + w / 2.0, c.y + h / 2.0});
    }

    double width() const { return hi.x - lo.x; }
    double height() const { return hi.y - lo.y; }
    double area() const { return width() * height(); }
    double perimeter() const { return 2.0 * (width() + height()); }
    Vec2 center() const { return {(lo.x + hi.x) / 2.0, (lo.y + hi.y) / 2.0}; }
    Axis long_axis() const { return width() >= height() ? Axis::X : Axis::Y; }

    bool contains(Vec2 p, double tol = 0.0) const {
        return p.x >= lo.x - tol && p.x <= hi.x + tol && p.y >= lo.y - tol &&
               p.y <= hi.y + tol;
    }

    std::array<Vec2, 4> corners() const {
        return {Vec2{lo.x, lo.y}, Vec2{hi.x, lo.y}, Vec2{hi.x, hi.y},
                Vec2{lo.x, hi.y}};
    }

    // Euclidean distance from p to the (closed) rectangle; 0 inside.
    double dist(Vec2 p) const {
        double dx = std::fmax(std::fmax(lo.x - p.x, p.x - hi.x), 0.0);
        double dy = std::fmax(std::fmax(lo.y - p.y, p.y - hi.y), 0.0);
        return std::hypot(dx, dy);
    }

    // Distance between two closed axis-aligned rectangles.
    double dist(const Rect& o) const {
        double dx = std::fmax(std::fmax(o.lo.x - hi.x, lo.x - o.hi.x), 0.0);
        double dy = std::fmax(std::fmax(o.lo.y - hi.y, lo.y - o.hi.y), 0.0);
        return std::hypot(dx, dy);
    }

    bool contains_rect(const Rect& o) const {
        return o.lo.x >= lo.x && o.hi.x <= hi.x && o.lo.y >= lo.y && o.hi.y <= hi.y;
    }

    bool intersects(const Rect& o) const {
        return !(hi.x < o.lo.x || o.hi.x < lo.x || hi.y < o.lo.y || o.hi.y < lo.y);
    }
};

// The strip S(alpha): a closed 10a x a rectangle (a x 10a when vertical).
inline Rect make_strip(double alpha, Orientation orient, Vec2 center = {}) {
    if (!(alpha > 0.0)) throw std::invalid_argument("make_strip: alpha must be > 0");
    return orient == Orientation::Horizontal
               ? Rect::from_center(center, 10.0 * alpha, alpha)
               : Rect::from_center(center, alpha, 10.0 * alpha);
}

struct Disc {
    Vec2 center;
    double radius = 0.0;

    double area() const { return M_PI * radius * radius; }
    bool contains(Vec2 p, double tol = 0.0) const {
        return norm(p - center) <= radius + tol;
    }
};

// Minkowski sum of a rectangle with a closed disc of radius r.
struct RoundedRect {
    Rect core;
    double r = 0.0;

    double area() const {
        return core.area() + core.perimeter() * r + M_PI * r * r;
    }
    bool contains(Vec2 p, double tol = 0.0) const {
        return core.dist(p) <= r + tol;
    }
    Rect bbox() const {
        return Rect({core.lo.x - r, core.lo.y - r}, {core.hi.x + r, core.hi.y + r});
    }
};

class Region;
using RegionPtr = std::shared_ptr<const Region>;

// Outer minus inner; valid only when inner is contained in outer,
// which holds for every difference the construction sites build.
struct RegionDifference {
    RegionPtr outer;
    RegionPtr inner;
};

class Region {
public:
    using Variant = std::variant<Rect, Disc, RoundedRect, RegionDifference>;

    Region(Rect r) : v_(r) {}
    Region(Disc d) : v_(d) {}
    Region(RoundedRect rr) : v_(rr) {}
    Region(RegionDifference d) : v_(std::move(d)) {}

    static Region difference(Region outer, Region inner) {
        return Region(RegionDifference{std::make_shared<Region>(std::move(outer)),
                                       std::make_shared<Region>(std::move(inner))});
    }

    const Variant& var() const { return v_; }

    double area() const {
        return std::visit(
            [](const auto& s) -> double {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, Rect>) return s.area();
                else if constexpr (std::is_same_v<T, Disc>) return s.area();
                else if constexpr (std::is_same_v<T, RoundedRect>) return s.area();
                else return s.outer->area() - s.inner->area();
            },
            v_);
    }

    bool contains(Vec2 p, double tol = 0.0) const {
        return std::visit(
            [&](const auto& s) -> bool {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, RegionDifference>)
                    return s.outer->contains(p, tol) && !s.inner->contains(p, -tol);
                else
                    return s.contains(p, tol);
            },
            v_);
    }

    Rect bbox() const {
        return std::visit(
            [](const auto& s) -> Rect {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, Rect>) return s;
                else if constexpr (std::is_same_v<T, Disc>)
                    return Rect({s.center.x - s.radius, s.center.y - s.radius},
                                {s.center.x + s.radius, s.center.y + s.radius});
                else if constexpr (std::is_same_v<T, RoundedRect>) return s.bbox();
                else return s.outer->bbox();
            },
            v_);
    }

    // Uniform point; rectangles and discs sample directly, the rest reject
    // from an exact enclosing shape.
    Vec2 uniform_point(Philox& rng) const {
        if (const Rect* r = std::get_if<Rect>(&v_)) {
            return {rng.uniform(r->lo.x, r->hi.x), rng.uniform(r->lo.y, r->hi.y)};
        }
        if (const Disc* d = std::get_if<Disc>(&v_)) {
            double rr = d->radius * std::sqrt(rng.u01());
            double th = rng.uniform(0.0, 2.0 * M_PI);
            return {d->center.x + rr * std::cos(th), d->center.y + rr * std::sin(th)};
        }
        if (const RoundedRect* rr = std::get_if<RoundedRect>(&v_)) {
            Rect bb = rr->bbox();
            for (;;) {
                Vec2 p{rng.uniform(bb.lo.x, bb.hi.x), rng.uniform(bb.lo.y, bb.hi.y)};
                if (rr->contains(p)) return p;
            }
        }
        const RegionDifference& d = std::get<RegionDifference>(v_);
        for (;;) {
            Vec2 p = d.outer->uniform_point(rng);
            if (!d.inner->contains(p)) return p;
        }
    }

private:
    Variant v_;
};

// A_r: the r-neighborhood of a rectangle (rounded rectangle).
inline Region neighborhood(const Rect& rect, double r) {
    if (r < 0.0) throw std::invalid_argument("neighborhood: negative radius");
    if (r == 0.0) return Region(rect);
    return Region(RoundedRect{rect, r});
}

inline RoundedRect neighborhood_shape(const Rect& rect, double r) {
    if (r < 0.0) throw std::invalid_argument("neighborhood: negative radius");
    return RoundedRect{rect, r};
}

// One distance shell {lo <= dist(., rect) <= hi} around a rectangle,
// decomposed exactly for uniform sampling: the core rectangle when lo = 0,
// four edge bands, four quarter ring sectors. Area matches the difference of
// the two rounded-rectangle areas.
struct DistanceShell {
    Rect target;
    double lo = 0.0;
    double hi = 0.0;

    double area() const {
        double band = hi - lo;
        double a = 2.0 * band * (target.width() + target.height()) +
                   M_PI * (hi * hi - lo * lo);
        if (lo == 0.0) a += target.area();
        return a;
    }

    Vec2 sample(Philox& rng) const {
        const Rect& t = target;
        double w = t.width(), h = t.height(), band = hi - lo;
        double core = lo == 0.0 ? t.area() : 0.0;
        double horiz = w * band;
        double vert = h * band;
        double quad = M_PI * (hi * hi - lo * lo) / 4.0;
        double u = rng.u01() * (core + 2.0 * horiz + 2.0 * vert + 4.0 * quad);
        if (u < core)
            return {rng.uniform(t.lo.x, t.hi.x), rng.uniform(t.lo.y, t.hi.y)};
        u -= core;
        if (u < horiz)
            return {rng.uniform(t.lo.x, t.hi.x), rng.uniform(t.lo.y - hi, t.lo.y - lo)};
        u -= horiz;
        if (u < horiz)
            return {rng.uniform(t.lo.x, t.hi.x), rng.uniform(t.hi.y + lo, t.hi.y + hi)};
        u -= horiz;
        if (u < vert)
            return {rng.uniform(t.lo.x - hi, t.lo.x - lo), rng.uniform(t.lo.y, t.hi.y)};
        u -= vert;
        if (u < vert)
            return {rng.uniform(t.hi.x + lo, t.hi.x + hi), rng.uniform(t.lo.y, t.hi.y)};
        u -= vert;
        int corner = u < 2.0 * quad ? (u < quad ? 0 : 1) : (u < 3.0 * quad ? 2 : 3);
        double th = rng.uniform(corner * 0.5 * M_PI, (corner + 1) * 0.5 * M_PI);
        double r = std::sqrt(lo * lo + rng.u01() * (hi * hi - lo * lo));
        Vec2 c{corner == 0 || corner == 3 ? t.hi.x : t.lo.x,
               corner <= 1 ? t.hi.y : t.lo.y};
        return {c.x + r * std::cos(th), c.y + r * std::sin(th)};
    }
};

// ---- Exact predicates on closed sets -------------------------------------

inline bool discs_overlap(const Disc& a, const Disc& b, double tol = 0.0) {
    double rr = a.radius + b.radius + tol;
    return norm2(a.center - b.center) <= rr * rr;
}

inline bool disc_meets_rect(const Disc& d, const Rect& rect, double tol = 0.0) {
    return rect.dist(d.center) <= d.radius + tol;
}

inline double dist_point_segment(Vec2 p, Vec2 a, Vec2 b) {
    Vec2 ab = b - a;
    double len2 = norm2(ab);
    if (len2 == 0.0) return norm(p - a);
    double t = dot(p - a, ab) / len2;
    t = std::fmin(1.0, std::fmax(0.0, t));
    return norm(p - (a + ab * t));
}

inline bool disc_meets_segment(const Disc& d, Vec2 a, Vec2 b, double tol = 0.0) {
    return dist_point_segment(d.center, a, b) <= d.radius + tol;
}

namespace detail {

// Intersections of the circle (c, r) with one axis-aligned segment of the
// rectangle boundary; reports the circle angles of the hits.
template <typename Fn>
inline void circle_axis_segment_hits(Vec2 c, double r, bool vertical,
                                     double fixed_coord, double lo, double hi,
                                     Fn&& on_angle) {
    double delta = vertical ? fixed_coord - c.x : fixed_coord - c.y;
    double disc = r * r - delta * delta;
    if (disc < 0.0) return;
    double root = std::sqrt(disc);
    for (double sign : {-1.0, 1.0}) {
        double free_c = (vertical ? c.y : c.x) + sign * root;
        if (free_c < lo || free_c > hi) continue;
        double ang = vertical ? std::atan2(free_c - c.y, delta)
                              : std::atan2(delta, free_c - c.x);
        on_angle(ang);
        if (root == 0.0) break;
    }
}

inline double wrap_angle(double a) {
    while (a > M_PI) a -= 2.0 * M_PI;
    while (a < -M_PI) a += 2.0 * M_PI;
    return a;
}

} // namespace detail

// Whether B(g1) ∩ B(g2) ∩ rect is nonempty. Decided by closed-form case
// analysis: the lens and the rectangle intersect iff a rectangle vertex lies
// in the lens, or the lens boundary (two circular arcs) meets the rectangle.
// Instances within `tol` of a boundary classify as "meets".
inline bool lens_meets_rect(const Disc& g1, const Disc& g2, const Rect& rect,
                            double tol = 1e-12) {
    const double d2 = norm2(g1.center - g2.center);
    const double rsum = g1.radius + g2.radius + tol;
    if (d2 > rsum * rsum) return false;
    const double d = std::sqrt(d2);

    // One disc inside the other: the lens degenerates to the smaller disc.
    if (d <= g2.radius - g1.radius) return disc_meets_rect(g1, rect, tol);
    if (d <= g1.radius - g2.radius) return disc_meets_rect(g2, rect, tol);

    // Center of the radical chord; always a lens point when the lens is
    // nonempty, and the most common accept in crossing workloads.
    const double t = d2 > 0.0 ? (d2 + g1.radius * g1.radius - g2.radius * g2.radius) /
                                    (2.0 * d2)
                              : 0.5;
    const Vec2 p = g1.center + (g2.center - g1.center) * t;
    if (rect.contains(p, tol)) return true;

    // Lens corners (circle-circle intersection points).
    double h2 = g1.radius * g1.radius - t * t * d2;
    if (h2 < 0.0) h2 = 0.0;
    const double h = std::sqrt(h2);
    if (d > 0.0) {
        Vec2 u = (g2.center - g1.center) * (1.0 / d);
        Vec2 perp{-u.y, u.x};
        if (rect.contains(p + perp * h, tol) || rect.contains(p - perp * h, tol))
            return true;
    }

    // Rectangle vertex inside both discs.
    for (const Vec2& v : rect.corners()) {
        if (g1.contains(v, tol) && g2.contains(v, tol)) return true;
    }

    // Arc of each circle bounded to the interior of the other disc, tested
    // against the four rectangle edges.
    struct ArcSpec {
        Vec2 c;
        double r;
        double mid;     // angle toward the other center
        double half;    // half-opening of the arc inside the other disc
    };
    ArcSpec arcs[2];
    int n_arcs = 0;
    if (d > 0.0) {
        double c1 = (g1.radius * g1.radius + d2 - g2.radius * g2.radius) /
                    (2.0 * g1.radius * d);
        double c2 = (g2.radius * g2.radius + d2 - g1.radius * g1.radius) /
                    (2.0 * g2.radius * d);
        c1 = std::fmin(1.0, std::fmax(-1.0, c1));
        c2 = std::fmin(1.0, std::fmax(-1.0, c2));
        Vec2 dir = g2.center - g1.center;
        arcs[n_arcs++] = {g1.center, g1.radius, std::atan2(dir.y, dir.x),
                          std::acos(c1)};
        arcs[n_arcs++] = {g2.center, g2.radius, std::atan2(-dir.y, -dir.x),
                          std::acos(c2)};
    }
    for (int i = 0; i < n_arcs; ++i) {
        const ArcSpec& a = arcs[i];
        const double ang_tol = a.r > 0.0 ? tol / a.r : 0.0;
        bool hit = false;
        auto check = [&](double ang) {
            if (std::fabs(detail::wrap_angle(ang - a.mid)) <= a.half + ang_tol)
                hit = true;
        };
        detail::circle_axis_segment_hits(a.c, a.r, true, rect.lo.x, rect.lo.y,
                                         rect.hi.y, check);
        detail::circle_axis_segment_hits(a.c, a.r, true, rect.hi.x, rect.lo.y,
                                         rect.hi.y, check);
        detail::circle_axis_segment_hits(a.c, a.r, false, rect.lo.y, rect.lo.x,
                                         rect.hi.x, check);
        detail::circle_axis_segment_hits(a.c, a.r, false, rect.hi.y, rect.lo.x,
                                         rect.hi.x, check);
        if (hit) return true;
    }
    return false;
}

} // namespace boolsim
