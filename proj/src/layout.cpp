#include "boolsim/layout.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace boolsim {

Lemma1Layout build_lemma1_layout(double alpha, double reach_factor) {
    if (!(alpha > 0.0))
        throw std::invalid_argument("build_lemma1_layout: alpha must be > 0");
    if (!(reach_factor >= 10.0))
        throw std::invalid_argument("build_lemma1_layout: reach factor must be >= 10");
    Lemma1Layout L;
    L.alpha = alpha;
    L.reach_factor = reach_factor;
    L.parent_strip = make_strip(10.0 * alpha, Orientation::Horizontal);
    L.band_lower = Rect({-50.0 * alpha, -4.5 * alpha}, {50.0 * alpha, -3.5 * alpha});
    L.band_upper = Rect({-50.0 * alpha, 3.5 * alpha}, {50.0 * alpha, 4.5 * alpha});

    // R_1..R_19: horizontal 10a x a, centers (-45a,-4a), (-40a,-4a), ..., (45a,-4a).
    for (int k = 0; k < 19; ++k) {
        Vec2 c{(-45.0 + 5.0 * k) * alpha, -4.0 * alpha};
        L.rects.push_back(Rect::from_center(c, 10.0 * alpha, alpha));
        L.orientation.push_back(Orientation::Horizontal);
    }
    // R_20..R_37: vertical a x 10a, centers (-42.5a,-7a), ..., (42.5a,-7a).
    for (int k = 0; k < 18; ++k) {
        Vec2 c{(-42.5 + 5.0 * k) * alpha, -7.0 * alpha};
        L.rects.push_back(Rect::from_center(c, alpha, 10.0 * alpha));
        L.orientation.push_back(Orientation::Vertical);
    }
    // R_{37+i}: reflection of R_i across the x-axis.
    for (int i = 0; i < 37; ++i) {
        const Rect& r = L.rects[i];
        L.rects.push_back(Rect({r.lo.x, -r.hi.y}, {r.hi.x, -r.lo.y}));
        L.orientation.push_back(L.orientation[i]);
    }
    for (const Rect& r : L.rects)
        L.disks.push_back(Disc{r.center(), reach_factor * alpha});
    return L;
}

namespace {

JunctionCheck check_junction(const Rect& left, const Rect& right,
                             const Rect& vertical, const Rect& band) {
    JunctionCheck j;
    // Overlap of the vertical rectangle with the band.
    double ox0 = std::fmax(vertical.lo.x, band.lo.x);
    double ox1 = std::fmin(vertical.hi.x, band.hi.x);
    double oy0 = std::fmax(vertical.lo.y, band.lo.y);
    double oy1 = std::fmin(vertical.hi.y, band.hi.y);
    bool nonempty = ox1 > ox0 && oy1 > oy0;
    j.overlap_spans_vertical_width =
        nonempty && ox0 == vertical.lo.x && ox1 == vertical.hi.x;
    j.overlap_spans_band_height = nonempty && oy0 == band.lo.y && oy1 == band.hi.y;
    // A long-way crossing of each horizontal neighbor must cross the
    // vertical slab: the slab has to sit strictly inside both x-ranges.
    j.vertical_slab_inside_both_horizontals =
        vertical.lo.x >= left.lo.x && vertical.hi.x <= left.hi.x &&
        vertical.lo.x >= right.lo.x && vertical.hi.x <= right.hi.x;
    // Horizontal crossings stay inside the band iff the y-ranges coincide.
    j.horizontals_match_band =
        left.lo.y == band.lo.y && left.hi.y == band.hi.y &&
        right.lo.y == band.lo.y && right.hi.y == band.hi.y;
    j.pass = j.overlap_spans_vertical_width && j.overlap_spans_band_height &&
             j.vertical_slab_inside_both_horizontals && j.horizontals_match_band;
    return j;
}

} // namespace

KnittingReport verify_knitting(const Lemma1Layout& L) {
    if (L.rects.size() != 74)
        throw std::invalid_argument("verify_knitting: malformed layout");
    KnittingReport rep;
    rep.all_pass = true;
    for (int band = 0; band < 2; ++band) {
        int base = band * 37;
        const Rect& band_rect = band == 0 ? L.band_lower : L.band_upper;
        for (int k = 0; k < 18; ++k) {
            JunctionCheck j = check_junction(L.rects[base + k], L.rects[base + k + 1],
                                             L.rects[base + 19 + k], band_rect);
            j.lower_horiz = base + k + 1;
            j.vertical = base + 19 + k + 1;
            rep.all_pass = rep.all_pass && j.pass;
            rep.junctions.push_back(j);
        }
    }
    return rep;
}

namespace {

// sup over the a-neighborhood of `rect` of dist(., target): the worst core
// corner plus a (distance to a convex set is convex, so corners dominate).
double neighborhood_max_dist(const Rect& rect, double a, const Rect& target) {
    double m = 0.0;
    for (const Vec2& c : rect.corners()) m = std::fmax(m, target.dist(c));
    return m + a;
}

} // namespace

LayoutInvariantReport check_layout_invariants(const Lemma1Layout& L) {
    LayoutInvariantReport rep;
    const double a = L.alpha;
    auto fail = [&](const std::string& msg) { rep.failures.push_back(msg); };

    bool coords = L.rects.size() == 74;
    if (coords) {
        for (int k = 0; k < 19; ++k) {
            const Rect& r = L.rects[k];
            Vec2 c = r.center();
            coords = coords && c.x == (-45.0 + 5.0 * k) * a && c.y == -4.0 * a &&
                     r.width() == 10.0 * a && r.height() == a;
        }
        for (int k = 0; k < 18; ++k) {
            const Rect& r = L.rects[19 + k];
            Vec2 c = r.center();
            coords = coords && c.x == (-42.5 + 5.0 * k) * a && c.y == -7.0 * a &&
                     r.width() == a && r.height() == 10.0 * a;
        }
    }
    rep.coordinates_ok = coords;
    if (!coords) fail("stated centers/sizes of R_1..R_37");

    bool mirror = L.rects.size() == 74;
    for (int i = 0; mirror && i < 37; ++i) {
        const Rect& r = L.rects[i];
        const Rect& m = L.rects[37 + i];
        mirror = m.lo.x == r.lo.x && m.hi.x == r.hi.x && m.lo.y == -r.hi.y &&
                 m.hi.y == -r.lo.y;
    }
    rep.mirror_ok = mirror;
    if (!mirror) fail("mirror family R_38..R_74");

    bool in_half = true, in_parent = true;
    for (int i = 0; i < static_cast<int>(L.rects.size()); ++i) {
        const Rect& r = L.rects[i];
        bool lower = i < 37;
        if (lower ? r.hi.y + a > 0.0 : r.lo.y - a < 0.0) in_half = false;
        if (neighborhood_max_dist(r, a, L.parent_strip) > 10.0 * a) in_parent = false;
    }
    rep.neighborhoods_in_half = in_half;
    if (!in_half) fail("(R_i)_a within closed half-plane");
    rep.neighborhoods_in_parent = in_parent;
    if (!in_parent) fail("(R_i)_a within (S(10a))_{10a}");

    // Families disjoint after a-thickening iff core distance exceeds 2a.
    bool disjoint = true;
    for (int i = 0; i < 37 && disjoint; ++i)
        for (int j = 37; j < 74 && disjoint; ++j)
            if (L.rects[i].dist(L.rects[j]) <= 2.0 * a) disjoint = false;
    rep.families_disjoint = disjoint;
    if (!disjoint) fail("(R_i)_a disjoint from (R_{37+j})_a");

    bool disks = L.disks.size() == L.rects.size();
    for (std::size_t i = 0; disks && i < L.disks.size(); ++i) {
        Vec2 c = L.rects[i].center();
        disks = L.disks[i].center.x == c.x && L.disks[i].center.y == c.y &&
                L.disks[i].radius == L.reach_factor * a;
    }
    rep.disks_ok = disks;
    if (!disks) fail("reach disks centered on rectangles");
    return rep;
}

} // namespace boolsim
