// The 74-rectangle knitting layout behind the scale recursion: two thin
// bands T and T~ along a 100a x 10a strip, each tiled by 19 horizontal
// 10a x a rectangles bridged by 18 vertical a x 10a rectangles, the upper
// family mirroring the lower across the x-axis. Each rectangle carries a
// reach disk of radius kappa*a.
#pragma once

#include <string>
#include <vector>

#include "boolsim/geom.hpp"

namespace boolsim {

struct Lemma1Layout {
    double alpha = 1.0;
    double reach_factor = 1e6;
    Rect parent_strip;            // S(10a)
    Rect band_lower;              // T
    Rect band_upper;              // T~
    std::vector<Rect> rects;      // R_1..R_74 (index 0-based)
    std::vector<Disc> disks;      // D_1..D_74
    std::vector<Orientation> orientation;
};

// Deterministic construction; kappa = 1e6 reproduces the reference
// coordinates, smaller kappa (>= 10) keeps desk-scale runs affordable.
Lemma1Layout build_lemma1_layout(double alpha, double reach_factor = 1e6);

struct JunctionCheck {
    int lower_horiz = 0;   // 1-based id of the left horizontal rectangle
    int vertical = 0;      // 1-based id of the bridging vertical rectangle
    bool overlap_spans_vertical_width = false;
    bool overlap_spans_band_height = false;
    bool vertical_slab_inside_both_horizontals = false;
    bool horizontals_match_band = false;
    bool pass = false;
};

struct KnittingReport {
    std::vector<JunctionCheck> junctions;  // 18 per band
    bool all_pass = false;
};

// Checks, for every consecutive horizontal pair and its bridging vertical,
// that the overlap with the band satisfies the dual-crossing conditions:
// long-way vacant crossings of all 37 rectangles then concatenate into a
// long-way vacant crossing of the band.
KnittingReport verify_knitting(const Lemma1Layout& layout);

struct LayoutInvariantReport {
    bool coordinates_ok = false;        // stated centers and sizes
    bool mirror_ok = false;             // R_{37+i} reflects R_i
    bool neighborhoods_in_half = false; // (R_i)_a within lower/upper half
    bool neighborhoods_in_parent = false;  // within (S(10a))_{10a}
    bool families_disjoint = false;     // (R_i)_a vs (R_{37+j})_a
    bool disks_ok = false;              // centers and radii
    std::vector<std::string> failures;
    bool all_ok() const {
        return coordinates_ok && mirror_ok && neighborhoods_in_half &&
               neighborhoods_in_parent && families_disjoint && disks_ok;
    }
};

LayoutInvariantReport check_layout_invariants(const Lemma1Layout& layout);

} // namespace boolsim
