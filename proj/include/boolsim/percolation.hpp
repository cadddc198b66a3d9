// Crossing detection and connectivity for planar grain sets. A crossing is a
// chain of grains whose clipped pieces inside the rectangle are pairwise
// connected (lens-meets-rect adjacency) and whose ends touch the two target
// edges; clipped pieces are convex, so the chain condition is exact.
// Vacant crossings are the planar duals of occupied ones.
#pragma once

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "boolsim/geom.hpp"
#include "boolsim/model.hpp"
#include "boolsim/rng.hpp"
#include "boolsim/stats.hpp"

namespace boolsim {

enum class Way { Short, Long };
enum class Phase { Occupied, Vacant };

struct CrossingQuery {
    Rect rect;
    Way way = Way::Short;
    Phase phase = Phase::Occupied;
};

// Axis along which a path progresses: a short-way crossing joins the two
// long sides, so it traverses the short axis.
inline Axis traverse_axis(const Rect& rect, Way way) {
    return way == Way::Short ? other(rect.long_axis()) : rect.long_axis();
}

// Reusable crossing engine. Scratch buffers persist across calls so that
// replicated Monte Carlo queries do not allocate.
class CrossingSolver {
public:
    explicit CrossingSolver(double tol = 1e-12) : tol_(tol) {}

    // Occupied chain from the rect edge at the low end of `axis` to the edge
    // at the high end, using only the given grains.
    bool occupied_axis(const Rect& rect, Axis axis, std::span<const Grain> grains);

    // Grain indices of one connecting chain, when a crossing exists.
    std::optional<std::vector<int>> witness_chain(const Rect& rect, Axis axis,
                                                  std::span<const Grain> grains);

private:
    void build_grid(const Rect& rect, std::span<const Grain> grains);
    int find(int x);
    void unite(int a, int b);
    template <typename Fn>
    void for_each_candidate_pair(std::span<const Grain> grains, Fn&& fn);
    int cell_x(double v) const {
        int c = static_cast<int>(std::floor((v - grid_origin_.x) / cell_size_));
        return c < 0 ? 0 : (c >= nx_ ? nx_ - 1 : c);
    }
    int cell_y(double v) const {
        int c = static_cast<int>(std::floor((v - grid_origin_.y) / cell_size_));
        return c < 0 ? 0 : (c >= ny_ ? ny_ - 1 : c);
    }

    double tol_;
    double cell_size_ = 1.0;
    int nx_ = 0, ny_ = 0;
    Vec2 grid_origin_;
    std::vector<std::int32_t> cell_head_;     // per cell: head into entry list
    std::vector<std::int32_t> next_in_cell_;  // linked entries
    std::vector<std::int32_t> cell_entries_;  // entry -> active index
    std::vector<std::int32_t> active_;        // indices into the grain span
    std::vector<std::int32_t> parent_;
    std::vector<std::int32_t> rank_;
};

bool occupied_crossing(const CrossingQuery& query, std::span<const Grain> grains);
bool vacant_crossing(const CrossingQuery& query, std::span<const Grain> grains);

// true iff the occupied/vacant crossing of the query holds; dispatches on
// phase and applies rectangle duality for the vacant side.
bool crossing(const CrossingQuery& query, std::span<const Grain> grains);

// Connected components of the grain overlap graph. With `clip`, adjacency is
// lens-meets-rect inside the clip rectangle and only grains meeting the clip
// participate; without it, plain disc overlap.
struct ComponentStructure {
    std::vector<std::int32_t> component_of;  // -1 for grains outside the clip
    std::int32_t n_components = 0;
    std::vector<Rect> component_bbox;        // over member discs
};

ComponentStructure build_components(std::span<const Grain> grains,
                                    const std::optional<Rect>& clip = {},
                                    double tol = 1e-12);

struct Segment {
    Vec2 a;
    Vec2 b;
};
using SeedSet = std::variant<Rect, Segment>;

// Euclidean diameter of the union of the seed set with every grain component
// meeting it. D(empty) = 0 never arises: the seed itself has a diameter.
double component_diameter(std::span<const Grain> grains, const SeedSet& seed);

// Fraction of uniform probe points in `window` not covered by any grain.
BernoulliEstimate vacant_fraction(const Rect& window,
                                  std::span<const Grain> grains,
                                  std::uint64_t n_probe, RngStream stream);

} // namespace boolsim
