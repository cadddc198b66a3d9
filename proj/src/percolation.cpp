#include "boolsim/percolation.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <stdexcept>

namespace boolsim {

namespace {

// Cell size policy: at least the largest radius so neighbors stay in the
// 3x3 stencil's reach, but never absurdly fine for huge rects.
double pick_cell_size(const Rect& rect, std::span<const Grain> grains) {
    double max_r = 0.0;
    for (const Grain& g : grains) max_r = std::fmax(max_r, g.radius);
    double short_side = std::fmin(rect.width(), rect.height());
    return std::fmax(max_r, std::fmax(short_side / 64.0, 1e-12));
}

} // namespace

void CrossingSolver::build_grid(const Rect& rect, std::span<const Grain> grains) {
    active_.clear();
    for (std::int32_t i = 0; i < static_cast<std::int32_t>(grains.size()); ++i) {
        if (grains[i].radius > 0.0 && disc_meets_rect(disc_of(grains[i]), rect, tol_))
            active_.push_back(i);
    }
    cell_size_ = pick_cell_size(rect, grains);
    grid_origin_ = rect.lo;
    nx_ = std::max(1, static_cast<int>(std::ceil(rect.width() / cell_size_)));
    ny_ = std::max(1, static_cast<int>(std::ceil(rect.height() / cell_size_)));
    cell_head_.assign(static_cast<std::size_t>(nx_) * ny_, -1);

    // Register every active grain in all cells its disc bbox overlaps,
    // clamped to the grid. Overlapping discs have overlapping bboxes, and
    // clamping preserves interval overlap, so any adjacent pair shares at
    // least one cell: scanning a grain's own cells finds every neighbor.
    next_in_cell_.clear();
    cell_entries_.clear();
    for (std::int32_t a = 0; a < static_cast<std::int32_t>(active_.size()); ++a) {
        const Grain& g = grains[active_[a]];
        int x0 = cell_x(g.center.x - g.radius);
        int x1 = cell_x(g.center.x + g.radius);
        int y0 = cell_y(g.center.y - g.radius);
        int y1 = cell_y(g.center.y + g.radius);
        for (int y = y0; y <= y1; ++y) {
            for (int x = x0; x <= x1; ++x) {
                std::int32_t cell = y * nx_ + x;
                cell_entries_.push_back(a);
                next_in_cell_.push_back(cell_head_[cell]);
                cell_head_[cell] = static_cast<std::int32_t>(cell_entries_.size()) - 1;
            }
        }
    }
}

int CrossingSolver::find(int x) {
    while (parent_[x] != x) {
        parent_[x] = parent_[parent_[x]];
        x = parent_[x];
    }
    return x;
}

void CrossingSolver::unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
}

template <typename Fn>
void CrossingSolver::for_each_candidate_pair(std::span<const Grain> grains,
                                             Fn&& fn) {
    for (std::int32_t ai = 0; ai < static_cast<std::int32_t>(active_.size()); ++ai) {
        const Grain& ga = grains[active_[ai]];
        int x0 = cell_x(ga.center.x - ga.radius);
        int x1 = cell_x(ga.center.x + ga.radius);
        int y0 = cell_y(ga.center.y - ga.radius);
        int y1 = cell_y(ga.center.y + ga.radius);
        for (int y = y0; y <= y1; ++y) {
            for (int x = x0; x <= x1; ++x) {
                for (std::int32_t e = cell_head_[y * nx_ + x]; e != -1;
                     e = next_in_cell_[e]) {
                    std::int32_t bi = cell_entries_[e];
                    if (bi <= ai) continue;  // each unordered pair once per cell
                    fn(ai, bi);
                }
            }
        }
    }
}

bool CrossingSolver::occupied_axis(const Rect& rect, Axis axis,
                                   std::span<const Grain> grains) {
    if (!(rect.area() > 0.0))
        throw std::invalid_argument("occupied_crossing: empty rectangle");
    build_grid(rect, grains);
    const int n = static_cast<int>(active_.size());
    const int side_lo = n, side_hi = n + 1;
    parent_.resize(n + 2);
    rank_.assign(n + 2, 0);
    for (int i = 0; i < n + 2; ++i) parent_[i] = i;

    // Edge contacts: the pair of edges orthogonal to the traverse axis.
    Vec2 lo_a = rect.lo, lo_b, hi_a, hi_b = rect.hi;
    if (axis == Axis::X) {
        lo_b = Vec2{rect.lo.x, rect.hi.y};
        hi_a = Vec2{rect.hi.x, rect.lo.y};
    } else {
        lo_b = Vec2{rect.hi.x, rect.lo.y};
        hi_a = Vec2{rect.lo.x, rect.hi.y};
    }
    for (int i = 0; i < n; ++i) {
        const Disc d = disc_of(grains[active_[i]]);
        if (disc_meets_segment(d, lo_a, lo_b, tol_)) unite(i, side_lo);
        if (disc_meets_segment(d, hi_a, hi_b, tol_)) unite(i, side_hi);
    }
    if (find(side_lo) == find(side_hi)) return true;

    for_each_candidate_pair(grains, [&](int ai, int bi) {
        if (find(ai) == find(bi)) return;
        const Disc da = disc_of(grains[active_[ai]]);
        const Disc db = disc_of(grains[active_[bi]]);
        if (!discs_overlap(da, db, tol_)) return;
        if (lens_meets_rect(da, db, rect, tol_)) unite(ai, bi);
    });
    return find(side_lo) == find(side_hi);
}

std::optional<std::vector<int>> CrossingSolver::witness_chain(
    const Rect& rect, Axis axis, std::span<const Grain> grains) {
    if (!occupied_axis(rect, axis, grains)) return std::nullopt;

    // BFS over the clipped adjacency from the low edge, parents recorded.
    const int n = static_cast<int>(active_.size());
    Vec2 lo_a = rect.lo, lo_b, hi_a, hi_b = rect.hi;
    if (axis == Axis::X) {
        lo_b = Vec2{rect.lo.x, rect.hi.y};
        hi_a = Vec2{rect.hi.x, rect.lo.y};
    } else {
        lo_b = Vec2{rect.hi.x, rect.lo.y};
        hi_a = Vec2{rect.lo.x, rect.hi.y};
    }
    std::vector<int> parent(n, -2);
    std::deque<int> queue;
    for (int i = 0; i < n; ++i) {
        if (disc_meets_segment(disc_of(grains[active_[i]]), lo_a, lo_b, tol_)) {
            parent[i] = -1;
            queue.push_back(i);
        }
    }
    while (!queue.empty()) {
        int i = queue.front();
        queue.pop_front();
        const Disc di = disc_of(grains[active_[i]]);
        if (disc_meets_segment(di, hi_a, hi_b, tol_)) {
            std::vector<int> chain;
            for (int cur = i; cur != -1; cur = parent[cur])
                chain.push_back(active_[cur]);
            std::reverse(chain.begin(), chain.end());
            return chain;
        }
        for (int j = 0; j < n; ++j) {
            if (parent[j] != -2) continue;
            const Disc dj = disc_of(grains[active_[j]]);
            if (discs_overlap(di, dj, tol_) && lens_meets_rect(di, dj, rect, tol_)) {
                parent[j] = i;
                queue.push_back(j);
            }
        }
    }
    return std::nullopt;  // unreachable when occupied_axis returned true
}

bool occupied_crossing(const CrossingQuery& query, std::span<const Grain> grains) {
    CrossingSolver solver;
    return solver.occupied_axis(query.rect, traverse_axis(query.rect, query.way),
                                grains);
}

// Rectangle duality: a vacant crossing joining one pair of sides exists iff
// there is no occupied crossing joining the other pair. The caller must
// supply every grain that meets the rectangle for the model interpretation.
bool vacant_crossing(const CrossingQuery& query, std::span<const Grain> grains) {
    CrossingQuery dual{query.rect,
                       query.way == Way::Short ? Way::Long : Way::Short,
                       Phase::Occupied};
    return !occupied_crossing(dual, grains);
}

bool crossing(const CrossingQuery& query, std::span<const Grain> grains) {
    return query.phase == Phase::Occupied ? occupied_crossing(query, grains)
                                          : vacant_crossing(query, grains);
}

ComponentStructure build_components(std::span<const Grain> grains,
                                    const std::optional<Rect>& clip, double tol) {
    const int n = static_cast<int>(grains.size());
    std::vector<int> parent(n);
    std::vector<int> rnk(n, 0);
    for (int i = 0; i < n; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    auto unite = [&](int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (rnk[a] < rnk[b]) std::swap(a, b);
        parent[b] = a;
        if (rnk[a] == rnk[b]) ++rnk[a];
    };

    std::vector<bool> in_play(n, true);
    if (clip) {
        for (int i = 0; i < n; ++i)
            in_play[i] = disc_meets_rect(disc_of(grains[i]), *clip, tol);
    }

    // Uniform hash grid over the participating discs.
    double max_r = 0.0;
    Rect bounds{{0, 0}, {0, 0}};
    bool first = true;
    for (int i = 0; i < n; ++i) {
        if (!in_play[i]) continue;
        const Grain& g = grains[i];
        max_r = std::fmax(max_r, g.radius);
        Rect bb({g.center.x - g.radius, g.center.y - g.radius},
                {g.center.x + g.radius, g.center.y + g.radius});
        if (first) {
            bounds = bb;
            first = false;
        } else {
            bounds = Rect({std::fmin(bounds.lo.x, bb.lo.x), std::fmin(bounds.lo.y, bb.lo.y)},
                          {std::fmax(bounds.hi.x, bb.hi.x), std::fmax(bounds.hi.y, bb.hi.y)});
        }
    }
    if (!first) {
        double cell = std::fmax(max_r, 1e-12);
        int nx = std::max(1, static_cast<int>(std::ceil(bounds.width() / cell)));
        int ny = std::max(1, static_cast<int>(std::ceil(bounds.height() / cell)));
        std::vector<std::int32_t> head(static_cast<std::size_t>(nx) * ny, -1);
        std::vector<std::int32_t> next(n, -1);
        auto cell_x = [&](double v) {
            return std::clamp(static_cast<int>(std::floor((v - bounds.lo.x) / cell)), 0,
                              nx - 1);
        };
        auto cell_y = [&](double v) {
            return std::clamp(static_cast<int>(std::floor((v - bounds.lo.y) / cell)), 0,
                              ny - 1);
        };
        for (int i = 0; i < n; ++i) {
            if (!in_play[i]) continue;
            std::int32_t c = cell_y(grains[i].center.y) * nx + cell_x(grains[i].center.x);
            next[i] = head[c];
            head[c] = i;
        }
        for (int i = 0; i < n; ++i) {
            if (!in_play[i]) continue;
            const Grain& gi = grains[i];
            double reach = gi.radius + max_r;
            int x0 = cell_x(gi.center.x - reach), x1 = cell_x(gi.center.x + reach);
            int y0 = cell_y(gi.center.y - reach), y1 = cell_y(gi.center.y + reach);
            for (int y = y0; y <= y1; ++y) {
                for (int x = x0; x <= x1; ++x) {
                    for (std::int32_t j = head[y * nx + x]; j != -1; j = next[j]) {
                        if (j <= i || !in_play[j]) continue;
                        const Disc di = disc_of(gi), dj = disc_of(grains[j]);
                        // Zero-radius grains join only by exact coincidence.
                        if (gi.radius == 0.0 || grains[j].radius == 0.0) {
                            if (gi.center.x == grains[j].center.x &&
                                gi.center.y == grains[j].center.y &&
                                discs_overlap(di, dj))
                                unite(i, j);
                            continue;
                        }
                        if (!discs_overlap(di, dj, tol)) continue;
                        if (!clip || lens_meets_rect(di, dj, *clip, tol)) unite(i, j);
                    }
                }
            }
        }
    }

    ComponentStructure cs;
    cs.component_of.assign(n, -1);
    std::vector<int> label(n, -1);
    for (int i = 0; i < n; ++i) {
        if (!in_play[i]) continue;
        int root = find(i);
        if (label[root] == -1) {
            label[root] = cs.n_components++;
            cs.component_bbox.push_back(Rect(
                {grains[i].center.x - grains[i].radius, grains[i].center.y - grains[i].radius},
                {grains[i].center.x + grains[i].radius, grains[i].center.y + grains[i].radius}));
        }
        cs.component_of[i] = label[root];
        Rect& bb = cs.component_bbox[label[root]];
        bb = Rect({std::fmin(bb.lo.x, grains[i].center.x - grains[i].radius),
                   std::fmin(bb.lo.y, grains[i].center.y - grains[i].radius)},
                  {std::fmax(bb.hi.x, grains[i].center.x + grains[i].radius),
                   std::fmax(bb.hi.y, grains[i].center.y + grains[i].radius)});
    }
    return cs;
}

namespace {

bool grain_meets_seed(const Grain& g, const SeedSet& seed, double tol) {
    const Disc d = disc_of(g);
    if (const Rect* r = std::get_if<Rect>(&seed)) return disc_meets_rect(d, *r, tol);
    const Segment& s = std::get<Segment>(seed);
    return disc_meets_segment(d, s.a, s.b, tol);
}

std::vector<Vec2> seed_extreme_points(const SeedSet& seed) {
    if (const Rect* r = std::get_if<Rect>(&seed)) {
        auto c = r->corners();
        return {c.begin(), c.end()};
    }
    const Segment& s = std::get<Segment>(seed);
    return {s.a, s.b};
}

} // namespace

double component_diameter(std::span<const Grain> grains, const SeedSet& seed) {
    ComponentStructure cs = build_components(grains);
    std::vector<bool> comp_in(static_cast<std::size_t>(cs.n_components), false);
    for (std::size_t i = 0; i < grains.size(); ++i) {
        if (cs.component_of[i] >= 0 && grain_meets_seed(grains[i], seed, 0.0))
            comp_in[cs.component_of[i]] = true;
    }
    std::vector<int> members;
    for (std::size_t i = 0; i < grains.size(); ++i) {
        if (cs.component_of[i] >= 0 && comp_in[cs.component_of[i]])
            members.push_back(static_cast<int>(i));
    }
    const std::vector<Vec2> pts = seed_extreme_points(seed);
    double dia = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            dia = std::fmax(dia, norm(pts[i] - pts[j]));
    // Diameter of a union of convex sets: max over pairs of support spans.
    for (std::size_t a = 0; a < members.size(); ++a) {
        const Grain& ga = grains[members[a]];
        dia = std::fmax(dia, 2.0 * ga.radius);
        for (const Vec2& p : pts)
            dia = std::fmax(dia, norm(ga.center - p) + ga.radius);
        for (std::size_t b = a + 1; b < members.size(); ++b) {
            const Grain& gb = grains[members[b]];
            dia = std::fmax(dia, norm(ga.center - gb.center) + ga.radius + gb.radius);
        }
    }
    return dia;
}

BernoulliEstimate vacant_fraction(const Rect& window,
                                  std::span<const Grain> grains,
                                  std::uint64_t n_probe, RngStream stream) {
    if (n_probe == 0)
        throw std::invalid_argument("vacant_fraction: need at least one probe");
    // Point-in-union queries served by a grid that registers each disc in
    // every cell its bbox overlaps.
    double max_r = 0.0;
    for (const Grain& g : grains) max_r = std::fmax(max_r, g.radius);
    double cell = std::fmax(std::fmax(max_r, std::fmin(window.width(), window.height()) / 64.0),
                            1e-12);
    int nx = std::max(1, static_cast<int>(std::ceil(window.width() / cell)));
    int ny = std::max(1, static_cast<int>(std::ceil(window.height() / cell)));
    std::vector<std::vector<std::int32_t>> cells(static_cast<std::size_t>(nx) * ny);
    auto cx = [&](double v) {
        return std::clamp(static_cast<int>(std::floor((v - window.lo.x) / cell)), 0, nx - 1);
    };
    auto cy = [&](double v) {
        return std::clamp(static_cast<int>(std::floor((v - window.lo.y) / cell)), 0, ny - 1);
    };
    for (std::int32_t i = 0; i < static_cast<std::int32_t>(grains.size()); ++i) {
        const Grain& g = grains[i];
        if (g.radius <= 0.0) continue;
        if (window.dist(g.center) > g.radius) continue;
        int x0 = cx(g.center.x - g.radius), x1 = cx(g.center.x + g.radius);
        int y0 = cy(g.center.y - g.radius), y1 = cy(g.center.y + g.radius);
        for (int y = y0; y <= y1; ++y)
            for (int x = x0; x <= x1; ++x) cells[y * nx + x].push_back(i);
    }
    Philox rng = stream.engine();
    std::uint64_t vacant = 0;
    for (std::uint64_t k = 0; k < n_probe; ++k) {
        Vec2 p{rng.uniform(window.lo.x, window.hi.x),
               rng.uniform(window.lo.y, window.hi.y)};
        bool covered = false;
        for (std::int32_t i : cells[cy(p.y) * nx + cx(p.x)]) {
            const Grain& g = grains[i];
            if (norm2(p - g.center) <= g.radius * g.radius) {
                covered = true;
                break;
            }
        }
        if (!covered) ++vacant;
    }
    return BernoulliEstimate::from_counts(vacant, n_probe);
}

} // namespace boolsim
