#pragma once

// Point sets with non-crossing segment constraints, the visibility graph,
// and the chain/cone/region constructions used to find mutually visible
// vertices inside a homothet.

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cgdg/geom.hpp"

namespace cgdg {

using VertexPair = std::pair<std::size_t, std::size_t>;

class Instance {
public:
    /// Validates indices, duplicate points, constraint crossings and
    /// overlaps; throws InvalidInstance.
    static Instance make(std::vector<Point> points, std::vector<VertexPair> constraints);

    std::size_t size() const { return points_.size(); }
    std::span<const Point> points() const { return points_; }
    Point point(std::size_t i) const { return points_[i]; }
    /// Constraints normalized to (min, max) and sorted.
    std::span<const VertexPair> constraints() const { return constraints_; }

    bool is_constraint(std::size_t u, std::size_t v) const;
    /// Other endpoints of the constraints incident to v, ascending.
    std::span<const std::size_t> constraint_neighbors(std::size_t v) const
    {
        return constraint_adj_[v];
    }

private:
    Instance() = default;

    std::vector<Point> points_;
    std::vector<VertexPair> constraints_;
    std::vector<std::vector<std::size_t>> constraint_adj_;
};

/// True iff uv is a constraint or properly crosses no constraint.
bool visible(const Instance& inst, std::size_t u, std::size_t v);

class VisibilityGraph {
public:
    static VisibilityGraph build(const Instance& inst);

    std::size_t size() const { return adjacency_.size(); }
    bool adjacent(std::size_t u, std::size_t v) const { return matrix_[u * size() + v] != 0; }
    std::span<const std::size_t> neighbors(std::size_t v) const { return adjacency_[v]; }
    std::span<const double> weights(std::size_t v) const { return weights_[v]; }
    std::size_t edge_count() const;

private:
    std::vector<std::vector<std::size_t>> adjacency_;
    std::vector<std::vector<double>> weights_;
    std::vector<char> matrix_;
};

/// Convex chain of visibility edges from u to v inside triangle uvw, bowed
/// toward w; the region between it and w is empty. Throws
/// PreconditionViolated when uw or vw is blocked, the triangle is
/// degenerate, or a constraint at w enters the triangle; throws
/// GeneralPositionViolation when a vertex lies on a chain edge.
std::vector<std::size_t> convex_chain(const Instance& inst, std::size_t u, std::size_t v,
                                      std::size_t w);

struct VisibilityCone {
    std::size_t apex = 0;
    std::size_t target = 0;
    Point apex_point;
    Point target_dir;
    /// Bounding half-lines, given by the vertex they lead to; empty means
    /// no bound on that side (full plane when both are empty).
    std::optional<std::size_t> cw_vertex;
    std::optional<std::size_t> ccw_vertex;
    double cw_angle = 0.0;  ///< clockwise angle from target_dir, in (0, 2pi)
    double ccw_angle = 0.0; ///< counterclockwise angle from target_dir
    bool tie = false;       ///< a bound was picked among equal angles

    bool full_plane() const { return !cw_vertex && !ccw_vertex; }
};

/// Cone at p around pq bounded by the nearest half-lines (constraints at p
/// and the given edge endpoints) that intersect the reference homothet.
VisibilityCone visibility_cone(const Instance& inst, std::span<const std::size_t> edges_at_p,
                               std::size_t p, std::size_t q, const Homothet& ref);

/// Cone intersected with the homothet, as convex CCW pieces whose union is
/// the region: one piece for a convex cone, two (split along pq) for a
/// reflex one.
std::vector<std::vector<Point>> region_of(const VisibilityCone& cone, const Homothet& h);

/// Closed membership in the union of region pieces.
bool region_contains(const std::vector<std::vector<Point>>& region, Point x,
                     double tol = kBoundaryTolerance);

/// A vertex y inside h, other than p and q, visible to both with triangle
/// pyq empty; none iff no vertex of the region of pq in h is visible to p.
std::optional<std::size_t> find_mutually_visible_witness(
    const Instance& inst, std::size_t p, std::size_t q, const Homothet& h,
    std::span<const std::size_t> edges_at_p = {});

} // namespace cgdg
