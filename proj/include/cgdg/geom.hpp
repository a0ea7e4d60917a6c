#pragma once

// Geometric kernel: points, robust orientation, convex polygons and their
// homothets, and the one-parameter pencil of homothets through two points.

#include <cmath>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cgdg/errors.hpp"

namespace cgdg {

/// Absolute tolerance for distance-based tests on normalized instances.
inline constexpr double kBoundaryTolerance = 1e-9;

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
inline Point operator*(Point a, double s) { return {s * a.x, s * a.y}; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(b - a); }
inline Point perp(Point a) { return {-a.y, a.x}; }
inline Point lerp(Point a, Point b, double t) { return a + t * (b - a); }

/// Builds a point, rejecting NaN and infinite coordinates.
Point make_point(double x, double y);

struct Segment {
    Point a;
    Point b;
};

/// Builds a segment, rejecting degenerate (a == b) input.
Segment make_segment(Point a, Point b);

enum class Sign { negative = -1, zero = 0, positive = 1 };

/// Sign of the signed area of triangle abc. Exact for all finite doubles:
/// a floating-point filter decides the easy cases and an exact rational
/// evaluation settles the rest.
Sign orient(Point a, Point b, Point c);

/// True iff the segments cross at a single point interior to both.
bool segments_properly_intersect(const Segment& s1, const Segment& s2);

/// True iff p lies on segment s strictly between its endpoints (exact).
bool in_segment_interior(Point p, const Segment& s);

/// Strictly convex polygon in counterclockwise order with an interior
/// reference origin. All homothets are taken relative to the origin.
class ConvexShape {
public:
    /// Validates and builds the shape; throws InvalidShape on bad input.
    static ConvexShape make(std::vector<Point> vertices, Point origin);

    std::size_t size() const { return vertices_.size(); }
    std::span<const Point> vertices() const { return vertices_; }
    Point vertex(std::size_t i) const { return vertices_[i % size()]; }
    Point origin() const { return origin_; }

    /// Vertex i relative to the origin.
    Point relative_vertex(std::size_t i) const { return rel_[i % size()]; }
    /// Unit outward normal of edge i (vertex i to vertex i+1).
    Point normal(std::size_t i) const { return normals_[i % size()]; }
    /// Distance from the origin to the supporting line of edge i.
    double support(std::size_t i) const { return support_[i % size()]; }
    double edge_length(std::size_t i) const { return lengths_[i % size()]; }
    /// Arc length from vertex 0 to vertex i, counterclockwise.
    double arc_offset(std::size_t i) const { return offsets_[i]; }
    double perimeter() const { return offsets_.back(); }

    /// Point at counterclockwise arc length tau from vertex 0.
    Point boundary_point(double tau) const;

    /// Arc-length parameter of a boundary point; throws PointNotOnBoundary
    /// when p is farther than tol from the boundary.
    double boundary_param(Point p, double tol = kBoundaryTolerance) const;

    /// Signed distance to the boundary, positive inside.
    double depth(Point p) const;

    /// Distance from an interior (or boundary) point along dir to the
    /// boundary, with the index of the edge hit. dir need not be unit.
    std::pair<double, std::size_t> ray_exit(Point from, Point dir) const;

    double area() const;
    Point centroid() const;

private:
    ConvexShape() = default;

    std::vector<Point> vertices_;
    Point origin_;
    std::vector<Point> rel_;
    std::vector<Point> normals_;
    std::vector<double> support_;
    std::vector<double> lengths_;
    std::vector<double> offsets_;
};

using ShapePtr = std::shared_ptr<const ConvexShape>;

inline ShapePtr share(ConvexShape shape)
{
    return std::make_shared<const ConvexShape>(std::move(shape));
}

/// center + scale * (C - origin).
class Homothet {
public:
    Homothet(ShapePtr shape, Point center, double scale);

    const ConvexShape& shape() const { return *shape_; }
    const ShapePtr& shape_ptr() const { return shape_; }
    Point center() const { return center_; }
    double scale() const { return scale_; }

    Point vertex(std::size_t i) const { return center_ + scale_ * shape_->relative_vertex(i); }
    std::vector<Point> vertices() const;
    double perimeter() const { return scale_ * shape_->perimeter(); }

    /// Signed distance to the boundary, positive inside.
    double depth(Point p) const;

    /// Maps a point to shape coordinates (inverse of the homothety).
    Point to_shape(Point p) const { return shape_->origin() + (1.0 / scale_) * (p - center_); }
    Point from_shape(Point z) const { return center_ + scale_ * (z - shape_->origin()); }

private:
    ShapePtr shape_;
    Point center_;
    double scale_;
};

enum class Containment { interior, closed };

bool homothet_contains(const Homothet& h, Point p, Containment mode,
                       double tol = kBoundaryTolerance);

/// Which boundary arc between two points: traversed counterclockwise or
/// clockwise from the first point to the second.
enum class Arc { ccw, cw };

double boundary_arc_length(const Homothet& h, Point a, Point b, Arc side,
                           double tol = kBoundaryTolerance);

/// Clips segment ab against the closed homothet; returns the parameter
/// range [t0, t1] within [0, 1] or nothing when they are disjoint.
std::optional<std::pair<double, double>> clip_segment(const Homothet& h, Point a, Point b,
                                                      double tol = kBoundaryTolerance);

enum class Axis { x, y };

/// One piece of the pencil of homothets having p and q on their boundary:
/// p stays on edge p_edge and q on edge q_edge of the shape. The parameter
/// is the center coordinate along `axis`; center and scale are affine in it.
struct PencilRegime {
    std::size_t p_edge = 0;
    std::size_t q_edge = 0;
    Axis axis = Axis::x;
    double lo = 0.0; ///< may be -inf
    double hi = 0.0; ///< may be +inf
    Point center0;
    Point center_rate;
    double scale0 = 0.0;
    double scale_rate = 0.0;

    Point center(double s) const { return center0 + s * center_rate; }
    double scale(double s) const { return scale0 + s * scale_rate; }
    Homothet at(const ShapePtr& shape, double s) const { return {shape, center(s), scale(s)}; }

    /// Open parameter interval in which x lies in the homothet's interior.
    /// Not clipped to the regime; nothing when it misses (lo, hi).
    std::optional<std::pair<double, double>> interior_interval(const ConvexShape& shape,
                                                               Point x) const;

    /// A finite parameter strictly inside the regime.
    double representative() const;
};

/// Ordered decomposition of the pencil through p and q, sorted along the
/// family (by the offset of the chord of C parallel to pq). Families with p
/// and q on a common edge are omitted: each of them contains the homothet at
/// the adjacent regime endpoint, so they never witness an empty homothet.
std::vector<PencilRegime> pencil_through(const ShapePtr& shape, Point p, Point q);

enum class EventKind { enter, leave };

struct PencilEvent {
    double param = 0.0;
    std::size_t vertex = 0;
    EventKind kind = EventKind::enter;
};

/// Enter/leave events of the given candidate points inside one regime,
/// clipped to the regime and sorted by parameter.
std::vector<PencilEvent> pencil_events(const PencilRegime& regime, const ConvexShape& shape,
                                       std::span<const Point> points,
                                       std::span<const std::size_t> candidates);

/// One connected piece of the intersection of two homothet boundaries.
struct BoundaryContact {
    Point a;
    Point b;
    bool is_point() const { return distance(a, b) <= kBoundaryTolerance; }
};

/// Connected components of the intersection of the two boundaries. Each
/// component is reported as a point or a segment; `polyline` is set when a
/// component is neither.
struct ContactSet {
    std::vector<BoundaryContact> components;
    bool polyline = false;
};

ContactSet homothet_pair_intersection_components(const Homothet& h1, const Homothet& h2);

/// Clips a convex CCW polygon by the half-plane to the left of the directed
/// line through `on_line` with direction `dir`.
std::vector<Point> clip_left(std::span<const Point> polygon, Point on_line, Point dir);

double polygon_area(std::span<const Point> polygon);

/// Point in closed convex CCW polygon with absolute tolerance.
bool convex_polygon_contains(std::span<const Point> polygon, Point p,
                             double tol = kBoundaryTolerance);

} // namespace cgdg
