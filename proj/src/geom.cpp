#include "cgdg/geom.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace cgdg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Error bound of the floating-point orientation determinant (Shewchuk's
// ccwerrboundA).
constexpr double kEpsilon = 0x1p-53;
constexpr double kOrientBound = (3.0 + 16.0 * kEpsilon) * kEpsilon;

Sign sign_of(double v)
{
    if (v > 0) return Sign::positive;
    if (v < 0) return Sign::negative;
    return Sign::zero;
}

Sign orient_exact(Point a, Point b, Point c)
{
    using boost::multiprecision::cpp_rational;
    const cpp_rational ax(a.x), ay(a.y), bx(b.x), by(b.y), cx(c.x), cy(c.y);
    const cpp_rational det = (ax - cx) * (by - cy) - (ay - cy) * (bx - cx);
    const int s = det.sign();
    return s > 0 ? Sign::positive : (s < 0 ? Sign::negative : Sign::zero);
}

double point_segment_distance(Point p, Point a, Point b)
{
    const Point ab = b - a;
    const double len2 = dot(ab, ab);
    if (len2 == 0.0) return distance(p, a);
    const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return distance(p, a + t * ab);
}

double segment_distance(const BoundaryContact& s, const BoundaryContact& t)
{
    return std::min({point_segment_distance(s.a, t.a, t.b), point_segment_distance(s.b, t.a, t.b),
                     point_segment_distance(t.a, s.a, s.b), point_segment_distance(t.b, s.a, s.b)});
}

// Intersection of two closed segments with tolerance; returns the common
// piece (possibly a single point).
std::optional<BoundaryContact> segment_overlap(Point a0, Point a1, Point b0, Point b1, double tol)
{
    const Point r = a1 - a0;
    const Point s = b1 - b0;
    const double rl = norm(r);
    const double sl = norm(s);
    const double denom = cross(r, s);
    if (std::abs(denom) <= 1e-12 * rl * sl) {
        // Parallel: only collinear overlaps count.
        if (std::abs(cross(r, b0 - a0)) / rl > tol) return std::nullopt;
        double t0 = dot(b0 - a0, r) / (rl * rl);
        double t1 = dot(b1 - a0, r) / (rl * rl);
        if (t0 > t1) std::swap(t0, t1);
        const double lo = std::max(0.0, t0);
        const double hi = std::min(1.0, t1);
        const double slack = tol / rl;
        if (hi < lo - slack) return std::nullopt;
        const double mid = 0.5 * (lo + hi);
        if (hi < lo) return BoundaryContact{a0 + mid * r, a0 + mid * r};
        return BoundaryContact{a0 + lo * r, a0 + hi * r};
    }
    const double t = cross(b0 - a0, s) / denom;
    const double u = cross(b0 - a0, r) / denom;
    const double et = tol / rl;
    const double eu = tol / sl;
    if (t < -et || t > 1 + et || u < -eu || u > 1 + eu) return std::nullopt;
    const Point x = a0 + std::clamp(t, 0.0, 1.0) * r;
    return BoundaryContact{x, x};
}

// Restricts [lo, hi] to the parameters with a + b*s <= 0.
bool restrict_nonpositive(double a, double b, double scale, double& lo, double& hi)
{
    if (std::abs(b) <= 1e-14 * scale) {
        if (a > 1e-12) {
            lo = kInf;
            hi = -kInf;
            return false;
        }
        return true;
    }
    const double root = -a / b;
    if (b > 0)
        hi = std::min(hi, root);
    else
        lo = std::max(lo, root);
    return lo <= hi;
}

} // namespace

Point make_point(double x, double y)
{
    if (!std::isfinite(x) || !std::isfinite(y))
        throw InvalidArgument("point coordinates must be finite");
    return {x, y};
}

Segment make_segment(Point a, Point b)
{
    if (a == b) throw InvalidArgument("segment endpoints must differ");
    return {a, b};
}

Sign orient(Point a, Point b, Point c)
{
    const double detleft = (a.x - c.x) * (b.y - c.y);
    const double detright = (a.y - c.y) * (b.x - c.x);
    const double det = detleft - detright;
    const double detsum = std::abs(detleft) + std::abs(detright);
    if (std::abs(det) > kOrientBound * detsum) return sign_of(det);
    if (detsum == 0.0) return Sign::zero;
    return orient_exact(a, b, c);
}

bool segments_properly_intersect(const Segment& s1, const Segment& s2)
{
    const Sign o1 = orient(s1.a, s1.b, s2.a);
    const Sign o2 = orient(s1.a, s1.b, s2.b);
    if (o1 == Sign::zero || o2 == Sign::zero || o1 == o2) return false;
    const Sign o3 = orient(s2.a, s2.b, s1.a);
    const Sign o4 = orient(s2.a, s2.b, s1.b);
    if (o3 == Sign::zero || o4 == Sign::zero || o3 == o4) return false;
    return true;
}

bool in_segment_interior(Point p, const Segment& s)
{
    if (p == s.a || p == s.b) return false;
    if (orient(s.a, s.b, p) != Sign::zero) return false;
    // Collinear: compare along the dominant axis (exact comparisons).
    if (s.a.x != s.b.x)
        return (s.a.x < p.x && p.x < s.b.x) || (s.b.x < p.x && p.x < s.a.x);
    return (s.a.y < p.y && p.y < s.b.y) || (s.b.y < p.y && p.y < s.a.y);
}

// --- ConvexShape ---------------------------------------------------------

ConvexShape ConvexShape::make(std::vector<Point> vertices, Point origin)
{
    const std::size_t n = vertices.size();
    if (n < 3) throw InvalidShape("shape needs at least 3 vertices");
    for (const Point& v : vertices)
        if (!std::isfinite(v.x) || !std::isfinite(v.y))
            throw InvalidShape("shape vertices must be finite");
    if (!std::isfinite(origin.x) || !std::isfinite(origin.y))
        throw InvalidShape("shape origin must be finite");
    for (std::size_t i = 0; i < n; ++i) {
        const Point prev = vertices[(i + n - 1) % n];
        const Point next = vertices[(i + 1) % n];
        if (orient(prev, vertices[i], next) != Sign::positive)
            throw InvalidShape("shape must be strictly convex and counterclockwise (vertex " +
                               std::to_string(i) + ")");
    }
    for (std::size_t i = 1; i + 1 < n; ++i)
        if (orient(vertices[0], vertices[i], vertices[i + 1]) != Sign::positive)
            throw InvalidShape("shape boundary winds more than once");
    for (std::size_t i = 0; i < n; ++i)
        if (orient(vertices[i], vertices[(i + 1) % n], origin) != Sign::positive)
            throw InvalidShape("shape origin must lie strictly inside");

    ConvexShape s;
    s.vertices_ = std::move(vertices);
    s.origin_ = origin;
    s.rel_.reserve(n);
    s.normals_.reserve(n);
    s.support_.reserve(n);
    s.lengths_.reserve(n);
    s.offsets_.assign(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) s.rel_.push_back(s.vertices_[i] - origin);
    for (std::size_t i = 0; i < n; ++i) {
        const Point e = s.rel_[(i + 1) % n] - s.rel_[i];
        const double len = norm(e);
        const Point nrm{e.y / len, -e.x / len};
        s.normals_.push_back(nrm);
        s.support_.push_back(dot(nrm, s.rel_[i]));
        s.lengths_.push_back(len);
        s.offsets_[i + 1] = s.offsets_[i] + len;
    }
    return s;
}

Point ConvexShape::boundary_point(double tau) const
{
    const double per = perimeter();
    tau = std::fmod(tau, per);
    if (tau < 0) tau += per;
    auto it = std::upper_bound(offsets_.begin(), offsets_.end(), tau);
    std::size_t i = static_cast<std::size_t>(std::distance(offsets_.begin(), it));
    i = (i == 0) ? 0 : i - 1;
    if (i >= size()) i = size() - 1;
    const double t = (tau - offsets_[i]) / lengths_[i];
    return lerp(vertices_[i], vertex(i + 1), std::clamp(t, 0.0, 1.0));
}

double ConvexShape::boundary_param(Point p, double tol) const
{
    double best = kInf;
    double tau = 0.0;
    for (std::size_t i = 0; i < size(); ++i) {
        const Point a = vertices_[i];
        const Point b = vertex(i + 1);
        const double d = point_segment_distance(p, a, b);
        if (d < best) {
            best = d;
            const double along = std::clamp(dot(p - a, b - a) / lengths_[i], 0.0, lengths_[i]);
            tau = offsets_[i] + along;
        }
    }
    if (best > tol) throw PointNotOnBoundary("point is not on the shape boundary");
    return tau;
}

double ConvexShape::depth(Point p) const
{
    const Point r = p - origin_;
    double d = kInf;
    for (std::size_t i = 0; i < size(); ++i) d = std::min(d, support_[i] - dot(normals_[i], r));
    return d;
}

std::pair<double, std::size_t> ConvexShape::ray_exit(Point from, Point dir) const
{
    const Point r = from - origin_;
    double best = kInf;
    std::size_t edge = size();
    for (std::size_t i = 0; i < size(); ++i) {
        const double nd = dot(normals_[i], dir);
        if (nd <= 0) continue;
        const double t = (support_[i] - dot(normals_[i], r)) / nd;
        if (t < best) {
            best = t;
            edge = i;
        }
    }
    if (edge == size()) throw InvalidArgument("ray direction must be nonzero");
    return {std::max(best, 0.0), edge};
}

double ConvexShape::area() const { return polygon_area(vertices_); }

Point ConvexShape::centroid() const
{
    double a = 0, cx = 0, cy = 0;
    for (std::size_t i = 0; i < size(); ++i) {
        const Point p = vertices_[i];
        const Point q = vertex(i + 1);
        const double c = cross(p, q);
        a += c;
        cx += (p.x + q.x) * c;
        cy += (p.y + q.y) * c;
    }
    return {cx / (3 * a), cy / (3 * a)};
}

// --- Homothet -------------------------------------------------------------

Homothet::Homothet(ShapePtr shape, Point center, double scale)
    : shape_(std::move(shape)), center_(center), scale_(scale)
{
    if (!shape_) throw InvalidArgument("homothet needs a shape");
    if (!(scale > 0) || !std::isfinite(scale)) throw InvalidArgument("homothet scale must be positive");
    if (!std::isfinite(center.x) || !std::isfinite(center.y))
        throw InvalidArgument("homothet center must be finite");
}

std::vector<Point> Homothet::vertices() const
{
    std::vector<Point> out;
    out.reserve(shape_->size());
    for (std::size_t i = 0; i < shape_->size(); ++i) out.push_back(vertex(i));
    return out;
}

double Homothet::depth(Point p) const
{
    const Point r = p - center_;
    double d = kInf;
    for (std::size_t i = 0; i < shape_->size(); ++i)
        d = std::min(d, scale_ * shape_->support(i) - dot(shape_->normal(i), r));
    return d;
}

bool homothet_contains(const Homothet& h, Point p, Containment mode, double tol)
{
    const double d = h.depth(p);
    return mode == Containment::interior ? d > tol : d >= -tol;
}

double boundary_arc_length(const Homothet& h, Point a, Point b, Arc side, double tol)
{
    const ConvexShape& s = h.shape();
    const double ta = s.boundary_param(h.to_shape(a), tol / h.scale());
    const double tb = s.boundary_param(h.to_shape(b), tol / h.scale());
    const double per = s.perimeter();
    double ccw = std::fmod(tb - ta, per);
    if (ccw < 0) ccw += per;
    const double len = side == Arc::ccw ? ccw : per - ccw;
    return len * h.scale();
}

std::optional<std::pair<double, double>> clip_segment(const Homothet& h, Point a, Point b, double tol)
{
    double lo = 0.0, hi = 1.0;
    const Point d = b - a;
    const Point r = a - h.center();
    const ConvexShape& s = h.shape();
    for (std::size_t i = 0; i < s.size(); ++i) {
        // n.(a + t d - c) <= scale*support + tol
        const double c0 = dot(s.normal(i), r) - h.scale() * s.support(i) - tol;
        const double c1 = dot(s.normal(i), d);
        if (c1 == 0.0) {
            if (c0 > 0) return std::nullopt;
            continue;
        }
        const double root = -c0 / c1;
        if (c1 > 0)
            hi = std::min(hi, root);
        else
            lo = std::max(lo, root);
        if (lo > hi) return std::nullopt;
    }
    return std::make_pair(lo, hi);
}

// --- Pencil -----------------------------------------------------------------

double PencilRegime::representative() const
{
    const bool flo = std::isfinite(lo);
    const bool fhi = std::isfinite(hi);
    if (flo && fhi) return 0.5 * (lo + hi);
    if (flo) return lo + std::max(1.0, std::abs(lo));
    if (fhi) return hi - std::max(1.0, std::abs(hi));
    return 0.0;
}

std::optional<std::pair<double, double>> PencilRegime::interior_interval(const ConvexShape& shape,
                                                                         Point x) const
{
    double a_lo = -kInf;
    double a_hi = kInf;
    const double rate_scale = norm(center_rate) + std::abs(scale_rate);
    const Point r = x - center0;
    for (std::size_t k = 0; k < shape.size(); ++k) {
        const Point n = shape.normal(k);
        const double a = dot(n, r) - shape.support(k) * scale0;
        const double b = -dot(n, center_rate) - shape.support(k) * scale_rate;
        if (std::abs(b) <= 1e-14 * rate_scale * (1.0 + shape.support(k))) {
            if (a >= 0) return std::nullopt;
            continue;
        }
        const double root = -a / b;
        if (b > 0)
            a_hi = std::min(a_hi, root);
        else
            a_lo = std::max(a_lo, root);
        if (!(a_lo < a_hi)) return std::nullopt;
    }
    if (a_hi <= lo || a_lo >= hi) return std::nullopt;
    return std::make_pair(a_lo, a_hi);
}

std::vector<PencilRegime> pencil_through(const ShapePtr& shape_ptr, Point p, Point q)
{
    if (!shape_ptr) throw InvalidArgument("pencil needs a shape");
    if (p == q) throw InvalidArgument("pencil needs two distinct points");
    const ConvexShape& shape = *shape_ptr;
    const std::size_t n = shape.size();
    const Point d = q - p;
    const Point dn = (1.0 / norm(d)) * d;

    std::vector<double> off(n);
    for (std::size_t k = 0; k < n; ++k) off[k] = cross(dn, shape.relative_vertex(k));
    std::vector<double> sorted = off;
    std::sort(sorted.begin(), sorted.end());
    const double width = sorted.back() - sorted.front();

    auto covering_edge = [&](double s, bool front) -> std::optional<std::size_t> {
        for (std::size_t k = 0; k < n; ++k) {
            const double nd = dot(shape.normal(k), dn);
            if (front ? nd <= 1e-14 : nd >= -1e-14) continue;
            const double a = off[k];
            const double b = off[(k + 1) % n];
            if (std::min(a, b) <= s && s <= std::max(a, b)) return k;
        }
        return std::nullopt;
    };

    double max_support = 0.0;
    for (std::size_t k = 0; k < n; ++k) max_support = std::max(max_support, shape.support(k));

    std::vector<PencilRegime> regimes;
    for (std::size_t idx = 0; idx + 1 < n; ++idx) {
        const double a = sorted[idx];
        const double b = sorted[idx + 1];
        if (b - a <= 1e-12 * width) continue;
        const double mid = 0.5 * (a + b);
        const auto i = covering_edge(mid, false);
        const auto j = covering_edge(mid, true);
        if (!i || !j) throw DegenerateDirection("no boundary feature pair covers the chord family");

        const Point ni = shape.normal(*i);
        const Point nj = shape.normal(*j);
        const double di = shape.support(*i);
        const double dj = shape.support(*j);
        const double ri = dot(ni, p);
        const double rj = dot(nj, q);
        const double vx = ni.y * dj - di * nj.y;
        const double vy = di * nj.x - ni.x * dj;

        PencilRegime reg;
        reg.p_edge = *i;
        reg.q_edge = *j;
        if (std::abs(vx) >= std::abs(vy)) {
            const double D = vx;
            reg.axis = Axis::x;
            reg.center0 = {0.0, (ri * dj - di * rj) / D};
            reg.center_rate = {1.0, (-ni.x * dj + di * nj.x) / D};
            reg.scale0 = (ni.y * rj - nj.y * ri) / D;
            reg.scale_rate = (-ni.y * nj.x + nj.y * ni.x) / D;
        } else {
            const double D = ni.x * dj - di * nj.x;
            reg.axis = Axis::y;
            reg.center0 = {(ri * dj - di * rj) / D, 0.0};
            reg.center_rate = {(-ni.y * dj + di * nj.y) / D, 1.0};
            reg.scale0 = (ni.x * rj - nj.x * ri) / D;
            reg.scale_rate = (-ni.x * nj.y + nj.x * ni.y) / D;
        }

        double lo = -kInf, hi = kInf;
        const double rate_scale = norm(reg.center_rate) + std::abs(reg.scale_rate) * max_support;
        bool ok = restrict_nonpositive(-reg.scale0, -reg.scale_rate, std::abs(reg.scale_rate) + 1.0, lo, hi);
        for (std::size_t k = 0; ok && k < n; ++k) {
            const Point nk = shape.normal(k);
            const double dk = shape.support(k);
            const double b = -dot(nk, reg.center_rate) - dk * reg.scale_rate;
            if (k != *i)
                ok = restrict_nonpositive(dot(nk, p - reg.center0) - dk * reg.scale0, b, rate_scale, lo, hi);
            if (ok && k != *j)
                ok = restrict_nonpositive(dot(nk, q - reg.center0) - dk * reg.scale0, b, rate_scale, lo, hi);
        }
        if (!ok) continue;
        reg.lo = lo;
        reg.hi = hi;
        regimes.push_back(reg);
    }
    if (regimes.empty()) throw DegenerateDirection("no homothet has both points on its boundary");
    return regimes;
}

std::vector<PencilEvent> pencil_events(const PencilRegime& regime, const ConvexShape& shape,
                                       std::span<const Point> points,
                                       std::span<const std::size_t> candidates)
{
    std::vector<PencilEvent> events;
    for (std::size_t v : candidates) {
        const auto iv = regime.interior_interval(shape, points[v]);
        if (!iv) continue;
        events.push_back({std::max(iv->first, regime.lo), v, EventKind::enter});
        events.push_back({std::min(iv->second, regime.hi), v, EventKind::leave});
    }
    std::stable_sort(events.begin(), events.end(),
                     [](const PencilEvent& a, const PencilEvent& b) { return a.param < b.param; });
    return events;
}

// --- Boundary intersections --------------------------------------------------

ContactSet homothet_pair_intersection_components(const Homothet& h1, const Homothet& h2)
{
    const auto v1 = h1.vertices();
    const auto v2 = h2.vertices();
    const double scale = std::max(1.0, std::max(h1.perimeter(), h2.perimeter()));
    const double tol = kBoundaryTolerance * scale;

    std::vector<BoundaryContact> pieces;
    for (std::size_t i = 0; i < v1.size(); ++i)
        for (std::size_t j = 0; j < v2.size(); ++j)
            if (auto c = segment_overlap(v1[i], v1[(i + 1) % v1.size()], v2[j],
                                         v2[(j + 1) % v2.size()], tol))
                pieces.push_back(*c);

    // Union pieces that touch.
    std::vector<std::size_t> parent(pieces.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t a = 0; a < pieces.size(); ++a)
        for (std::size_t b = a + 1; b < pieces.size(); ++b)
            if (segment_distance(pieces[a], pieces[b]) <= 10 * tol) parent[find(a)] = find(b);

    ContactSet out;
    std::vector<std::vector<Point>> groups(pieces.size());
    for (std::size_t a = 0; a < pieces.size(); ++a) {
        groups[find(a)].push_back(pieces[a].a);
        groups[find(a)].push_back(pieces[a].b);
    }
    for (const auto& g : groups) {
        if (g.empty()) continue;
        // Farthest pair spans the component; all points must lie on it.
        Point s = g.front(), t = g.front();
        double best = -1;
        for (const Point& x : g)
            for (const Point& y : g)
                if (distance(x, y) > best) {
                    best = distance(x, y);
                    s = x;
                    t = y;
                }
        if (best > tol)
            for (const Point& x : g)
                if (point_segment_distance(x, s, t) > 10 * tol) out.polyline = true;
        out.components.push_back({s, t});
    }
    return out;
}

// --- Polygons -----------------------------------------------------------------

std::vector<Point> clip_left(std::span<const Point> polygon, Point on_line, Point dir)
{
    std::vector<Point> out;
    const std::size_t n = polygon.size();
    auto side = [&](Point p) { return cross(dir, p - on_line); };
    for (std::size_t i = 0; i < n; ++i) {
        const Point a = polygon[i];
        const Point b = polygon[(i + 1) % n];
        const double sa = side(a);
        const double sb = side(b);
        if (sa >= 0) out.push_back(a);
        if ((sa > 0 && sb < 0) || (sa < 0 && sb > 0)) out.push_back(lerp(a, b, sa / (sa - sb)));
    }
    return out;
}

double polygon_area(std::span<const Point> polygon)
{
    double a = 0;
    for (std::size_t i = 0; i < polygon.size(); ++i)
        a += cross(polygon[i], polygon[(i + 1) % polygon.size()]);
    return 0.5 * a;
}

bool convex_polygon_contains(std::span<const Point> polygon, Point p, double tol)
{
    const std::size_t n = polygon.size();
    if (n == 0) return false;
    if (n == 1) return distance(polygon[0], p) <= tol;
    if (n == 2) return point_segment_distance(p, polygon[0], polygon[1]) <= tol;
    for (std::size_t i = 0; i < n; ++i) {
        const Point a = polygon[i];
        const Point b = polygon[(i + 1) % n];
        const double len = distance(a, b);
        if (len == 0) continue;
        if (cross(b - a, p - a) / len < -tol) return false;
    }
    return true;
}

} // namespace cgdg
