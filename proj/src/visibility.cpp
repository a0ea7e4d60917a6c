#include "cgdg/visibility.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace cgdg {

namespace {

VertexPair normalized(std::size_t u, std::size_t v) { return u < v ? VertexPair{u, v} : VertexPair{v, u}; }

bool in_closed_triangle(Point a, Point b, Point c, Point x)
{
    const Sign s = orient(a, b, c);
    for (Sign o : {orient(a, b, x), orient(b, c, x), orient(c, a, x)})
        if (o != Sign::zero && o != s) return false;
    return true;
}

// Strict convex hull (no collinear points), counterclockwise.
std::vector<std::size_t> convex_hull(std::span<const Point> pts, std::vector<std::size_t> idx)
{
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return pts[a].x < pts[b].x || (pts[a].x == pts[b].x && pts[a].y < pts[b].y);
    });
    if (idx.size() < 3) return idx;
    std::vector<std::size_t> h(2 * idx.size());
    std::size_t k = 0;
    for (std::size_t i : idx) {
        while (k >= 2 && orient(pts[h[k - 2]], pts[h[k - 1]], pts[i]) != Sign::positive) --k;
        h[k++] = i;
    }
    for (std::size_t t = idx.size() - 1, lower = k + 1; t-- > 0;) {
        const std::size_t i = idx[t];
        while (k >= lower && orient(pts[h[k - 2]], pts[h[k - 1]], pts[i]) != Sign::positive) --k;
        h[k++] = i;
    }
    h.resize(k - 1);
    return h;
}

constexpr double kTwoPi = 2 * std::numbers::pi;

} // namespace

Instance Instance::make(std::vector<Point> points, std::vector<VertexPair> constraints)
{
    const std::size_t n = points.size();
    for (const Point& p : points)
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw InvalidInstance("point coordinates must be finite");
    {
        std::vector<Point> sorted = points;
        std::sort(sorted.begin(), sorted.end(),
                  [](Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw InvalidInstance("duplicate points");
    }
    for (auto& c : constraints) {
        if (c.first >= n || c.second >= n)
            throw InvalidInstance("constraint endpoint index out of range");
        if (c.first == c.second) throw InvalidInstance("constraint endpoints must differ");
        c = normalized(c.first, c.second);
    }
    std::sort(constraints.begin(), constraints.end());
    if (std::adjacent_find(constraints.begin(), constraints.end()) != constraints.end())
        throw InvalidInstance("duplicate constraints");

    for (std::size_t i = 0; i < constraints.size(); ++i) {
        const Segment si{points[constraints[i].first], points[constraints[i].second]};
        for (std::size_t v = 0; v < n; ++v)
            if (in_segment_interior(points[v], si))
                throw InvalidInstance("point " + std::to_string(v) + " lies inside constraint (" +
                                      std::to_string(constraints[i].first) + "," +
                                      std::to_string(constraints[i].second) + ")");
        for (std::size_t j = i + 1; j < constraints.size(); ++j) {
            const Segment sj{points[constraints[j].first], points[constraints[j].second]};
            if (segments_properly_intersect(si, sj))
                throw InvalidInstance("constraints (" + std::to_string(constraints[i].first) + "," +
                                      std::to_string(constraints[i].second) + ") and (" +
                                      std::to_string(constraints[j].first) + "," +
                                      std::to_string(constraints[j].second) + ") cross");
        }
    }

    Instance inst;
    inst.points_ = std::move(points);
    inst.constraints_ = std::move(constraints);
    inst.constraint_adj_.resize(n);
    for (const auto& [a, b] : inst.constraints_) {
        inst.constraint_adj_[a].push_back(b);
        inst.constraint_adj_[b].push_back(a);
    }
    for (auto& adj : inst.constraint_adj_) std::sort(adj.begin(), adj.end());
    return inst;
}

bool Instance::is_constraint(std::size_t u, std::size_t v) const
{
    const auto& adj = constraint_adj_[u];
    return std::binary_search(adj.begin(), adj.end(), v);
}

bool visible(const Instance& inst, std::size_t u, std::size_t v)
{
    if (u == v) throw InvalidArgument("visibility needs two distinct vertices");
    if (inst.is_constraint(u, v)) return true;
    const Segment s{inst.point(u), inst.point(v)};
    for (const auto& [a, b] : inst.constraints())
        if (segments_properly_intersect(s, {inst.point(a), inst.point(b)})) return false;
    return true;
}

VisibilityGraph VisibilityGraph::build(const Instance& inst)
{
    const std::size_t n = inst.size();
    VisibilityGraph g;
    g.adjacency_.resize(n);
    g.weights_.resize(n);
    g.matrix_.assign(n * n, 0);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            if (visible(inst, u, v)) g.matrix_[u * n + v] = g.matrix_[v * n + u] = 1;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v)
            if (g.matrix_[u * n + v]) {
                g.adjacency_[u].push_back(v);
                g.weights_[u].push_back(distance(inst.point(u), inst.point(v)));
            }
    return g;
}

std::size_t VisibilityGraph::edge_count() const
{
    std::size_t m = 0;
    for (const auto& a : adjacency_) m += a.size();
    return m / 2;
}

std::vector<std::size_t> convex_chain(const Instance& inst, std::size_t u, std::size_t v,
                                      std::size_t w)
{
    const auto pts = inst.points();
    const Sign side = orient(pts[u], pts[v], pts[w]);
    if (u == v || u == w || v == w || side == Sign::zero)
        throw PreconditionViolated("convex chain needs a non-degenerate triangle");
    if (!visible(inst, u, w) || !visible(inst, v, w))
        throw PreconditionViolated("convex chain needs uw and vw to be visibility edges");
    for (std::size_t x : inst.constraint_neighbors(w)) {
        if (x == u || x == v) continue;
        if (orient(pts[w], pts[u], pts[x]) == orient(pts[w], pts[u], pts[v]) &&
            orient(pts[w], pts[v], pts[x]) == orient(pts[w], pts[v], pts[u]))
            throw PreconditionViolated("a constraint at w enters the triangle");
    }

    std::vector<std::size_t> cand{u, v};
    for (std::size_t x = 0; x < inst.size(); ++x)
        if (x != u && x != v && x != w && in_closed_triangle(pts[u], pts[v], pts[w], pts[x]))
            cand.push_back(x);

    const std::vector<std::size_t> hull = convex_hull(pts, cand);
    const auto iu = std::find(hull.begin(), hull.end(), u) - hull.begin();
    const auto iv = std::find(hull.begin(), hull.end(), v) - hull.begin();
    const auto h = static_cast<std::ptrdiff_t>(hull.size());
    std::vector<std::size_t> chain;
    if (side == Sign::positive) {
        for (auto i = iv;; i = (i + 1) % h) {
            chain.push_back(hull[i]);
            if (i == iu) break;
        }
        std::reverse(chain.begin(), chain.end());
    } else {
        for (auto i = iu;; i = (i + 1) % h) {
            chain.push_back(hull[i]);
            if (i == iv) break;
        }
    }

    for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
        const Segment e{pts[chain[k]], pts[chain[k + 1]]};
        for (std::size_t x : cand)
            if (in_segment_interior(pts[x], e))
                throw GeneralPositionViolation("vertex " + std::to_string(x) +
                                               " lies on a convex chain edge");
        if (!visible(inst, chain[k], chain[k + 1]))
            throw PreconditionViolated("convex chain edge is blocked by a constraint");
    }
    return chain;
}

VisibilityCone visibility_cone(const Instance& inst, std::span<const std::size_t> edges_at_p,
                               std::size_t p, std::size_t q, const Homothet& ref)
{
    VisibilityCone cone;
    cone.apex = p;
    cone.target = q;
    cone.apex_point = inst.point(p);
    cone.target_dir = inst.point(q) - inst.point(p);

    std::vector<std::size_t> others(inst.constraint_neighbors(p).begin(),
                                    inst.constraint_neighbors(p).end());
    others.insert(others.end(), edges_at_p.begin(), edges_at_p.end());
    std::sort(others.begin(), others.end());
    others.erase(std::unique(others.begin(), others.end()), others.end());

    const Point pp = inst.point(p);
    const Point d = cone.target_dir;
    double best_cw = kTwoPi + 1, best_ccw = kTwoPi + 1;
    double len_cw = 0, len_ccw = 0;
    for (std::size_t x : others) {
        if (x == p || x == q) continue;
        const Point e = inst.point(x) - pp;
        if (orient(pp, inst.point(q), inst.point(x)) == Sign::zero && dot(d, e) > 0) continue;
        const auto clip = clip_segment(ref, pp, inst.point(x));
        // Touching h only at p (within the boundary tolerance band) is not an
        // intersection.
        if (!clip || clip->second * norm(e) <= 1e-7) continue;
        double ccw = std::atan2(cross(d, e), dot(d, e));
        if (ccw <= 0) ccw += kTwoPi;
        const double cw = kTwoPi - ccw;
        const double len = norm(e);
        auto consider = [&](double angle, double& best, double& best_len,
                            std::optional<std::size_t>& slot) {
            if (angle < best || (angle == best && len < best_len)) {
                if (angle == best) cone.tie = true;
                best = angle;
                best_len = len;
                slot = x;
            } else if (angle == best) {
                cone.tie = true;
            }
        };
        consider(cw, best_cw, len_cw, cone.cw_vertex);
        consider(ccw, best_ccw, len_ccw, cone.ccw_vertex);
    }
    if (cone.cw_vertex) cone.cw_angle = best_cw;
    if (cone.ccw_vertex) cone.ccw_angle = best_ccw;
    return cone;
}

std::vector<std::vector<Point>> region_of(const VisibilityCone& cone, const Homothet& h)
{
    std::vector<Point> poly = h.vertices();
    if (cone.full_plane()) return {poly};
    const Point d = cone.target_dir;
    const Point apex = cone.apex_point;
    auto rotated = [&](double a) {
        return Point{d.x * std::cos(a) - d.y * std::sin(a), d.x * std::sin(a) + d.y * std::cos(a)};
    };
    const double pi = std::numbers::pi;
    if (cone.cw_angle + cone.ccw_angle <= pi) {
        poly = clip_left(poly, apex, rotated(-cone.cw_angle));
        poly = clip_left(poly, apex, -1.0 * rotated(cone.ccw_angle));
        return {poly};
    }
    // Reflex cone (a single bound is both neighbors): split along pq into
    // two convex halves, each clipped by its own bound.
    std::vector<Point> left = clip_left(poly, apex, d);
    if (cone.ccw_angle < pi) left = clip_left(left, apex, -1.0 * rotated(cone.ccw_angle));
    std::vector<Point> right = clip_left(poly, apex, -1.0 * d);
    if (cone.cw_angle < pi) right = clip_left(right, apex, rotated(-cone.cw_angle));
    std::vector<std::vector<Point>> pieces;
    if (left.size() >= 3) pieces.push_back(std::move(left));
    if (right.size() >= 3) pieces.push_back(std::move(right));
    return pieces;
}

bool region_contains(const std::vector<std::vector<Point>>& region, Point x, double tol)
{
    return std::any_of(region.begin(), region.end(),
                       [&](const std::vector<Point>& piece) { return convex_polygon_contains(piece, x, tol); });
}

std::optional<std::size_t> find_mutually_visible_witness(const Instance& inst, std::size_t p,
                                                         std::size_t q, const Homothet& h,
                                                         std::span<const std::size_t> edges_at_p)
{
    const VisibilityCone cone = visibility_cone(inst, edges_at_p, p, q, h);
    const auto region = region_of(cone, h);
    const Point pp = inst.point(p);
    const Point d = inst.point(q) - pp;

    std::optional<std::size_t> best;
    double best_angle = 0, best_len = 0;
    for (std::size_t x = 0; x < inst.size(); ++x) {
        if (x == p || x == q) continue;
        if (!region_contains(region, inst.point(x))) continue;
        if (!visible(inst, p, x)) continue;
        const Point e = inst.point(x) - pp;
        const double angle = std::abs(std::atan2(cross(d, e), dot(d, e)));
        const double len = norm(e);
        if (!best || angle < best_angle || (angle == best_angle && len < best_len)) {
            best = x;
            best_angle = angle;
            best_len = len;
        }
    }
    if (!best) return std::nullopt;
    const std::size_t x = *best;
    if (orient(pp, inst.point(q), inst.point(x)) == Sign::zero) return x;
    const std::vector<std::size_t> chain = convex_chain(inst, x, q, p);
    return chain[chain.size() - 2];
}

} // namespace cgdg
