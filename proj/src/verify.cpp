#include "cgdg/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <set>

namespace cgdg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTwoPi = 2 * std::numbers::pi;

using json = nlohmann::json;

Verdict verdict(std::string property)
{
    Verdict v;
    v.property = std::move(property);
    return v;
}

json pair_json(std::size_t u, std::size_t v) { return json::array({u, v}); }
json point_json(Point p) { return json::array({p.x, p.y}); }

// Counterclockwise angle from a to b in [0, 2pi).
double ccw_angle(Point a, Point b)
{
    double t = std::atan2(cross(a, b), dot(a, b));
    if (t < 0) t += kTwoPi;
    return t;
}

// Neighbors of every vertex sorted counterclockwise by direction.
std::vector<std::vector<std::size_t>> rotation_system(const CgdgGraph& g)
{
    const Instance& inst = g.instance();
    std::vector<std::vector<std::size_t>> rot(g.size());
    for (std::size_t v = 0; v < g.size(); ++v) {
        auto& r = rot[v];
        r.assign(g.neighbors(v).begin(), g.neighbors(v).end());
        const Point pv = inst.point(v);
        std::sort(r.begin(), r.end(), [&](std::size_t a, std::size_t b) {
            const Point da = inst.point(a) - pv;
            const Point db = inst.point(b) - pv;
            return std::atan2(da.y, da.x) < std::atan2(db.y, db.x);
        });
    }
    return rot;
}

// Points on the convex hull boundary, including collinear ones.
std::vector<std::size_t> hull_boundary(const Instance& inst)
{
    std::vector<std::size_t> idx(inst.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    const auto pts = inst.points();
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
        while (k >= lower && orient(pts[h[k - 2]], pts[h[k - 1]], pts[idx[t]]) != Sign::positive) --k;
        h[k++] = idx[t];
    }
    h.resize(k - 1);
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < inst.size(); ++v) {
        bool on = std::find(h.begin(), h.end(), v) != h.end();
        for (std::size_t i = 0; !on && i < h.size() && h.size() > 1; ++i)
            on = in_segment_interior(pts[v], {pts[h[i]], pts[h[(i + 1) % h.size()]]});
        if (on) out.push_back(v);
    }
    return out;
}

bool strictly_inside_triangle(Point a, Point b, Point c, Point x, double tol)
{
    const std::vector<Point> tri = orient(a, b, c) == Sign::positive ? std::vector<Point>{a, b, c}
                                                                      : std::vector<Point>{a, c, b};
    for (std::size_t i = 0; i < 3; ++i) {
        const Point u = tri[i];
        const Point v = tri[(i + 1) % 3];
        if (cross(v - u, x - u) / distance(u, v) <= tol) return false;
    }
    return true;
}

bool crosses_graph(const CgdgGraph& g, std::size_t p, std::size_t q)
{
    const Instance& inst = g.instance();
    const Segment s{inst.point(p), inst.point(q)};
    for (std::size_t v = 0; v < inst.size(); ++v)
        if (v != p && v != q && in_segment_interior(inst.point(v), s)) return true;
    for (const auto& [a, b] : g.edge_list()) {
        if (a == p || a == q || b == p || b == q) continue;
        if (segments_properly_intersect(s, {inst.point(a), inst.point(b)})) return true;
    }
    return false;
}

} // namespace

const char* to_string(Outcome o)
{
    switch (o) {
    case Outcome::pass: return "pass";
    case Outcome::fail: return "fail";
    case Outcome::hypothesis_not_met: return "hypothesis_not_met";
    }
    return "unknown";
}

WeightedGraph weighted(const CgdgGraph& g)
{
    WeightedGraph w;
    w.adj.resize(g.size());
    const Instance& inst = g.instance();
    for (std::size_t v = 0; v < g.size(); ++v)
        for (std::size_t u : g.neighbors(v)) w.adj[v].push_back({u, distance(inst.point(u), inst.point(v))});
    return w;
}

WeightedGraph weighted(const VisibilityGraph& vis, const Instance& inst)
{
    WeightedGraph w;
    w.adj.resize(vis.size());
    for (std::size_t v = 0; v < vis.size(); ++v)
        for (std::size_t u : vis.neighbors(v)) w.adj[v].push_back({u, distance(inst.point(u), inst.point(v))});
    return w;
}

std::vector<double> all_pairs_shortest_paths(const WeightedGraph& g)
{
    const std::size_t n = g.adj.size();
    std::vector<double> dist(n * n, kInf);
    using Item = std::pair<double, std::size_t>;
    for (std::size_t s = 0; s < n; ++s) {
        double* d = dist.data() + s * n;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
        d[s] = 0;
        pq.push({0.0, s});
        while (!pq.empty()) {
            const auto [du, u] = pq.top();
            pq.pop();
            if (du > d[u]) continue;
            for (const auto& [v, w] : g.adj[u])
                if (du + w < d[v]) {
                    d[v] = du + w;
                    pq.push({d[v], v});
                }
        }
    }
    return dist;
}

std::vector<Face> faces(const CgdgGraph& g)
{
    const auto rot = rotation_system(g);
    const Instance& inst = g.instance();
    // Position of u in rot[v], for the half-edge u -> v.
    auto position = [&](std::size_t v, std::size_t u) {
        return static_cast<std::size_t>(std::find(rot[v].begin(), rot[v].end(), u) - rot[v].begin());
    };
    std::set<VertexPair> used;
    std::vector<Face> out;
    for (std::size_t u0 = 0; u0 < g.size(); ++u0)
        for (std::size_t v0 : rot[u0]) {
            if (used.count({u0, v0})) continue;
            Face f;
            std::size_t u = u0, v = v0;
            while (!used.count({u, v})) {
                used.insert({u, v});
                f.walk.push_back(u);
                const auto& r = rot[v];
                const std::size_t w = r[(position(v, u) + r.size() - 1) % r.size()];
                u = v;
                v = w;
            }
            std::vector<Point> poly;
            for (std::size_t x : f.walk) poly.push_back(inst.point(x));
            f.signed_area = polygon_area(poly);
            out.push_back(std::move(f));
        }
    return out;
}

bool is_triangulation(const CgdgGraph& g)
{
    const auto fs = faces(g);
    std::size_t outer = 0;
    const Face* outer_face = nullptr;
    for (const Face& f : fs) {
        if (f.signed_area > 0) {
            if (f.walk.size() != 3) return false;
        } else {
            ++outer;
            outer_face = &f;
        }
    }
    if (outer != 1) return false;
    std::vector<std::size_t> walk = outer_face->walk;
    std::vector<std::size_t> hull = hull_boundary(g.instance());
    if (walk.size() != hull.size()) return false;
    std::sort(walk.begin(), walk.end());
    return walk == hull;
}

Verdict check_planarity(const CgdgGraph& g)
{
    Verdict v = verdict("planarity");
    const Instance& inst = g.instance();
    const auto edges = g.edge_list();
    json crossings = json::array();
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const Segment si{inst.point(edges[i].first), inst.point(edges[i].second)};
        for (std::size_t j = i + 1; j < edges.size(); ++j)
            if (segments_properly_intersect(si, {inst.point(edges[j].first), inst.point(edges[j].second)}))
                crossings.push_back({{"edge_a", pair_json(edges[i].first, edges[i].second)},
                                     {"edge_b", pair_json(edges[j].first, edges[j].second)}});
        for (std::size_t x = 0; x < inst.size(); ++x)
            if (in_segment_interior(inst.point(x), si))
                crossings.push_back({{"edge_a", pair_json(edges[i].first, edges[i].second)}, {"vertex", x}});
    }
    v.details["edges"] = edges.size();
    if (!crossings.empty()) {
        v.outcome = Outcome::fail;
        v.counterexample = {{"crossings", crossings}};
    }
    return v;
}

Verdict check_diamond(const CgdgGraph& g, double alpha)
{
    Verdict v = verdict("diamond");
    const Instance& inst = g.instance();
    const VisibilityGraph vis = VisibilityGraph::build(inst);
    const double t = std::tan(alpha);
    json failures = json::array();
    for (const auto& [p, q] : g.edge_list()) {
        const Point a = inst.point(p);
        const Point b = inst.point(q);
        const Point m = lerp(a, b, 0.5);
        const Point up = (0.5 * t) * perp(b - a);
        bool some_empty = false;
        json blockers = json::array();
        for (const Point apex : {m + up, m - up}) {
            std::vector<std::size_t> inside;
            for (std::size_t x = 0; x < inst.size(); ++x) {
                if (x == p || x == q || !vis.adjacent(p, x) || !vis.adjacent(q, x)) continue;
                if (strictly_inside_triangle(a, b, apex, inst.point(x), kBoundaryTolerance)) inside.push_back(x);
            }
            some_empty = some_empty || inside.empty();
            blockers.push_back({{"apex", point_json(apex)}, {"vertices", inside}});
        }
        if (!some_empty) failures.push_back({{"edge", pair_json(p, q)}, {"triangles", blockers}});
    }
    v.details["alpha"] = alpha;
    if (!failures.empty()) {
        v.outcome = Outcome::fail;
        v.counterexample = {{"alpha", alpha}, {"edges", failures}};
    }
    return v;
}

std::vector<VertexPair> visible_face_pairs(const CgdgGraph& g)
{
    const Instance& inst = g.instance();
    std::set<VertexPair> out;
    for (const Face& f : faces(g)) {
        const std::size_t len = f.walk.size();
        for (std::size_t i = 0; i < len; ++i) {
            const std::size_t p = f.walk[i];
            const Point pp = inst.point(p);
            const Point next = inst.point(f.walk[(i + 1) % len]) - pp;
            const Point prev = inst.point(f.walk[(i + len - 1) % len]) - pp;
            // Face wedge at this occurrence of p: from next counterclockwise
            // to prev (full turn at a dangling end).
            double wedge = ccw_angle(next, prev);
            if (wedge == 0.0) wedge = kTwoPi;
            for (std::size_t q : f.walk) {
                if (q == p || g.has_edge(p, q)) continue;
                const VertexPair key{std::min(p, q), std::max(p, q)};
                if (out.count(key)) continue;
                const double a = ccw_angle(next, inst.point(q) - pp);
                if (!(a > 0 && a < wedge)) continue;
                if (!visible(inst, p, q) || crosses_graph(g, p, q)) continue;
                out.insert(key);
            }
        }
    }
    return {out.begin(), out.end()};
}

Verdict check_visible_pair(const CgdgGraph& g, double kappa, double tol)
{
    Verdict v = verdict("visible_pair");
    const Instance& inst = g.instance();
    const auto dist = all_pairs_shortest_paths(weighted(g));
    const auto pairs = visible_face_pairs(g);
    json failures = json::array();
    double worst = 0.0;
    for (const auto& [p, q] : pairs) {
        const double d = dist[p * g.size() + q];
        const double e = distance(inst.point(p), inst.point(q));
        worst = std::max(worst, d / e);
        if (!(d <= kappa * e + tol))
            failures.push_back({{"pair", pair_json(p, q)}, {"path", d}, {"limit", kappa * e}});
    }
    v.details["pairs"] = pairs.size();
    v.details["kappa"] = kappa;
    v.details["max_ratio"] = pairs.empty() ? 0.0 : worst;
    if (!failures.empty()) {
        v.outcome = Outcome::fail;
        v.counterexample = {{"kappa", kappa}, {"pairs", failures}};
    }
    return v;
}

StretchReport measure_stretch(const CgdgGraph& g, double bound, bool keep_table, double tol)
{
    const std::size_t n = g.size();
    const VisibilityGraph vis = VisibilityGraph::build(g.instance());
    const auto dg = all_pairs_shortest_paths(weighted(g));
    const auto dv = all_pairs_shortest_paths(weighted(vis, g.instance()));
    StretchReport r;
    r.bound_used = bound;
    if (keep_table) r.per_pair.assign(n * n, 0.0);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) {
            const double b = dv[u * n + v];
            if (!std::isfinite(b)) continue;
            const double a = dg[u * n + v];
            if (!std::isfinite(a)) r.disconnected.push_back({u, v});
            const double ratio = a / b;
            if (keep_table) r.per_pair[u * n + v] = r.per_pair[v * n + u] = ratio;
            if (ratio > r.max_ratio) {
                r.max_ratio = ratio;
                r.argmax_pair = {u, v};
            }
        }
    r.passed = r.disconnected.empty() && r.max_ratio <= bound + tol;
    return r;
}

double theorem1_bound_for(const CgdgGraph& g, const ShapeConstants& c)
{
    return theorem1_bound(c.alpha, c.kappa, is_triangulation(g));
}

Verdict check_stretch(const CgdgGraph& g, double bound, const std::string& property)
{
    Verdict v = verdict(property);
    const StretchReport r = measure_stretch(g, bound);
    v.details = {{"max_ratio", r.max_ratio},
                 {"bound", bound},
                 {"argmax_pair", pair_json(r.argmax_pair.first, r.argmax_pair.second)}};
    if (!r.passed) {
        v.outcome = Outcome::fail;
        json dis = json::array();
        for (const auto& [a, b] : r.disconnected) dis.push_back(pair_json(a, b));
        v.counterexample = {{"pair", pair_json(r.argmax_pair.first, r.argmax_pair.second)},
                            {"ratio", std::isfinite(r.max_ratio) ? json(r.max_ratio) : json("inf")},
                            {"bound", bound},
                            {"disconnected", dis}};
    }
    return v;
}

Verdict check_rect_bound(const CgdgGraph& g, double l, double s)
{
    return check_stretch(g, rect_bound(l, s), "rect_bound");
}

std::optional<Homothet> axis_centered_homothet(const ShapePtr& shape, Point a, Point b)
{
    const ConvexShape& c = *shape;
    std::optional<Homothet> best;
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = 0; j < c.size(); ++j) {
            const Point ni = c.normal(i), nj = c.normal(j);
            const double di = c.support(i), dj = c.support(j);
            const double det = ni.x * dj - di * nj.x;
            if (std::abs(det) < 1e-14) continue;
            const double ri = dot(ni, a), rj = dot(nj, b);
            const double cx = (ri * dj - di * rj) / det;
            const double lambda = (ni.x * rj - nj.x * ri) / det;
            if (!(lambda > 0) || !std::isfinite(lambda)) continue;
            const Homothet h(shape, {cx, 0.0}, lambda);
            const double tol = kBoundaryTolerance * std::max(1.0, h.perimeter());
            if (std::abs(h.depth(a)) > tol || std::abs(h.depth(b)) > tol) continue;
            if (!best || lambda < best->scale()) best = h;
        }
    return best;
}

double upper_arc_length(const Homothet& h, Point a, Point b)
{
    const ConvexShape& c = h.shape();
    const double lam = h.scale();
    const double tol = kBoundaryTolerance * std::max(1.0, h.perimeter());
    const double ta = c.boundary_param(h.to_shape(a), tol / lam);
    const double tb = c.boundary_param(h.to_shape(b), tol / lam);
    const double per = c.perimeter();
    double ccw = std::fmod(tb - ta, per);
    if (ccw < 0) ccw += per;
    double min_ccw = std::min(a.y, b.y), min_cw = min_ccw;
    for (std::size_t i = 0; i < c.size(); ++i) {
        double off = std::fmod(c.arc_offset(i) - ta, per);
        if (off < 0) off += per;
        const double y = h.vertex(i).y;
        if (off > 0 && off < ccw)
            min_ccw = std::min(min_ccw, y);
        else if (off > ccw)
            min_cw = std::min(min_cw, y);
    }
    return (min_ccw >= min_cw ? ccw : per - ccw) * lam;
}

Verdict check_boundary_summation(const ShapePtr& shape, const std::vector<Point>& chain,
                                 const std::vector<Homothet>& homothets, double rel_tol)
{
    Verdict v = verdict("boundary_summation");
    if (chain.size() < 2 || homothets.size() + 1 != chain.size())
        throw PreconditionViolated("need k+1 chain vertices and k homothets");
    const double tol = kBoundaryTolerance;
    if (std::abs(chain.front().y) > tol || std::abs(chain.back().y) > tol)
        throw PreconditionViolated("chain ends must lie on the x-axis");
    for (const Point& p : chain)
        if (p.y < -tol) throw PreconditionViolated("chain vertices must lie on or above the x-axis");
    double sum = 0.0;
    for (std::size_t i = 0; i < homothets.size(); ++i) {
        const Homothet& h = homothets[i];
        const double htol = tol * std::max(1.0, h.perimeter());
        if (std::abs(h.center().y) > htol) throw PreconditionViolated("homothet center must lie on the x-axis");
        if (std::abs(h.depth(chain[i])) > htol || std::abs(h.depth(chain[i + 1])) > htol)
            throw PreconditionViolated("homothet must have its chain pair on the boundary");
        for (std::size_t j = 0; j < chain.size(); ++j)
            if (j != i && j != i + 1 && h.depth(chain[j]) > htol)
                throw PreconditionViolated("homothet contains another chain vertex");
        sum += upper_arc_length(h, chain[i], chain[i + 1]);
    }
    const auto span = axis_centered_homothet(shape, chain.front(), chain.back());
    if (!span) throw PreconditionViolated("no axis-centered homothet through the chain ends");
    const double total = upper_arc_length(*span, chain.front(), chain.back());
    v.details = {{"sum", sum}, {"span", total}, {"k", homothets.size()}};
    if (!(sum <= total * (1 + rel_tol))) {
        v.outcome = Outcome::fail;
        json pts = json::array();
        for (const Point& p : chain) pts.push_back(point_json(p));
        v.counterexample = {{"chain", pts}, {"sum", sum}, {"span", total}};
    }
    return v;
}

Verdict summing_rectangles_identity(double l, double s, Point p, Point q, const std::vector<Point>& cuts,
                                    double rho, double rel_tol)
{
    Verdict v = verdict("summing_rectangles");
    if (!(l > 0) || !(s > 0)) throw InvalidArgument("rectangle sides must be positive");
    if (!(q.x > p.x)) throw InvalidArgument("q must lie east of p");
    const double width = q.x - p.x;
    const double height = width * s / l;
    const double top = p.y + rho * height;
    const double tol = kBoundaryTolerance * std::max(1.0, width + height);
    if (rho < 0 || rho > 1 || q.y > top + tol || q.y < top - height - tol)
        throw InvalidArgument("rho does not put p and q on the West and East sides");
    std::vector<Point> m{p};
    for (const Point& c : cuts) {
        if (std::abs(cross(q - p, c - p)) / distance(p, q) > tol)
            throw InvalidArgument("cuts must lie on pq");
        if (!(c.x > m.back().x)) throw InvalidArgument("cuts must be strictly ordered from p to q");
        m.push_back(c);
    }
    if (!(q.x > m.back().x)) throw InvalidArgument("cuts must be strictly ordered from p to q");
    m.push_back(q);

    const Point a{p.x, top}, b{q.x, top};
    const double whole = distance(p, a) + distance(a, b) + distance(b, q);
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < m.size(); ++i) {
        const double wi = m[i + 1].x - m[i].x;
        const double hi = wi * s / l;
        const Point ai{m[i].x, m[i].y + rho * hi};
        const Point bi{m[i + 1].x, ai.y};
        sum += distance(m[i], ai) + distance(ai, bi) + distance(bi, m[i + 1]);
    }
    v.details = {{"sum", sum}, {"whole", whole}, {"k", m.size() - 1}};
    if (!(std::abs(sum - whole) <= rel_tol * whole)) {
        v.outcome = Outcome::fail;
        v.counterexample = {{"p", point_json(p)}, {"q", point_json(q)}, {"rho", rho}, {"sum", sum}, {"whole", whole}};
    }
    return v;
}

Verdict check_half_empty(const Instance& inst, std::size_t p, std::size_t q, const Homothet& rect, int grid)
{
    Verdict v = verdict("half_empty");
    const Point pp = inst.point(p), qq = inst.point(q);
    if (pp.x == qq.x) throw InvalidArgument("pq must not be vertical");
    const double tol = kBoundaryTolerance * std::max(1.0, rect.perimeter());
    if (std::abs(rect.depth(pp)) > tol || std::abs(rect.depth(qq)) > tol)
        throw PreconditionViolated("p and q must lie on the rectangle boundary");
    const Point left = pp.x < qq.x ? pp : qq;
    const Point right = pp.x < qq.x ? qq : pp;
    auto below = [&](Point z) { return orient(left, right, z) == Sign::negative; };
    auto above = [&](Point z) { return orient(left, right, z) == Sign::positive; };
    v.details["grid"] = grid;

    json violations = json::array();
    if (!visible(inst, p, q)) violations.push_back({{"reason", "p and q do not see each other"}});
    for (const auto& [a, b] : {std::pair{p, q}, std::pair{q, p}}) {
        const auto region = region_of(visibility_cone(inst, {}, a, b, rect), rect);
        for (std::size_t x = 0; x < inst.size(); ++x)
            if (x != p && x != q && below(inst.point(x)) && region_contains(region, inst.point(x)) &&
                visible(inst, a, x))
                violations.push_back({{"reason", "region below pq has a vertex visible to an endpoint"},
                                      {"endpoint", a},
                                      {"vertex", x}});
    }
    for (std::size_t x = 0; x < inst.size(); ++x)
        if (x != p && x != q && below(inst.point(x)) && homothet_contains(rect, inst.point(x), Containment::closed) &&
            visible(inst, p, x) && visible(inst, q, x))
            violations.push_back({{"reason", "vertex below pq visible to both endpoints"}, {"vertex", x}});
    if (!violations.empty()) {
        v.outcome = Outcome::hypothesis_not_met;
        v.counterexample = {{"violations", violations}};
        return v;
    }

    std::vector<std::size_t> targets;
    for (std::size_t y = 0; y < inst.size(); ++y)
        if (below(inst.point(y)) && homothet_contains(rect, inst.point(y), Containment::closed)) targets.push_back(y);

    std::vector<Point> samples;
    double x0 = kInf, x1 = -kInf, y0 = kInf, y1 = -kInf;
    for (const Point& c : rect.vertices()) {
        x0 = std::min(x0, c.x);
        x1 = std::max(x1, c.x);
        y0 = std::min(y0, c.y);
        y1 = std::max(y1, c.y);
    }
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j) {
            const Point z{x0 + (x1 - x0) * (i + 0.5) / grid, y0 + (y1 - y0) * (j + 0.5) / grid};
            if (above(z) && homothet_contains(rect, z, Containment::closed)) samples.push_back(z);
        }
    for (std::size_t x = 0; x < inst.size(); ++x)
        if (above(inst.point(x)) && homothet_contains(rect, inst.point(x), Containment::closed))
            samples.push_back(inst.point(x));
    v.details["samples"] = samples.size();
    v.details["targets"] = targets.size();

    for (const Point& z : samples)
        for (std::size_t y : targets) {
            const Segment s{z, inst.point(y)};
            bool blocked = false;
            for (const auto& [a, b] : inst.constraints())
                if (segments_properly_intersect(s, {inst.point(a), inst.point(b)})) {
                    blocked = true;
                    break;
                }
            if (!blocked) {
                v.outcome = Outcome::fail;
                v.counterexample = {{"x", point_json(z)}, {"vertex", y}};
                return v;
            }
        }
    return v;
}

} // namespace cgdg
