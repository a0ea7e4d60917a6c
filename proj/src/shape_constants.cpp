#include "cgdg/shape_constants.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace cgdg {

namespace {

constexpr double kPi = std::numbers::pi;

struct Candidate {
    double value;
    double a;
    double b;
};

// Keeps the `count` lowest (or highest) candidates.
std::vector<Candidate> best_of(std::vector<Candidate> all, std::size_t count, bool lowest)
{
    auto cmp = [lowest](const Candidate& x, const Candidate& y) {
        return lowest ? x.value < y.value : x.value > y.value;
    };
    count = std::min(count, all.size());
    std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(count), all.end(), cmp);
    all.resize(count);
    return all;
}

// Derivative-free descent on a 2D function over 8 compass directions,
// halving the step when no direction improves.
template <class F>
Candidate compass_minimize(F f, Candidate start, double step, double min_step)
{
    constexpr double h = std::numbers::sqrt2 / 2;
    static constexpr std::array<std::array<double, 2>, 8> dirs{
        {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {h, h}, {-h, -h}, {h, -h}, {-h, h}}};
    Candidate cur = start;
    while (step > min_step) {
        bool improved = false;
        for (const auto& d : dirs) {
            const double a = cur.a + step * d[0];
            const double b = cur.b + step * d[1];
            const double v = f(a, b);
            if (v < cur.value) {
                cur = {v, a, b};
                improved = true;
            }
        }
        if (!improved) step *= 0.5;
    }
    return cur;
}

// Golden-section search for a maximum of f on [lo, hi].
template <class F>
std::pair<double, double> golden_maximize(F f, double lo, double hi, double tol)
{
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - g * (hi - lo);
    double d = lo + g * (hi - lo);
    double fc = f(c), fd = f(d);
    while (hi - lo > tol) {
        if (fc > fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - g * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + g * (hi - lo);
            fd = f(d);
        }
    }
    const double x = 0.5 * (lo + hi);
    return {x, f(x)};
}

double alpha_objective(const ConvexShape& shape, double ta, double tb)
{
    const Point x = shape.boundary_point(ta);
    const Point y = shape.boundary_point(tb);
    if (distance(x, y) < 1e-9 * shape.perimeter()) return kPi / 2;
    return isosceles_pair(shape, x, y).angle_primary;
}

double kappa_at(const ConvexShape& shape, Point o, int resolution)
{
    if (shape.depth(o) <= 0) return std::numeric_limits<double>::infinity();
    return worst_chord(shape, o, resolution).ratio();
}

} // namespace

IsoscelesPair isosceles_pair(const ConvexShape& shape, Point x, Point y)
{
    if (x == y) throw InvalidArgument("isosceles base needs two distinct points");
    const double base = distance(x, y);
    const Point m = lerp(x, y, 0.5);
    const Point n = (1.0 / base) * perp(y - x);
    // When x and y share an edge the midpoint is on the boundary and the
    // outward ray exits at distance 0.
    auto height = [&](Point dir) { return shape.ray_exit(m, dir).first; };
    const double h1 = height(n);
    const double h2 = height(-1.0 * n);
    IsoscelesPair out;
    out.base_a = x;
    out.base_b = y;
    const double a1 = std::atan2(h1, base / 2);
    const double a2 = std::atan2(h2, base / 2);
    if (a1 >= a2) {
        out.angle_primary = a1;
        out.angle_secondary = a2;
        out.apex_primary = m + h1 * n;
        out.apex_secondary = m - h2 * n;
    } else {
        out.angle_primary = a2;
        out.angle_secondary = a1;
        out.apex_primary = m - h2 * n;
        out.apex_secondary = m + h1 * n;
    }
    return out;
}

ChordMeasure chord_through(const ConvexShape& shape, Point center, Point dir)
{
    const auto [t1, e1] = shape.ray_exit(center, dir);
    const auto [t2, e2] = shape.ray_exit(center, -1.0 * dir);
    ChordMeasure c;
    c.center = center;
    c.x = center + t1 * dir;
    c.y = center - t2 * dir;
    c.chord = distance(c.x, c.y);
    // Arc-length positions from the hit edges, avoiding a boundary search.
    auto tau = [&](Point p, std::size_t e) {
        return shape.arc_offset(e) + std::min(distance(shape.vertex(e), p), shape.edge_length(e));
    };
    const double per = shape.perimeter();
    double l = std::fmod(tau(c.y, e2) - tau(c.x, e1), per);
    if (l < 0) l += per;
    c.arc_long = std::max(l, per - l);
    return c;
}

ChordMeasure worst_chord(const ConvexShape& shape, Point center, int resolution)
{
    if (shape.depth(center) <= 0) throw InvalidArgument("chord center must be interior");
    auto ratio = [&](double th) {
        return chord_through(shape, center, {std::cos(th), std::sin(th)}).ratio();
    };
    // Seed directions: uniform samples, toward each vertex and along each edge.
    std::vector<double> seeds;
    const int m = std::max(resolution, 8);
    for (int i = 0; i < m; ++i) seeds.push_back(kPi * i / m);
    for (std::size_t k = 0; k < shape.size(); ++k) {
        const Point v = shape.vertex(k) - center;
        const Point e = shape.vertex(k + 1) - shape.vertex(k);
        seeds.push_back(std::atan2(v.y, v.x));
        seeds.push_back(std::atan2(e.y, e.x));
    }
    std::vector<Candidate> all;
    for (double th : seeds) all.push_back({ratio(th), th, 0});
    const auto top = best_of(all, 6, false);
    Candidate best = top.front();
    const double span = kPi / m;
    for (const Candidate& c : top) {
        const auto [th, v] = golden_maximize(ratio, c.a - span, c.a + span, 1e-12);
        if (v > best.value) best = {v, th, 0};
    }
    return chord_through(shape, center, {std::cos(best.a), std::sin(best.a)});
}

AlphaResult compute_alpha(const ConvexShape& shape, int resolution)
{
    const double per = shape.perimeter();
    std::vector<double> params;
    const int r = std::max(resolution, 8);
    for (int i = 0; i < r; ++i) params.push_back(per * i / r);
    for (std::size_t k = 0; k < shape.size(); ++k) {
        params.push_back(shape.arc_offset(k));
        params.push_back(shape.arc_offset(k) + 0.5 * shape.edge_length(k));
    }
    std::vector<Candidate> all;
    for (std::size_t i = 0; i < params.size(); ++i)
        for (std::size_t j = i + 1; j < params.size(); ++j)
            all.push_back({alpha_objective(shape, params[i], params[j]), params[i], params[j]});

    auto f = [&](double a, double b) { return alpha_objective(shape, a, b); };
    Candidate best{kPi, 0, 0};
    for (const Candidate& c : best_of(all, 8, true)) {
        const Candidate refined = compass_minimize(f, c, per / r, 1e-13 * per);
        if (refined.value < best.value) best = refined;
    }
    return {best.value, isosceles_pair(shape, shape.boundary_point(best.a), shape.boundary_point(best.b))};
}

KappaResult compute_kappa(const ConvexShape& shape, int resolution)
{
    double x0 = shape.vertex(0).x, x1 = x0, y0 = shape.vertex(0).y, y1 = y0;
    for (const Point& p : shape.vertices()) {
        x0 = std::min(x0, p.x);
        x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
    }
    std::vector<Point> seeds{shape.centroid(), shape.origin()};
    const int g = 12;
    for (int i = 1; i < g; ++i)
        for (int j = 1; j < g; ++j) {
            const Point o{x0 + (x1 - x0) * i / g, y0 + (y1 - y0) * j / g};
            if (shape.depth(o) > 0) seeds.push_back(o);
        }
    // Coarse inner resolution for seeding, full resolution for refinement.
    const int coarse = std::max(16, resolution / 2);
    std::vector<Candidate> all;
    for (const Point& o : seeds) all.push_back({kappa_at(shape, o, coarse), o.x, o.y});

    auto f = [&](double a, double b) { return kappa_at(shape, {a, b}, resolution); };
    const double step = std::max(x1 - x0, y1 - y0) / g;
    Candidate best{std::numeric_limits<double>::infinity(), 0, 0};
    for (Candidate c : best_of(all, 4, true)) {
        c.value = f(c.a, c.b);
        const Candidate refined = compass_minimize(f, c, step, 1e-9 * step);
        if (refined.value < best.value) best = refined;
    }
    const Point o{best.a, best.b};
    const ChordMeasure cert = worst_chord(shape, o, resolution);
    return {cert.ratio(), o, cert};
}

double theorem1_bound(double alpha, double kappa, bool is_triangulation)
{
    if (!(alpha > 0 && alpha < kPi / 2)) throw InvalidArgument("alpha must lie in (0, pi/2)");
    if (!(kappa >= 1) || !std::isfinite(kappa)) throw InvalidArgument("kappa must be at least 1");
    const double k2 = is_triangulation ? kappa : kappa * kappa;
    return 2 * k2 * std::max(3 / std::sin(alpha / 2), kappa);
}

double rect_bound(double l, double s)
{
    if (!(s > 0) || !(l >= s)) throw InvalidArgument("rectangle bound needs l >= s > 0");
    return std::sqrt(2.0) * (2 * l / s + 1);
}

double rect_alpha(double l, double s)
{
    if (!(s > 0) || !(l >= s)) throw InvalidArgument("rectangle alpha needs l >= s > 0");
    return std::atan(s / l);
}

double rect_kappa(double l, double s)
{
    if (!(s > 0) || !(l >= s)) throw InvalidArgument("rectangle kappa needs l >= s > 0");
    return l / s + 1;
}

ShapeConstants compute_shape_constants(const ConvexShape& shape, int resolution)
{
    const AlphaResult a = compute_alpha(shape, resolution);
    const KappaResult k = compute_kappa(shape, resolution);
    ShapeConstants c;
    c.alpha = a.alpha;
    c.kappa = k.kappa;
    c.center_O = k.center;
    c.alpha_certificate = a.certificate;
    c.kappa_certificate = k.certificate;
    c.bound_t_triangulation = theorem1_bound(c.alpha, c.kappa, true);
    c.bound_t_general = theorem1_bound(c.alpha, c.kappa, false);
    return c;
}

} // namespace cgdg
