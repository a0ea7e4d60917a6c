#pragma once

// Shared helpers for the unit tests: exact reference predicates and small
// random inputs. The predicates here are deliberately naive so they can
// serve as independent oracles for the library kernel.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cgdg/geom.hpp"
#include "cgdg/io.hpp"
#include "cgdg/shapes.hpp"
#include "cgdg/visibility.hpp"

namespace testing {

using Rational = boost::multiprecision::cpp_rational;

inline int exact_orient(cgdg::Point a, cgdg::Point b, cgdg::Point c)
{
    const Rational ax(a.x), ay(a.y), bx(b.x), by(b.y), cx(c.x), cy(c.y);
    const Rational d = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
    return d > 0 ? 1 : (d < 0 ? -1 : 0);
}

// Solves a + t (b - a) = c + u (d - c) in rationals; proper iff the
// solution is unique with t, u strictly inside (0, 1).
inline bool exact_proper_crossing(cgdg::Point a, cgdg::Point b, cgdg::Point c, cgdg::Point d)
{
    const Rational e1x = Rational(b.x) - Rational(a.x), e1y = Rational(b.y) - Rational(a.y);
    const Rational e2x = Rational(d.x) - Rational(c.x), e2y = Rational(d.y) - Rational(c.y);
    const Rational det = e1x * (-e2y) - e1y * (-e2x);
    if (det == 0) return false;
    const Rational fx = Rational(c.x) - Rational(a.x), fy = Rational(c.y) - Rational(a.y);
    const Rational t = (fx * (-e2y) - fy * (-e2x)) / det;
    const Rational u = (e1x * fy - e1y * fx) / det;
    return t > 0 && t < 1 && u > 0 && u < 1;
}

inline bool brute_visible(const cgdg::Instance& inst, std::size_t u, std::size_t v)
{
    if (inst.is_constraint(u, v)) return true;
    for (const auto& [a, b] : inst.constraints())
        if (exact_proper_crossing(inst.point(u), inst.point(v), inst.point(a), inst.point(b))) return false;
    return true;
}

inline cgdg::Instance random_instance(std::uint64_t seed, std::size_t n, std::size_t constraints)
{
    return cgdg::generate_instance({seed, n, constraints});
}

inline double uniform(std::mt19937_64& rng, double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline cgdg::ShapePtr random_convex_shape(std::mt19937_64& rng)
{
    // Hull of random points on a circle, with jittered radii kept convex by
    // taking the hull.
    std::vector<cgdg::Point> pts;
    const int k = 3 + static_cast<int>(rng() % 8);
    for (int i = 0; i < k; ++i) {
        const double t = uniform(rng, 0, 2 * std::numbers::pi);
        const double r = uniform(rng, 0.5, 1.5);
        pts.push_back({r * std::cos(t) * uniform(rng, 0.5, 2.0), r * std::sin(t)});
    }
    std::sort(pts.begin(), pts.end(), [](cgdg::Point a, cgdg::Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    std::vector<cgdg::Point> h(2 * pts.size());
    std::size_t m = 0;
    for (cgdg::Point p : pts) {
        while (m >= 2 && exact_orient(h[m - 2], h[m - 1], p) <= 0) --m;
        h[m++] = p;
    }
    for (std::size_t i = pts.size() - 1, lower = m + 1; i-- > 0;) {
        while (m >= lower && exact_orient(h[m - 2], h[m - 1], pts[i]) <= 0) --m;
        h[m++] = pts[i];
    }
    h.resize(m - 1);
    if (h.size() < 3) return cgdg::equilateral_triangle();
    cgdg::Point c{0, 0};
    for (cgdg::Point p : h) c = c + p;
    c = (1.0 / h.size()) * c;
    return cgdg::share(cgdg::ConvexShape::make(h, c));
}

} // namespace testing
