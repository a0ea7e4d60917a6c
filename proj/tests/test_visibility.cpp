#include <doctest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"

using namespace cgdg;

namespace {

Instance blocked_four()
{
    return Instance::make({{0, 0}, {2, 0}, {1, -1}, {1, 1}}, {{2, 3}});
}

// x strictly inside the CCW-or-CW triangle abc, exact.
bool strictly_inside(Point a, Point b, Point c, Point x)
{
    const int s = testing::exact_orient(a, b, c);
    return testing::exact_orient(a, b, x) == s && testing::exact_orient(b, c, x) == s &&
           testing::exact_orient(c, a, x) == s;
}

// x in the closed convex polygon given in either orientation.
bool in_closed_convex(const std::vector<Point>& poly, Point x)
{
    int sign = 0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const int o = testing::exact_orient(poly[i], poly[(i + 1) % poly.size()], x);
        if (o == 0) continue;
        if (sign == 0) sign = o;
        if (o != sign) return false;
    }
    return true;
}

} // namespace

TEST_CASE("visibility examples")
{
    const Instance inst = blocked_four();
    CHECK_FALSE(visible(inst, 0, 1));
    CHECK(visible(inst, 2, 3));
    CHECK(visible(inst, 0, 2));
    const Instance free = Instance::make({{0, 0}, {2, 0}, {1, 1}}, {});
    for (std::size_t u = 0; u < 3; ++u)
        for (std::size_t v = u + 1; v < 3; ++v) CHECK(visible(free, u, v));
}

TEST_CASE("visibility graph examples")
{
    const auto k3 = VisibilityGraph::build(Instance::make({{0, 0}, {2, 0}, {1, 1}}, {}));
    CHECK(k3.edge_count() == 3);
    const auto k4 = VisibilityGraph::build(blocked_four());
    CHECK(k4.edge_count() == 5);
    CHECK_FALSE(k4.adjacent(0, 1));
    CHECK(k4.adjacent(2, 3));
}

TEST_CASE("visibility graph equals the pairwise brute-force matrix")
{
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Instance inst = testing::random_instance(seed, 30, 5);
        const auto vis = VisibilityGraph::build(inst);
        for (std::size_t u = 0; u < inst.size(); ++u)
            for (std::size_t v = 0; v < inst.size(); ++v) {
                if (u == v) continue;
                const bool expected = testing::brute_visible(inst, u, v);
                CHECK(vis.adjacent(u, v) == expected);
                CHECK(vis.adjacent(v, u) == expected);
                CHECK(visible(inst, u, v) == expected);
            }
    }
}

TEST_CASE("instance validation")
{
    CHECK_THROWS_AS(Instance::make({{0, 0}, {0, 0}}, {}), InvalidInstance);
    CHECK_THROWS_AS(Instance::make({{0, 0}, {1, 0}}, {{0, 2}}), InvalidInstance);
    CHECK_THROWS_AS(Instance::make({{0, 0}, {1, 0}}, {{1, 1}}), InvalidInstance);
    CHECK_THROWS_AS(Instance::make({{0, 0}, {1, 0}}, {{0, 1}, {1, 0}}), InvalidInstance);
    CHECK_THROWS_AS(Instance::make({{0, 0}, {2, 2}, {0, 2}, {2, 0}}, {{0, 1}, {2, 3}}), InvalidInstance);
    CHECK_THROWS_AS(Instance::make({{0, 0}, {2, 0}, {1, 0}}, {{0, 1}}), InvalidInstance);
    CHECK_THROWS_AS(Instance::make({{0, 0}, {std::nan(""), 0}}, {}), InvalidInstance);
    const Instance ok = Instance::make({{0, 0}, {1, 0}, {0, 1}}, {{2, 0}});
    REQUIRE(ok.constraints().size() == 1);
    CHECK(ok.constraints()[0] == VertexPair{0, 2});
    CHECK(ok.is_constraint(2, 0));
}

TEST_CASE("convex chain on an empty triangle is the base edge")
{
    const Instance inst = Instance::make({{0, 0}, {4, 0}, {2, 4}}, {});
    CHECK(convex_chain(inst, 0, 1, 2) == std::vector<std::size_t>{0, 1});
}

TEST_CASE("convex chain around one blocked vertex")
{
    const Instance inst = Instance::make({{0, 0}, {4, 0}, {2, 4}, {2, 1}, {2, -1}}, {{3, 4}});
    REQUIRE_FALSE(visible(inst, 0, 1));
    CHECK(convex_chain(inst, 0, 1, 2) == std::vector<std::size_t>{0, 3, 1});
}

TEST_CASE("convex chain through two vertices")
{
    const Instance inst =
        Instance::make({{0, 0}, {4, 0}, {2, 4}, {1.5, 1}, {2.5, 1}, {1.5, -1}}, {{3, 5}});
    CHECK(convex_chain(inst, 0, 1, 2) == std::vector<std::size_t>{0, 3, 4, 1});
}

TEST_CASE("convex chain rejects bad hypotheses")
{
    // uw is blocked.
    const Instance blocked = Instance::make({{0, 0}, {4, 0}, {2, 4}, {0, 3}, {2, 1}}, {{3, 4}});
    REQUIRE_FALSE(visible(blocked, 0, 2));
    CHECK_THROWS_AS(convex_chain(blocked, 0, 1, 2), PreconditionViolated);
    const Instance flat = Instance::make({{0, 0}, {4, 0}, {2, 0.0}, {9, 9}}, {});
    CHECK_THROWS_AS(convex_chain(flat, 0, 1, 2), PreconditionViolated);
}

TEST_CASE("convex chains are convex, visible and bound an empty region")
{
    int checked = 0;
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const Instance inst = testing::random_instance(seed, 12, 4);
        const std::size_t n = inst.size();
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = 0; v < n; ++v)
                for (std::size_t w = 0; w < n; w += 3) {
                    if (u == v || v == w || u == w) continue;
                    std::vector<std::size_t> chain;
                    try {
                        chain = convex_chain(inst, u, v, w);
                    } catch (const PreconditionViolated&) {
                        continue;
                    } catch (const GeneralPositionViolation&) {
                        continue;
                    }
                    ++checked;
                    const Point pu = inst.point(u), pv = inst.point(v), pw = inst.point(w);
                    REQUIRE(chain.front() == u);
                    REQUIRE(chain.back() == v);
                    const int side = testing::exact_orient(pu, pv, pw);
                    std::vector<Point> hull;
                    for (std::size_t i = 0; i < chain.size(); ++i) {
                        hull.push_back(inst.point(chain[i]));
                        if (i + 1 < chain.size()) CHECK(testing::brute_visible(inst, chain[i], chain[i + 1]));
                        if (i + 2 < chain.size())
                            CHECK(testing::exact_orient(inst.point(chain[i]), inst.point(chain[i + 1]),
                                                        inst.point(chain[i + 2])) == -side);
                    }
                    // Region = open triangle uvw minus the closed hull of the chain.
                    for (std::size_t x = 0; x < n; ++x) {
                        const Point px = inst.point(x);
                        CHECK_FALSE((strictly_inside(pu, pv, pw, px) && !in_closed_convex(hull, px)));
                    }
                    std::vector<Point> boundary = hull;
                    boundary.push_back(pw);
                    for (const auto& [a, b] : inst.constraints())
                        for (std::size_t i = 0; i < boundary.size(); ++i)
                            CHECK_FALSE(testing::exact_proper_crossing(inst.point(a), inst.point(b), boundary[i],
                                                                       boundary[(i + 1) % boundary.size()]));
                }
    }
    CHECK(checked > 1000);
}

TEST_CASE("visibility cone with no incident constraints is the full plane")
{
    const Instance inst = Instance::make({{0, 0}, {1, 0}, {0.5, 0.2}}, {});
    const Homothet h(unit_square(), {0.5, 0}, 1);
    const VisibilityCone cone = visibility_cone(inst, {}, 0, 1, h);
    CHECK(cone.full_plane());
    const auto region = region_of(cone, h);
    REQUIRE(region.size() == 1);
    CHECK(polygon_area(region[0]) == doctest::Approx(1.0));
}

TEST_CASE("visibility cone bounded at plus and minus ninety degrees")
{
    const Instance inst = Instance::make({{0, 0}, {1, 0}, {0, 0.3}, {0, -0.3}}, {{0, 2}, {0, 3}});
    const Homothet h(unit_square(), {0.5, 0}, 1);
    const VisibilityCone cone = visibility_cone(inst, {}, 0, 1, h);
    REQUIRE(cone.cw_vertex);
    REQUIRE(cone.ccw_vertex);
    CHECK(*cone.ccw_vertex == 2);
    CHECK(*cone.cw_vertex == 3);
    // Direct atan2 angles of the two bounds relative to pq.
    CHECK(cone.ccw_angle == doctest::Approx(std::atan2(0.3, 0.0)));
    CHECK(cone.cw_angle == doctest::Approx(-std::atan2(-0.3, 0.0)));
}

TEST_CASE("constraint missing the reference homothet is ignored")
{
    const Instance inst = Instance::make({{0, 0}, {1, 0}, {-1, 0.5}}, {{0, 2}});
    const Homothet h(unit_square(), {0.5, 0}, 1);
    CHECK(visibility_cone(inst, {}, 0, 1, h).full_plane());
}

TEST_CASE("half-plane cone through the center halves a symmetric homothet")
{
    // p at the bottom-left corner, q at the top-right: a constraint from p
    // along the diagonal direction is not a bound, but a constraint from p
    // to the far corner with q elsewhere gives a half-plane through the
    // center.
    const Instance inst = Instance::make({{-1, -1}, {-1, 1}, {1, 1}}, {{0, 2}});
    const Homothet h(unit_square(), {0, 0}, 2);
    const VisibilityCone cone = visibility_cone(inst, {}, 0, 1, h);
    const auto region = region_of(cone, h);
    REQUIRE(region.size() == 1);
    CHECK(polygon_area(region[0]) == doctest::Approx(0.5 * polygon_area(h.vertices())));
    CHECK(region_contains(region, inst.point(1)));
}

TEST_CASE("mutually visible witness examples")
{
    const Homothet h(unit_square(), {0.5, 0}, 1);
    const Instance empty = Instance::make({{0, 0}, {1, 0}, {3, 3}}, {});
    CHECK_FALSE(find_mutually_visible_witness(empty, 0, 1, h));

    const Instance one = Instance::make({{0, 0}, {1, 0}, {0.5, 0.2}}, {});
    CHECK(find_mutually_visible_witness(one, 0, 1, h) == std::optional<std::size_t>{2});

    // x = 2 sees p but a constraint hides it from q; y = 4 is the chain
    // neighbor of q.
    const Instance hidden =
        Instance::make({{0, 0}, {1, 0}, {0.5, 0.4}, {0.6, 0.45}, {0.8, 0.1}, {0.6, 0.2}}, {{3, 5}});
    REQUIRE(visible(hidden, 0, 2));
    REQUIRE_FALSE(visible(hidden, 1, 2));
    const auto y = find_mutually_visible_witness(hidden, 0, 1, h);
    REQUIRE(y);
    CHECK(*y != 2);
    CHECK(visible(hidden, 0, *y));
    CHECK(visible(hidden, 1, *y));
}

TEST_CASE("witness search against brute force")
{
    int with = 0, without = 0;
    for (std::uint64_t seed = 100; seed < 140; ++seed) {
        const Instance inst = testing::random_instance(seed, 12, 4);
        const ShapePtr shape = seed % 2 ? unit_square() : equilateral_triangle();
        for (std::size_t p = 0; p < inst.size(); ++p)
            for (std::size_t q = 0; q < inst.size(); ++q) {
                if (p == q || !visible(inst, p, q)) continue;
                for (const PencilRegime& r : pencil_through(shape, inst.point(p), inst.point(q))) {
                    const Homothet h = r.at(shape, r.representative());
                    std::optional<std::size_t> y;
                    try {
                        y = find_mutually_visible_witness(inst, p, q, h);
                    } catch (const GeneralPositionViolation&) {
                        continue;
                    }
                    const VisibilityCone cone = visibility_cone(inst, {}, p, q, h);
                    const Point pp = inst.point(p);
                    const Point d = inst.point(q) - pp;
                    // Independent region test: inside h and strictly between
                    // the bounding angles.
                    auto in_region = [&](Point x) {
                        if (!homothet_contains(h, x, Containment::closed)) return false;
                        const Point e = x - pp;
                        double a = std::atan2(cross(d, e), dot(d, e));
                        if (cone.ccw_vertex && a >= 0 && a > cone.ccw_angle + 1e-12) return false;
                        if (cone.cw_vertex && a < 0 && -a > cone.cw_angle + 1e-12) return false;
                        return true;
                    };
                    bool region_has_visible = false;
                    for (std::size_t x = 0; x < inst.size(); ++x)
                        if (x != p && x != q && in_region(inst.point(x)) && testing::brute_visible(inst, p, x))
                            region_has_visible = true;
                    CHECK(y.has_value() == region_has_visible);
                    if (!y) {
                        ++without;
                        continue;
                    }
                    ++with;
                    CHECK(*y != p);
                    CHECK(*y != q);
                    CHECK(homothet_contains(h, inst.point(*y), Containment::closed));
                    CHECK(testing::brute_visible(inst, p, *y));
                    CHECK(testing::brute_visible(inst, q, *y));
                    for (std::size_t x = 0; x < inst.size(); ++x)
                        CHECK_FALSE(strictly_inside(pp, inst.point(*y), inst.point(q), inst.point(x)));
                }
            }
    }
    CHECK(with > 100);
    CHECK(without > 100);
}
