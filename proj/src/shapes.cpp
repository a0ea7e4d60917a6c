#include "cgdg/shapes.hpp"

#include <numbers>

namespace cgdg {

ShapePtr unit_square() { return rectangle(1.0, 1.0); }

ShapePtr rectangle(double l, double s)
{
    if (!(l > 0) || !(s > 0) || !std::isfinite(l) || !std::isfinite(s))
        throw InvalidShape("rectangle sides must be positive");
    const double hx = 0.5 * l;
    const double hy = 0.5 * s;
    return share(ConvexShape::make({{-hx, -hy}, {hx, -hy}, {hx, hy}, {-hx, hy}}, {0.0, 0.0}));
}

ShapePtr equilateral_triangle()
{
    const double h = std::sqrt(3.0) / 2.0;
    return share(ConvexShape::make({{0.0, 0.0}, {1.0, 0.0}, {0.5, h}}, {0.5, h / 3.0}));
}

ShapePtr regular_polygon(std::size_t k)
{
    if (k < 3) throw InvalidShape("regular polygon needs at least 3 vertices");
    std::vector<Point> v;
    v.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        const double a = -std::numbers::pi / 2 + std::numbers::pi * (2.0 * i - 1.0) / k;
        v.push_back({std::cos(a), std::sin(a)});
    }
    return share(ConvexShape::make(std::move(v), {0.0, 0.0}));
}

bool as_axis_rectangle(const ConvexShape& shape, double* l, double* s)
{
    if (shape.size() != 4) return false;
    for (std::size_t i = 0; i < 4; ++i) {
        const Point n = shape.normal(i);
        if (!(n.x == 0.0 || n.y == 0.0)) return false;
    }
    double x0 = shape.vertex(0).x, x1 = x0, y0 = shape.vertex(0).y, y1 = y0;
    for (const Point& p : shape.vertices()) {
        x0 = std::min(x0, p.x);
        x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
    }
    if (l) *l = x1 - x0;
    if (s) *s = y1 - y0;
    return true;
}

} // namespace cgdg
