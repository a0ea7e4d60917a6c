#pragma once

// Named shapes. All are returned with their natural center as origin.

#include "cgdg/geom.hpp"

namespace cgdg {

/// Axis-aligned unit square centered at (0,0).
ShapePtr unit_square();

/// Axis-aligned rectangle, width l (x) and height s (y), centered at (0,0).
ShapePtr rectangle(double l, double s);

/// Equilateral triangle with unit side, base on the x-axis, origin at the
/// centroid.
ShapePtr equilateral_triangle();

/// Regular k-gon with unit circumradius centered at (0,0); edge 0 is the
/// horizontal bottom edge.
ShapePtr regular_polygon(std::size_t k);

/// True when the shape is an axis-aligned rectangle; sets l and s to its
/// width and height.
bool as_axis_rectangle(const ConvexShape& shape, double* l = nullptr, double* s = nullptr);

} // namespace cgdg
