#pragma once

// Shape constants driving the spanning bounds: the diamond angle alpha and
// the chord constant kappa with its optimal center.

#include "cgdg/geom.hpp"

namespace cgdg {

/// Base xy on the boundary with the two isosceles apexes on the two arcs.
/// angle_primary >= angle_secondary.
struct IsoscelesPair {
    Point base_a;
    Point base_b;
    Point apex_primary;
    Point apex_secondary;
    double angle_primary = 0.0;
    double angle_secondary = 0.0;
};

/// Chord xy through center with the longer of the two boundary arcs.
struct ChordMeasure {
    Point x;
    Point y;
    Point center;
    double arc_long = 0.0;
    double chord = 0.0;

    double ratio() const { return arc_long / chord; }
};

struct AlphaResult {
    double alpha = 0.0;
    IsoscelesPair certificate;
};

struct KappaResult {
    double kappa = 0.0;
    Point center;
    ChordMeasure certificate;
};

/// Base angles of the two isosceles triangles on base xy (x, y on the
/// boundary, distinct). Larger angle first.
IsoscelesPair isosceles_pair(const ConvexShape& shape, Point x, Point y);

/// Worst chord through an interior center: the max over chord directions
/// of the longer arc over the chord length.
ChordMeasure worst_chord(const ConvexShape& shape, Point center, int resolution = 64);

/// Chord through center in direction dir (not necessarily unit).
ChordMeasure chord_through(const ConvexShape& shape, Point center, Point dir);

AlphaResult compute_alpha(const ConvexShape& shape, int resolution = 64);
KappaResult compute_kappa(const ConvexShape& shape, int resolution = 64);

/// Spanning bound 2 k (k or 1) max(3 / sin(alpha / 2), k).
double theorem1_bound(double alpha, double kappa, bool is_triangulation);

/// sqrt(2) (2 l / s + 1) for an l x s rectangle, l >= s.
double rect_bound(double l, double s);

double rect_alpha(double l, double s);
double rect_kappa(double l, double s);

struct ShapeConstants {
    double alpha = 0.0;
    double kappa = 0.0;
    Point center_O;
    double bound_t_triangulation = 0.0;
    double bound_t_general = 0.0;
    IsoscelesPair alpha_certificate;
    ChordMeasure kappa_certificate;
};

ShapeConstants compute_shape_constants(const ConvexShape& shape, int resolution = 64);

} // namespace cgdg
