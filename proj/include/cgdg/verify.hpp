#pragma once

// Property checks over constructed graphs: planarity, diamond property,
// visible-pair spanner property, stretch factors, and the rectangle and
// boundary-summation identities.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cgdg/cgdg.hpp"
#include "cgdg/shape_constants.hpp"

namespace cgdg {

enum class Outcome { pass, fail, hypothesis_not_met };

const char* to_string(Outcome o);

struct Verdict {
    std::string property;
    Outcome outcome = Outcome::pass;
    /// Set for failures (and unmet hypotheses): enough to replay the check.
    nlohmann::json counterexample;
    /// Extra numbers recorded by the check (counts, sample density).
    nlohmann::json details = nlohmann::json::object();

    bool passed() const { return outcome != Outcome::fail; }
};

/// Undirected weighted graph as adjacency lists.
struct WeightedGraph {
    std::vector<std::vector<std::pair<std::size_t, double>>> adj;
};

WeightedGraph weighted(const CgdgGraph& g);
WeightedGraph weighted(const VisibilityGraph& vis, const Instance& inst);

/// Dijkstra from every source; row-major n x n, infinity when unreachable.
std::vector<double> all_pairs_shortest_paths(const WeightedGraph& g);

/// Faces of a plane straight-line graph as closed walks. Bounded faces are
/// counterclockwise (positive area); each connected component contributes
/// one clockwise outer walk.
struct Face {
    std::vector<std::size_t> walk;
    double signed_area = 0.0;
};

std::vector<Face> faces(const CgdgGraph& g);

/// Every bounded face is a triangle and the single outer walk is the
/// convex hull.
bool is_triangulation(const CgdgGraph& g);

Verdict check_planarity(const CgdgGraph& g);
Verdict check_diamond(const CgdgGraph& g, double alpha);

/// Non-edge pairs (p, q) on a common face with pq visible and inside that
/// face.
std::vector<VertexPair> visible_face_pairs(const CgdgGraph& g);

Verdict check_visible_pair(const CgdgGraph& g, double kappa, double tol = 1e-9);

struct StretchReport {
    double max_ratio = 1.0;
    VertexPair argmax_pair{0, 0};
    /// Row-major delta_G / delta_Vis, filled on request; 0 on the diagonal
    /// and for pairs not connected in the visibility graph.
    std::vector<double> per_pair;
    double bound_used = 0.0;
    bool passed = true;
    /// Pairs connected in the visibility graph but not in the graph.
    std::vector<VertexPair> disconnected;
};

/// Max over visibility-connected pairs of delta_G / delta_Vis.
StretchReport measure_stretch(const CgdgGraph& g, double bound, bool keep_table = false,
                              double tol = 1e-9);

/// General stretch bound for this graph, with the triangulation case detected
/// from its faces.
double theorem1_bound_for(const CgdgGraph& g, const ShapeConstants& c);

Verdict check_stretch(const CgdgGraph& g, double bound, const std::string& property = "stretch");
Verdict check_rect_bound(const CgdgGraph& g, double l, double s);

/// Homothet with its center on the x-axis and a, b on its boundary; the
/// smallest one when several exist.
std::optional<Homothet> axis_centered_homothet(const ShapePtr& shape, Point a, Point b);

/// Arc of h between a and b with the larger minimum y (the arc above the
/// x-axis for an axis-centered homothet).
double upper_arc_length(const Homothet& h, Point a, Point b);

/// Sum of the upper arcs of homothets[i] between chain[i] and chain[i+1]
/// against the upper arc of the axis-centered homothet through the chain
/// ends. The chain ends must be on the x-axis and every chain vertex on or
/// above it. Throws PreconditionViolated when a homothet is off-axis, misses
/// its pair, or contains another chain vertex.
Verdict check_boundary_summation(const ShapePtr& shape, const std::vector<Point>& chain,
                                 const std::vector<Homothet>& homothets, double rel_tol = 1e-9);

/// Rectangle R (l x s shape) with p on its West and q on its East side; rho
/// = |pa| / |ra| places it vertically. Cuts are points on pq strictly
/// ordered from p to q. Compares the three-side lengths of the similar
/// sub-rectangles against those of R.
Verdict summing_rectangles_identity(double l, double s, Point p, Point q,
                                    const std::vector<Point>& cuts, double rho,
                                    double rel_tol = 1e-9);

/// Half-empty hypothesis for a rectangle through p and q and, when it
/// holds, the no-see-across conclusion sampled on a grid x grid lattice
/// plus the vertices above pq.
Verdict check_half_empty(const Instance& inst, std::size_t p, std::size_t q, const Homothet& rect,
                         int grid = 20);

} // namespace cgdg
