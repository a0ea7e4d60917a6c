#pragma once

// Constrained generalized Delaunay graph: pq is an edge iff some homothet
// with p and q on its boundary has no vertex visible to both p and q in its
// interior.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "cgdg/geom.hpp"
#include "cgdg/visibility.hpp"

namespace cgdg {

/// Parameter distance below which two pencil events count as simultaneous.
inline constexpr double kTieTolerance = 1e-9;

struct EdgeWitness {
    std::size_t u = 0;
    std::size_t v = 0;
    Homothet witness;
};

enum class EdgeDecision {
    present,
    absent,
    /// The only empty homothets sit on event ties: the answer depends on an
    /// infinitesimal perturbation of the input.
    marginal,
};

struct EdgeQuery {
    EdgeDecision decision = EdgeDecision::absent;
    std::optional<Homothet> witness;
};

struct BuildOptions {
    /// Throw GeneralPositionViolation on marginal pairs; otherwise record
    /// them in CgdgGraph::marginal_pairs and omit the edge.
    bool strict = true;
    /// Add every constraint as an edge (the unmodified graph). Constraint
    /// edges without an empty homothet are listed in forced_edges.
    bool include_constraints = false;
};

class CgdgGraph {
public:
    CgdgGraph(Instance instance, ShapePtr shape);

    const Instance& instance() const { return instance_; }
    const ConvexShape& shape() const { return *shape_; }
    const ShapePtr& shape_ptr() const { return shape_; }
    std::size_t size() const { return adjacency_.size(); }

    std::span<const EdgeWitness> edges() const { return edges_; }
    std::span<const VertexPair> forced_edges() const { return forced_; }
    std::span<const VertexPair> marginal_pairs() const { return marginal_; }

    /// All edges (witnessed and forced) as sorted (min, max) pairs.
    std::vector<VertexPair> edge_list() const;
    std::size_t edge_count() const { return edges_.size() + forced_.size(); }
    bool has_edge(std::size_t u, std::size_t v) const;
    /// Neighbors of v sorted by index.
    std::span<const std::size_t> neighbors(std::size_t v) const { return adjacency_[v]; }

    void add_edge(EdgeWitness w);
    /// Adds an edge with no witness (forced constraints, injected test edges).
    void add_unwitnessed_edge(std::size_t u, std::size_t v);
    void add_marginal(std::size_t u, std::size_t v);

private:
    void link(std::size_t u, std::size_t v);

    Instance instance_;
    ShapePtr shape_;
    std::vector<EdgeWitness> edges_;
    std::vector<VertexPair> forced_;
    std::vector<VertexPair> marginal_;
    std::vector<std::vector<std::size_t>> adjacency_;
};

/// Decides pq by sweeping every pencil regime. `vis` may supply a prebuilt
/// visibility matrix for the instance.
EdgeQuery edge_query(const Instance& inst, const ShapePtr& shape, std::size_t p, std::size_t q,
                     const VisibilityGraph* vis = nullptr);

/// Witness for pq or none; throws GeneralPositionViolation on a marginal
/// pair.
std::optional<EdgeWitness> edge_exists(const Instance& inst, const ShapePtr& shape, std::size_t p,
                                       std::size_t q);

CgdgGraph build_cgdg(const Instance& inst, const ShapePtr& shape, const BuildOptions& opts = {});

/// Closed-form rectangle pencil for pq with an axis-aligned l x s rectangle.
EdgeQuery rect_edge_query(const Instance& inst, double l, double s, std::size_t p, std::size_t q,
                          const VisibilityGraph* vis = nullptr);

/// Same semantics as build_cgdg with rectangle(l, s), using the closed-form
/// rectangle pencil.
CgdgGraph build_rect_cgdg(const Instance& inst, double l, double s, const BuildOptions& opts = {});

struct GrowthHit {
    std::size_t vertex = 0;
    Homothet homothet;
};

/// Grows a homothet with p pinned on its boundary and center moving from p
/// toward q; returns the first vertex hit that p sees and that lies in the
/// region of pq (cone from constraints and current_edges_at_p), or none when
/// q is reached first.
std::optional<GrowthHit> grow_first_hit(const Instance& inst, const ShapePtr& shape, std::size_t p,
                                        std::size_t q,
                                        std::span<const std::size_t> current_edges_at_p = {});

} // namespace cgdg
