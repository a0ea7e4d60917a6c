#pragma once

// Brute-force reference for the edge predicate: samples the family of
// homothets through p and q by the offset of the chord pq inside the shape
// and scores each sample by how far the nearest blocking vertex lies
// outside it. Independent of the pencil decomposition.

#include <cstddef>
#include <optional>
#include <vector>

#include "cgdg/cgdg.hpp"

namespace cgdg {

struct OracleDecision {
    bool exists = false;
    /// Best score within the margin of zero: the sampled answer is not
    /// trustworthy either way.
    bool undecided = false;
    /// Max over samples of min over blockers of their distance outside.
    double best_score = 0.0;
    std::optional<Homothet> best;
};

struct OracleOptions {
    int samples = 1000;
    double margin = 1e-6;
};

OracleDecision grid_edge_oracle(const Instance& inst, const ShapePtr& shape, std::size_t p,
                                std::size_t q, const OracleOptions& opts = {});

struct OracleComparison {
    std::size_t pairs = 0;    ///< visible pairs examined
    std::size_t excluded = 0; ///< undecided by the oracle
    std::vector<VertexPair> mismatches;
};

/// Compares every visible pair of the graph's instance against the oracle.
/// Marginal pairs recorded by a non-strict build count as absent edges.
OracleComparison compare_with_oracle(const CgdgGraph& g, const OracleOptions& opts = {});

} // namespace cgdg
