#pragma once

// Gap search over a one-parameter family of homothets, shared by the
// general pencil and the closed-form rectangle pencil.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "cgdg/cgdg.hpp"

namespace cgdg::detail {

/// One affine piece of the family. Intervals are the open parameter ranges
/// in which some blocking vertex is interior; they are not clipped.
struct FamilyPiece {
    double lo = 0.0;
    double hi = 0.0;
    std::vector<std::pair<double, double>> intervals;
    // Homothet at each finite end, to join pieces that meet.
    Point center_lo, center_hi;
    double scale_lo = 0.0, scale_hi = 0.0;
};

struct SweepOutcome {
    EdgeDecision decision = EdgeDecision::absent;
    std::size_t piece = 0;
    double param = 0.0;
};

/// Finds uncovered parameters. A gap longer than tol (summed across pieces
/// meeting at a common homothet) is a witness; shorter gaps and near-equal
/// enter/leave events are marginal. `step` sets how far past the last event
/// a witness is placed on an unbounded end.
SweepOutcome sweep_family(std::span<const FamilyPiece> pieces, double step, double tol);

} // namespace cgdg::detail
