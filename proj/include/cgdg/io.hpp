#pragma once

// Files, generators and the construct-and-verify pipeline behind the CLI.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cgdg/cgdg.hpp"
#include "cgdg/shape_constants.hpp"
#include "cgdg/verify.hpp"

namespace cgdg {

inline constexpr int kReportSchemaVersion = 1;

struct ShapeSpec {
    std::string name;
    ShapePtr shape;
    /// Set for axis-aligned rectangles (l >= s after normalization), which
    /// use the closed-form pencil and the rectangle bound.
    std::optional<std::pair<double, double>> rect;
};

/// "square", "rect:l:s", "equilateral", "ngon:k", "circle" (64-gon), or a
/// path to a JSON polygon file {vertices: [[x,y],...], origin: [x,y]}.
/// Throws InvalidArgument / InvalidShape.
ShapeSpec parse_shape(const std::string& spec);

/// Shortest-safe decimal with 17 significant digits.
std::string format_double(double x);

std::string instance_to_text(const Instance& inst);
Instance instance_from_json(const nlohmann::json& j);
Instance read_instance(const std::string& path);
void write_instance(const std::string& path, const Instance& inst);

struct GenerateOptions {
    std::uint64_t seed = 1;
    std::size_t n = 20;
    std::size_t constraints = 0;
    std::size_t retry_budget = 100000;
};

/// Uniform points in the unit square at pairwise distance >= 1e-3 and
/// random non-crossing constraints with no point in their interior.
/// Throws GenerationFailed when the retry budget runs out.
Instance generate_instance(const GenerateOptions& opts);

struct PipelineOptions {
    bool grid_oracle = false;
    /// Slack for stretch and visible-pair comparisons.
    double tolerance = 1e-9;
    int half_empty_grid = 20;
};

struct PipelineResult {
    nlohmann::json report;
    bool passed = true;
    std::optional<CgdgGraph> graph;
    StretchReport stretch;
};

/// Constants per shape are computed once per process and reused.
const ShapeConstants& constants_for(const ShapeSpec& spec);

PipelineResult run_pipeline(const Instance& inst, const ShapeSpec& spec, const PipelineOptions& opts = {});

/// Points, constraints (dashed lines), one polyline per graph edge and the
/// argmax stretch pair.
std::string render_svg(const CgdgGraph& g, const StretchReport& stretch);

/// Copy of a report with the timing field removed, for comparisons.
nlohmann::json without_timing(nlohmann::json report);

} // namespace cgdg
