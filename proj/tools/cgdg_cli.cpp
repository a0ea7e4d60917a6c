// Command-line front end: generate instances, build graphs, run the
// verification pipeline and sweep shapes x seeds.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "cgdg/io.hpp"

namespace {

using json = nlohmann::json;

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Args {
    std::string shape = "square";
    std::string instance;
    std::uint64_t seed = 1;
    std::size_t n = 20;
    std::size_t constraints = 0;
    std::string out;
    std::string out_report;
    std::string out_svg;
    bool grid_oracle = false;
    double tolerance = 1e-9;
    int half_empty_grid = 20;
    std::string sweep = "square,rect:2:1,rect:4:1,equilateral,ngon:16";
    std::size_t seeds = 20;
};

void write_text(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw cgdg::InvalidArgument("cannot write '" + path + "'");
    out << text;
}

cgdg::Instance load_or_generate(const Args& a)
{
    if (!a.instance.empty()) return cgdg::read_instance(a.instance);
    return cgdg::generate_instance({a.seed, a.n, a.constraints});
}

int cmd_generate(const Args& a)
{
    write_text(a.out, cgdg::instance_to_text(cgdg::generate_instance({a.seed, a.n, a.constraints})));
    return 0;
}

int cmd_build(const Args& a)
{
    const cgdg::Instance inst = load_or_generate(a);
    const cgdg::ShapeSpec spec = cgdg::parse_shape(a.shape);
    cgdg::BuildOptions opts;
    opts.strict = false;
    const cgdg::CgdgGraph g = spec.rect ? cgdg::build_rect_cgdg(inst, spec.rect->first, spec.rect->second, opts)
                                        : cgdg::build_cgdg(inst, spec.shape, opts);
    json edges = json::array();
    for (const auto& [u, v] : g.edge_list()) edges.push_back({u, v});
    json marginal = json::array();
    for (const auto& [u, v] : g.marginal_pairs()) marginal.push_back({u, v});
    const json out{{"schema_version", cgdg::kReportSchemaVersion},
                   {"shape", spec.name},
                   {"n", inst.size()},
                   {"edges", edges},
                   {"marginal_pairs", marginal}};
    write_text(a.out_report, out.dump(2) + "\n");
    if (!a.out_svg.empty()) write_text(a.out_svg, cgdg::render_svg(g, cgdg::measure_stretch(g, 0.0)));
    return 0;
}

int cmd_verify(const Args& a)
{
    const cgdg::Instance inst = load_or_generate(a);
    const cgdg::ShapeSpec spec = cgdg::parse_shape(a.shape);
    cgdg::PipelineOptions opts;
    opts.grid_oracle = a.grid_oracle;
    opts.tolerance = a.tolerance;
    opts.half_empty_grid = a.half_empty_grid;
    const cgdg::PipelineResult r = cgdg::run_pipeline(inst, spec, opts);
    write_text(a.out_report, r.report.dump(2) + "\n");
    if (!a.out_svg.empty()) write_text(a.out_svg, cgdg::render_svg(*r.graph, r.stretch));
    if (!r.passed) std::cerr << "theorem check failed; see the report counterexamples\n";
    return r.passed ? 0 : kExitFail;
}

int cmd_sweep(const Args& a)
{
    std::vector<cgdg::ShapeSpec> shapes;
    std::stringstream in(a.sweep);
    for (std::string s; std::getline(in, s, ',');)
        if (!s.empty()) shapes.push_back(cgdg::parse_shape(s));
    cgdg::PipelineOptions opts;
    opts.grid_oracle = a.grid_oracle;
    opts.tolerance = a.tolerance;
    opts.half_empty_grid = a.half_empty_grid;

    json rows = json::array();
    json summary = json::array();
    bool all = true;
    for (const auto& spec : shapes) {
        double worst = 1.0, bound = 0.0;
        bool ok = true;
        for (std::size_t k = 0; k < a.seeds; ++k) {
            const std::uint64_t seed = a.seed + k;
            const cgdg::Instance inst = cgdg::generate_instance({seed, a.n, a.constraints});
            const cgdg::PipelineResult r = cgdg::run_pipeline(inst, spec, opts);
            rows.push_back({{"shape", spec.name},
                            {"seed", seed},
                            {"max_ratio", r.report["stretch"]["max_ratio"]},
                            {"bound", r.stretch.bound_used},
                            {"passed", r.passed}});
            worst = std::max(worst, r.stretch.max_ratio);
            bound = std::max(bound, r.stretch.bound_used);
            ok = ok && r.passed;
        }
        all = all && ok;
        summary.push_back({{"shape", spec.name}, {"max_ratio", worst}, {"max_bound", bound}, {"passed", ok}});
        std::fprintf(stderr, "%-16s max ratio %.6f  bound %.6f  %s\n", spec.name.c_str(), worst, bound,
                     ok ? "pass" : "FAIL");
    }
    const json out{{"schema_version", cgdg::kReportSchemaVersion},
                   {"n", a.n},
                   {"constraints", a.constraints},
                   {"seeds", a.seeds},
                   {"rows", rows},
                   {"summary", summary},
                   {"passed", all}};
    write_text(a.out_report, out.dump(2) + "\n");
    return all ? 0 : kExitFail;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Constrained generalized Delaunay graphs: build and verify"};
    app.require_subcommand(1);
    Args a;

    auto add_instance = [&](CLI::App* c) {
        c->add_option("--instance", a.instance, "Instance JSON (generated from --seed when absent)");
        c->add_option("--seed", a.seed, "RNG seed");
        c->add_option("--n", a.n, "Point count")->check(CLI::Range(std::size_t{2}, std::size_t{1000000}));
        c->add_option("--constraints", a.constraints, "Constraint count");
    };
    auto add_verify = [&](CLI::App* c) {
        c->add_option("--out-report", a.out_report, "Report path (stdout by default)");
        c->add_flag("--grid-oracle", a.grid_oracle, "Cross-check every pair with the grid oracle");
        c->add_option("--tolerance", a.tolerance, "Slack for stretch and path comparisons");
        c->add_option("--half-empty-grid", a.half_empty_grid, "Sample grid for the half-empty check")
            ->check(CLI::PositiveNumber);
    };

    auto* gen = app.add_subcommand("generate", "Write a random instance");
    gen->add_option("--seed", a.seed, "RNG seed");
    gen->add_option("--n", a.n, "Point count")->check(CLI::Range(std::size_t{2}, std::size_t{1000000}));
    gen->add_option("--constraints", a.constraints, "Constraint count");
    gen->add_option("--out", a.out, "Output path (stdout by default)");

    auto* build = app.add_subcommand("build", "Build the graph and list its edges");
    add_instance(build);
    build->add_option("--shape", a.shape, "square | rect:l:s | equilateral | ngon:k | circle | polygon file");
    build->add_option("--out-report", a.out_report, "Edge list path (stdout by default)");
    build->add_option("--out-svg", a.out_svg, "SVG drawing");

    auto* verify = app.add_subcommand("verify", "Build, run every check and write a report");
    add_instance(verify);
    verify->add_option("--shape", a.shape, "square | rect:l:s | equilateral | ngon:k | circle | polygon file");
    verify->add_option("--out-svg", a.out_svg, "SVG drawing");
    add_verify(verify);

    auto* sweep = app.add_subcommand("sweep", "Verify shapes x seeds and aggregate the stretch");
    sweep->add_option("--sweep", a.sweep, "Comma-separated shape specs");
    sweep->add_option("--seeds", a.seeds, "Seeds per shape, starting at --seed");
    sweep->add_option("--seed", a.seed, "First seed");
    sweep->add_option("--n", a.n, "Point count")->check(CLI::Range(std::size_t{2}, std::size_t{1000000}));
    sweep->add_option("--constraints", a.constraints, "Constraint count");
    add_verify(sweep);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*gen) return cmd_generate(a);
        if (*build) return cmd_build(a);
        if (*verify) return cmd_verify(a);
        return cmd_sweep(a);
    } catch (const cgdg::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
