#include "cgdg/io.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "cgdg/oracle.hpp"
#include "cgdg/shapes.hpp"

namespace cgdg {

namespace {

using json = nlohmann::json;

double parse_number(const std::string& s, const std::string& spec)
{
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || !std::isfinite(v)) throw InvalidArgument("bad number in shape spec '" + spec + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string part;
    while (std::getline(in, part, sep)) out.push_back(part);
    return out;
}

Point read_point(const json& j)
{
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw InvalidInstance("point must be [x, y]");
    return {j[0].get<double>(), j[1].get<double>()};
}

json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw InvalidArgument("'" + path + "' is not valid JSON: " + e.what());
    }
}

// Uniform double in [0, 1) from the top 53 bits.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

json pair_json(const VertexPair& p) { return json::array({p.first, p.second}); }

json verdict_json(const Verdict& v)
{
    json j{{"property", v.property},
           {"outcome", to_string(v.outcome)},
           {"passed", v.passed()},
           {"details", v.details}};
    if (!v.counterexample.is_null()) j["counterexample"] = v.counterexample;
    return j;
}

std::string svg_num(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

} // namespace

ShapeSpec parse_shape(const std::string& spec)
{
    ShapeSpec out;
    out.name = spec;
    const auto parts = split(spec, ':');
    if (spec == "square") {
        out.shape = unit_square();
        out.rect = {{1.0, 1.0}};
    } else if (spec == "equilateral") {
        out.shape = equilateral_triangle();
    } else if (spec == "circle") {
        out.shape = regular_polygon(64);
    } else if (!parts.empty() && parts[0] == "rect") {
        if (parts.size() != 3) throw InvalidArgument("expected rect:l:s, got '" + spec + "'");
        const double l = parse_number(parts[1], spec);
        const double s = parse_number(parts[2], spec);
        if (!(s > 0) || !(l >= s)) throw InvalidArgument("rect:l:s needs l >= s > 0");
        out.shape = rectangle(l, s);
        out.rect = {{l, s}};
    } else if (!parts.empty() && parts[0] == "ngon") {
        if (parts.size() != 2) throw InvalidArgument("expected ngon:k, got '" + spec + "'");
        const double k = parse_number(parts[1], spec);
        if (k < 3 || k != std::floor(k) || k > 100000) throw InvalidArgument("ngon:k needs an integer k >= 3");
        out.shape = regular_polygon(static_cast<std::size_t>(k));
    } else {
        const json j = read_json_file(spec);
        if (!j.contains("vertices") || !j.contains("origin") || !j["vertices"].is_array())
            throw InvalidShape("polygon file needs 'vertices' and 'origin'");
        std::vector<Point> vs;
        try {
            for (const auto& p : j["vertices"]) vs.push_back(read_point(p));
            out.shape = share(ConvexShape::make(std::move(vs), read_point(j["origin"])));
        } catch (const InvalidInstance& e) {
            throw InvalidShape(e.what());
        }
        double l = 0, s = 0;
        if (as_axis_rectangle(*out.shape, &l, &s) && l >= s) out.rect = {{l, s}};
    }
    return out;
}

std::string format_double(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string instance_to_text(const Instance& inst)
{
    std::string out = "{\n  \"points\": [";
    for (std::size_t i = 0; i < inst.size(); ++i) {
        out += i ? ",\n    [" : "\n    [";
        out += format_double(inst.point(i).x) + ", " + format_double(inst.point(i).y) + "]";
    }
    out += inst.size() ? "\n  ],\n  \"constraints\": [" : "],\n  \"constraints\": [";
    const auto cs = inst.constraints();
    for (std::size_t i = 0; i < cs.size(); ++i)
        out += (i ? ", [" : "[") + std::to_string(cs[i].first) + ", " + std::to_string(cs[i].second) + "]";
    out += "]\n}\n";
    return out;
}

Instance instance_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("points") || !j["points"].is_array())
        throw InvalidInstance("instance needs a 'points' array");
    std::vector<Point> pts;
    for (const auto& p : j["points"]) pts.push_back(read_point(p));
    std::vector<VertexPair> cs;
    if (j.contains("constraints")) {
        if (!j["constraints"].is_array()) throw InvalidInstance("'constraints' must be an array");
        for (const auto& c : j["constraints"]) {
            if (!c.is_array() || c.size() != 2 || !c[0].is_number_unsigned() || !c[1].is_number_unsigned())
                throw InvalidInstance("constraint must be [i, j] with non-negative indices");
            cs.push_back({c[0].get<std::size_t>(), c[1].get<std::size_t>()});
        }
    }
    return Instance::make(std::move(pts), std::move(cs));
}

Instance read_instance(const std::string& path)
{
    try {
        return instance_from_json(read_json_file(path));
    } catch (const InvalidArgument& e) {
        throw InvalidInstance(e.what());
    }
}

void write_instance(const std::string& path, const Instance& inst)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidArgument("cannot write '" + path + "'");
    out << instance_to_text(inst);
}

Instance generate_instance(const GenerateOptions& opts)
{
    if (opts.n < 2) throw InvalidArgument("n must be at least 2");
    std::mt19937_64 rng(opts.seed);
    std::size_t budget = opts.retry_budget;
    std::vector<Point> pts;
    while (pts.size() < opts.n) {
        const Point p{unit(rng), unit(rng)};
        const bool ok = std::all_of(pts.begin(), pts.end(), [&](Point o) { return distance(o, p) >= 1e-3; });
        if (ok)
            pts.push_back(p);
        else if (budget-- == 0)
            throw GenerationFailed("could not place points at distance >= 1e-3");
    }
    std::vector<VertexPair> cs;
    auto index = [&] { return std::min(static_cast<std::size_t>(unit(rng) * opts.n), opts.n - 1); };
    while (cs.size() < opts.constraints) {
        if (budget-- == 0) throw GenerationFailed("could not place the requested constraints");
        std::size_t a = index(), b = index();
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        if (std::find(cs.begin(), cs.end(), VertexPair{a, b}) != cs.end()) continue;
        const Segment s{pts[a], pts[b]};
        bool ok = true;
        for (std::size_t v = 0; ok && v < pts.size(); ++v)
            ok = !in_segment_interior(pts[v], s);
        for (std::size_t i = 0; ok && i < cs.size(); ++i)
            ok = !segments_properly_intersect(s, {pts[cs[i].first], pts[cs[i].second]});
        if (ok) cs.push_back({a, b});
    }
    return Instance::make(std::move(pts), std::move(cs));
}

const ShapeConstants& constants_for(const ShapeSpec& spec)
{
    static std::map<const ConvexShape*, std::pair<ShapePtr, ShapeConstants>> cache;
    auto it = cache.find(spec.shape.get());
    if (it == cache.end())
        it = cache.emplace(spec.shape.get(), std::pair{spec.shape, compute_shape_constants(*spec.shape)}).first;
    return it->second.second;
}

PipelineResult run_pipeline(const Instance& inst, const ShapeSpec& spec, const PipelineOptions& opts)
{
    const auto start = std::chrono::steady_clock::now();
    const ShapeConstants& c = constants_for(spec);
    BuildOptions build;
    build.strict = false;
    CgdgGraph g = spec.rect ? build_rect_cgdg(inst, spec.rect->first, spec.rect->second, build)
                            : build_cgdg(inst, spec.shape, build);

    PipelineResult r;
    json report;
    report["schema_version"] = kReportSchemaVersion;
    json shape{{"spec", spec.name},
               {"alpha", c.alpha},
               {"kappa", c.kappa},
               {"center_O", json::array({c.center_O.x, c.center_O.y})},
               {"bound_triangulation", c.bound_t_triangulation},
               {"bound_general", c.bound_t_general}};
    if (spec.rect)
        shape["rect"] = {{"l", spec.rect->first},
                         {"s", spec.rect->second},
                         {"bound", rect_bound(spec.rect->first, spec.rect->second)}};
    report["shape"] = shape;

    const VisibilityGraph vis = VisibilityGraph::build(inst);
    const bool tri = is_triangulation(g);
    json edges = json::array();
    for (const auto& e : g.edge_list()) edges.push_back(pair_json(e));
    json marginal = json::array();
    for (const auto& e : g.marginal_pairs()) marginal.push_back(pair_json(e));
    report["instance"] = {{"n", inst.size()}, {"constraints", inst.constraints().size()}};
    report["graph"] = {{"edge_count", g.edge_count()},
                       {"edges", edges},
                       {"marginal_pairs", marginal},
                       {"visibility_edges", vis.edge_count()},
                       {"is_triangulation", tri}};

    std::vector<Verdict> verdicts;
    verdicts.push_back(check_planarity(g));
    verdicts.push_back(check_diamond(g, c.alpha));
    verdicts.push_back(check_visible_pair(g, c.kappa, opts.tolerance));
    const double bound = theorem1_bound(c.alpha, c.kappa, tri);
    r.stretch = measure_stretch(g, bound, false, opts.tolerance);
    {
        Verdict v;
        v.property = "theorem1_stretch";
        v.details = {{"max_ratio", r.stretch.max_ratio}, {"bound", bound}, {"triangulation", tri}};
        if (!r.stretch.passed) {
            v.outcome = Outcome::fail;
            json dis = json::array();
            for (const auto& d : r.stretch.disconnected) dis.push_back(pair_json(d));
            v.counterexample = {{"pair", pair_json(r.stretch.argmax_pair)},
                                {"ratio", std::isfinite(r.stretch.max_ratio) ? json(r.stretch.max_ratio) : json("inf")},
                                {"disconnected", dis}};
        }
        verdicts.push_back(v);
    }
    if (spec.rect) {
        const double rb = rect_bound(spec.rect->first, spec.rect->second);
        Verdict v;
        v.property = "rect_stretch";
        v.details = {{"max_ratio", r.stretch.max_ratio}, {"bound", rb}};
        if (!(r.stretch.disconnected.empty() && r.stretch.max_ratio <= rb + opts.tolerance)) {
            v.outcome = Outcome::fail;
            v.counterexample = {{"pair", pair_json(r.stretch.argmax_pair)}, {"bound", rb}};
        }
        verdicts.push_back(v);

        // Half-empty check on every edge witness rectangle.
        Verdict he;
        he.property = "half_empty";
        std::size_t checked = 0, not_met = 0;
        for (const EdgeWitness& w : g.edges()) {
            if (inst.point(w.u).x == inst.point(w.v).x) continue;
            const Verdict one = check_half_empty(inst, w.u, w.v, w.witness, opts.half_empty_grid);
            if (one.outcome == Outcome::hypothesis_not_met) {
                ++not_met;
                continue;
            }
            ++checked;
            if (one.outcome == Outcome::fail && he.outcome != Outcome::fail) {
                he.outcome = Outcome::fail;
                he.counterexample = {{"edge", json::array({w.u, w.v})}, {"check", one.counterexample}};
            }
        }
        he.details = {{"grid", opts.half_empty_grid}, {"checked", checked}, {"hypothesis_not_met", not_met}};
        verdicts.push_back(he);
    }
    if (opts.grid_oracle) {
        const OracleComparison cmp = compare_with_oracle(g);
        Verdict v;
        v.property = "grid_oracle";
        json mism = json::array();
        for (const auto& m : cmp.mismatches) mism.push_back(pair_json(m));
        v.details = {{"pairs", cmp.pairs}, {"excluded", cmp.excluded}};
        if (!cmp.mismatches.empty()) {
            v.outcome = Outcome::fail;
            v.counterexample = {{"mismatches", mism}};
        }
        verdicts.push_back(v);
    }

    json checks = json::array();
    for (const Verdict& v : verdicts) {
        checks.push_back(verdict_json(v));
        r.passed = r.passed && v.passed();
    }
    report["checks"] = checks;
    report["stretch"] = {{"max_ratio", std::isfinite(r.stretch.max_ratio) ? json(r.stretch.max_ratio) : json("inf")},
                         {"argmax_pair", pair_json(r.stretch.argmax_pair)},
                         {"bound_used", r.stretch.bound_used},
                         {"passed", r.stretch.passed}};
    report["passed"] = r.passed;
    report["timing"] = {
        {"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()}};
    r.report = std::move(report);
    r.graph.emplace(std::move(g));
    return r;
}

std::string render_svg(const CgdgGraph& g, const StretchReport& stretch)
{
    const Instance& inst = g.instance();
    double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    if (inst.size()) {
        x0 = x1 = inst.point(0).x;
        y0 = y1 = inst.point(0).y;
    }
    for (const Point& p : inst.points()) {
        x0 = std::min(x0, p.x);
        x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
    }
    const double span = std::max({x1 - x0, y1 - y0, 1e-9});
    const double size = 800, pad = 20;
    auto sx = [&](double x) { return svg_num(pad + (x - x0) / span * size); };
    auto sy = [&](double y) { return svg_num(pad + (y1 - y) / span * size); };
    const double r = 3;

    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                      svg_num(size + 2 * pad) + "\" height=\"" + svg_num(size + 2 * pad) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n";
    for (const auto& [u, v] : g.edge_list())
        out += "<polyline points=\"" + sx(inst.point(u).x) + "," + sy(inst.point(u).y) + " " + sx(inst.point(v).x) +
               "," + sy(inst.point(v).y) + "\"/>\n";
    out += "</g>\n<g stroke=\"blue\" stroke-width=\"2.5\" stroke-dasharray=\"6,4\">\n";
    for (const auto& [u, v] : inst.constraints())
        out += "<line x1=\"" + sx(inst.point(u).x) + "\" y1=\"" + sy(inst.point(u).y) + "\" x2=\"" +
               sx(inst.point(v).x) + "\" y2=\"" + sy(inst.point(v).y) + "\"/>\n";
    out += "</g>\n";
    const auto [a, b] = stretch.argmax_pair;
    if (a != b && a < inst.size() && b < inst.size())
        out += "<line class=\"argmax\" stroke=\"red\" stroke-width=\"2\" x1=\"" + sx(inst.point(a).x) + "\" y1=\"" +
               sy(inst.point(a).y) + "\" x2=\"" + sx(inst.point(b).x) + "\" y2=\"" + sy(inst.point(b).y) + "\"/>\n";
    out += "<g fill=\"black\">\n";
    for (const Point& p : inst.points())
        out += "<circle cx=\"" + sx(p.x) + "\" cy=\"" + sy(p.y) + "\" r=\"" + svg_num(r) + "\"/>\n";
    out += "</g>\n</svg>\n";
    return out;
}

json without_timing(json report)
{
    report.erase("timing");
    return report;
}

} // namespace cgdg
