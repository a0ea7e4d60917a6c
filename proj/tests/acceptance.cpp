// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Every tolerance and budget is pinned below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "cgdg/io.hpp"
#include "cgdg/oracle.hpp"
#include "support.hpp"

using namespace cgdg;

namespace {

constexpr double kPi = std::numbers::pi;

constexpr double kAlphaTol = 1e-6;
constexpr double kKappaRelTol = 1e-4;
constexpr double kPolygonTol = 0.01;
constexpr double kConstantsSeconds = 10;
constexpr std::size_t kSuiteSize = 200;
constexpr std::size_t kSuiteMaxN = 40;
constexpr std::size_t kSuiteMaxConstraints = 10;
constexpr double kPlanaritySeconds = 120;
constexpr double kDiamondControlAlpha = kPi / 2 - 0.01;
constexpr double kPathTol = 1e-9;
constexpr double kSquareUnconstrained = 2.6132;
constexpr double kTriangleConstrained = 2.0;
constexpr std::size_t kExtraInstances = 50;
constexpr std::size_t kRectInstances = 100;
constexpr std::size_t kOracleInstances = 100;
constexpr std::size_t kOracleMaxN = 12;
constexpr double kOracleExcludedFraction = 0.02;
constexpr double kOracleSeconds = 300;
constexpr std::size_t kSummationConfigs = 500;
constexpr std::size_t kSubdivisionConfigs = 200;
constexpr double kSummationRelTol = 1e-9;
constexpr std::size_t kHomothetPairs = 1000;
constexpr double kContactTol = 1e-9;
constexpr std::size_t kDeterminismSeeds = 20;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, bool ok, const std::string& summary)
{
    std::printf("criterion %2d %s  %s\n", id, ok ? "PASS" : "FAIL", summary.c_str());
    std::fflush(stdout);
    failures += !ok;
}

std::string fmt(const char* f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

struct SuiteCase {
    std::string shape_name;
    ShapePtr shape;
    Instance instance;
    CgdgGraph graph;
};

const std::vector<std::string> kSuiteShapes{"square", "rect:2:1", "rect:4:1", "equilateral", "ngon:16"};

Instance suite_instance(std::uint64_t seed, std::size_t i)
{
    const std::size_t n = 5 + (i * 7) % (kSuiteMaxN - 4);
    const std::size_t c = std::min(i % (kSuiteMaxConstraints + 1), n / 2);
    return generate_instance({seed, n, c});
}

void criterion1()
{
    const auto t0 = Clock::now();
    struct Anchor {
        const char* name;
        ShapePtr shape;
        double alpha;
        double kappa;
        bool polygon;
    };
    const std::vector<Anchor> anchors{
        {"square", unit_square(), kPi / 4, 2.0, false},
        {"rect 2:1", rectangle(2, 1), std::atan(0.5), 3.0, false},
        {"equilateral", equilateral_triangle(), kPi / 3, std::sqrt(3.0), false},
        {"64-gon", regular_polygon(64), kPi / 4, kPi / 2, true},
    };
    bool ok = true;
    std::string detail;
    for (const Anchor& a : anchors) {
        const double alpha = compute_alpha(*a.shape).alpha;
        const double kappa = compute_kappa(*a.shape).kappa;
        const bool good = a.polygon ? std::abs(alpha - a.alpha) <= kPolygonTol && std::abs(kappa - a.kappa) <= kPolygonTol
                                    : std::abs(alpha - a.alpha) <= kAlphaTol &&
                                          std::abs(kappa - a.kappa) <= kKappaRelTol * a.kappa;
        ok = ok && good;
        detail += fmt("%s alpha %.9f (anchor %.9f) kappa %.6f (anchor %.6f)%s; ", a.name, alpha, a.alpha, kappa,
                      a.kappa, good ? "" : " MISMATCH");
    }
    const double t = seconds_since(t0);
    ok = ok && t < kConstantsSeconds;
    report(1, ok, detail + fmt("%.2f s", t));
}

} // namespace

int main()
{
    criterion1();

    // Shared suite for criteria 2 to 5.
    std::vector<SuiteCase> suite;
    std::size_t marginal = 0;
    const auto t_suite = Clock::now();
    BuildOptions lax;
    lax.strict = false;
    for (std::size_t i = 0; i < kSuiteSize; ++i) {
        const std::string& name = kSuiteShapes[i % kSuiteShapes.size()];
        const ShapePtr shape = parse_shape(name).shape;
        Instance inst = suite_instance(1000 + i, i);
        CgdgGraph g = build_cgdg(inst, shape, lax);
        marginal += g.marginal_pairs().size();
        suite.push_back({name, shape, std::move(inst), std::move(g)});
    }
    {
        std::size_t crossings_failed = 0, edges = 0;
        for (const SuiteCase& c : suite) {
            edges += c.graph.edge_count();
            crossings_failed += !check_planarity(c.graph).passed();
        }
        const double t = seconds_since(t_suite);
        report(2, crossings_failed == 0 && t < kPlanaritySeconds,
               fmt("%zu instances, %zu edges, %zu non-planar, %zu marginal pairs, %.2f s", suite.size(), edges,
                   crossings_failed, marginal, t));
    }

    {
        std::size_t failed = 0;
        for (const SuiteCase& c : suite) failed += !check_diamond(c.graph, compute_alpha(*c.shape).alpha).passed();
        const Instance ctl = Instance::make({{0, 0}, {1, 0}, {0.5, 0.6}, {0.5, -0.6}}, {});
        CgdgGraph g(ctl, unit_square());
        g.add_unwitnessed_edge(0, 1);
        const bool control_fails = check_diamond(g, kDiamondControlAlpha).outcome == Outcome::fail;
        report(3, failed == 0 && control_fails,
               fmt("%zu instances failing, negative control %s", failed, control_fails ? "fails as expected" : "PASSED"));
    }

    {
        std::size_t failed = 0, pairs = 0;
        double worst = 0;
        for (const SuiteCase& c : suite) {
            const Verdict v = check_visible_pair(c.graph, compute_kappa(*c.shape).kappa, kPathTol);
            failed += !v.passed();
            pairs += v.details.value("pairs", std::size_t{0});
            worst = std::max(worst, v.details.value("max_ratio", 0.0) / compute_kappa(*c.shape).kappa);
        }
        report(4, failed == 0,
               fmt("%zu face pairs, %zu instances failing, worst path/(kappa |pq|) %.6f", pairs, failed, worst));
    }

    {
        std::size_t failed = 0;
        double worst_fraction = 0;
        for (const SuiteCase& c : suite) {
            const double bound = theorem1_bound_for(c.graph, compute_shape_constants(*c.shape));
            const StretchReport r = measure_stretch(c.graph, bound);
            failed += !r.passed;
            worst_fraction = std::max(worst_fraction, r.max_ratio / bound);
        }
        double sq = 1, tri = 1;
        std::size_t sq_n = 0, tri_n = 0;
        for (const SuiteCase& c : suite) {
            if (c.shape_name == "square" && c.instance.constraints().empty()) {
                sq = std::max(sq, measure_stretch(c.graph, kSquareUnconstrained).max_ratio);
                ++sq_n;
            }
            if (c.shape_name == "equilateral" && !c.instance.constraints().empty()) {
                tri = std::max(tri, measure_stretch(c.graph, kTriangleConstrained).max_ratio);
                ++tri_n;
            }
        }
        for (std::size_t k = 0; k < kExtraInstances; ++k) {
            const Instance free = generate_instance({5000 + k, 10 + k % 31, 0});
            sq = std::max(sq, measure_stretch(build_cgdg(free, unit_square(), lax), kSquareUnconstrained).max_ratio);
            const Instance con = generate_instance({6000 + k, 10 + k % 31, 1 + k % kSuiteMaxConstraints});
            tri = std::max(tri,
                           measure_stretch(build_cgdg(con, equilateral_triangle(), lax), kTriangleConstrained).max_ratio);
            ++sq_n;
            ++tri_n;
        }
        const bool ok = failed == 0 && sq <= kSquareUnconstrained && tri <= kTriangleConstrained;
        report(5, ok,
               fmt("%zu over bound, worst stretch/bound %.6f; unconstrained square max %.6f over %zu (limit %.4f); "
                   "constrained triangle max %.6f over %zu (limit %.1f)",
                   failed, worst_fraction, sq, sq_n, kSquareUnconstrained, tri, tri_n, kTriangleConstrained));
    }

    {
        bool ok = true;
        std::string detail;
        for (double ratio : {1.0, 2.0, 4.0}) {
            double worst = 1;
            std::size_t failed = 0;
            for (std::size_t k = 0; k < kRectInstances; ++k) {
                const Instance inst = suite_instance(7000 + k, k);
                const CgdgGraph g = build_rect_cgdg(inst, ratio, 1.0, lax);
                const double bound = std::sqrt(2.0) * (2 * ratio + 1) + kPathTol;
                const StretchReport r = measure_stretch(g, bound);
                worst = std::max(worst, r.max_ratio);
                failed += !r.passed;
            }
            ok = ok && failed == 0;
            detail += fmt("l/s=%g max %.6f (bound %.6f, %zu over); ", ratio, worst, std::sqrt(2.0) * (2 * ratio + 1),
                          failed);
        }
        report(6, ok, detail);
    }

    {
        const auto t0 = Clock::now();
        const std::vector<std::string> shapes{"square", "rect:2:1", "equilateral", "ngon:16", "rect:4:1"};
        std::size_t pairs = 0, excluded = 0, mismatches = 0;
        for (std::size_t k = 0; k < kOracleInstances; ++k) {
            const std::size_t n = 3 + k % (kOracleMaxN - 2);
            const Instance inst = generate_instance({8000 + k, n, k % 4});
            const CgdgGraph g = build_cgdg(inst, parse_shape(shapes[k % shapes.size()]).shape, lax);
            const OracleComparison c = compare_with_oracle(g);
            pairs += c.pairs;
            excluded += c.excluded;
            mismatches += c.mismatches.size();
        }
        const double t = seconds_since(t0);
        const double frac = pairs ? static_cast<double>(excluded) / pairs : 0.0;
        report(7, mismatches == 0 && frac < kOracleExcludedFraction && t < kOracleSeconds,
               fmt("%zu pairs, %zu mismatches, %zu excluded (%.3f%%), %.2f s", pairs, mismatches, excluded, 100 * frac,
                   t));
    }

    {
        std::mt19937_64 rng(9);
        std::size_t accepted = 0, failed = 0, draws = 0;
        double worst = 0;
        while (accepted < kSummationConfigs) {
            ++draws;
            const ShapePtr s = testing::random_convex_shape(rng);
            const std::size_t k = 2 + rng() % 4;
            std::vector<double> xs;
            for (std::size_t i = 0; i + 1 < k; ++i) xs.push_back(testing::uniform(rng, -0.95, 0.95));
            std::sort(xs.begin(), xs.end());
            std::vector<Point> chain{{-1, 0}};
            for (double x : xs) chain.push_back({x, testing::uniform(rng, 0, 0.5)});
            chain.push_back({1, 0});
            std::vector<Homothet> hs;
            bool usable = true;
            for (std::size_t i = 0; i + 1 < chain.size() && usable; ++i) {
                const auto h = axis_centered_homothet(s, chain[i], chain[i + 1]);
                if (!h) {
                    usable = false;
                    break;
                }
                const double tol = 1e-9 * std::max(1.0, h->perimeter());
                for (std::size_t j = 0; j < chain.size(); ++j)
                    if (j != i && j != i + 1 && h->depth(chain[j]) > tol) usable = false;
                hs.push_back(*h);
            }
            if (!usable) continue;
            ++accepted;
            const Verdict v = check_boundary_summation(s, chain, hs, kSummationRelTol);
            failed += !v.passed();
            worst = std::max(worst, v.details["sum"].get<double>() / v.details["span"].get<double>());
        }
        std::size_t sub_failed = 0;
        for (std::size_t i = 0; i < kSubdivisionConfigs; ++i) {
            const double l = testing::uniform(rng, 1, 5), w_s = testing::uniform(rng, 0.2, 1) * l;
            const Point a{testing::uniform(rng, -1, 1), testing::uniform(rng, -1, 1)};
            const double w = testing::uniform(rng, 0.5, 3);
            const double rho = testing::uniform(rng, 0, 1);
            const Point b{a.x + w, a.y + rho * w * w_s / l - testing::uniform(rng, 0, w * w_s / l)};
            std::vector<double> ts;
            for (std::size_t k = 0; k < 1 + i % 6; ++k) ts.push_back(testing::uniform(rng, 0.01, 0.99));
            std::sort(ts.begin(), ts.end());
            ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
            std::vector<Point> cuts;
            for (double t : ts) cuts.push_back(lerp(a, b, t));
            sub_failed += !summing_rectangles_identity(l, w_s, a, b, cuts, rho, kSummationRelTol).passed();
        }
        report(8, failed == 0 && sub_failed == 0,
               fmt("boundary summation %zu configs (%zu draws), %zu failing, max sum/span %.9f; "
                   "rectangle subdivision %zu configs, %zu failing",
                   accepted, draws, failed, worst, kSubdivisionConfigs, sub_failed));
    }

    {
        std::mt19937_64 rng(13);
        std::size_t bad = 0, nonempty = 0, segments = 0;
        for (std::size_t i = 0; i < kHomothetPairs; ++i) {
            const ShapePtr s = i % 2 ? testing::random_convex_shape(rng) : regular_polygon(3 + rng() % 6);
            const Homothet a(s, {testing::uniform(rng, -1, 1), testing::uniform(rng, -1, 1)}, testing::uniform(rng, 0.2, 2));
            Point c{testing::uniform(rng, -1, 1), testing::uniform(rng, -1, 1)};
            double lam = testing::uniform(rng, 0.2, 2);
            if (i % 4 == 0) {
                // Same scale, pushed across a side so the boundaries share a segment.
                lam = a.scale();
                c = a.center() + testing::uniform(rng, -0.9, 0.9) * (a.vertex(1) - a.vertex(0)) +
                    (2 * a.scale() * s->support(0)) * s->normal(0);
            }
            const Homothet b(s, c, lam);
            const ContactSet cs = homothet_pair_intersection_components(a, b);
            bool ok = cs.components.size() <= 2 && !cs.polyline;
            for (const BoundaryContact& k : cs.components) {
                const double tol = kContactTol * std::max({1.0, a.perimeter(), b.perimeter()});
                for (Point p : {k.a, k.b, lerp(k.a, k.b, 0.5)})
                    ok = ok && std::abs(a.depth(p)) <= tol && std::abs(b.depth(p)) <= tol;
                segments += !k.is_point();
            }
            nonempty += !cs.components.empty();
            bad += !ok;
        }
        report(9, bad == 0,
               fmt("%zu pairs, %zu touching, %zu segment contacts, %zu violating", kHomothetPairs, nonempty, segments,
                   bad));
    }

    {
        std::size_t differing = 0;
        for (std::size_t k = 0; k < kDeterminismSeeds; ++k) {
            const GenerateOptions opts{9000 + k, 10 + k, k % 5};
            const std::string a = instance_to_text(generate_instance(opts));
            const std::string b = instance_to_text(generate_instance(opts));
            const ShapeSpec spec = parse_shape(kSuiteShapes[k % kSuiteShapes.size()]);
            const auto ra = without_timing(run_pipeline(instance_from_json(nlohmann::json::parse(a)), spec).report);
            const auto rb = without_timing(run_pipeline(instance_from_json(nlohmann::json::parse(b)), spec).report);
            differing += a != b || ra != rb;
        }
        report(10, differing == 0, fmt("%zu seeds, %zu differing", kDeterminismSeeds, differing));
    }

    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
