#include "cgdg/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cgdg {

namespace {

struct Sample {
    double score;
    double offset;
};

} // namespace

OracleDecision grid_edge_oracle(const Instance& inst, const ShapePtr& shape, std::size_t p,
                                std::size_t q, const OracleOptions& opts)
{
    OracleDecision out;
    if (!visible(inst, p, q)) return out;
    const Point pp = inst.point(p);
    const Point qq = inst.point(q);
    const double len = distance(pp, qq);
    const Point dh = (1.0 / len) * (qq - pp);
    const Point nh = perp(dh);

    std::vector<Point> rel;
    for (std::size_t i = 0; i < shape->size(); ++i) rel.push_back(shape->vertex(i) - shape->origin());
    double omin = std::numeric_limits<double>::infinity(), omax = -omin;
    for (const Point& z : rel) {
        omin = std::min(omin, dot(nh, z));
        omax = std::max(omax, dot(nh, z));
    }

    std::vector<Point> blockers;
    for (std::size_t x = 0; x < inst.size(); ++x)
        if (x != p && x != q && visible(inst, p, x) && visible(inst, q, x)) blockers.push_back(inst.point(x));

    // Homothet whose chord at offset s (relative to the origin) maps onto pq.
    auto homothet_at = [&](double s, std::vector<Point>& verts) -> bool {
        double t0 = std::numeric_limits<double>::infinity(), t1 = -t0;
        for (std::size_t i = 0; i < rel.size(); ++i) {
            const Point a = rel[i];
            const Point b = rel[(i + 1) % rel.size()];
            const double oa = dot(nh, a) - s;
            const double ob = dot(nh, b) - s;
            if (oa * ob > 0 || oa == ob) continue;
            const double tau = dot(dh, lerp(a, b, oa / (oa - ob)));
            t0 = std::min(t0, tau);
            t1 = std::max(t1, tau);
        }
        if (!(t1 > t0)) return false;
        const double lambda = len / (t1 - t0);
        const Point t = pp - lambda * (s * nh + t0 * dh);
        verts.clear();
        for (const Point& z : rel) verts.push_back(t + lambda * z);
        return true;
    };
    std::vector<Point> verts;
    auto score = [&](double s) {
        if (!homothet_at(s, verts)) return -std::numeric_limits<double>::infinity();
        double worst = std::numeric_limits<double>::infinity();
        for (const Point& x : blockers) {
            double depth = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < verts.size(); ++i) {
                const Point a = verts[i];
                const Point b = verts[(i + 1) % verts.size()];
                depth = std::min(depth, cross(b - a, x - a) / distance(a, b));
            }
            worst = std::min(worst, -depth);
        }
        return worst;
    };

    const double w = omax - omin;
    std::vector<double> offsets;
    for (int i = 1; i < opts.samples; ++i) offsets.push_back(omin + w * i / opts.samples);
    // Deeper end samples lose all precision to the huge scale there.
    for (int k = 1; k <= 8; ++k) {
        offsets.push_back(omin + w * std::pow(10.0, -k));
        offsets.push_back(omax - w * std::pow(10.0, -k));
    }
    std::vector<Sample> samples;
    for (double s : offsets) samples.push_back({score(s), s});
    std::sort(samples.begin(), samples.end(), [](const Sample& a, const Sample& b) { return a.score > b.score; });

    Sample best = samples.front();
    const double h = w / opts.samples;
    for (std::size_t i = 0; i < std::min<std::size_t>(5, samples.size()); ++i) {
        double lo = std::max(omin + 1e-8 * w, samples[i].offset - h);
        double hi = std::min(omax - 1e-8 * w, samples[i].offset + h);
        for (int it = 0; it < 80; ++it) {
            const double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
            if (score(m1) < score(m2))
                lo = m1;
            else
                hi = m2;
        }
        const double s = 0.5 * (lo + hi);
        const double v = score(s);
        if (v > best.score) best = {v, s};
    }

    out.best_score = best.score;
    out.exists = best.score > 0;
    out.undecided = std::isfinite(best.score) && std::abs(best.score) < opts.margin;
    if (homothet_at(best.offset, verts)) {
        // Recover center and scale from the first vertex and the scale of
        // edge 0.
        const double lambda = distance(verts[0], verts[1]) / distance(rel[0], rel[1]);
        out.best = Homothet(shape, verts[0] - lambda * rel[0], lambda);
    }
    return out;
}

OracleComparison compare_with_oracle(const CgdgGraph& g, const OracleOptions& opts)
{
    OracleComparison out;
    const Instance& inst = g.instance();
    for (std::size_t u = 0; u < inst.size(); ++u)
        for (std::size_t v = u + 1; v < inst.size(); ++v) {
            if (!visible(inst, u, v)) continue;
            ++out.pairs;
            const OracleDecision d = grid_edge_oracle(inst, g.shape_ptr(), u, v, opts);
            if (d.undecided) {
                ++out.excluded;
                continue;
            }
            const bool witnessed = std::any_of(g.edges().begin(), g.edges().end(), [&](const EdgeWitness& e) {
                return (e.u == u && e.v == v) || (e.u == v && e.v == u);
            });
            if (witnessed != d.exists) out.mismatches.push_back({u, v});
        }
    return out;
}

} // namespace cgdg
