#include "cgdg/cgdg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cgdg/shapes.hpp"
#include "sweep.hpp"

namespace cgdg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool sees(const Instance& inst, const VisibilityGraph* vis, std::size_t u, std::size_t v)
{
    return vis ? vis->adjacent(u, v) : visible(inst, u, v);
}

// Vertices other than p and q visible to both.
std::vector<std::size_t> blockers(const Instance& inst, const VisibilityGraph* vis, std::size_t p,
                                  std::size_t q)
{
    std::vector<std::size_t> out;
    for (std::size_t x = 0; x < inst.size(); ++x)
        if (x != p && x != q && sees(inst, vis, p, x) && sees(inst, vis, q, x)) out.push_back(x);
    return out;
}

// Piece whose center moves as center0 + s * rate with scale0 + s * srate.
detail::FamilyPiece make_piece(double lo, double hi, Point center0, Point rate, double scale0,
                               double srate)
{
    detail::FamilyPiece pc;
    pc.lo = lo;
    pc.hi = hi;
    if (std::isfinite(lo)) {
        pc.center_lo = center0 + lo * rate;
        pc.scale_lo = scale0 + lo * srate;
    }
    if (std::isfinite(hi)) {
        pc.center_hi = center0 + hi * rate;
        pc.scale_hi = scale0 + hi * srate;
    }
    return pc;
}

// Closed-form rectangle families for pq. Each piece keeps its affine center
// and scale so the witness can be rebuilt.
struct RectPiece {
    detail::FamilyPiece piece;
    Point center0;
    Point rate;
    double scale0 = 0.0;
    double srate = 0.0;
};

std::vector<RectPiece> rect_family(const Instance& inst, double l, double s, std::size_t p,
                                   std::size_t q, std::span<const std::size_t> cand)
{
    const Point P = inst.point(p);
    const Point Q = inst.point(q);
    std::vector<RectPiece> out;
    auto push = [&](double lo, double hi, Point c0, Point rate, double s0, double sr) {
        RectPiece rp;
        rp.piece = make_piece(lo, hi, c0, rate, s0, sr);
        rp.center0 = c0;
        rp.rate = rate;
        rp.scale0 = s0;
        rp.srate = sr;
        out.push_back(std::move(rp));
        return &out.back().piece;
    };

    // p and q on the two vertical sides; parameter is the center y.
    if (P.x != Q.x) {
        const Point a = P.x < Q.x ? P : Q;
        const Point b = P.x < Q.x ? Q : P;
        const double lambda = (b.x - a.x) / l;
        const double half = 0.5 * lambda * s;
        const double lo = std::max(a.y, b.y) - half;
        const double hi = std::min(a.y, b.y) + half;
        if (lo <= hi) {
            auto* pc = push(lo, hi, {0.5 * (a.x + b.x), 0.0}, {0.0, 1.0}, lambda, 0.0);
            for (std::size_t x : cand) {
                const Point z = inst.point(x);
                if (a.x < z.x && z.x < b.x) pc->intervals.push_back({z.y - half, z.y + half});
            }
        }
    }
    // p and q on the two horizontal sides; parameter is the center x.
    if (P.y != Q.y) {
        const Point a = P.y < Q.y ? P : Q;
        const Point b = P.y < Q.y ? Q : P;
        const double lambda = (b.y - a.y) / s;
        const double half = 0.5 * lambda * l;
        const double lo = std::max(a.x, b.x) - half;
        const double hi = std::min(a.x, b.x) + half;
        if (lo <= hi) {
            auto* pc = push(lo, hi, {0.0, 0.5 * (a.y + b.y)}, {1.0, 0.0}, lambda, 0.0);
            for (std::size_t x : cand) {
                const Point z = inst.point(x);
                if (a.y < z.y && z.y < b.y) pc->intervals.push_back({z.x - half, z.x + half});
            }
        }
    }
    // One point on a vertical side, the other on a horizontal side, meeting
    // at a corner. The box spans from v.x toward sx and from h.y toward sy.
    // Parameter is the half-width mu = scale * l / 2.
    for (int sx : {1, -1})
        for (int sy : {1, -1})
            for (bool p_vertical : {true, false}) {
                const Point v = p_vertical ? P : Q;
                const Point h = p_vertical ? Q : P;
                const double ex = sx * (h.x - v.x);
                const double ey = sy * (v.y - h.y);
                if (ex < 0 || ey < 0) continue;
                const double lambda_min = std::max(ex / l, ey / s);
                if (!(lambda_min > 0)) continue;
                const Point c0{v.x, h.y};
                const Point rate{static_cast<double>(sx), sy * s / l};
                auto* pc = push(0.5 * lambda_min * l, kInf, c0, rate, 0.0, 2.0 / l);
                for (std::size_t x : cand) {
                    const Point z = inst.point(x);
                    const double fx = sx * (z.x - v.x);
                    const double fy = sy * (z.y - h.y);
                    if (fx > 0 && fy > 0)
                        pc->intervals.push_back({std::max(0.5 * fx, 0.5 * fy * l / s), kInf});
                }
            }
    return out;
}

CgdgGraph build_with(const Instance& inst, const ShapePtr& shape, const BuildOptions& opts,
                     const auto& query)
{
    const VisibilityGraph vis = VisibilityGraph::build(inst);
    CgdgGraph g(inst, shape);
    for (std::size_t u = 0; u < inst.size(); ++u)
        for (std::size_t v = u + 1; v < inst.size(); ++v) {
            if (!vis.adjacent(u, v)) continue;
            const EdgeQuery r = query(u, v, vis);
            if (r.decision == EdgeDecision::present) {
                g.add_edge({u, v, *r.witness});
                continue;
            }
            if (r.decision == EdgeDecision::marginal) {
                if (opts.strict)
                    throw GeneralPositionViolation("pair (" + std::to_string(u) + "," + std::to_string(v) +
                                                   ") has only tied empty homothets");
                g.add_marginal(u, v);
            }
            if (opts.include_constraints && inst.is_constraint(u, v)) g.add_unwitnessed_edge(u, v);
        }
    return g;
}

} // namespace

CgdgGraph::CgdgGraph(Instance instance, ShapePtr shape)
    : instance_(std::move(instance)), shape_(std::move(shape)), adjacency_(instance_.size())
{
}

std::vector<VertexPair> CgdgGraph::edge_list() const
{
    std::vector<VertexPair> out;
    for (const EdgeWitness& e : edges_) out.push_back({std::min(e.u, e.v), std::max(e.u, e.v)});
    out.insert(out.end(), forced_.begin(), forced_.end());
    std::sort(out.begin(), out.end());
    return out;
}

bool CgdgGraph::has_edge(std::size_t u, std::size_t v) const
{
    const auto& a = adjacency_[u];
    return std::binary_search(a.begin(), a.end(), v);
}

void CgdgGraph::link(std::size_t u, std::size_t v)
{
    if (u == v || u >= size() || v >= size()) throw InvalidArgument("edge endpoints out of range");
    if (has_edge(u, v)) throw InvalidArgument("duplicate edge");
    adjacency_[u].insert(std::upper_bound(adjacency_[u].begin(), adjacency_[u].end(), v), v);
    adjacency_[v].insert(std::upper_bound(adjacency_[v].begin(), adjacency_[v].end(), u), u);
}

void CgdgGraph::add_edge(EdgeWitness w)
{
    link(w.u, w.v);
    edges_.push_back(std::move(w));
}

void CgdgGraph::add_unwitnessed_edge(std::size_t u, std::size_t v)
{
    link(u, v);
    forced_.push_back({std::min(u, v), std::max(u, v)});
}

void CgdgGraph::add_marginal(std::size_t u, std::size_t v)
{
    marginal_.push_back({std::min(u, v), std::max(u, v)});
}

EdgeQuery edge_query(const Instance& inst, const ShapePtr& shape, std::size_t p, std::size_t q,
                     const VisibilityGraph* vis)
{
    if (p == q) throw InvalidArgument("edge query needs two distinct vertices");
    if (!sees(inst, vis, p, q)) return {};
    const std::vector<PencilRegime> regimes = pencil_through(shape, inst.point(p), inst.point(q));
    const std::vector<std::size_t> cand = blockers(inst, vis, p, q);

    std::vector<detail::FamilyPiece> pieces;
    pieces.reserve(regimes.size());
    for (const PencilRegime& r : regimes) {
        auto pc = make_piece(r.lo, r.hi, r.center0, r.center_rate, r.scale0, r.scale_rate);
        for (std::size_t x : cand)
            if (auto iv = r.interior_interval(*shape, inst.point(x))) pc.intervals.push_back(*iv);
        pieces.push_back(std::move(pc));
    }
    const auto out = detail::sweep_family(pieces, distance(inst.point(p), inst.point(q)), kTieTolerance);
    EdgeQuery result;
    result.decision = out.decision;
    if (out.decision == EdgeDecision::present) result.witness = regimes[out.piece].at(shape, out.param);
    return result;
}

std::optional<EdgeWitness> edge_exists(const Instance& inst, const ShapePtr& shape, std::size_t p,
                                       std::size_t q)
{
    const EdgeQuery r = edge_query(inst, shape, p, q);
    if (r.decision == EdgeDecision::marginal)
        throw GeneralPositionViolation("pair (" + std::to_string(p) + "," + std::to_string(q) +
                                       ") has only tied empty homothets");
    if (r.decision == EdgeDecision::absent) return std::nullopt;
    return EdgeWitness{p, q, *r.witness};
}

CgdgGraph build_cgdg(const Instance& inst, const ShapePtr& shape, const BuildOptions& opts)
{
    return build_with(inst, shape, opts, [&](std::size_t u, std::size_t v, const VisibilityGraph& vis) {
        return edge_query(inst, shape, u, v, &vis);
    });
}

EdgeQuery rect_edge_query(const Instance& inst, double l, double s, std::size_t p, std::size_t q,
                          const VisibilityGraph* vis)
{
    if (p == q) throw InvalidArgument("edge query needs two distinct vertices");
    if (!(l > 0) || !(s > 0)) throw InvalidArgument("rectangle sides must be positive");
    if (!sees(inst, vis, p, q)) return {};
    const std::vector<std::size_t> cand = blockers(inst, vis, p, q);
    const std::vector<RectPiece> family = rect_family(inst, l, s, p, q, cand);
    std::vector<detail::FamilyPiece> pieces;
    for (const RectPiece& rp : family) pieces.push_back(rp.piece);
    const auto out = detail::sweep_family(pieces, distance(inst.point(p), inst.point(q)), kTieTolerance);
    EdgeQuery result;
    result.decision = out.decision;
    if (out.decision == EdgeDecision::present) {
        const RectPiece& rp = family[out.piece];
        result.witness = Homothet(rectangle(l, s), rp.center0 + out.param * rp.rate,
                                  rp.scale0 + out.param * rp.srate);
    }
    return result;
}

CgdgGraph build_rect_cgdg(const Instance& inst, double l, double s, const BuildOptions& opts)
{
    if (!(s > 0) || !(l >= s)) throw InvalidArgument("rectangle needs l >= s > 0");
    const ShapePtr shape = rectangle(l, s);
    return build_with(inst, shape, opts, [&](std::size_t u, std::size_t v, const VisibilityGraph& vis) {
        auto r = rect_edge_query(inst, l, s, u, v, &vis);
        if (r.witness) r.witness = Homothet(shape, r.witness->center(), r.witness->scale());
        return r;
    });
}

std::optional<GrowthHit> grow_first_hit(const Instance& inst, const ShapePtr& shape, std::size_t p,
                                        std::size_t q, std::span<const std::size_t> current_edges_at_p)
{
    if (p == q) throw InvalidArgument("growth needs two distinct vertices");
    const ConvexShape& c = *shape;
    const Point pp = inst.point(p);
    const Point d = inst.point(q) - pp;
    // With the center at p + t d and p on the boundary, the scale is t * rho
    // and the homothets form a family scaled about p.
    double rho = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) rho = std::max(rho, -dot(c.normal(k), d) / c.support(k));
    auto at = [&](double t) { return Homothet(shape, pp + t * d, t * rho); };
    // Smallest t with x in the closed homothet at t.
    auto hit_time = [&](Point x) {
        double t = 0.0;
        for (std::size_t k = 0; k < c.size(); ++k) {
            const double e = dot(c.normal(k), d) + rho * c.support(k);
            const double f = dot(c.normal(k), x - pp);
            if (e <= 1e-14 * (norm(d) + rho)) {
                if (f > 1e-12) return kInf;
                continue;
            }
            t = std::max(t, f / e);
        }
        return t;
    };
    const double tq = hit_time(inst.point(q));
    const Homothet ref = at(tq);
    const VisibilityCone cone = visibility_cone(inst, current_edges_at_p, p, q, ref);
    const auto region = region_of(cone, ref);

    std::optional<GrowthHit> best;
    double best_t = tq;
    for (std::size_t x = 0; x < inst.size(); ++x) {
        if (x == p || x == q) continue;
        if (!region_contains(region, inst.point(x))) continue;
        if (!visible(inst, p, x)) continue;
        const double t = hit_time(inst.point(x));
        if (t < best_t && t > 0) {
            best_t = t;
            best = GrowthHit{x, at(t)};
        }
    }
    return best;
}

} // namespace cgdg
