#include "sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace cgdg::detail {

namespace {

struct Gap {
    std::size_t piece;
    double g0;
    double g1;
    bool at_lo;
    bool at_hi;

    double length() const { return std::max(0.0, g1 - g0); }
};

bool same_homothet(Point c1, double s1, Point c2, double s2, double tol)
{
    return distance(c1, c2) <= tol * (1 + std::max(s1, s2)) && std::abs(s1 - s2) <= tol;
}

} // namespace

SweepOutcome sweep_family(std::span<const FamilyPiece> pieces, double step, double tol)
{
    std::vector<Gap> gaps;
    for (std::size_t r = 0; r < pieces.size(); ++r) {
        const FamilyPiece& pc = pieces[r];
        auto iv = pc.intervals;
        std::sort(iv.begin(), iv.end());
        double cursor = pc.lo;
        bool advanced = false;
        for (const auto& [a, b] : iv) {
            if (b <= cursor) continue;
            if (a >= pc.hi) break;
            if (a - cursor > -tol) gaps.push_back({r, cursor, a, !advanced, false});
            cursor = std::max(cursor, b);
            advanced = true;
            if (cursor >= pc.hi) break;
        }
        if (cursor < pc.hi || (!advanced && cursor == pc.hi))
            gaps.push_back({r, cursor, pc.hi, !advanced, true});
    }

    // Join gaps that touch at a homothet shared by two pieces.
    std::vector<std::size_t> parent(gaps.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto end_of = [&](const Gap& g, bool hi_end) {
        const FamilyPiece& pc = pieces[g.piece];
        return hi_end ? std::make_pair(pc.center_hi, pc.scale_hi) : std::make_pair(pc.center_lo, pc.scale_lo);
    };
    for (std::size_t i = 0; i < gaps.size(); ++i)
        for (std::size_t j = i + 1; j < gaps.size(); ++j) {
            if (gaps[i].piece == gaps[j].piece) continue;
            for (bool ei : {false, true})
                for (bool ej : {false, true}) {
                    if (!(ei ? gaps[i].at_hi : gaps[i].at_lo) || !(ej ? gaps[j].at_hi : gaps[j].at_lo))
                        continue;
                    const double pi_end = ei ? pieces[gaps[i].piece].hi : pieces[gaps[i].piece].lo;
                    const double pj_end = ej ? pieces[gaps[j].piece].hi : pieces[gaps[j].piece].lo;
                    if (!std::isfinite(pi_end) || !std::isfinite(pj_end)) continue;
                    const auto [ci, si] = end_of(gaps[i], ei);
                    const auto [cj, sj] = end_of(gaps[j], ej);
                    if (same_homothet(ci, si, cj, sj, tol)) parent[find(i)] = find(j);
                }
        }

    std::vector<double> total(gaps.size(), 0.0);
    std::vector<std::size_t> widest(gaps.size(), gaps.size());
    for (std::size_t i = 0; i < gaps.size(); ++i) {
        const std::size_t root = find(i);
        total[root] += gaps[i].length();
        if (widest[root] == gaps.size() || gaps[i].length() > gaps[widest[root]].length()) widest[root] = i;
    }

    SweepOutcome out;
    for (std::size_t i = 0; i < gaps.size(); ++i)
        if (find(i) == i && !(total[i] > tol)) out.decision = EdgeDecision::marginal;
    // The first clear component in piece order wins; its widest gap hosts
    // the witness.
    for (std::size_t i = 0; i < gaps.size(); ++i) {
        const std::size_t root = find(i);
        if (!(total[root] > tol)) continue;
        const Gap& g = gaps[widest[root]];
        out.decision = EdgeDecision::present;
        out.piece = g.piece;
        if (std::isfinite(g.g0) && std::isfinite(g.g1))
            out.param = 0.5 * (g.g0 + g.g1);
        else if (std::isfinite(g.g0))
            out.param = g.g0 + step;
        else if (std::isfinite(g.g1))
            out.param = g.g1 - step;
        else
            out.param = 0.0;
        return out;
    }
    return out;
}

} // namespace cgdg::detail
