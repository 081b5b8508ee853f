#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "rupert/error.hpp"
#include "rupert/polygon.hpp"
#include "rupert/tolerances.hpp"
#include "rupert/vec.hpp"

namespace rupert {

// Tiny 3-variable LP: maximize c.x subject to a_i.x >= b_i, solved exactly
// by enumerating vertices of the constraint system (all triples of active
// constraints).  Problem sizes here are a handful of polygon edges, so the
// cubic enumeration is both fast and free of pivoting edge cases.
namespace lp3 {

struct Constraint {
    std::array<double, 3> a{};
    double b = 0.0;
};

struct Solution {
    std::array<double, 3> x{};
    double value = 0.0;
};

inline double det3(const std::array<std::array<double, 3>, 3>& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

inline std::optional<Solution> maximize(const std::vector<Constraint>& cons,
                                        const std::array<double, 3>& obj,
                                        double feas_tol) {
    const std::size_t n = cons.size();
    std::optional<Solution> best;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (std::size_t k = j + 1; k < n; ++k) {
                const std::array<std::array<double, 3>, 3> m{cons[i].a, cons[j].a, cons[k].a};
                const double d = det3(m);
                if (std::abs(d) < 1e-14) continue;
                std::array<double, 3> x{};
                // Cramer's rule
                for (int col = 0; col < 3; ++col) {
                    std::array<std::array<double, 3>, 3> mc = m;
                    mc[0][col] = cons[i].b;
                    mc[1][col] = cons[j].b;
                    mc[2][col] = cons[k].b;
                    x[col] = det3(mc) / d;
                }
                bool feasible = true;
                for (const Constraint& c : cons) {
                    const double lhs = c.a[0] * x[0] + c.a[1] * x[1] + c.a[2] * x[2];
                    if (lhs < c.b - feas_tol) {
                        feasible = false;
                        break;
                    }
                }
                if (!feasible) continue;
                const double val = obj[0] * x[0] + obj[1] * x[1] + obj[2] * x[2];
                if (!best || val > best->value) best = Solution{x, val};
            }
        }
    }
    return best;
}

} // namespace lp3

struct HomothetFit {
    double lambda = 0.0;
    Vec2 center{};
};

namespace detail {

struct EdgeForm {
    Vec2 n{};       // inward unit normal
    double d = 0.0; // n . x >= d inside
};

inline std::vector<EdgeForm> edge_forms(const ConvexPolygon& poly) {
    std::vector<EdgeForm> out;
    out.reserve(poly.size());
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Vec2 a = poly.v[i];
        const Vec2 b = poly.v[(i + 1) % poly.size()];
        const Vec2 n = normalized(perp(b - a));
        out.push_back({n, dot(n, a)});
    }
    return out;
}

// Worst-corner reach of a w x h rectangle at `angle` against normal n:
// max over corners u_k of -n.u_k (all four corner constraints per edge
// collapse to this single binding one).
inline double corner_reach(Vec2 n, double w, double h, double angle) {
    const Vec2 u = dir_of(angle);
    return 0.5 * (w * std::abs(dot(n, u)) + h * std::abs(dot(n, perp(u))));
}

} // namespace detail

// Largest homothet of a w x h rectangle at a fixed angle inside poly:
// maximize lambda over (lambda, cx, cy) subject to
//   n_e . c - lambda * reach_e >= d_e   for every edge e,  lambda >= 0.
inline HomothetFit largest_homothet_lp(const ConvexPolygon& poly, double w, double h,
                                       double angle,
                                       const Tolerances& tols = default_tolerances()) {
    if (poly.size() < 3 || !(w > 0.0) || !(h > 0.0))
        raise(Errc::infeasible_input, "degenerate polygon or aspect");
    const auto edges = detail::edge_forms(poly);

    std::vector<lp3::Constraint> cons;
    cons.reserve(edges.size() + 1);
    for (const auto& e : edges) {
        cons.push_back({{e.n.x, e.n.y, -detail::corner_reach(e.n, w, h, angle)}, e.d});
    }
    cons.push_back({{0.0, 0.0, 1.0}, 0.0});  // lambda >= 0

    // internal feasibility slop kept far below the geometric tolerance so
    // returned optima re-verify under closed containment
    const double scale = std::max(1.0, poly.diameter());
    const auto sol = lp3::maximize(cons, {0.0, 0.0, 1.0}, 1e-12 * scale);
    if (!sol) raise(Errc::infeasible_input, "no feasible homothet placement");
    return {sol->x[2], Vec2{sol->x[0], sol->x[1]}};
}

struct ClearanceFit {
    double clearance = 0.0;
    Vec2 center{};
};

// Best-clearance placement of a fixed-size w x h rectangle at a fixed
// angle: maximize t such that every corner keeps signed distance >= t to
// every edge.  Optionally the center is confined to an axis-aligned box
// around `anchor` (used by the budgeted interior hardening).
inline ClearanceFit max_clearance_lp(const ConvexPolygon& poly, double w, double h,
                                     double angle,
                                     std::optional<Vec2> anchor = std::nullopt,
                                     double shift_budget = 0.0,
                                     const Tolerances& tols = default_tolerances()) {
    if (poly.size() < 3 || !(w > 0.0) || !(h > 0.0))
        raise(Errc::infeasible_input, "degenerate polygon or aspect");
    const auto edges = detail::edge_forms(poly);

    std::vector<lp3::Constraint> cons;
    for (const auto& e : edges) {
        const double reach = detail::corner_reach(e.n, w, h, angle);
        // n.c - t >= d + reach
        cons.push_back({{e.n.x, e.n.y, -1.0}, e.d + reach});
    }
    if (anchor) {
        cons.push_back({{1.0, 0.0, 0.0}, anchor->x - shift_budget});
        cons.push_back({{-1.0, 0.0, 0.0}, -(anchor->x + shift_budget)});
        cons.push_back({{0.0, 1.0, 0.0}, anchor->y - shift_budget});
        cons.push_back({{0.0, -1.0, 0.0}, -(anchor->y + shift_budget)});
    }
    const double scale = std::max(1.0, poly.diameter());
    const auto sol = lp3::maximize(cons, {0.0, 0.0, 1.0}, 1e-12 * scale);
    if (!sol) raise(Errc::infeasible_input, "no clearance placement");
    return {sol->x[2], Vec2{sol->x[0], sol->x[1]}};
}

} // namespace rupert
