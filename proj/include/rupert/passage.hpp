#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include "rupert/error.hpp"
#include "rupert/homothet.hpp"
#include "rupert/nieuwland.hpp"
#include "rupert/polygon.hpp"
#include "rupert/shadow.hpp"
#include "rupert/tolerances.hpp"
#include "rupert/vec.hpp"

namespace rupert {

// Square sharing a vertex with a cube's hexagonal shadow.  The anchor
// vertex A keeps its two adjacent square corners on the side pair parallel
// to the inward-pointing projected edge; offsets are the distances from
// those corners to the adjacent hexagon vertices.  (p, q, r) are the
// absolute vertical components of the cube edges at A, relabeled so that p
// belongs to the inward edge.
struct CornerSquare {
    int anchor_vertex = 0;
    double b_off = 0.0;
    double c_off = 0.0;
    RectPlacement placement;
    bool fits = false;
    double p = 0.0, q = 0.0, r = 0.0;
    double slack = 0.0;           // (1 + p) - (q + r)
    int axis_p = 0, axis_q = 0, axis_r = 0;
    Vec2 corner_a, corner_b, corner_c, corner_d;  // D = B + C - A
};

inline CornerSquare corner_square(const Shadow& shadow, int vertex_index,
                                  const Tolerances& tols = default_tolerances()) {
    if (shadow.kind != ShadowKind::hexagon)
        raise(Errc::not_hexagon, "corner squares need a hexagonal shadow");
    const std::size_t n = shadow.polygon.size();
    if (vertex_index < 0 || static_cast<std::size_t>(vertex_index) >= n)
        raise(Errc::vertex_not_corner_candidate, "vertex index out of range");

    const double side = shadow.dims.a;
    const double rel = side * 1e-9;
    if (std::abs(shadow.dims.b - side) > rel || std::abs(shadow.dims.c - side) > rel)
        raise(Errc::vertex_not_corner_candidate,
              "shadow is not a cube scaffold; sides differ");

    const std::size_t k = static_cast<std::size_t>(vertex_index);
    const Vec2 a = shadow.polygon.v[k];
    const Vec2 g_next = shadow.polygon.v[(k + 1) % n] - a;
    const Vec2 g_prev = shadow.polygon.v[(k + n - 1) % n] - a;
    const Vec2 g_mid = shadow.polygon.v[(k + 2) % n] - shadow.polygon.v[(k + 1) % n];

    CornerSquare out;
    out.anchor_vertex = vertex_index;
    out.axis_q = side_axis(shadow, k);
    out.axis_r = side_axis(shadow, (k + n - 1) % n);
    out.axis_p = 3 - out.axis_q - out.axis_r;
    out.p = shadow.pqr[out.axis_p];
    out.q = shadow.pqr[out.axis_q];
    out.r = shadow.pqr[out.axis_r];

    const double proj = std::sqrt(1.0 - out.p * out.p);
    const Vec2 xhat = normalized(g_mid);
    const Vec2 y_next = normalized(g_next - xhat * dot(g_next, xhat));

    // Obtuse hexagon angles force this local frame (adjacent-side heights
    // r and q over the inward-edge axis); misfit means broken input.
    if (std::abs(dot(g_next, xhat) - side * out.p * out.q / proj) > 1e-6 * side ||
        std::abs(dot(g_next, y_next) - side * out.r / proj) > 1e-6 * side ||
        std::abs(dot(g_prev, xhat) - side * out.p * out.r / proj) > 1e-6 * side ||
        std::abs(dot(g_prev, -1.0 * y_next) - side * out.q / proj) > 1e-6 * side)
        raise(Errc::construction_failed, "hexagon frame does not match edge data");

    out.corner_a = a;
    out.corner_b = a + (side / proj) * (out.q * xhat + out.r * y_next);
    out.corner_c = a + (side / proj) * (out.r * xhat - out.q * y_next);
    out.corner_d = out.corner_b + out.corner_c - a;

    const double ratio = std::sqrt((1.0 - out.p) / (1.0 + out.p));
    out.b_off = side * out.q * ratio;
    out.c_off = side * out.r * ratio;
    out.slack = (1.0 + out.p) - (out.q + out.r);
    out.fits = out.q + out.r <= 1.0 + out.p + tols.geom;

    out.placement.center = (a + out.corner_d) * 0.5;
    out.placement.angle = normalize_angle(std::atan2(out.corner_b.y - a.y, out.corner_b.x - a.x));
    out.placement.width = side;
    out.placement.height = side;
    return out;
}

// Budgeted interior adjustment: shift toward clearance (center confined to
// a box of half-width delta) combined with a rotation scan up to rot_budget
// about the rectangle center.  Returns a placement whose corners all clear
// the boundary by eps, or CannotHarden when the budgets cannot reach eps.
inline RectPlacement harden_to_interior(const ConvexPolygon& poly, const RectPlacement& rect,
                                        const Tolerances& tols = default_tolerances(),
                                        double eps = -1.0) {
    const double diam = poly.diameter();
    if (eps <= 0.0) eps = tols.interior_scale * diam;
    if (rect_clearance(poly, rect) >= eps) return rect;
    if (!contains_rect(poly, rect, ContainmentMode::closed(), tols))
        raise(Errc::cannot_harden, "placement is not inside the closed polygon");

    const double delta = tols.shift_factor * eps;
    RectPlacement best = rect;
    double best_clear = rect_clearance(poly, rect);

    auto consider = [&](const RectPlacement& cand) {
        const double c = rect_clearance(poly, cand);
        if (c > best_clear) {
            best_clear = c;
            best = cand;
        }
    };

    // plain shift toward the centroid first
    const Vec2 toward = poly.centroid() - rect.center;
    if (norm(toward) > 0.0) {
        const Vec2 step = normalized(toward);
        for (double f : {1.0, 0.5, 0.25}) {
            RectPlacement cand = rect;
            cand.center = rect.center + step * (delta * f);
            consider(cand);
        }
    }

    // rotation scan with a budget-boxed recentering LP at each angle
    for (int i = -8; i <= 8; ++i) {
        const double theta = tols.rot_budget * (static_cast<double>(i) / 8.0);
        const double angle = normalize_angle(rect.angle + theta);
        const ClearanceFit fit =
            max_clearance_lp(poly, rect.width, rect.height, angle, rect.center, delta, tols);
        RectPlacement cand = rect;
        cand.angle = angle;
        cand.center = fit.center;
        consider(cand);
        if (best_clear >= eps) break;
    }

    if (best_clear < eps)
        raise(Errc::cannot_harden, "clearance target unreachable within shift/rotation budget");
    return best;
}

namespace detail {

// Interior adjustment for freshly constructed placements.  The budgeted
// hardening succeeds for generic directions; symmetric directions can pin
// the corner square against a tight slab where no budgeted move reaches
// the clearance target, so the square is then moved freely into the
// interior (rotation scan with unconstrained recentering).
inline RectPlacement move_into_interior(const ConvexPolygon& poly, const RectPlacement& rect,
                                        const Tolerances& tols) {
    const double eps = tols.interior_scale * poly.diameter();
    try {
        return harden_to_interior(poly, rect, tols, eps);
    } catch (const Error& e) {
        if (e.code() != Errc::cannot_harden) throw;
    }

    RectPlacement best = rect;
    double best_clear = rect_clearance(poly, rect);
    for (int i = -20; i <= 20; ++i) {
        const double angle = normalize_angle(rect.angle + 0.05 * i / 20.0);
        const ClearanceFit fit = max_clearance_lp(poly, rect.width, rect.height, angle,
                                                  std::nullopt, 0.0, tols);
        if (fit.clearance > best_clear) {
            best_clear = fit.clearance;
            best = rect;
            best.angle = angle;
            best.center = fit.center;
        }
    }
    if (!(best_clear > 0.0))
        raise(Errc::construction_failed, "no interior placement found at any angle");
    return best;
}

} // namespace detail

// Theorem-1 construction: an a x b rectangle strictly inside the shadow of
// the box along `direction`.  The longest edges are first shortened to b,
// the Lemma-3 corner square of the (a,a,a) scaffold cube is placed at a
// hexagon vertex touching a projected-a side, and the square's side pair
// adjacent to the projected-b side is extended from a to b.
inline RectPlacement face_rectangle_in_shadow(const BoxDims& dims, Vec3 direction,
                                              const Tolerances& tols = default_tolerances()) {
    Orientation orient;
    Shadow trimmed, full, scaffold;
    try {
        orient = orientation_from_direction(normalized(direction), tols);
        trimmed = project_box(BoxDims(dims.a, dims.b, dims.b), orient, tols);
        full = project_box(dims, orient, tols);
        scaffold = project_box(BoxDims(dims.a, dims.a, dims.a), orient, tols);
    } catch (const Error& e) {
        if (e.code() == Errc::ambiguous_classification)
            raise(Errc::face_parallel_direction, "direction too close to a face");
        throw;
    }
    if (trimmed.kind != ShadowKind::hexagon)
        raise(Errc::face_parallel_direction, "face-parallel direction gives a rectangle shadow");

    const std::size_t n = trimmed.polygon.size();
    auto scaffold_index = [&](int pattern) -> std::size_t {
        for (std::size_t i = 0; i < scaffold.polygon.size(); ++i)
            if (scaffold.vertex_origin[i] == pattern) return i;
        raise(Errc::construction_failed, "scaffold hull misses a corner pattern");
    };

    struct Candidate {
        std::size_t vertex;
        CornerSquare square;
        Vec2 u_ext, u_keep;
    };
    std::optional<Candidate> best;

    for (std::size_t k = 0; k < n; ++k) {
        const int ax_next = side_axis(trimmed, k);
        const int ax_prev = side_axis(trimmed, (k + n - 1) % n);
        if (ax_next != 0 && ax_prev != 0) continue;  // not an endpoint of a pr(a) side

        const std::size_t kc = scaffold_index(trimmed.vertex_origin[k]);
        CornerSquare cs = corner_square(scaffold, static_cast<int>(kc), tols);
        if (!cs.fits) continue;

        Candidate cand;
        cand.vertex = k;
        cand.square = cs;
        const Vec2 sb = (cs.corner_b - cs.corner_a) / dims.a;
        const Vec2 sc = (cs.corner_c - cs.corner_a) / dims.a;
        if (cs.axis_q != 0) {  // q-side neighbors the projected-b side: extend toward B
            cand.u_ext = sb;
            cand.u_keep = sc;
        } else {
            cand.u_ext = sc;
            cand.u_keep = sb;
        }
        if (!best || cs.slack > best->square.slack) best = cand;
    }
    if (!best)
        raise(Errc::construction_failed, "no corner vertex satisfies the fit criterion");

    const Vec2 anchor = trimmed.polygon.v[best->vertex];
    RectPlacement rect;
    rect.center = anchor + best->u_ext * (0.5 * dims.b) + best->u_keep * (0.5 * dims.a);
    rect.angle = normalize_angle(std::atan2(best->u_ext.y, best->u_ext.x));
    rect.width = dims.b;
    rect.height = dims.a;

    if (!contains_rect(trimmed.polygon, rect, ContainmentMode::closed(), tols))
        raise(Errc::construction_failed, "extended rectangle left the trimmed shadow");
    return detail::move_into_interior(full.polygon, rect, tols);
}

// A straight tunnel: prism over `cross_section` along `direction`.
struct PassageSpec {
    Vec3 direction{0, 0, 1};
    RectPlacement cross_section;
    double clearance = 0.0;
    BoxDims box;
};

inline PassageSpec build_passage(const BoxDims& dims, Vec3 direction, double lambda,
                                 const Tolerances& tols = default_tolerances()) {
    if (!(lambda > 0.0)) raise(Errc::degenerate_input, "lambda must be positive");
    const Vec3 dir = normalized(direction);

    RectPlacement cross;
    if (lambda <= 1.0) {
        const RectPlacement base = face_rectangle_in_shadow(dims, dir, tols);
        cross = scaled_about(base, Vec2{0.0, 0.0}, lambda);
    } else {
        const DirectionBest bestfit =
            best_lambda_for_direction(dims, dir, 360, 40, tols);
        if (lambda >= bestfit.lambda)
            raise(Errc::does_not_fit,
                  "lambda exceeds the largest homothet for this direction");
        cross = scaled_about(bestfit.placement, bestfit.placement.center,
                             lambda / bestfit.lambda);
    }

    Orientation orient = orientation_from_direction(dir, tols);
    const Shadow shadow = project_box(dims, orient, tols);
    const double clearance = rect_clearance(shadow.polygon, cross);
    if (!(clearance > 0.0))
        raise(Errc::does_not_fit, "cross-section does not fit strictly inside the shadow");

    PassageSpec spec;
    spec.direction = dir;
    spec.cross_section = cross;
    spec.clearance = clearance;
    spec.box = dims;
    return spec;
}

} // namespace rupert
