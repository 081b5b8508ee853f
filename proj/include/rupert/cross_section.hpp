#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "rupert/error.hpp"
#include "rupert/nieuwland.hpp"
#include "rupert/polygon.hpp"
#include "rupert/shadow.hpp"
#include "rupert/tolerances.hpp"
#include "rupert/vec.hpp"

namespace rupert {

// Planar cross-section of a rectangular tube, folded flat: the image of
// the base rectangle under (x, y) -> (x, y / cos(alpha)).  Vertices are
// labeled 1..4 by ascending y of their rectangle preimages (ties by x);
// for alpha > 0 the angles at 2* and 3* are obtuse.
struct FoldedParallelogram {
    std::array<Vec2, 4> vertex{};    // images 1*, 2*, 3*, 4*
    std::array<Vec2, 4> preimage{};  // rectangle corners 1, 2, 3, 4
    double alpha = 0.0;
};

namespace detail {

inline std::array<int, 4> label_by_y(const std::array<Vec2, 4>& pts) {
    std::array<int, 4> idx{0, 1, 2, 3};
    std::sort(idx.begin(), idx.end(), [&](int i, int j) {
        if (pts[i].y != pts[j].y) return pts[i].y < pts[j].y;
        return pts[i].x < pts[j].x;
    });
    return idx;
}

inline double angle_between(Vec2 u, Vec2 v) {
    return std::atan2(std::abs(cross(u, v)), dot(u, v));
}

} // namespace detail

inline FoldedParallelogram fold_cross_section(double w, double h, double alpha,
                                              double axis_angle,
                                              const Tolerances& tols = default_tolerances()) {
    const double pi = 3.14159265358979323846;
    if (!(w > 0.0) || !(h > 0.0))
        raise(Errc::degenerate_input, "base sides must be positive");
    if (alpha < 0.0 || alpha >= pi / 2.0 - 1e-9)
        raise(Errc::steep_plane, "fold angle must lie in [0, pi/2)");

    const Vec2 u = dir_of(axis_angle) * (0.5 * w);
    const Vec2 v = perp(dir_of(axis_angle)) * (0.5 * h);
    const std::array<Vec2, 4> corners{-1.0 * u - v, u - v, u + v, -1.0 * u + v};
    const auto order = detail::label_by_y(corners);

    FoldedParallelogram out;
    out.alpha = alpha;
    const double stretch = 1.0 / std::cos(alpha);
    for (int i = 0; i < 4; ++i) {
        out.preimage[i] = corners[order[i]];
        out.vertex[i] = {out.preimage[i].x, out.preimage[i].y * stretch};
    }
    (void)tols;
    return out;
}

struct InscribedRect {
    RectPlacement placement;
    int branch = 0;  // 0 degenerate fold, 1 centered-diagonal, 2 corner-anchored
};

// Lemma-4 embedding: every fold image of an a x b rectangle contains a
// congruent copy.  Dispatch compares the sub-angles cut at vertex 2* by
// the diagonal 2*3* against the rectangle's own; equality routes to the
// centered case.
inline InscribedRect rect_in_parallelogram(const FoldedParallelogram& par, double a, double b,
                                           const Tolerances& tols = default_tolerances()) {
    if (!(a > 0.0) || !(a <= b)) raise(Errc::degenerate_input, "need 0 < a <= b");
    const Vec2 q1 = par.preimage[0], q2 = par.preimage[1], q3 = par.preimage[2],
               q4 = par.preimage[3];
    const Vec2 v1 = par.vertex[0], v2 = par.vertex[1], v3 = par.vertex[2], v4 = par.vertex[3];

    // preimage must be a genuine a x b rectangle: sides at corner 2 are
    // (2,1) and (2,4); (2,3) and (1,4) are its diagonals
    const double s21 = dist(q2, q1), s24 = dist(q2, q4);
    const double scale = std::max(a, std::max(b, 1.0));
    const double tol_len = 1e-6 * scale;
    const bool matches = (std::abs(s21 - a) < tol_len && std::abs(s24 - b) < tol_len) ||
                         (std::abs(s21 - b) < tol_len && std::abs(s24 - a) < tol_len);
    if (!matches || std::abs(dot(q1 - q2, q4 - q2)) > tol_len * scale)
        raise(Errc::not_a_cross_section, "preimage is not an a x b rectangle");

    auto finish = [&](Vec2 center, Vec2 side_dir, double width, double height,
                      int branch) -> InscribedRect {
        InscribedRect out;
        out.placement.center = center;
        out.placement.angle = normalize_angle(std::atan2(side_dir.y, side_dir.x));
        out.placement.width = width;
        out.placement.height = height;
        out.branch = branch;
        const ConvexPolygon poly = convex_hull({v1, v2, v3, v4}, tols);
        if (!contains_rect(poly, out.placement, ContainmentMode::closed(), tols))
            raise(Errc::construction_failed, "embedded rectangle left the parallelogram");
        return out;
    };

    if (par.alpha < 1e-12) {
        // identity fold
        return finish((q1 + q4) * 0.5, q2 - q1, s21, dist(q1, q3), 0);
    }

    const Vec2 pre_diag = q3 - q2, img_diag = v3 - v2;
    const double pre1 = detail::angle_between(pre_diag, q1 - q2);
    const double pre4 = detail::angle_between(pre_diag, q4 - q2);
    const double img1 = detail::angle_between(img_diag, v1 - v2);
    const double img4 = detail::angle_between(img_diag, v4 - v2);

    const double tie = 1e-12;
    if (img1 >= pre1 - tie && img4 >= pre4 - tie) {
        // Case 1: rectangle centered in the parallelogram, diagonal on 2*3*
        const Vec2 center = (v2 + v3) * 0.5;
        const Vec2 dhat = normalized(img_diag);
        Vec2 nhat = perp(dhat);
        if (dot(nhat, v1 - v2) < 0.0) nhat = -1.0 * nhat;
        const double half_diag = 0.5 * dist(q2, q3);
        const Vec2 c2 = center - dhat * half_diag;
        const Vec2 dir1 = dhat * std::cos(pre1) + nhat * std::sin(pre1);
        const Vec2 dir4 = dhat * std::cos(pre4) - nhat * std::sin(pre4);
        const Vec2 c1 = c2 + dir1 * s21;
        const Vec2 c4 = c2 + dir4 * s24;
        (void)c4;
        return finish(center, c1 - c2, s21, s24, 1);
    }

    // Case 2: a sub-angle shrank, so the matching side grew past its
    // preimage length; anchor the rectangle at 2* along that side.
    Vec2 along, toward;
    double side_len, across_len;
    if (img4 < pre4 - tie) {
        along = normalized(v4 - v2);
        toward = v1 - v2;
        side_len = s24;
        across_len = s21;
    } else {
        along = normalized(v1 - v2);
        toward = v4 - v2;
        side_len = s21;
        across_len = s24;
    }
    Vec2 nhat = perp(along);
    if (dot(nhat, toward) < 0.0) nhat = -1.0 * nhat;
    const Vec2 center = v2 + along * (0.5 * side_len) + nhat * (0.5 * across_len);
    return finish(center, along, side_len, across_len, 2);
}

// Coplanar parallelogram in 3-space (vertices in cycle order).
struct PlanarQuad3D {
    std::array<Vec3, 4> vertex{};
};

struct Theorem2Witness {
    PlanarQuad3D quad;              // parallelogram through the box center
    std::array<Vec3, 4> rect3d{};   // lambda*a x lambda*b rectangle inside the box
    double alpha = 0.0;
    int branch = 0;
};

namespace detail {

// Vertical segment over `pt` cut out of the oriented box; returns the
// z-interval or raises LiftDegenerate when it collapses.
inline std::pair<double, double> vertical_fiber(const BoxDims& dims, const Orientation& orient,
                                                Vec2 pt, const Tolerances& tols) {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 3; ++i) {
        const double zeta = orient.row[i].z;
        const double w = orient.row[i].x * pt.x + orient.row[i].y * pt.y;
        const double half = 0.5 * dims.side(i);
        if (std::abs(zeta) < 1e-15) {
            if (std::abs(w) > half + tols.geom)
                raise(Errc::lift_degenerate, "point outside the box slab");
            continue;
        }
        double z0 = (-half - w) / zeta;
        double z1 = (half - w) / zeta;
        if (z0 > z1) std::swap(z0, z1);
        lo = std::max(lo, z0);
        hi = std::min(hi, z1);
    }
    if (!(hi - lo > tols.geom))
        raise(Errc::lift_degenerate, "vertical fiber has zero length");
    return {lo, hi};
}

} // namespace detail

// Theorem-2 witness: centers the lambda-homothet of the a x b face in the
// shadow, lifts two adjacent corners to fiber midpoints, reflects through
// the box center to get a parallelogram, and embeds the rectangle in it
// via the fold map.
inline Theorem2Witness theorem2_witness(const BoxDims& dims, double lambda, Vec3 direction,
                                        const Tolerances& tols = default_tolerances()) {
    if (!(lambda > 0.0)) raise(Errc::degenerate_input, "lambda must be positive");
    const Orientation orient = orientation_from_direction(normalized(direction), tols);
    const Shadow shadow = project_box(dims, orient, tols);

    const DirectionBest core =
        best_lambda_in_polygon(shadow.polygon, dims.a, dims.b, 360, 40, tols);
    if (lambda > core.lambda * (1.0 + 1e-12))
        raise(Errc::does_not_fit, "lambda-homothet does not fit in the shadow");

    const double w = lambda * dims.a, h = lambda * dims.b;
    RectPlacement centered;
    centered.center = {0.0, 0.0};
    centered.angle = core.angle;
    centered.width = w;
    centered.height = h;
    if (!contains_rect(shadow.polygon, centered, ContainmentMode::closed(), tols))
        raise(Errc::construction_failed, "centered homothet left the shadow");

    const Vec2 uhat = dir_of(centered.angle);
    const Vec2 vhat = perp(uhat);
    const Vec2 cu = uhat * (0.5 * w), cv = vhat * (0.5 * h);
    const Vec2 corner_u = cu + cv;   // U
    const Vec2 corner_v = -1.0 * cu + cv;  // V, adjacent to U along the width

    auto lift = [&](Vec2 p) -> Vec3 {
        const auto [lo, hi] = detail::vertical_fiber(dims, orient, p, tols);
        return {p.x, p.y, 0.5 * (lo + hi)};
    };
    const Vec3 us = lift(corner_u);
    const Vec3 vs = lift(corner_v);

    Theorem2Witness out;
    out.quad.vertex = {us, vs, -us, -vs};

    const Vec3 nraw = cross(us, vs);
    if (norm(nraw) < 1e-12 * std::max(1.0, norm(us) * norm(vs)))
        raise(Errc::lift_degenerate, "lifted corners are collinear with the center");
    const Vec3 nhat = normalized(nraw);
    const double cos_alpha = std::min(1.0, std::abs(nhat.z));
    const double alpha = std::acos(cos_alpha);
    out.alpha = alpha;

    if (alpha < 1e-12) {
        // horizontal plane: the parallelogram already is the rectangle
        out.rect3d = out.quad.vertex;
        out.branch = 0;
        return out;
    }

    const Vec3 ez{0, 0, 1};
    const Vec3 that = normalized(cross(nhat, ez));  // fold axis, horizontal and in-plane
    const Vec3 yhat = cross(ez, that);              // horizontal, perpendicular to the axis
    Vec3 shat = cross(nhat, that);                  // in-plane, perpendicular to the axis
    if (dot(shat, yhat) < 0.0) shat = -1.0 * shat;

    FoldedParallelogram par;
    par.alpha = alpha;
    std::array<Vec2, 4> folded{}, preim{};
    for (int i = 0; i < 4; ++i) {
        const Vec3& p = out.quad.vertex[i];
        folded[i] = {dot(p, that), dot(p, shat)};
        preim[i] = {dot(p, that), dot(p, yhat)};
    }
    const auto order = detail::label_by_y(preim);
    for (int i = 0; i < 4; ++i) {
        par.vertex[i] = folded[order[i]];
        par.preimage[i] = preim[order[i]];
    }

    const InscribedRect flat = rect_in_parallelogram(par, w, h, tols);
    const auto flat_corners = flat.placement.corners();
    for (int i = 0; i < 4; ++i) {
        out.rect3d[i] = that * flat_corners[i].x + shat * flat_corners[i].y;
    }
    out.branch = flat.branch;
    return out;
}

} // namespace rupert
