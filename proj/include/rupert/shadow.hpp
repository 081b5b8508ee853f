#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "rupert/error.hpp"
#include "rupert/orientation.hpp"
#include "rupert/polygon.hpp"
#include "rupert/tolerances.hpp"
#include "rupert/vec.hpp"

namespace rupert {

// Side lengths of a rectangular box, sorted 0 < a <= b <= c.
struct BoxDims {
    double a = 1.0;
    double b = 1.0;
    double c = 1.0;

    BoxDims() = default;
    BoxDims(double a_, double b_, double c_) : a(a_), b(b_), c(c_) {
        if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0) || !(a <= b) || !(b <= c))
            raise(Errc::degenerate_input, "box sides must satisfy 0 < a <= b <= c");
    }

    static BoxDims sorted(double x, double y, double z) {
        std::array<double, 3> s{x, y, z};
        std::sort(s.begin(), s.end());
        return BoxDims(s[0], s[1], s[2]);
    }

    double side(int axis) const { return axis == 0 ? a : (axis == 1 ? b : c); }
    BoxDims scaled(double k) const { return BoxDims(a * k, b * k, c * k); }
};

enum class ShadowKind { hexagon, rectangle };

// Corner of the box encoded as a 3-bit sign pattern: bit i set means the
// vertex sits at +side(i)/2 along axis i.
inline Vec3 box_vertex(const BoxDims& dims, const Orientation& orient, int pattern) {
    Vec3 p{};
    for (int i = 0; i < 3; ++i) {
        const double s = (pattern >> i) & 1 ? 0.5 : -0.5;
        p = p + orient.row[i] * (s * dims.side(i));
    }
    return p;
}

// Perpendicular projection of an oriented box (centered at the origin)
// onto the horizontal plane, plus the quantities attached to it: the
// classification, the absolute z-components (p, q, r) of the three rotated
// unit edge directions (indexed by box axis), the vertical extent, and the
// map from hull vertices back to box corners.
struct Shadow {
    ConvexPolygon polygon;
    ShadowKind kind = ShadowKind::hexagon;
    std::array<double, 3> pqr{};
    double vertical_extent = 0.0;
    std::vector<int> vertex_origin;  // hull vertex -> box corner pattern
    BoxDims dims;
    Orientation orient;
};

// Rotation carrying `u` to (0,0,1).  The frame is built from u and the
// standard basis vector least aligned with it (ties to the smaller index).
inline Orientation orientation_from_direction(Vec3 u,
                                              const Tolerances& tols = default_tolerances()) {
    if (std::abs(norm(u) - 1.0) > tols.ortho)
        raise(Errc::invalid_direction, "direction must be unit length");
    const std::array<Vec3, 3> basis{Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};
    int least = 0;
    double best = std::abs(u.x);
    const std::array<double, 3> comp{std::abs(u.x), std::abs(u.y), std::abs(u.z)};
    for (int i = 1; i < 3; ++i) {
        if (comp[i] < best) {
            best = comp[i];
            least = i;
        }
    }
    const Vec3 e = basis[least];
    const Vec3 f = normalized(e - u * dot(e, u));
    const Vec3 g = cross(u, f);
    // World map Q sends f -> e1, g -> e2, u -> e3; stored rows are the
    // images of the basis under Q, i.e. the columns (f_i, g_i, u_i).
    Orientation out;
    out.row[0] = {f.x, g.x, u.x};
    out.row[1] = {f.y, g.y, u.y};
    out.row[2] = {f.z, g.z, u.z};
    if (!orientation_is_valid(out, tols, 100.0))
        raise(Errc::invalid_direction, "could not build orthonormal frame");
    return out;
}

// Absolute third coordinates of the three rotated axis directions;
// p^2 + q^2 + r^2 = 1 because they form a column of a rotation matrix.
inline std::array<double, 3> normal_sum_check(const Orientation& orient) {
    return {std::abs(orient.row[0].z), std::abs(orient.row[1].z), std::abs(orient.row[2].z)};
}

inline Shadow project_box(const BoxDims& dims, const Orientation& orient,
                          const Tolerances& tols = default_tolerances()) {
    const auto pqr = normal_sum_check(orient);

    double min_comp = 1.0, min_band = 1.0;
    for (double t : pqr) {
        min_comp = std::min(min_comp, t);
        min_band = std::min(min_band, std::min(t, 1.0 - t));
    }
    const bool exact_face_parallel = min_comp < tols.ortho;
    if (!exact_face_parallel && min_band < tols.ambiguity)
        raise(Errc::ambiguous_classification,
              "direction within " + std::to_string(tols.ambiguity) + " of face-parallel");

    std::array<Vec3, 8> world{};
    std::vector<Vec2> flat(8);
    for (int s = 0; s < 8; ++s) {
        world[s] = box_vertex(dims, orient, s);
        flat[s] = drop_z(world[s]);
    }
    ConvexPolygon hull = convex_hull(flat, tols);

    Shadow out;
    out.kind = exact_face_parallel ? ShadowKind::rectangle : ShadowKind::hexagon;
    if ((out.kind == ShadowKind::rectangle && hull.size() != 4) ||
        (out.kind == ShadowKind::hexagon && hull.size() != 6))
        raise(Errc::ambiguous_classification,
              "hull has " + std::to_string(hull.size()) + " vertices");

    out.polygon = std::move(hull);
    out.pqr = pqr;
    out.vertical_extent = dims.a * pqr[0] + dims.b * pqr[1] + dims.c * pqr[2];
    out.dims = dims;
    out.orient = orient;
    out.vertex_origin.assign(out.polygon.size(), -1);
    for (std::size_t i = 0; i < out.polygon.size(); ++i) {
        for (int s = 0; s < 8; ++s) {
            if (dist(out.polygon.v[i], flat[s]) <= 10.0 * tols.geom) {
                out.vertex_origin[i] = s;
                break;  // rectangle shadows have two preimages; keep the smaller pattern
            }
        }
        if (out.vertex_origin[i] < 0)
            raise(Errc::construction_failed, "hull vertex has no box-corner preimage");
    }
    return out;
}

// For the unit cube the shadow area equals the vertical extent.
inline std::pair<double, double> cube_area_extent_identity(
    const Orientation& orient, const Tolerances& tols = default_tolerances()) {
    const Shadow s = project_box(BoxDims(1, 1, 1), orient, tols);
    return {s.polygon.area(), s.vertical_extent};
}

// Box axis generating the hull side v[i] -> v[i+1]; the two corner
// patterns of a zonogon side differ in exactly one bit.
inline int side_axis(const Shadow& shadow, std::size_t i) {
    const int a = shadow.vertex_origin[i];
    const int b = shadow.vertex_origin[(i + 1) % shadow.polygon.size()];
    const int x = a ^ b;
    if (x == 1) return 0;
    if (x == 2) return 1;
    if (x == 4) return 2;
    raise(Errc::construction_failed, "hull side spans more than one box edge");
}

} // namespace rupert
