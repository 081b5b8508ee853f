#pragma once

#include <array>
#include <cmath>

#include "rupert/tolerances.hpp"
#include "rupert/vec.hpp"

namespace rupert {

// A proper rotation of 3-space.  Row i is the image of the i-th standard
// basis vector, so apply() maps box-frame coordinates to world coordinates
// and the rows are the world-space directions of the oriented box's axes.
struct Orientation {
    std::array<Vec3, 3> row{Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};

    static Orientation identity() { return {}; }

    Vec3 apply(Vec3 v) const { return row[0] * v.x + row[1] * v.y + row[2] * v.z; }

    // Inverse action: world coordinates to box-frame coordinates.
    Vec3 apply_inverse(Vec3 v) const {
        return {dot(row[0], v), dot(row[1], v), dot(row[2], v)};
    }

    double det() const { return dot(row[0], cross(row[1], row[2])); }
};

// apply(compose(a, b), v) == apply(a, apply(b, v))
inline Orientation compose(const Orientation& a, const Orientation& b) {
    Orientation out;
    for (int i = 0; i < 3; ++i) out.row[i] = a.apply(b.row[i]);
    return out;
}

inline Orientation rotation_about_x(double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    // images of e1, e2, e3
    return {{Vec3{1, 0, 0}, Vec3{0, c, s}, Vec3{0, -s, c}}};
}

inline Orientation rotation_about_z(double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return {{Vec3{c, s, 0}, Vec3{-s, c, 0}, Vec3{0, 0, 1}}};
}

inline bool orientation_is_valid(const Orientation& o,
                                 const Tolerances& tols = default_tolerances(),
                                 double slack = 1.0) {
    const double tol = tols.ortho * slack;
    for (int i = 0; i < 3; ++i) {
        if (std::abs(norm(o.row[i]) - 1.0) > tol) return false;
        for (int j = i + 1; j < 3; ++j) {
            if (std::abs(dot(o.row[i], o.row[j])) > tol) return false;
        }
    }
    return std::abs(o.det() - 1.0) <= tol;
}

} // namespace rupert
