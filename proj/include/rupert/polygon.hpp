#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "rupert/error.hpp"
#include "rupert/tolerances.hpp"
#include "rupert/vec.hpp"

namespace rupert {

// A positioned w x h rectangle: corners are
//   center +- (width/2) u +- (height/2) v,  u = (cos angle, sin angle), v = perp(u).
struct RectPlacement {
    Vec2 center{};
    double angle = 0.0;  // normalized to [0, pi)
    double width = 1.0;
    double height = 1.0;

    std::array<Vec2, 4> corners() const {
        const Vec2 u = dir_of(angle) * (0.5 * width);
        const Vec2 v = perp(dir_of(angle)) * (0.5 * height);
        // counterclockwise
        return {center - u - v, center + u - v, center + u + v, center - u + v};
    }
};

inline double normalize_angle(double a) {
    const double pi = 3.14159265358979323846;
    double r = std::fmod(a, pi);
    if (r < 0) r += pi;
    if (r >= pi) r -= pi;
    return r;
}

inline RectPlacement scaled_about(const RectPlacement& r, Vec2 fix, double k) {
    RectPlacement out = r;
    out.center = fix + (r.center - fix) * k;
    out.width = r.width * k;
    out.height = r.height * k;
    return out;
}

// Strictly convex polygon, vertices in counterclockwise order.
struct ConvexPolygon {
    std::vector<Vec2> v;

    std::size_t size() const { return v.size(); }

    double area() const {
        double s = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const Vec2& a = v[i];
            const Vec2& b = v[(i + 1) % v.size()];
            s += cross(a, b);
        }
        return 0.5 * s;
    }

    Vec2 centroid() const {
        double s = 0.0;
        Vec2 c{};
        for (std::size_t i = 0; i < v.size(); ++i) {
            const Vec2& a = v[i];
            const Vec2& b = v[(i + 1) % v.size()];
            const double w = cross(a, b);
            s += w;
            c = c + (a + b) * w;
        }
        return c / (3.0 * s);
    }

    double diameter() const {
        double d = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i)
            for (std::size_t j = i + 1; j < v.size(); ++j)
                d = std::max(d, dist(v[i], v[j]));
        return d;
    }

    // Signed distance of pt to the edge line through v[i] -> v[i+1];
    // positive inside (interior is to the left of CCW edges).
    double edge_signed_distance(std::size_t i, Vec2 pt) const {
        const Vec2 a = v[i];
        const Vec2 b = v[(i + 1) % v.size()];
        const Vec2 n = normalized(perp(b - a));
        return dot(n, pt - a);
    }

    double signed_distance(Vec2 pt) const {
        double m = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < v.size(); ++i)
            m = std::min(m, edge_signed_distance(i, pt));
        return m;
    }
};

inline bool polygon_is_valid(const ConvexPolygon& poly,
                             const Tolerances& tols = default_tolerances()) {
    const std::size_t n = poly.v.size();
    if (n < 3) return false;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = poly.v[i];
        const Vec2 b = poly.v[(i + 1) % n];
        const Vec2 c = poly.v[(i + 2) % n];
        if (dist(a, b) <= tols.geom) return false;
        if (cross(b - a, c - b) <= -tols.geom) return false;
    }
    return true;
}

// Minimal counterclockwise convex hull (monotone chain).  Duplicate points
// and collinear interior points are dropped.
inline ConvexPolygon convex_hull(std::vector<Vec2> pts,
                                 const Tolerances& tols = default_tolerances()) {
    std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    std::vector<Vec2> uniq;
    for (const Vec2& p : pts) {
        if (uniq.empty() || dist(uniq.back(), p) > tols.geom) uniq.push_back(p);
    }
    if (uniq.size() < 3) raise(Errc::degenerate_input, "fewer than 3 distinct points");

    // Relative collinearity threshold keeps the test scale-free.
    auto turns_left = [&](Vec2 o, Vec2 a, Vec2 b) {
        const double c = cross(a - o, b - o);
        return c > tols.geom * std::max(1.0, dist(o, a) * dist(o, b));
    };

    std::vector<Vec2> lower, upper;
    for (const Vec2& p : uniq) {
        while (lower.size() >= 2 && !turns_left(lower[lower.size() - 2], lower.back(), p))
            lower.pop_back();
        lower.push_back(p);
    }
    for (auto it = uniq.rbegin(); it != uniq.rend(); ++it) {
        while (upper.size() >= 2 && !turns_left(upper[upper.size() - 2], upper.back(), *it))
            upper.pop_back();
        upper.push_back(*it);
    }
    lower.pop_back();
    upper.pop_back();
    lower.insert(lower.end(), upper.begin(), upper.end());
    if (lower.size() < 3) raise(Errc::degenerate_input, "all points collinear");
    return ConvexPolygon{std::move(lower)};
}

enum class Containment { closed, open };

struct ContainmentMode {
    Containment kind = Containment::closed;
    double margin = 0.0;  // used by open mode

    static ContainmentMode closed() { return {Containment::closed, 0.0}; }
    static ContainmentMode open(double eps) { return {Containment::open, eps}; }
};

inline bool contains_point(const ConvexPolygon& poly, Vec2 pt, ContainmentMode mode,
                           const Tolerances& tols = default_tolerances()) {
    const double required = mode.kind == Containment::closed ? -tols.geom : mode.margin;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        if (poly.edge_signed_distance(i, pt) < required) return false;
    }
    return true;
}

// Convexity reduces rectangle containment to its 4 corners.
inline bool contains_rect(const ConvexPolygon& poly, const RectPlacement& rect,
                          ContainmentMode mode,
                          const Tolerances& tols = default_tolerances()) {
    for (const Vec2& c : rect.corners()) {
        if (!contains_point(poly, c, mode, tols)) return false;
    }
    return true;
}

// Smallest signed corner-to-edge distance; positive when strictly inside.
inline double rect_clearance(const ConvexPolygon& poly, const RectPlacement& rect) {
    double m = std::numeric_limits<double>::infinity();
    for (const Vec2& c : rect.corners()) m = std::min(m, poly.signed_distance(c));
    return m;
}

inline double polygon_area(const ConvexPolygon& poly) { return poly.area(); }

} // namespace rupert
