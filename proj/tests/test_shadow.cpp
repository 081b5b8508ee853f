#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "rupert/random.hpp"
#include "rupert/shadow.hpp"

#include "support/oracle.hpp"

using namespace rupert;

namespace {
const double pi = 3.14159265358979323846;

bool is_centrally_symmetric(const ConvexPolygon& poly, double tol) {
    const std::size_t n = poly.size();
    if (n % 2 != 0) return false;
    Vec2 center{};
    for (const Vec2& p : poly.v) center = center + p;
    center = center / static_cast<double>(n);
    for (std::size_t i = 0; i < n / 2; ++i) {
        if (dist(poly.v[i] + poly.v[i + n / 2], center * 2.0) > tol) return false;
    }
    return true;
}

double interior_angle(const ConvexPolygon& poly, std::size_t i) {
    const std::size_t n = poly.size();
    const Vec2 prev = poly.v[(i + n - 1) % n] - poly.v[i];
    const Vec2 next = poly.v[(i + 1) % n] - poly.v[i];
    return std::atan2(std::abs(cross(next, prev)), dot(next, prev));
}

std::vector<double> sorted_edge_lengths(const ConvexPolygon& poly) {
    std::vector<double> out;
    for (std::size_t i = 0; i < poly.size(); ++i)
        out.push_back(dist(poly.v[i], poly.v[(i + 1) % poly.size()]));
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_CASE("orientation_from_direction canonical cases") {
    const Orientation id = orientation_from_direction({0, 0, 1});
    for (int i = 0; i < 3; ++i) {
        CHECK(std::abs(id.row[i].x - (i == 0 ? 1 : 0)) < 1e-12);
        CHECK(std::abs(id.row[i].y - (i == 1 ? 1 : 0)) < 1e-12);
        CHECK(std::abs(id.row[i].z - (i == 2 ? 1 : 0)) < 1e-12);
    }

    // (0,0,-1) maps to the half-turn about the x-axis
    const Orientation flip = orientation_from_direction({0, 0, -1});
    const Orientation expect = rotation_about_x(pi);
    for (int i = 0; i < 3; ++i) CHECK(dist(flip.row[i], expect.row[i]) < 1e-12);

    // generic direction: only the defining property is pinned
    const Vec3 u = normalized(Vec3{1, 1, 1});
    const Orientation r = orientation_from_direction(u);
    CHECK(dist(r.apply(u), Vec3{0, 0, 1}) < 1e-12);
    CHECK(orientation_is_valid(r));

    CHECK_THROWS_AS(orientation_from_direction({0.5, 0, 0}), Error);
}

TEST_CASE("project_box classifies face-parallel and generic directions") {
    const Shadow face = project_box(BoxDims(1, 1, 1), Orientation::identity());
    REQUIRE(face.kind == ShadowKind::rectangle);
    CHECK(face.polygon.size() == 4);
    CHECK(face.polygon.area() == Catch::Approx(1.0).margin(1e-12));
    CHECK(face.vertical_extent == Catch::Approx(1.0).margin(1e-12));
    std::array<double, 3> sorted_pqr = face.pqr;
    std::sort(sorted_pqr.begin(), sorted_pqr.end());
    CHECK(sorted_pqr[0] == Catch::Approx(0.0).margin(1e-15));
    CHECK(sorted_pqr[2] == Catch::Approx(1.0).margin(1e-15));

    const Shadow hex =
        project_box(BoxDims(1, 1, 1), orientation_from_direction(normalized(Vec3{1, 1, 1})));
    REQUIRE(hex.kind == ShadowKind::hexagon);
    const double side = std::sqrt(2.0 / 3.0);
    for (double len : sorted_edge_lengths(hex.polygon))
        CHECK(len == Catch::Approx(side).margin(1e-12));
    for (double c : hex.pqr) CHECK(c == Catch::Approx(1.0 / std::sqrt(3.0)).margin(1e-12));
    CHECK(hex.vertical_extent == Catch::Approx(std::sqrt(3.0)).margin(1e-12));
    CHECK(hex.polygon.area() == Catch::Approx(std::sqrt(3.0)).margin(1e-12));

    // near-face-parallel directions are refused
    CHECK_THROWS_MATCHES(
        project_box(BoxDims(1, 1, 1),
                    orientation_from_direction(normalized(Vec3{1e-8, 1e-8, 1.0}))),
        Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
            return e.code() == Errc::ambiguous_classification;
        }));
}

TEST_CASE("box shadow area matches the edge-component identity") {
    // area = ab|r| + bc|p| + ca|q| with (p,q,r) the unit edge z-components
    Rng rng(5);
    for (int trial = 0; trial < 300; ++trial) {
        const BoxDims dims =
            BoxDims::sorted(rng.uniform(0.3, 3), rng.uniform(0.3, 3), rng.uniform(0.3, 3));
        Shadow s;
        try {
            s = project_box(dims, random_rotation(rng));
        } catch (const Error&) {
            continue;
        }
        const double expect = dims.a * dims.b * s.pqr[2] + dims.b * dims.c * s.pqr[0] +
                              dims.c * dims.a * s.pqr[1];
        CHECK(s.polygon.area() == Catch::Approx(expect).margin(1e-9));
    }

    const Shadow s = project_box(BoxDims(1, 2, 3),
                                 orientation_from_direction(normalized(Vec3{1, 1, 1})));
    REQUIRE(s.kind == ShadowKind::hexagon);
    const double expect =
        1.0 * 2.0 * s.pqr[2] + 2.0 * 3.0 * s.pqr[0] + 3.0 * 1.0 * s.pqr[1];
    CHECK(s.polygon.area() == Catch::Approx(expect).margin(1e-9));
    CHECK(s.pqr[0] * s.pqr[0] + s.pqr[1] * s.pqr[1] + s.pqr[2] * s.pqr[2] ==
          Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("normal_sum_check identity") {
    const auto id = normal_sum_check(Orientation::identity());
    CHECK(id[0] == 0.0);
    CHECK(id[1] == 0.0);
    CHECK(id[2] == 1.0);

    const double theta = 0.7;
    const auto rx = normal_sum_check(rotation_about_x(theta));
    CHECK(rx[0] == Catch::Approx(0.0).margin(1e-15));
    CHECK(rx[1] == Catch::Approx(std::sin(theta)).margin(1e-15));
    CHECK(rx[2] == Catch::Approx(std::cos(theta)).margin(1e-15));

    Rng rng(17);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto pqr = normal_sum_check(random_rotation(rng));
        const double res =
            std::abs(pqr[0] * pqr[0] + pqr[1] * pqr[1] + pqr[2] * pqr[2] - 1.0);
        worst = std::max(worst, res);
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("unit cube: shadow area equals vertical extent") {
    const auto [a0, e0] = cube_area_extent_identity(Orientation::identity());
    CHECK(a0 == Catch::Approx(1.0).margin(1e-12));
    CHECK(e0 == Catch::Approx(1.0).margin(1e-12));

    const auto [a1, e1] = cube_area_extent_identity(
        orientation_from_direction(normalized(Vec3{1, 1, 1})));
    CHECK(a1 == Catch::Approx(std::sqrt(3.0)).margin(1e-12));
    CHECK(e1 == Catch::Approx(std::sqrt(3.0)).margin(1e-12));

    Rng rng(29);
    for (int trial = 0; trial < 500; ++trial) {
        try {
            const auto [area, extent] = cube_area_extent_identity(random_rotation(rng));
            CHECK(area == Catch::Approx(extent).margin(1e-9));
        } catch (const Error&) {
        }
    }
}

TEST_CASE("hexagon shadows are centrally symmetric with obtuse angles") {
    Rng rng(31);
    int hexagons = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const BoxDims dims =
            BoxDims::sorted(rng.uniform(0.3, 2), rng.uniform(0.3, 2), rng.uniform(0.3, 2));
        Shadow s;
        try {
            s = project_box(dims, random_rotation(rng));
        } catch (const Error&) {
            continue;
        }
        if (s.kind != ShadowKind::hexagon) continue;
        ++hexagons;
        REQUIRE(s.polygon.size() == 6);
        CHECK(is_centrally_symmetric(s.polygon, 1e-9));
        for (std::size_t i = 0; i < 6; ++i) {
            CHECK(interior_angle(s.polygon, i) > pi / 2.0);
            CHECK(interior_angle(s.polygon, i) < pi);
        }
        // every hull vertex originates from a distinct box corner
        std::vector<int> origins = s.vertex_origin;
        std::sort(origins.begin(), origins.end());
        CHECK(std::adjacent_find(origins.begin(), origins.end()) == origins.end());
    }
    CHECK(hexagons > 900);
}

TEST_CASE("shadows are congruent under z-rotations of the orientation") {
    Rng rng(41);
    for (int trial = 0; trial < 200; ++trial) {
        const BoxDims dims =
            BoxDims::sorted(rng.uniform(0.5, 2), rng.uniform(0.5, 2), rng.uniform(0.5, 2));
        const Orientation r = random_rotation(rng);
        const Orientation q = rotation_about_z(rng.uniform(0, 2 * pi));
        Shadow s1, s2;
        try {
            s1 = project_box(dims, r);
            s2 = project_box(dims, compose(q, r));
        } catch (const Error&) {
            continue;
        }
        const auto e1 = sorted_edge_lengths(s1.polygon);
        const auto e2 = sorted_edge_lengths(s2.polygon);
        REQUIRE(e1.size() == e2.size());
        for (std::size_t i = 0; i < e1.size(); ++i)
            CHECK(e1[i] == Catch::Approx(e2[i]).margin(1e-9));
        CHECK(s1.polygon.area() == Catch::Approx(s2.polygon.area()).margin(1e-9));
    }
}
