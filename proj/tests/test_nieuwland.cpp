#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "rupert/nieuwland.hpp"
#include "rupert/random.hpp"

#include "support/oracle.hpp"

using namespace rupert;

namespace {

const double cube_constant = 3.0 * std::sqrt(2.0) / 4.0;

OptConfig quick_config(std::uint64_t seed = 0) {
    OptConfig cfg;
    cfg.sphere_samples = 700;
    cfg.angle_samples = 180;
    cfg.refine_iters = 30;
    cfg.seed = seed;
    return cfg;
}

Vec3 random_safe_direction(Rng& rng, double min_comp) {
    while (true) {
        const Vec3 u = random_unit_vector(rng);
        if (std::abs(u.x) > min_comp && std::abs(u.y) > min_comp && std::abs(u.z) > min_comp)
            return u;
    }
}

} // namespace

TEST_CASE("best lambda along the space diagonal equals the hexagon square") {
    const DirectionBest r =
        best_lambda_for_direction(BoxDims(1, 1, 1), normalized(Vec3{1, 1, 1}));
    // largest square in the regular hexagon of side sqrt(2/3)
    const double expected = std::sqrt(6.0) - std::sqrt(2.0);
    CHECK(r.lambda == Catch::Approx(expected).margin(1e-6));

    const Shadow s = project_box(BoxDims(1, 1, 1),
                                 orientation_from_direction(normalized(Vec3{1, 1, 1})));
    const double brute = oracle::best_lambda_centered(s.polygon.v, 1.0, 1.0, 2880, 1e-9);
    CHECK(r.lambda == Catch::Approx(brute).margin(1e-3));
}

TEST_CASE("best lambda on the classical direction hits the cube constant") {
    const DirectionBest r =
        best_lambda_for_direction(BoxDims(1, 1, 1), normalized(Vec3{2, 2, 1}));
    CHECK(r.lambda == Catch::Approx(cube_constant).margin(1e-9));
}

TEST_CASE("every sampled direction admits the full-size face") {
    Rng rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        const BoxDims dims =
            BoxDims::sorted(rng.uniform(0.5, 2), rng.uniform(0.5, 2), rng.uniform(0.5, 2));
        const Vec3 dir = random_safe_direction(rng, 1e-3);
        const DirectionBest r = best_lambda_for_direction(dims, dir);
        CHECK(r.lambda >= 1.0 - 1e-9);

        // returned placement is feasible in a fresh shadow
        const Shadow s = project_box(dims, orientation_from_direction(dir));
        const RectPlacement shrunk =
            scaled_about(r.placement, r.placement.center, 1.0 - 1e-9);
        CHECK(contains_rect(s.polygon, shrunk, ContainmentMode::closed()));
    }
}

TEST_CASE("face-parallel directions are rejected") {
    CHECK_THROWS_MATCHES(
        best_lambda_for_direction(BoxDims(1, 1, 1), normalized(Vec3{1e-9, 1e-9, 1.0})), Error,
        Catch::Matchers::Predicate<Error>([](const Error& e) {
            return e.code() == Errc::face_parallel_direction;
        }));
}

TEST_CASE("LP per-direction optimum matches the grid oracle") {
    Rng rng(13);
    for (int trial = 0; trial < 5; ++trial) {
        const BoxDims dims =
            BoxDims::sorted(rng.uniform(0.6, 1.8), rng.uniform(0.6, 1.8), rng.uniform(0.6, 1.8));
        const Vec3 dir = random_safe_direction(rng, 5e-2);
        const DirectionBest r = best_lambda_for_direction(dims, dir);
        const Shadow s = project_box(dims, orientation_from_direction(dir));
        const double brute =
            oracle::best_lambda_centered(s.polygon.v, dims.a, dims.b, 2880, 1e-9);
        CHECK(r.lambda == Catch::Approx(brute).margin(1e-3));
    }
}

TEST_CASE("cube constant from the full optimizer") {
    const OptResult r = nieuwland_constant(BoxDims(1, 1, 1), quick_config());
    CHECK(r.lambda_star >= cube_constant - 1e-3);
    CHECK(r.lambda_star <= cube_constant + 1e-6);
    CHECK(r.reverified);
    CHECK(r.evaluations > 0);

    // incumbent history is non-decreasing
    for (std::size_t i = 1; i < r.history.size(); ++i)
        CHECK(r.history[i].lambda >= r.history[i - 1].lambda);
}

TEST_CASE("optimizer is deterministic for a fixed seed") {
    const OptResult a = nieuwland_constant(BoxDims(1, 2, 3), quick_config(7));
    const OptResult b = nieuwland_constant(BoxDims(1, 2, 3), quick_config(7));
    CHECK(a.lambda_star == b.lambda_star);
    CHECK(a.evaluations == b.evaluations);
    CHECK(dist(a.direction, b.direction) == 0.0);
    REQUIRE(a.history.size() == b.history.size());
    for (std::size_t i = 0; i < a.history.size(); ++i)
        CHECK(a.history[i].lambda == b.history[i].lambda);
}

TEST_CASE("scale invariance of the constant") {
    const OptResult base = nieuwland_constant(BoxDims(1, 1, 2), quick_config(3));
    for (double k : {0.5, 2.0, 10.0}) {
        const OptResult scaled =
            nieuwland_constant(BoxDims(1, 1, 2).scaled(k), quick_config(3));
        CHECK(scaled.lambda_star == Catch::Approx(base.lambda_star).margin(1e-9));
    }
}

TEST_CASE("flat boxes are strictly Rupert") {
    const OptResult r = nieuwland_constant(BoxDims(1, 1, 2), quick_config(5));
    CHECK(r.lambda_star > 1.0 + 1e-6);

    // cross-check the incumbent with the brute-force oracle
    const Shadow s = project_box(BoxDims(1, 1, 2), orientation_from_direction(r.direction));
    for (const Vec2& c : scaled_about(r.placement, r.placement.center, 1.0 - 1e-9).corners())
        CHECK(oracle::point_in_poly(s.polygon.v, c, 1e-9));
}

TEST_CASE("passes_through thresholds") {
    const Vec3 diag = normalized(Vec3{1, 1, 1});
    CHECK(passes_through(BoxDims(1, 1, 1), 1.0, diag));
    CHECK_FALSE(passes_through(BoxDims(1, 1, 1), 1.2, diag));
    CHECK_FALSE(passes_through(BoxDims(1, 1, 1), 1.2, normalized(Vec3{2, 2, 1})));

    Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const BoxDims dims =
            BoxDims::sorted(rng.uniform(0.5, 2), rng.uniform(0.5, 2), rng.uniform(0.5, 2));
        CHECK(passes_through(dims, 0.1, random_safe_direction(rng, 1e-3)));
    }
}
