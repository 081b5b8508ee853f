#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "rupert/error.hpp"
#include "rupert/homothet.hpp"
#include "rupert/parallel.hpp"
#include "rupert/polygon.hpp"
#include "rupert/random.hpp"
#include "rupert/shadow.hpp"
#include "rupert/tolerances.hpp"
#include "rupert/vec.hpp"

namespace rupert {

struct OptConfig {
    int sphere_samples = 4000;  // Fibonacci-lattice directions (whole sphere, folded)
    int angle_samples = 360;    // inner rotation scan over [0, pi)
    int refine_iters = 40;      // golden-section steps and local direction rounds
    double refine_shrink = 0.7; // neighborhood decay per local round
    std::uint64_t seed = 0;
};

struct DirectionBest {
    double lambda = 0.0;
    double angle = 0.0;
    RectPlacement placement;
};

struct Incumbent {
    Vec3 direction{};
    double lambda = 0.0;
};

struct OptResult {
    double lambda_star = 0.0;
    Vec3 direction{};
    double angle = 0.0;
    RectPlacement placement;
    long evaluations = 0;
    long skipped_face_parallel = 0;
    std::vector<Incumbent> history;
    bool reverified = false;  // placement checked at lambda_star * (1 - back_off)
};

inline constexpr double nieuwland_back_off = 1e-9;

// Largest lambda such that the lambda-scaled w x h rectangle fits in the
// closed polygon, maximized over rotation: angle scan plus golden-section
// refinement around the best sample.
inline DirectionBest best_lambda_in_polygon(const ConvexPolygon& poly, double w, double h,
                                            int angle_samples, int refine_iters,
                                            const Tolerances& tols = default_tolerances()) {
    const double pi = 3.14159265358979323846;
    if (angle_samples < 1) angle_samples = 1;

    auto eval = [&](double angle) { return largest_homothet_lp(poly, w, h, angle, tols); };

    DirectionBest best;
    best.lambda = -1.0;
    for (int i = 0; i < angle_samples; ++i) {
        const double angle = pi * i / angle_samples;
        const HomothetFit fit = eval(angle);
        if (fit.lambda > best.lambda) {
            best.lambda = fit.lambda;
            best.angle = angle;
        }
    }

    // golden-section around the best sample
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double lo = best.angle - pi / angle_samples;
    double hi = best.angle + pi / angle_samples;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = eval(x1).lambda, f2 = eval(x2).lambda;
    for (int it = 0; it < refine_iters; ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = eval(x2).lambda;
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = eval(x1).lambda;
        }
    }
    const double refined = 0.5 * (lo + hi);
    const HomothetFit fit = eval(refined);
    if (fit.lambda > best.lambda) {
        best.lambda = fit.lambda;
        best.angle = refined;
    }

    const HomothetFit final_fit = eval(best.angle);
    best.lambda = final_fit.lambda;
    best.placement.center = final_fit.center;
    best.placement.angle = normalize_angle(best.angle);
    best.placement.width = best.lambda * w;
    best.placement.height = best.lambda * h;
    return best;
}

// Largest homothet of the a x b face inside the shadow along `direction`.
inline DirectionBest best_lambda_for_direction(const BoxDims& dims, Vec3 direction,
                                               int angle_samples = 360, int refine_iters = 40,
                                               const Tolerances& tols = default_tolerances()) {
    Shadow shadow;
    try {
        shadow = project_box(dims, orientation_from_direction(normalized(direction), tols), tols);
    } catch (const Error& e) {
        if (e.code() == Errc::ambiguous_classification)
            raise(Errc::face_parallel_direction, "direction too close to face-parallel");
        throw;
    }
    if (shadow.kind != ShadowKind::hexagon)
        raise(Errc::face_parallel_direction, "face-parallel directions are excluded");
    return best_lambda_in_polygon(shadow.polygon, dims.a, dims.b, angle_samples, refine_iters,
                                  tols);
}

namespace detail {

// Whole-sphere Fibonacci lattice point i of n, folded into the positive
// octant (box shadows are invariant under sign flips of the direction).
inline Vec3 fibonacci_direction(int i, int n) {
    const double pi = 3.14159265358979323846;
    const double golden_angle = pi * (3.0 - std::sqrt(5.0));
    const double z = 1.0 - 2.0 * (i + 0.5) / n;
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden_angle * i;
    Vec3 v{rho * std::cos(phi), rho * std::sin(phi), z};
    return {std::abs(v.x), std::abs(v.y), std::abs(v.z)};
}

inline bool near_face_parallel(Vec3 u, double band) {
    return std::abs(u.x) < band || std::abs(u.y) < band || std::abs(u.z) < band ||
           std::abs(u.x) > 1.0 - band || std::abs(u.y) > 1.0 - band ||
           std::abs(u.z) > 1.0 - band;
}

} // namespace detail

// Nieuwland constant of a box: supremum scale lambda such that a
// lambda-homothet of the a x b face fits in some shadow.  Reported values
// are certified lower bounds: the returned placement is re-verified in a
// freshly recomputed shadow after a relative back-off of 1e-9.
inline OptResult nieuwland_constant(const BoxDims& dims, const OptConfig& cfg, int threads = 0,
                                    const Tolerances& tols = default_tolerances()) {
    const int n = std::max(1, cfg.sphere_samples);
    struct Sample {
        double lambda = -1.0;
        double angle = 0.0;
        RectPlacement placement;
        bool skipped = true;
    };
    std::vector<Sample> samples(n);
    const double band = 2.0 * tols.ambiguity;

    parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t i) {
        const Vec3 u = detail::fibonacci_direction(static_cast<int>(i), n);
        if (detail::near_face_parallel(u, band)) return;
        try {
            const DirectionBest r = best_lambda_for_direction(dims, u, cfg.angle_samples,
                                                              cfg.refine_iters, tols);
            samples[i] = {r.lambda, r.angle, r.placement, false};
        } catch (const Error&) {
            // leave skipped
        }
    });

    OptResult out;
    out.lambda_star = -1.0;
    for (int i = 0; i < n; ++i) {
        if (samples[i].skipped) {
            ++out.skipped_face_parallel;
            continue;
        }
        ++out.evaluations;
        if (samples[i].lambda > out.lambda_star) {
            out.lambda_star = samples[i].lambda;
            out.direction = detail::fibonacci_direction(i, n);
            out.angle = samples[i].angle;
            out.placement = samples[i].placement;
            out.history.push_back({out.direction, out.lambda_star});
        }
    }
    if (out.lambda_star <= 0.0)
        raise(Errc::construction_failed, "no usable direction sample");

    // local refinement: shrinking-cap resampling around the incumbent
    Rng rng(cfg.seed);
    double cap = 3.6 / std::sqrt(static_cast<double>(n));
    const int rounds = std::max(1, cfg.refine_iters);
    const int per_round = 16;
    for (int round = 0; round < rounds; ++round) {
        for (int s = 0; s < per_round; ++s) {
            const Vec3 d = out.direction;
            Vec3 any = std::abs(d.z) < 0.9 ? Vec3{0, 0, 1} : Vec3{1, 0, 0};
            const Vec3 t1 = normalized(cross(d, any));
            const Vec3 t2 = cross(d, t1);
            Vec3 u = normalized(d + t1 * (cap * rng.gaussian()) + t2 * (cap * rng.gaussian()));
            u = {std::abs(u.x), std::abs(u.y), std::abs(u.z)};
            if (detail::near_face_parallel(u, band)) {
                ++out.skipped_face_parallel;
                continue;
            }
            ++out.evaluations;
            try {
                const DirectionBest r = best_lambda_for_direction(dims, u, cfg.angle_samples,
                                                                  cfg.refine_iters, tols);
                if (r.lambda > out.lambda_star) {
                    out.lambda_star = r.lambda;
                    out.direction = u;
                    out.angle = r.angle;
                    out.placement = r.placement;
                    out.history.push_back({u, r.lambda});
                }
            } catch (const Error&) {
                ++out.skipped_face_parallel;
            }
        }
        cap *= cfg.refine_shrink;
    }

    // verification gate
    const Shadow fresh =
        project_box(dims, orientation_from_direction(out.direction, tols), tols);
    const RectPlacement shrunk =
        scaled_about(out.placement, out.placement.center, 1.0 - nieuwland_back_off);
    out.reverified = contains_rect(fresh.polygon, shrunk, ContainmentMode::closed(), tols);
    if (!out.reverified)
        raise(Errc::construction_failed, "incumbent placement failed re-verification");
    return out;
}

// True iff a lambda-homothet passes along `direction`: the per-direction
// supremum strictly exceeds lambda (open containment after back-off).
inline bool passes_through(const BoxDims& dims, double lambda, Vec3 direction,
                           const Tolerances& tols = default_tolerances()) {
    const DirectionBest r = best_lambda_for_direction(dims, direction, 360, 40, tols);
    return lambda < r.lambda * (1.0 - nieuwland_back_off);
}

} // namespace rupert
