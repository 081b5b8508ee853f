#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "rupert/cross_section.hpp"
#include "rupert/error.hpp"
#include "rupert/nieuwland.hpp"
#include "rupert/parallel.hpp"
#include "rupert/passage.hpp"
#include "rupert/polygon.hpp"
#include "rupert/random.hpp"
#include "rupert/shadow.hpp"

// Randomized property suites.  Containment of computed placements is
// re-checked with plain cross-product walks over the raw hull vertices so
// a bug in the LP or predicate stack cannot certify itself.

namespace rupert {

struct CheckResult {
    std::string name;
    long trials = 0;
    long failures = 0;
    double worst = 0.0;  // largest observed residual (0 when satisfied)
    double tolerance = 0.0;
    bool pass = true;
    long first_fail_trial = -1;
    std::string note;
};

struct SuiteResult {
    std::string suite;
    long trials = 0;
    std::uint64_t seed = 0;
    std::vector<CheckResult> checks;
    bool pass = true;
};

namespace verify_detail {

inline bool point_in_hull_brute(const std::vector<Vec2>& hull, Vec2 p, double tol) {
    const std::size_t n = hull.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = hull[i];
        const Vec2 b = hull[(i + 1) % n];
        if (cross(b - a, p - a) < -tol * std::max(1.0, norm(b - a))) return false;
    }
    return true;
}

inline double min_edge_distance_brute(const std::vector<Vec2>& hull, Vec2 p) {
    const std::size_t n = hull.size();
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = hull[i];
        const Vec2 b = hull[(i + 1) % n];
        m = std::min(m, cross(b - a, p - a) / norm(b - a));
    }
    return m;
}

class CheckAccumulator {
public:
    CheckAccumulator(std::string name, double tolerance, std::string note = "")
        : result_{std::move(name), 0, 0, 0.0, tolerance, true, -1, std::move(note)} {}

    void record(long trial, double residual) {
        ++result_.trials;
        result_.worst = std::max(result_.worst, residual);
        if (residual > result_.tolerance) {
            ++result_.failures;
            result_.pass = false;
            if (result_.first_fail_trial < 0) result_.first_fail_trial = trial;
        }
    }

    void record_bool(long trial, bool ok) { record(trial, ok ? 0.0 : 1.0); }

    CheckResult take() const { return result_; }

private:
    CheckResult result_;
};

inline Orientation hexagon_orientation(Rng& rng, const BoxDims& dims, const Tolerances& tols) {
    while (true) {
        const Orientation o = random_rotation(rng);
        try {
            const Shadow probe = project_box(dims, o, tols);
            if (probe.kind == ShadowKind::hexagon) return o;
        } catch (const Error&) {
        }
    }
}

inline Vec3 safe_direction(Rng& rng, double min_comp) {
    while (true) {
        const Vec3 u = random_unit_vector(rng);
        if (std::abs(u.x) > min_comp && std::abs(u.y) > min_comp &&
            std::abs(u.z) > min_comp)
            return u;
    }
}

} // namespace verify_detail

inline SuiteResult verify_lemma1(long trials, std::uint64_t seed, int threads = 0,
                                 const Tolerances& tols = default_tolerances()) {
    using namespace verify_detail;
    struct Row {
        double pqr_res = 0, area_res = 0, sym_res = 0, obtuse_res = 0;
        bool ok = true;
    };
    std::vector<Row> rows(static_cast<std::size_t>(trials));
    parallel_for(rows.size(), threads, [&](std::size_t i) {
        Rng rng(mix_seed(seed, i));
        Row& row = rows[i];
        const Orientation o = hexagon_orientation(rng, BoxDims(1, 1, 1), tols);

        const auto pqr = normal_sum_check(o);
        row.pqr_res = std::abs(pqr[0] * pqr[0] + pqr[1] * pqr[1] + pqr[2] * pqr[2] - 1.0);

        const Shadow s = project_box(BoxDims(1, 1, 1), o, tols);
        row.area_res = std::abs(s.polygon.area() - s.vertical_extent);

        const std::size_t n = s.polygon.size();
        for (std::size_t k = 0; k < n / 2; ++k) {
            // box is centered, so opposite vertices sum to zero
            row.sym_res = std::max(row.sym_res, norm(s.polygon.v[k] + s.polygon.v[k + n / 2]));
        }
        for (std::size_t k = 0; k < n; ++k) {
            const Vec2 prev = s.polygon.v[(k + n - 1) % n] - s.polygon.v[k];
            const Vec2 next = s.polygon.v[(k + 1) % n] - s.polygon.v[k];
            const double ang = std::atan2(std::abs(cross(next, prev)), dot(next, prev));
            const double pi = 3.14159265358979323846;
            row.obtuse_res = std::max(row.obtuse_res,
                                      std::max(pi / 2.0 - ang, ang - pi));
        }
    });

    CheckAccumulator pqr_check("pqr_unit_sum", 1e-12);
    CheckAccumulator area_check("cube_area_equals_extent", 1e-9);
    CheckAccumulator sym_check("hexagon_central_symmetry", 1e-9);
    CheckAccumulator obtuse_check("hexagon_angles_obtuse", 0.0);
    for (long i = 0; i < trials; ++i) {
        pqr_check.record(i, rows[i].pqr_res);
        area_check.record(i, rows[i].area_res);
        sym_check.record(i, rows[i].sym_res);
        obtuse_check.record(i, rows[i].obtuse_res);
    }
    SuiteResult out{"lemma1", trials, seed, {pqr_check.take(), area_check.take(),
                                            sym_check.take(), obtuse_check.take()}};
    for (const CheckResult& c : out.checks) out.pass = out.pass && c.pass;
    return out;
}

inline SuiteResult verify_lemma3(long trials, std::uint64_t seed, int threads = 0,
                                 const Tolerances& tols = default_tolerances()) {
    using namespace verify_detail;
    struct Row {
        double offset_res = 0;
        bool criterion_ok = true, pairs_ok = true, interior_ok = true;
    };
    std::vector<Row> rows(static_cast<std::size_t>(trials));
    parallel_for(rows.size(), threads, [&](std::size_t i) {
        Rng rng(mix_seed(seed, i));
        Row& row = rows[i];
        const Orientation o = hexagon_orientation(rng, BoxDims(1, 1, 1), tols);
        const Shadow s = project_box(BoxDims(1, 1, 1), o, tols);

        int fit_pairs = 0;
        for (int k = 0; k < 6; ++k) {
            const CornerSquare cs = corner_square(s, k, tols);

            const Vec2 bprime = s.polygon.v[(k + 1) % 6];
            const Vec2 cprime = s.polygon.v[(k + 5) % 6];
            row.offset_res = std::max(row.offset_res,
                                      std::abs(dist(cs.corner_b, bprime) - cs.b_off));
            row.offset_res = std::max(row.offset_res,
                                      std::abs(dist(cs.corner_c, cprime) - cs.c_off));

            const double margin = (1.0 + cs.p) - (cs.q + cs.r);
            if (std::abs(margin) > 1e-9) {
                const bool inside = point_in_hull_brute(s.polygon.v, cs.corner_d, 1e-9);
                if (cs.fits != inside) row.criterion_ok = false;
            }
            if (margin > 1e-9 &&
                !(min_edge_distance_brute(s.polygon.v, cs.corner_d) > 0.0))
                row.interior_ok = false;
            if (cs.fits && k < 3) ++fit_pairs;
        }
        row.pairs_ok = fit_pairs >= 2;
    });

    CheckAccumulator criterion("criterion_matches_containment", 0.0);
    CheckAccumulator pairs("at_least_two_pairs_fit", 0.0);
    CheckAccumulator offsets("offsets_match_measured", 1e-9);
    CheckAccumulator interior("strict_fit_fourth_corner_interior", 0.0);
    for (long i = 0; i < trials; ++i) {
        criterion.record_bool(i, rows[i].criterion_ok);
        pairs.record_bool(i, rows[i].pairs_ok);
        offsets.record(i, rows[i].offset_res);
        interior.record_bool(i, rows[i].interior_ok);
    }
    SuiteResult out{"lemma3", trials, seed, {criterion.take(), pairs.take(), offsets.take(),
                                             interior.take()}};
    for (const CheckResult& c : out.checks) out.pass = out.pass && c.pass;
    return out;
}

inline SuiteResult verify_lemma4(long trials, std::uint64_t seed, int threads = 0,
                                 const Tolerances& tols = default_tolerances()) {
    using namespace verify_detail;
    struct Row {
        double contain_res = 0, side_res = 0;
        int branch = 0;
    };
    std::vector<Row> rows(static_cast<std::size_t>(trials));
    parallel_for(rows.size(), threads, [&](std::size_t i) {
        Rng rng(mix_seed(seed, i));
        Row& row = rows[i];
        const double a = rng.uniform(0.3, 1.8);
        const double b = rng.uniform(a, 2.2);
        const double alpha = rng.uniform(1e-6, 1.45);
        const double axis_angle = rng.uniform(0.0, 3.14159265358979323846);

        const FoldedParallelogram par = fold_cross_section(a, b, alpha, axis_angle, tols);
        const InscribedRect r = rect_in_parallelogram(par, a, b, tols);
        row.branch = r.branch;

        std::array<double, 2> sides{r.placement.width, r.placement.height};
        std::sort(sides.begin(), sides.end());
        row.side_res = std::max(std::abs(sides[0] - a), std::abs(sides[1] - b));

        std::vector<Vec2> hull{par.vertex[0], par.vertex[1], par.vertex[3], par.vertex[2]};
        if (cross(hull[1] - hull[0], hull[2] - hull[0]) < 0.0)
            std::reverse(hull.begin(), hull.end());
        for (const Vec2& c : r.placement.corners()) {
            row.contain_res =
                std::max(row.contain_res, -min_edge_distance_brute(hull, c));
        }
    });

    long case1 = 0, case2 = 0;
    CheckAccumulator contain("embedding_inside_parallelogram", 1e-9);
    CheckAccumulator sides("embedding_side_lengths", 1e-9);
    for (long i = 0; i < trials; ++i) {
        contain.record(i, rows[i].contain_res);
        sides.record(i, rows[i].side_res);
        if (rows[i].branch == 1) ++case1;
        if (rows[i].branch == 2) ++case2;
    }
    const long need = trials >= 2000 ? 100 : 0;
    CheckResult branches{"both_cases_exercised",
                         trials,
                         (case1 >= need && case2 >= need) ? 0 : 1,
                         0.0,
                         0.0,
                         case1 >= need && case2 >= need,
                         -1,
                         "case1=" + std::to_string(case1) +
                             " case2=" + std::to_string(case2)};
    SuiteResult out{"lemma4", trials, seed, {contain.take(), sides.take(), branches}};
    for (const CheckResult& c : out.checks) out.pass = out.pass && c.pass;
    return out;
}

inline SuiteResult verify_theorem1(long trials, std::uint64_t seed, int threads = 0,
                                   const Tolerances& tols = default_tolerances()) {
    using namespace verify_detail;
    struct Row {
        bool constructed = false;
        double clearance = 0.0;
    };
    std::vector<Row> rows(static_cast<std::size_t>(trials));
    parallel_for(rows.size(), threads, [&](std::size_t i) {
        Rng rng(mix_seed(seed, i));
        Row& row = rows[i];
        const BoxDims dims = BoxDims::sorted(rng.uniform(0.4, 2.5), rng.uniform(0.4, 2.5),
                                             rng.uniform(0.4, 2.5));
        const Vec3 dir = safe_direction(rng, 1e-3);
        try {
            const RectPlacement rect = face_rectangle_in_shadow(dims, dir, tols);
            const Shadow s = project_box(dims, orientation_from_direction(dir, tols), tols);
            double clearance = std::numeric_limits<double>::infinity();
            for (const Vec2& c : rect.corners())
                clearance = std::min(clearance, min_edge_distance_brute(s.polygon.v, c));
            row.constructed = true;
            row.clearance = clearance;
        } catch (const Error&) {
            row.constructed = false;
        }
    });

    CheckAccumulator constructed("construction_succeeds", 0.0);
    CheckAccumulator clearance("hardened_placement_strictly_inside", 0.0);
    for (long i = 0; i < trials; ++i) {
        constructed.record_bool(i, rows[i].constructed);
        clearance.record(i, rows[i].constructed && rows[i].clearance > 0.0 ? 0.0 : 1.0);
    }
    SuiteResult out{"theorem1", trials, seed, {constructed.take(), clearance.take()}};
    for (const CheckResult& c : out.checks) out.pass = out.pass && c.pass;
    return out;
}

inline SuiteResult verify_theorem2(long trials, std::uint64_t seed, int threads = 0,
                                   const Tolerances& tols = default_tolerances()) {
    using namespace verify_detail;

    SuiteResult out{"theorem2", trials, seed, {}};

    // fixed checks at the cube's best direction
    OptConfig cfg;
    cfg.sphere_samples = 600;
    cfg.angle_samples = 180;
    cfg.refine_iters = 24;
    cfg.seed = seed;
    const OptResult opt = nieuwland_constant(BoxDims(1, 1, 1), cfg, threads, tols);

    CheckResult near_ceiling{"witness_side_1p05_at_best_direction", 1, 0, 0.0, 1e-9,
                             true, -1, ""};
    try {
        const Theorem2Witness w = theorem2_witness(BoxDims(1, 1, 1), 1.05, opt.direction, tols);
        const Orientation o = orientation_from_direction(opt.direction, tols);
        double res = 0.0;
        const Vec3 e1 = w.rect3d[1] - w.rect3d[0];
        const Vec3 e2 = w.rect3d[3] - w.rect3d[0];
        res = std::max(res, std::abs(norm(e1) - 1.05));
        res = std::max(res, std::abs(norm(e2) - 1.05));
        res = std::max(res, std::abs(dot(e1, e2)));
        for (const Vec3& p : w.rect3d) {
            const Vec3 local = o.apply_inverse(p);
            const double slack = 0.5 - std::max({std::abs(local.x), std::abs(local.y),
                                                 std::abs(local.z)});
            if (!(slack > 0.0)) res = std::max(res, 1.0);
        }
        near_ceiling.worst = res;
        near_ceiling.pass = res <= near_ceiling.tolerance;
        near_ceiling.failures = near_ceiling.pass ? 0 : 1;
    } catch (const Error&) {
        near_ceiling.pass = false;
        near_ceiling.failures = 1;
        near_ceiling.note = "witness construction threw";
    }

    CheckResult over_ceiling{"lambda_1p2_rejected", 1, 1, 1.0, 0.0, false, -1, ""};
    try {
        theorem2_witness(BoxDims(1, 1, 1), 1.2, opt.direction, tols);
    } catch (const Error& e) {
        if (e.code() == Errc::does_not_fit) {
            over_ceiling.failures = 0;
            over_ceiling.worst = 0.0;
            over_ceiling.pass = true;
        }
    }

    // randomized witnesses on boxes
    struct Row {
        bool ok = true;
        double res = 0.0;
    };
    std::vector<Row> rows(static_cast<std::size_t>(trials));
    parallel_for(rows.size(), threads, [&](std::size_t i) {
        Rng rng(mix_seed(seed, i));
        Row& row = rows[i];
        const BoxDims dims = BoxDims::sorted(rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0),
                                             rng.uniform(0.5, 2.0));
        const Vec3 dir = safe_direction(rng, 2e-3);
        try {
            const Shadow s = project_box(dims, orientation_from_direction(dir, tols), tols);
            const DirectionBest core =
                best_lambda_in_polygon(s.polygon, dims.a, dims.b, 90, 20, tols);
            const double lambda = rng.uniform(0.3, 0.97) * core.lambda;
            const Theorem2Witness w = theorem2_witness(dims, lambda, dir, tols);

            const Vec3 e1 = w.rect3d[1] - w.rect3d[0];
            const Vec3 e2 = w.rect3d[3] - w.rect3d[0];
            std::array<double, 2> sides{norm(e1), norm(e2)};
            std::sort(sides.begin(), sides.end());
            row.res = std::max(std::abs(sides[0] - lambda * dims.a),
                               std::abs(sides[1] - lambda * dims.b));
            row.res = std::max(row.res, std::abs(dot(e1, e2)));
            // quad shadow is the centered rectangle
            for (int k = 0; k < 4; ++k) {
                const Vec2 sh = drop_z(w.quad.vertex[k]);
                const Vec2 op = drop_z(w.quad.vertex[(k + 2) % 4]);
                row.res = std::max(row.res, norm(sh + op));
            }
            const Orientation o = orientation_from_direction(dir, tols);
            for (const Vec3& p : w.rect3d) {
                const Vec3 local = o.apply_inverse(p);
                const bool inside = std::abs(local.x) < 0.5 * dims.a &&
                                    std::abs(local.y) < 0.5 * dims.b &&
                                    std::abs(local.z) < 0.5 * dims.c;
                if (!inside) row.ok = false;
            }
        } catch (const Error&) {
            row.ok = false;
        }
    });

    CheckAccumulator witness("random_witness_valid", 0.0);
    CheckAccumulator residual("random_witness_residuals", 1e-9);
    for (long i = 0; i < trials; ++i) {
        witness.record_bool(i, rows[i].ok);
        residual.record(i, rows[i].res);
    }

    out.checks = {near_ceiling, over_ceiling, witness.take(), residual.take()};
    for (const CheckResult& c : out.checks) out.pass = out.pass && c.pass;
    return out;
}

inline const std::vector<std::string>& verify_suite_names() {
    static const std::vector<std::string> names{"lemma1", "lemma3", "lemma4", "theorem1",
                                                "theorem2"};
    return names;
}

inline long default_suite_trials(const std::string& name) {
    if (name == "lemma1") return 10000;
    if (name == "lemma3") return 5000;
    if (name == "lemma4") return 10000;
    if (name == "theorem1") return 2000;
    if (name == "theorem2") return 200;
    return 100;
}

inline SuiteResult run_verify_suite(const std::string& name, long trials, std::uint64_t seed,
                                    int threads = 0,
                                    const Tolerances& tols = default_tolerances()) {
    if (trials <= 0) trials = default_suite_trials(name);
    if (name == "lemma1") return verify_lemma1(trials, seed, threads, tols);
    if (name == "lemma3") return verify_lemma3(trials, seed, threads, tols);
    if (name == "lemma4") return verify_lemma4(trials, seed, threads, tols);
    if (name == "theorem1") return verify_theorem1(trials, seed, threads, tols);
    if (name == "theorem2") return verify_theorem2(trials, seed, threads, tols);
    raise(Errc::degenerate_input, "unknown verify suite: " + name);
}

} // namespace rupert
