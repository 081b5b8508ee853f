// rupert-kit: shadows, Rupert passages, and Nieuwland constants for
// rectangular boxes.  Emits deterministic JSON reports and optional SVG
// figures; see the verify subcommand for the randomized property suites.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rupert/report.hpp"
#include "rupert/rupert.hpp"
#include "rupert/svg.hpp"
#include "rupert/verify.hpp"

namespace {

using namespace rupert;

constexpr int exit_ok = 0;
constexpr int exit_verify_failed = 1;
constexpr int exit_bad_input = 2;
constexpr int exit_ambiguous = 3;
constexpr int exit_no_fit = 4;
constexpr int exit_internal = 70;

struct CommonFlags {
    std::string dims_text;
    std::string dir_text;
    std::string json_path;
    std::string svg_path;
    double lambda = 1.0;
    double tol = 0.0;
    std::uint64_t seed = 0;
    long trials = 0;
    std::string suite = "all";
};

std::vector<double> parse_csv(const std::string& text, std::size_t n, const char* what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const double v = std::stod(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            raise(Errc::degenerate_input, std::string(what) + ": cannot parse '" + item + "'");
        }
    }
    if (out.size() != n)
        raise(Errc::degenerate_input,
              std::string(what) + ": expected " + std::to_string(n) + " comma-separated values");
    return out;
}

BoxDims parse_dims(const std::string& text) {
    const auto v = parse_csv(text, 3, "--dims");
    if (!(v[0] > 0.0) || !(v[1] > 0.0) || !(v[2] > 0.0))
        raise(Errc::degenerate_input, "--dims: sides must be positive");
    return BoxDims::sorted(v[0], v[1], v[2]);
}

Vec3 parse_dir(const std::string& text) {
    const auto v = parse_csv(text, 3, "--dir");
    const Vec3 u{v[0], v[1], v[2]};
    if (norm(u) < 1e-12) raise(Errc::invalid_direction, "--dir: zero vector");
    return normalized(u);
}

Tolerances make_tolerances(double tol) {
    Tolerances t;
    if (tol > 0.0) t.geom = tol;
    return t;
}

int emit_report(const RunReport& rep, const std::string& json_path) {
    const std::string text = jsonio::dump_17g(jsonio::from_report(rep));
    if (json_path.empty()) {
        std::cout << text;
        return exit_ok;
    }
    std::ofstream f(json_path, std::ios::binary);
    f << text;
    if (!f) {
        std::cerr << "error: cannot write " << json_path << "\n";
        return exit_bad_input;
    }
    return exit_ok;
}

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(clock::now() - start_).count();
    }

private:
    using clock = std::chrono::steady_clock;
    clock::time_point start_ = clock::now();
};

int error_exit_code(const Error& e) {
    switch (e.code()) {
        case Errc::degenerate_input:
        case Errc::invalid_direction:
        case Errc::infeasible_input:
            return exit_bad_input;
        case Errc::ambiguous_classification:
            return exit_ambiguous;
        case Errc::face_parallel_direction:
        case Errc::does_not_fit:
        case Errc::cannot_harden:
            return exit_no_fit;
        default:
            return exit_internal;
    }
}

int cmd_shadow(const CommonFlags& flags) {
    const Stopwatch watch;
    const Tolerances tols = make_tolerances(flags.tol);
    const BoxDims dims = parse_dims(flags.dims_text);
    const Vec3 dir = parse_dir(flags.dir_text);

    const Shadow s = project_box(dims, orientation_from_direction(dir, tols), tols);

    RunReport rep;
    rep.command = "shadow";
    rep.inputs["dims"] = jsonio::from_dims(dims);
    rep.inputs["dir"] = jsonio::from_vec3(dir);
    rep.inputs["tol"] = tols.geom;
    rep.outputs = jsonio::from_shadow(s);

    const double pqr_res =
        std::abs(s.pqr[0] * s.pqr[0] + s.pqr[1] * s.pqr[1] + s.pqr[2] * s.pqr[2] - 1.0);
    rep.checks.push_back({"pqr_unit_sum", pqr_res <= tols.ortho, pqr_res, tols.ortho});
    const double area_res =
        std::abs(s.polygon.area() - (dims.a * dims.b * s.pqr[2] + dims.b * dims.c * s.pqr[0] +
                                     dims.c * dims.a * s.pqr[1]));
    rep.checks.push_back({"area_edge_identity", area_res <= tols.geom, area_res, tols.geom});

    if (!flags.svg_path.empty()) {
        SvgWriter svg;
        svg.add_polygon(s.polygon.v, "#1f3a5f", "none", 0.0);
        if (!svg.save(flags.svg_path)) {
            std::cerr << "error: cannot write " << flags.svg_path << "\n";
            return exit_bad_input;
        }
    }
    const int rc = emit_report(rep, flags.json_path);
    std::fprintf(stderr, "shadow: %s, area %.12g (%.3f s)\n",
                 s.kind == ShadowKind::hexagon ? "hexagon" : "rectangle", s.polygon.area(),
                 watch.seconds());
    return rc;
}

int cmd_passage(const CommonFlags& flags) {
    const Stopwatch watch;
    const Tolerances tols = make_tolerances(flags.tol);
    const BoxDims dims = parse_dims(flags.dims_text);
    const Vec3 dir = parse_dir(flags.dir_text);

    const PassageSpec spec = build_passage(dims, dir, flags.lambda, tols);
    const Shadow s = project_box(dims, orientation_from_direction(spec.direction, tols), tols);

    RunReport rep;
    rep.command = "passage";
    rep.inputs["dims"] = jsonio::from_dims(dims);
    rep.inputs["dir"] = jsonio::from_vec3(dir);
    rep.inputs["lambda"] = flags.lambda;
    rep.inputs["tol"] = tols.geom;
    rep.outputs = jsonio::from_passage(spec);
    ordered_json shadow_verts = ordered_json::array();
    for (const Vec2& v : s.polygon.v) shadow_verts.push_back(jsonio::from_vec2(v));
    rep.outputs["shadow_vertices"] = shadow_verts;

    const double clearance = rect_clearance(s.polygon, spec.cross_section);
    rep.checks.push_back({"cross_section_strictly_inside", clearance > 0.0, clearance, 0.0});
    rep.checks.push_back(
        {"clearance_recorded", std::abs(clearance - spec.clearance) <= tols.geom,
         std::abs(clearance - spec.clearance), tols.geom});

    if (!flags.svg_path.empty()) {
        SvgWriter svg;
        svg.add_polygon(s.polygon.v, "#1f3a5f", "none", 0.0);
        svg.add_rect(spec.cross_section, "#b33939", "#b33939", 0.3);
        RectPlacement ring = spec.cross_section;
        ring.width += 2.0 * spec.clearance;
        ring.height += 2.0 * spec.clearance;
        svg.add_rect(ring, "#b33939", "none", 0.0, "0.02 0.02");
        if (!svg.save(flags.svg_path)) {
            std::cerr << "error: cannot write " << flags.svg_path << "\n";
            return exit_bad_input;
        }
    }
    const int rc = emit_report(rep, flags.json_path);
    std::fprintf(stderr, "passage: lambda %.12g, clearance %.3e (%.3f s)\n", flags.lambda,
                 spec.clearance, watch.seconds());
    return rc;
}

int cmd_nieuwland(const CommonFlags& flags) {
    const Stopwatch watch;
    const Tolerances tols = make_tolerances(flags.tol);
    const BoxDims dims = parse_dims(flags.dims_text);

    OptConfig cfg;
    if (flags.trials > 0) cfg.sphere_samples = static_cast<int>(flags.trials);
    cfg.seed = flags.seed;
    const OptResult result = nieuwland_constant(dims, cfg, 0, tols);

    RunReport rep;
    rep.command = "nieuwland";
    rep.inputs["dims"] = jsonio::from_dims(dims);
    rep.inputs["seed"] = flags.seed;
    rep.inputs["sphere_samples"] = cfg.sphere_samples;
    rep.inputs["angle_samples"] = cfg.angle_samples;
    rep.inputs["refine_iters"] = cfg.refine_iters;
    rep.inputs["refine_shrink"] = cfg.refine_shrink;
    rep.inputs["tol"] = tols.geom;
    rep.outputs = jsonio::from_opt_result(result);

    rep.checks.push_back(
        {"placement_reverifies", result.reverified, result.reverified ? 0.0 : 1.0, 0.0});
    rep.checks.push_back({"face_lower_bound", result.lambda_star >= 1.0 - 1e-9,
                          result.lambda_star, 1e-9});

    if (!flags.svg_path.empty()) {
        const Shadow s =
            project_box(dims, orientation_from_direction(result.direction, tols), tols);
        SvgWriter svg;
        svg.add_polygon(s.polygon.v, "#1f3a5f", "none", 0.0);
        svg.add_rect(result.placement, "#b33939", "#b33939", 0.3);
        if (!svg.save(flags.svg_path)) {
            std::cerr << "error: cannot write " << flags.svg_path << "\n";
            return exit_bad_input;
        }
    }
    const int rc = emit_report(rep, flags.json_path);
    std::fprintf(stderr, "nieuwland: lambda_star %.12g after %ld evaluations (%.3f s)\n",
                 result.lambda_star, result.evaluations, watch.seconds());
    return rc;
}

int cmd_verify(const CommonFlags& flags) {
    const Stopwatch watch;
    const Tolerances tols = make_tolerances(flags.tol);

    std::vector<std::string> suites;
    if (flags.suite == "all") {
        suites = verify_suite_names();
    } else {
        bool known = false;
        for (const std::string& n : verify_suite_names()) known = known || n == flags.suite;
        if (!known) raise(Errc::degenerate_input, "unknown suite: " + flags.suite);
        suites.push_back(flags.suite);
    }

    RunReport rep;
    rep.command = "verify";
    rep.inputs["suite"] = flags.suite;
    rep.inputs["trials"] = flags.trials;
    rep.inputs["seed"] = flags.seed;
    rep.inputs["tol"] = tols.geom;

    bool all_pass = true;
    ordered_json suite_json = ordered_json::array();
    for (const std::string& name : suites) {
        const SuiteResult res = run_verify_suite(name, flags.trials, flags.seed, 0, tols);
        all_pass = all_pass && res.pass;

        ordered_json sj;
        sj["suite"] = res.suite;
        sj["trials"] = res.trials;
        sj["seed"] = res.seed;
        sj["pass"] = res.pass;
        ordered_json checks = ordered_json::array();
        for (const CheckResult& c : res.checks) {
            ordered_json cj;
            cj["name"] = c.name;
            cj["trials"] = c.trials;
            cj["failures"] = c.failures;
            cj["worst"] = c.worst;
            cj["tolerance"] = c.tolerance;
            cj["pass"] = c.pass;
            if (!c.note.empty()) cj["note"] = c.note;
            checks.push_back(cj);
            rep.checks.push_back({res.suite + "." + c.name, c.pass, c.worst, c.tolerance});

            std::fprintf(stderr, "  [%s] %s.%s: %ld/%ld ok, worst %.3e (tol %.1e)%s%s\n",
                         c.pass ? "pass" : "FAIL", res.suite.c_str(), c.name.c_str(),
                         c.trials - c.failures, c.trials, c.worst, c.tolerance,
                         c.note.empty() ? "" : " ", c.note.c_str());
            if (!c.pass && c.first_fail_trial >= 0)
                std::fprintf(stderr, "        reproduce: trial %ld, per-trial seed %llu\n",
                             c.first_fail_trial,
                             static_cast<unsigned long long>(
                                 mix_seed(flags.seed, c.first_fail_trial)));
        }
        sj["checks"] = checks;
        suite_json.push_back(sj);
    }
    rep.outputs["suites"] = suite_json;
    rep.outputs["pass"] = all_pass;

    const int rc = emit_report(rep, flags.json_path);
    std::fprintf(stderr, "verify: %s (%.3f s)\n", all_pass ? "all checks passed" : "FAILURES",
                 watch.seconds());
    if (rc != exit_ok) return rc;
    return all_pass ? exit_ok : exit_verify_failed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rupert passages and Nieuwland constants for rectangular boxes"};
    app.require_subcommand(1);

    CommonFlags flags;

    CLI::App* shadow = app.add_subcommand("shadow", "project a box onto the plane");
    shadow->add_option("--dims", flags.dims_text, "box sides A,B,C")->required();
    shadow->add_option("--dir", flags.dir_text, "projection direction X,Y,Z")->required();
    shadow->add_option("--json", flags.json_path, "write the JSON report here");
    shadow->add_option("--svg", flags.svg_path, "write an SVG figure here");
    shadow->add_option("--tol", flags.tol, "geometric tolerance override");

    CLI::App* passage = app.add_subcommand("passage", "construct a straight tunnel");
    passage->add_option("--dims", flags.dims_text, "box sides A,B,C")->required();
    passage->add_option("--dir", flags.dir_text, "tunnel direction X,Y,Z")->required();
    passage->add_option("--lambda", flags.lambda, "homothety factor")->default_val(1.0);
    passage->add_option("--json", flags.json_path, "write the JSON report here");
    passage->add_option("--svg", flags.svg_path, "write an SVG overlay here");
    passage->add_option("--tol", flags.tol, "geometric tolerance override");

    CLI::App* nieuwland = app.add_subcommand("nieuwland", "optimize the passage constant");
    nieuwland->add_option("--dims", flags.dims_text, "box sides A,B,C")->required();
    nieuwland->add_option("--seed", flags.seed, "search seed")->default_val(0);
    nieuwland->add_option("--trials", flags.trials, "direction samples (default 4000)");
    nieuwland->add_option("--json", flags.json_path, "write the JSON report here");
    nieuwland->add_option("--svg", flags.svg_path, "write an SVG of the best placement");
    nieuwland->add_option("--tol", flags.tol, "geometric tolerance override");

    CLI::App* verify = app.add_subcommand("verify", "run randomized property suites");
    verify
        ->add_option("--suite", flags.suite,
                     "lemma1 | lemma3 | lemma4 | theorem1 | theorem2 | all")
        ->default_val("all");
    verify->add_option("--trials", flags.trials, "trial count (0 = suite default)");
    verify->add_option("--seed", flags.seed, "base seed")->default_val(0);
    verify->add_option("--json", flags.json_path, "write the JSON report here");
    verify->add_option("--tol", flags.tol, "geometric tolerance override");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return exit_bad_input;
    }

    try {
        if (shadow->parsed()) return cmd_shadow(flags);
        if (passage->parsed()) return cmd_passage(flags);
        if (nieuwland->parsed()) return cmd_nieuwland(flags);
        if (verify->parsed()) return cmd_verify(flags);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return error_exit_code(e);
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return exit_internal;
    }
    return exit_bad_input;
}
