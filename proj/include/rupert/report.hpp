#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "rupert/nieuwland.hpp"
#include "rupert/passage.hpp"
#include "rupert/polygon.hpp"
#include "rupert/shadow.hpp"
#include "rupert/vec.hpp"

namespace rupert {

using ordered_json = nlohmann::ordered_json;

// One self-check line attached to a run report.
struct CheckLine {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double tolerance = 0.0;
};

struct RunReport {
    std::string command;
    ordered_json inputs;
    ordered_json outputs;
    std::vector<CheckLine> checks;
};

namespace jsonio {

inline ordered_json from_vec2(Vec2 v) { return ordered_json::array({v.x, v.y}); }
inline ordered_json from_vec3(Vec3 v) { return ordered_json::array({v.x, v.y, v.z}); }

inline ordered_json from_rect(const RectPlacement& r) {
    ordered_json j;
    j["center"] = from_vec2(r.center);
    j["angle"] = r.angle;
    j["width"] = r.width;
    j["height"] = r.height;
    return j;
}

inline ordered_json from_dims(const BoxDims& d) { return ordered_json::array({d.a, d.b, d.c}); }

inline ordered_json from_shadow(const Shadow& s) {
    ordered_json j;
    j["kind"] = s.kind == ShadowKind::hexagon ? "hexagon" : "rectangle";
    ordered_json verts = ordered_json::array();
    for (const Vec2& v : s.polygon.v) verts.push_back(from_vec2(v));
    j["vertices"] = verts;
    j["pqr"] = ordered_json::array({s.pqr[0], s.pqr[1], s.pqr[2]});
    j["vertical_extent"] = s.vertical_extent;
    j["area"] = s.polygon.area();
    j["vertex_origin"] = s.vertex_origin;
    return j;
}

inline ordered_json from_passage(const PassageSpec& p) {
    ordered_json j;
    j["direction"] = from_vec3(p.direction);
    j["cross_section"] = from_rect(p.cross_section);
    j["clearance"] = p.clearance;
    j["box"] = from_dims(p.box);
    return j;
}

inline ordered_json from_opt_result(const OptResult& r) {
    ordered_json j;
    j["lambda_star"] = r.lambda_star;
    j["direction"] = from_vec3(r.direction);
    j["angle"] = r.angle;
    j["placement"] = from_rect(r.placement);
    j["evaluations"] = r.evaluations;
    j["skipped_face_parallel"] = r.skipped_face_parallel;
    j["reverified"] = r.reverified;
    ordered_json hist = ordered_json::array();
    for (const Incumbent& inc : r.history) {
        ordered_json h;
        h["direction"] = from_vec3(inc.direction);
        h["lambda"] = inc.lambda;
        hist.push_back(h);
    }
    j["history"] = hist;
    return j;
}

inline ordered_json from_report(const RunReport& r) {
    ordered_json j;
    j["command"] = r.command;
    j["inputs"] = r.inputs;
    j["outputs"] = r.outputs;
    ordered_json checks = ordered_json::array();
    for (const CheckLine& c : r.checks) {
        ordered_json line;
        line["name"] = c.name;
        line["pass"] = c.pass;
        line["measured"] = c.measured;
        line["tolerance"] = c.tolerance;
        checks.push_back(line);
    }
    j["checks"] = checks;
    return j;
}

// Serializer with a fixed numeric format: floats are always written with
// 17 significant digits so reruns are byte-identical and values round-trip
// exactly.  Layout is otherwise nlohmann-style with 2-space indentation.
inline void dump_17g(const ordered_json& j, std::string& out, int depth) {
    auto pad = [&](int d) { out.append(static_cast<std::size_t>(2 * d), ' '); };
    switch (j.type()) {
        case nlohmann::detail::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                pad(depth + 1);
                out += ordered_json(it.key()).dump();
                out += ": ";
                dump_17g(it.value(), out, depth + 1);
            }
            out += "\n";
            pad(depth);
            out += "}";
            return;
        }
        case nlohmann::detail::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            bool first = true;
            for (const auto& el : j) {
                if (!first) out += ",\n";
                first = false;
                pad(depth + 1);
                dump_17g(el, out, depth + 1);
            }
            out += "\n";
            pad(depth);
            out += "]";
            return;
        }
        case nlohmann::detail::value_t::number_float: {
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.17g", j.get<double>());
            out += buf;
            return;
        }
        default:
            out += j.dump();
            return;
    }
}

inline std::string dump_17g(const ordered_json& j) {
    std::string out;
    dump_17g(j, out, 0);
    out += "\n";
    return out;
}

} // namespace jsonio

} // namespace rupert
