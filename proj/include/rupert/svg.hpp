#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "rupert/polygon.hpp"
#include "rupert/vec.hpp"

namespace rupert {

// Minimal SVG 1.1 writer for computed planar geometry.  Raw coordinates go
// into the file unchanged (a scale(1,-1) group handles the y-flip), so the
// numbers match the JSON output digit for digit.
class SvgWriter {
public:
    void add_polygon(const std::vector<Vec2>& pts, const std::string& stroke,
                     const std::string& fill, double fill_opacity,
                     const std::string& dash = "") {
        for (const Vec2& p : pts) extend(p);
        std::ostringstream el;
        el << "<polygon points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i) el << ' ';
            el << num(pts[i].x) << ',' << num(pts[i].y);
        }
        el << "\" stroke=\"" << stroke << "\" fill=\"" << fill << "\"";
        if (fill != "none") el << " fill-opacity=\"" << fill_opacity << "\"";
        if (!dash.empty()) el << " stroke-dasharray=\"" << dash << "\"";
        el << " vector-effect=\"non-scaling-stroke\"/>";
        elements_.push_back(el.str());
    }

    void add_rect(const RectPlacement& r, const std::string& stroke, const std::string& fill,
                  double fill_opacity, const std::string& dash = "") {
        const auto c = r.corners();
        add_polygon({c[0], c[1], c[2], c[3]}, stroke, fill, fill_opacity, dash);
    }

    std::string str() const {
        if (elements_.empty() || xmax_ < xmin_) return "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\"/>\n";
        const double margin = 0.05 * std::max(xmax_ - xmin_, ymax_ - ymin_);
        const double x0 = xmin_ - margin;
        const double y0 = -(ymax_ + margin);  // y flipped by the group transform
        const double w = (xmax_ - xmin_) + 2 * margin;
        const double h = (ymax_ - ymin_) + 2 * margin;
        std::ostringstream out;
        out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
            << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
            << "viewBox=\"" << num(x0) << ' ' << num(y0) << ' ' << num(w) << ' ' << num(h)
            << "\" width=\"640\" height=\"640\">\n"
            << "<g transform=\"scale(1,-1)\" stroke-width=\"" << num(0.004 * std::max(w, h))
            << "\">\n";
        for (const std::string& el : elements_) out << el << "\n";
        out << "</g>\n</svg>\n";
        return out.str();
    }

    bool save(const std::string& path) const {
        std::ofstream f(path, std::ios::binary);
        if (!f) return false;
        f << str();
        return static_cast<bool>(f);
    }

private:
    static std::string num(double v) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return buf;
    }

    void extend(Vec2 p) {
        xmin_ = std::min(xmin_, p.x);
        xmax_ = std::max(xmax_, p.x);
        ymin_ = std::min(ymin_, p.y);
        ymax_ = std::max(ymax_, p.y);
    }

    std::vector<std::string> elements_;
    double xmin_ = 1e300, xmax_ = -1e300, ymin_ = 1e300, ymax_ = -1e300;
};

} // namespace rupert
