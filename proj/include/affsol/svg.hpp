#pragma once

// Hand-emitted static SVG: polyline paths in a fixed viewBox, no rasterizing
// dependencies. Coordinates are mapped y-up into the SVG y-down frame.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "affsol/curve.hpp"
#include "affsol/geometry.hpp"
#include "affsol/phase.hpp"

namespace affsol {

class SvgCanvas {
  public:
    SvgCanvas(double xmin, double xmax, double ymin, double ymax, int width = 720,
              int height = 540)
        : xmin_(xmin), xmax_(xmax), ymin_(ymin), ymax_(ymax), w_(width), h_(height) {
        body_ += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    }

    void polyline(const std::vector<Vec2>& pts, const std::string& color,
                  double stroke = 1.2) {
        if (pts.size() < 2) return;
        std::string d = "M";
        for (std::size_t i = 0; i < pts.size(); ++i) {
            d += ' ' + num(px(pts[i].x)) + ' ' + num(py(pts[i].y));
            if (i == 0) d += " L";
        }
        body_ += "<path d=\"" + d + "\" fill=\"none\" stroke=\"" + color +
                 "\" stroke-width=\"" + num(stroke) + "\"/>\n";
    }

    void line(Vec2 a, Vec2 b, const std::string& color, double stroke = 0.8,
              bool dashed = false) {
        body_ += "<line x1=\"" + num(px(a.x)) + "\" y1=\"" + num(py(a.y)) + "\" x2=\"" +
                 num(px(b.x)) + "\" y2=\"" + num(py(b.y)) + "\" stroke=\"" + color +
                 "\" stroke-width=\"" + num(stroke) + "\"" +
                 (dashed ? " stroke-dasharray=\"5,4\"" : "") + "/>\n";
    }

    void dot(Vec2 p, const std::string& color, double r = 2.5) {
        body_ += "<circle cx=\"" + num(px(p.x)) + "\" cy=\"" + num(py(p.y)) + "\" r=\"" +
                 num(r) + "\" fill=\"" + color + "\"/>\n";
    }

    void text(Vec2 p, const std::string& s) {
        body_ += "<text x=\"" + num(px(p.x)) + "\" y=\"" + num(py(p.y)) +
                 "\" font-size=\"11\" font-family=\"sans-serif\">" + s + "</text>\n";
    }

    std::string str() const {
        return "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " +
               std::to_string(w_) + ' ' + std::to_string(h_) + "\">\n" + body_ +
               "</svg>\n";
    }

    void write(const std::string& path) const {
        std::ofstream os(path);
        if (!os) throw Error("cannot open for writing: " + path);
        os << str();
    }

  private:
    static std::string num(double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6g", v);
        return buf;
    }
    double px(double x) const { return (x - xmin_) / (xmax_ - xmin_) * (w_ - 20) + 10; }
    double py(double y) const { return (ymax_ - y) / (ymax_ - ymin_) * (h_ - 20) + 10; }

    double xmin_, xmax_, ymin_, ymax_;
    int w_, h_;
    std::string body_;
};

namespace detail {

struct BBox {
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    void grow(Vec2 p) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    void pad() {
        const double dx = std::max(1e-6, (xmax - xmin) * 0.05);
        const double dy = std::max(1e-6, (ymax - ymin) * 0.05);
        xmin -= dx;
        xmax += dx;
        ymin -= dy;
        ymax += dy;
    }
};

}  // namespace detail

/// Curve plot with coordinate axes.
inline std::string svg_curve(const DiscreteCurve& curve) {
    detail::BBox bb;
    for (const Vec2& p : curve.points) bb.grow(p);
    bb.grow({0.0, 0.0});
    bb.pad();
    SvgCanvas canvas(bb.xmin, bb.xmax, bb.ymin, bb.ymax);
    canvas.line({bb.xmin, 0.0}, {bb.xmax, 0.0}, "#bbbbbb");
    canvas.line({0.0, bb.ymin}, {0.0, bb.ymax}, "#bbbbbb");
    if (curve.seam && *curve.seam > 0 && *curve.seam < curve.size()) {
        std::vector<Vec2> a(curve.points.begin(),
                            curve.points.begin() + static_cast<long>(*curve.seam));
        std::vector<Vec2> b(curve.points.begin() + static_cast<long>(*curve.seam),
                            curve.points.end());
        canvas.polyline(a, "#0b66c3");
        canvas.polyline(b, "#c34a0b");
    } else {
        canvas.polyline(curve.points, "#0b66c3");
    }
    return canvas.str();
}

/// Phase portrait: trajectories, the nullclines v = 0 and u +- v = 0, event
/// markers.
inline std::string svg_portrait(const std::vector<TrajectorySegment>& trajectories,
                                double extent = 0.0) {
    detail::BBox bb;
    for (const auto& t : trajectories)
        for (const auto& s : t.states) bb.grow(s.uv);
    if (extent > 0.0) {
        bb.grow({-extent, -extent});
        bb.grow({extent, extent});
    }
    if (trajectories.empty() && extent == 0.0) {
        bb.grow({-1.0, -1.0});
        bb.grow({1.0, 1.0});
    }
    bb.pad();
    SvgCanvas canvas(bb.xmin, bb.xmax, bb.ymin, bb.ymax, 640, 640);
    canvas.line({bb.xmin, 0.0}, {bb.xmax, 0.0}, "#999999");          // v = 0
    canvas.line({0.0, bb.ymin}, {0.0, bb.ymax}, "#999999");          // u = 0
    const double m = std::max({std::abs(bb.xmin), std::abs(bb.xmax),
                               std::abs(bb.ymin), std::abs(bb.ymax)});
    canvas.line({-m, m}, {m, -m}, "#cccccc", 0.8, true);             // u + v = 0
    canvas.line({-m, -m}, {m, m}, "#cccccc", 0.8, true);             // u - v = 0
    static const char* palette[] = {"#0b66c3", "#c34a0b", "#207520",
                                    "#7a1fa2", "#876543", "#b02458"};
    int idx = 0;
    for (const auto& t : trajectories) {
        std::vector<Vec2> pts;
        pts.reserve(t.states.size());
        for (const auto& s : t.states) pts.push_back(s.uv);
        canvas.polyline(pts, palette[idx++ % 6]);
        for (const auto& e : t.events) canvas.dot(e.uv, "#333333", 1.6);
    }
    return canvas.str();
}

}  // namespace affsol
