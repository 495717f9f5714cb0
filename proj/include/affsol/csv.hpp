#pragma once

// CSV exchange formats. Doubles are printed with %.17g so that values
// round-trip exactly and output is byte-deterministic; '.' decimal point,
// no locale.

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "affsol/curve.hpp"
#include "affsol/errors.hpp"
#include "affsol/geometry.hpp"
#include "affsol/phase.hpp"

namespace affsol {

inline std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Curve CSV: header "u,x,y", one sample per row.
inline void write_curve_csv(std::ostream& os, const DiscreteCurve& curve) {
    os << "u,x,y\n";
    for (std::size_t i = 0; i < curve.size(); ++i)
        os << fmt_double(curve.params[i]) << ',' << fmt_double(curve.points[i].x) << ','
           << fmt_double(curve.points[i].y) << '\n';
}

inline void write_curve_csv(const std::string& path, const DiscreteCurve& curve) {
    std::ofstream os(path);
    if (!os) throw Error("cannot open for writing: " + path);
    write_curve_csv(os, curve);
}

namespace detail {

inline std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
}

inline double parse_double(const std::string& s, int line_no) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line_no) + ": bad number '" + s + "'");
    }
    while (used < s.size() && std::isspace(static_cast<unsigned char>(s[used]))) ++used;
    if (used != s.size())
        throw ParseError("line " + std::to_string(line_no) + ": bad number '" + s + "'");
    return v;
}

}  // namespace detail

inline DiscreteCurve read_curve_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw ParseError("empty curve CSV");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "u,x,y") throw ParseError("curve CSV must start with header 'u,x,y'");
    DiscreteCurve curve;
    int line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cells = detail::split_csv_row(line);
        if (cells.size() != 3)
            throw ParseError("line " + std::to_string(line_no) + ": expected 3 fields");
        curve.params.push_back(detail::parse_double(cells[0], line_no));
        const double x = detail::parse_double(cells[1], line_no);
        const double y = detail::parse_double(cells[2], line_no);
        curve.points.push_back({x, y});
    }
    curve.validate();
    return curve;
}

inline DiscreteCurve read_curve_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw Error("cannot open: " + path);
    return read_curve_csv(is);
}

/// Evolve CSV: per-time rows "t,a11,a12,a21,a22,hx,hy".
inline void write_evolve_header(std::ostream& os) { os << "t,a11,a12,a21,a22,hx,hy\n"; }

inline void write_evolve_row(std::ostream& os, double t, const Mat2& a, Vec2 h) {
    os << fmt_double(t) << ',' << fmt_double(a.a11) << ',' << fmt_double(a.a12) << ','
       << fmt_double(a.a21) << ',' << fmt_double(a.a22) << ',' << fmt_double(h.x) << ','
       << fmt_double(h.y) << '\n';
}

/// Portrait CSV: "x,u,v,event" rows; states carry an empty event field,
/// refined events carry the crossing label.
inline void write_portrait_csv(std::ostream& os,
                               const std::vector<TrajectorySegment>& trajectories) {
    os << "x,u,v,event\n";
    for (const TrajectorySegment& traj : trajectories) {
        std::size_t next_event = 0;
        for (std::size_t i = 0; i < traj.states.size(); ++i) {
            const PhaseState& s = traj.states[i];
            while (next_event < traj.events.size() &&
                   (traj.events[next_event].x - s.x) * traj.direction < 0.0) {
                const PhaseEvent& e = traj.events[next_event++];
                os << fmt_double(e.x) << ',' << fmt_double(e.uv.x) << ','
                   << fmt_double(e.uv.y) << ',' << event_kind_name(e.kind) << '\n';
            }
            os << fmt_double(s.x) << ',' << fmt_double(s.uv.x) << ','
               << fmt_double(s.uv.y) << ",\n";
        }
    }
}

}  // namespace affsol
