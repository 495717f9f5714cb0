#pragma once

// Generators for the degenerate-case solution families: closed forms
// (parabolas, hyperbolas, quintics, the parabolic scooper), quadrature
// families with de-singularized endpoints (single-direction expansion and
// contraction graphs, the periodic wave), phase-plane graphs for the
// translation-mixed cases, and a universal intrinsic integrator that handles
// every soliton datum, vertical tangents included.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "affsol/classify.hpp"
#include "affsol/curve.hpp"
#include "affsol/errors.hpp"
#include "affsol/phase.hpp"
#include "affsol/quadrature.hpp"
#include "affsol/rk45.hpp"
#include "affsol/soliton.hpp"

namespace affsol {

enum class FamilyVariant {
    line_x,            // x = C
    line_y,            // y = C
    parabola,          // y = x^2/2 + C1 x + C2
    hyperbola_pos,     // (x - C) y = +sqrt(2)
    hyperbola_neg,     // (x - C) y = -sqrt(2)
    convex_min,        // convex graph, one minimum (C1 > 0)
    concave_max,       // concave graph, one maximum (C1 > 0)
    inflection_inc,    // increasing graph, one inflection (C1 > 0)
    inflection_dec,    // decreasing graph, one inflection (C1 > 0)
    periodic,          // one period of the periodic wave (C1 > 0)
    quintic,           // x = y^5/20 + C1 y + C2
    scooper_parabola,  // x = y^2/2 - y + C
    scooper,           // two-branch parametric scooper
    phase_graph,       // graph of the trajectory through (C1, C2)
    separatrix_graph,  // the distinguished origin-bound trajectory graph
};

inline const char* family_variant_name(FamilyVariant v) {
    switch (v) {
        case FamilyVariant::line_x: return "line-x";
        case FamilyVariant::line_y: return "line-y";
        case FamilyVariant::parabola: return "parabola";
        case FamilyVariant::hyperbola_pos: return "hyperbola+";
        case FamilyVariant::hyperbola_neg: return "hyperbola-";
        case FamilyVariant::convex_min: return "convex-min";
        case FamilyVariant::concave_max: return "concave-max";
        case FamilyVariant::inflection_inc: return "inflection-inc";
        case FamilyVariant::inflection_dec: return "inflection-dec";
        case FamilyVariant::periodic: return "periodic";
        case FamilyVariant::quintic: return "quintic";
        case FamilyVariant::scooper_parabola: return "scooper-parabola";
        case FamilyVariant::scooper: return "scooper";
        case FamilyVariant::phase_graph: return "phase-graph";
        case FamilyVariant::separatrix_graph: return "separatrix";
    }
    return "?";
}

struct Window {
    double lo = 0.0;
    double hi = 0.0;
};

struct CurveFamily {
    CaseTag tag;
    FamilyVariant variant;
    double c1 = 0.0;
    double c2 = 0.0;
    double c = 0.0;  ///< the single constant of one-constant variants
    Window window;
    std::size_t samples = 1024;
};

/// Residual level each family is guaranteed to verify below: closed forms at
/// 1e-8, quadrature/ODE-built families at 1e-5.
inline double family_tolerance(const CurveFamily& fam) {
    switch (fam.variant) {
        case FamilyVariant::line_x:
        case FamilyVariant::line_y:
        case FamilyVariant::parabola:
        case FamilyVariant::hyperbola_pos:
        case FamilyVariant::hyperbola_neg:
        case FamilyVariant::quintic:
        case FamilyVariant::scooper_parabola: return 1e-8;
        default: return 1e-5;
    }
}

namespace detail {

inline void require(bool ok, const char* msg) {
    if (!ok) throw InvalidConstants(msg);
}

inline void check_family(const CurveFamily& fam) {
    using V = FamilyVariant;
    const CaseTag t = fam.tag;
    auto tag_in = [&](std::initializer_list<CaseTag> tags) {
        return std::find(tags.begin(), tags.end(), t) != tags.end();
    };
    switch (fam.variant) {
        case V::line_x: require(tag_in({CaseTag::deg_1a, CaseTag::deg_1b, CaseTag::deg_1d}),
                                "line-x not a solution of this case");
            break;
        case V::line_y:
            require(tag_in({CaseTag::deg_1b, CaseTag::deg_1c, CaseTag::deg_1d,
                            CaseTag::deg_1e, CaseTag::deg_1f}),
                    "line-y not a solution of this case");
            require(t == CaseTag::deg_1f || fam.c == 0.0,
                    "only y = 0 solves the translation-mixed cases");
            break;
        case V::parabola: require(t == CaseTag::deg_1a, "parabola family is case 1-a"); break;
        case V::hyperbola_pos:
        case V::hyperbola_neg:
            require(t == CaseTag::deg_1b, "hyperbola family is case 1-b");
            break;
        case V::convex_min:
        case V::concave_max:
        case V::inflection_inc:
        case V::inflection_dec:
            require(t == CaseTag::deg_1b, "graph family is case 1-b");
            require(fam.c1 > 0.0, "family needs C1 > 0");
            break;
        case V::periodic:
            require(t == CaseTag::deg_1d, "periodic family is case 1-d");
            require(fam.c1 > 0.0, "periodic family needs C1 > 0");
            break;
        case V::quintic: require(t == CaseTag::deg_1f, "quintic family is case 1-f"); break;
        case V::scooper_parabola:
        case V::scooper: require(t == CaseTag::deg_1g, "scooper family is case 1-g"); break;
        case V::phase_graph:
            require(tag_in({CaseTag::deg_1c, CaseTag::deg_1e}),
                    "phase-graph family is case 1-c or 1-e");
            break;
        case V::separatrix_graph:
            require(t == CaseTag::deg_1c, "separatrix family is case 1-c");
            break;
    }
}

// Cumulative integrals of a smooth integrand over a grid, one adaptive
// quadrature per cell.
template <class F>
std::vector<double> cumulative(F&& f, const std::vector<double>& grid,
                               const QuadOptions& opt) {
    std::vector<double> out(grid.size(), 0.0);
    for (std::size_t i = 1; i < grid.size(); ++i)
        out[i] = out[i - 1] + integrate(f, grid[i - 1], grid[i], opt);
    return out;
}

inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
    return g;
}

// Geometric grid from lo to hi (both positive), clustering near lo.
inline std::vector<double> geomspace(double lo, double hi, std::size_t n) {
    std::vector<double> g(n);
    const double r = std::log(hi / lo);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = lo * std::exp(r * static_cast<double>(i) / (n - 1));
    return g;
}

}  // namespace detail

// --- Scooper closed forms ----------------------------------------------------

/// y_+(w) = int_w^inf dxi/(xi^3 - 1) for w > 1, in a cancellation-free form
/// for large w.
inline double scooper_y_plus(double w) {
    const double s3 = std::numbers::sqrt3;
    if (w > 2.0)
        return -std::log1p(-1.0 / w) / 3.0 + std::log1p((w + 1.0) / (w * w)) / 6.0 -
               std::atan(s3 / (2.0 * w + 1.0)) / s3;
    return -std::log(w - 1.0) / 3.0 + std::log(1.0 + w + w * w) / 6.0 +
           (std::atan((2.0 * w + 1.0) / s3) - std::numbers::pi / 2.0) / s3;
}

/// y_-(w) = int_-inf^w dxi/(1 - xi^3) for w < 1.
inline double scooper_y_minus(double w) {
    const double s3 = std::numbers::sqrt3;
    if (w < -2.0) {
        const double aw = -w;
        return -std::log1p(1.0 / aw) / 3.0 + std::log1p((w + 1.0) / (w * w)) / 6.0 +
               std::atan(s3 / (-2.0 * w - 1.0)) / s3;
    }
    return -std::log(1.0 - w) / 3.0 + std::log(1.0 + w + w * w) / 6.0 +
           (std::atan((2.0 * w + 1.0) / s3) + std::numbers::pi / 2.0) / s3;
}

/// x(w) on either branch. The improper integral of the parametrization
/// telescopes: d/dw y_pm = -1/(w^3 - 1) on each branch, so
/// int y_pm/(xi^3 - 1) dxi over the tail equals y_pm(w)^2 / 2 exactly.
inline double scooper_x(double w, bool plus_branch, double c1, double c2) {
    const double s3 = std::numbers::sqrt3;
    const double yb = plus_branch ? scooper_y_plus(w) : scooper_y_minus(w);
    const double at = (2.0 / s3) * std::atan((2.0 * w + 1.0) / s3);
    const double corner = plus_branch ? -std::numbers::pi / s3 : std::numbers::pi / s3;
    return yb * yb / 2.0 + (c1 - 1.0) * yb + at + corner + c2;
}

inline Vec2 scooper_point(double w, bool plus_branch, double c1, double c2) {
    const double yb = plus_branch ? scooper_y_plus(w) : scooper_y_minus(w);
    return {scooper_x(w, plus_branch, c1, c2), yb + c1};
}

struct ScooperWindow {
    double margin = 0.02;  ///< keep |w - 1| >= margin (logarithmic pole)
    double w_cut = 1e4;    ///< |w| extent used for the seam-side sampling
};

/// Both scooper branches assembled into one curve, traversed from the w < 1
/// far end through the seam at w = +-infinity to the w > 1 far end. The seam
/// index marks the branch change.
inline DiscreteCurve scooper_branches(double c1, double c2, const ScooperWindow& win = {},
                                      std::size_t samples = 1200) {
    if (!(win.margin >= 1e-6))
        throw WindowTouchesPole("scooper_branches: window touches the w = 1 pole");
    if (!(win.w_cut > 3.0)) throw InvalidConstants("scooper_branches: w_cut too small");

    // Both branch parametrizations must meet at the same seam point in the
    // w -> +-infinity limit; evaluate essentially at the limit and refuse a
    // mismatch.
    const Vec2 seam_gap =
        scooper_point(1e8, true, c1, c2) - scooper_point(-1e8, false, c1, c2);
    if (seam_gap.norm() > 1e-5 * (1.0 + std::abs(c1) + std::abs(c2)))
        throw Error("scooper_branches: branch seam mismatch exceeds 1e-5");

    const std::size_t n_quarter = std::max<std::size_t>(samples / 4, 32);
    std::vector<Vec2> pts;
    pts.reserve(4 * n_quarter);

    // Branch w < 1: from near the pole down to w = -3 (cluster near the pole),
    // then out to -w_cut via sigma = 1/w. Junction points are emitted once.
    for (double d : detail::geomspace(win.margin, 4.0, n_quarter))
        pts.push_back(scooper_point(1.0 - d, false, c1, c2));
    {
        const auto sigmas = detail::linspace(-1.0 / 3.0, -1.0 / win.w_cut, n_quarter);
        for (std::size_t i = 1; i < sigmas.size(); ++i)
            pts.push_back(scooper_point(1.0 / sigmas[i], false, c1, c2));
    }
    const std::size_t seam_index = pts.size();
    // Branch w > 1: from +w_cut down to w = 3 via sigma, then into the pole.
    for (double sigma : detail::linspace(1.0 / win.w_cut, 1.0 / 3.0, n_quarter))
        pts.push_back(scooper_point(1.0 / sigma, true, c1, c2));
    {
        const auto grid = detail::geomspace(win.margin, 2.0, n_quarter);
        for (std::size_t i = grid.size() - 1; i-- > 0;)
            pts.push_back(scooper_point(1.0 + grid[i], true, c1, c2));
    }

    DiscreteCurve curve = with_chord_params(std::move(pts));
    curve.seam = seam_index;
    return curve;
}

// --- Intrinsic integration ---------------------------------------------------

struct IntrinsicStart {
    Vec2 position{};
    double heading = 0.0;  ///< tangent angle theta; tangent = (cos, sin)
};

struct IntrinsicOptions {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    double max_step = 0.02;
};

namespace detail {

// Arclength system X' = (cos th, sin th), th' = <B X + C, N>^3 with
// N = (-sin th, cos th); the cubed soliton equation read as curvature.
inline StateN<3> intrinsic_rhs(const SolitonData& data, const StateN<3>& s) {
    const double c = std::cos(s[2]), sn = std::sin(s[2]);
    const Vec2 pos{s[0], s[1]};
    const double lhs = dot(data.B * pos + data.C, Vec2{-sn, c});
    return {c, sn, lhs * lhs * lhs};
}

}  // namespace detail

/// Integrates the soliton equation intrinsically (by arclength and heading)
/// over s in [s_min, s_max] through the start state at s = 0. Works for any
/// finite datum; vertical tangents need no chart switch.
inline DiscreteCurve synthesize_intrinsic(const SolitonData& data, IntrinsicStart start,
                                          double s_min, double s_max,
                                          const IntrinsicOptions& opt = {}) {
    if (!(s_min <= 0.0 && 0.0 <= s_max && s_min < s_max))
        throw InvalidConstants("synthesize_intrinsic: need s_min <= 0 <= s_max");
    RkOptions rk;
    rk.rel_tol = opt.rel_tol;
    rk.abs_tol = opt.abs_tol;
    rk.max_step = opt.max_step;

    auto rhs = [&](double, const StateN<3>& s) { return detail::intrinsic_rhs(data, s); };
    const StateN<3> y0{start.position.x, start.position.y, start.heading};

    std::vector<double> params;
    std::vector<Vec2> points;
    if (s_min < 0.0) {
        std::vector<double> back_s;
        std::vector<Vec2> back_p;
        rk45_drive<3>(rhs, y0, 0.0, s_min, rk,
                      [&](double s, const StateN<3>& y, const StateN<3>&) {
                          back_s.push_back(s);
                          back_p.push_back({y[0], y[1]});
                          return RkFlow::continue_run;
                      });
        for (std::size_t i = back_s.size(); i-- > 1;) {  // drop duplicate s = 0
            params.push_back(back_s[i]);
            points.push_back(back_p[i]);
        }
    }
    rk45_drive<3>(rhs, y0, 0.0, s_max, rk,
                  [&](double s, const StateN<3>& y, const StateN<3>&) {
                      params.push_back(s);
                      points.push_back({y[0], y[1]});
                      return RkFlow::continue_run;
                  });
    DiscreteCurve curve;
    curve.params = std::move(params);
    curve.points = std::move(points);
    curve.chart = ChartTag::intrinsic;
    return curve;
}

// --- Period of the contraction wave ------------------------------------------

/// T = 4 int_0^{(2 C1)^(1/4)} (C1 - xi^4/2)^(-1/2) dxi by de-singularized
/// quadrature (square-root endpoint). Obeys T(C1) = C1^(-1/4) T(1).
inline double period_1d(double c1, double tol = 1e-11) {
    if (!(c1 > 0.0)) throw InvalidConstants("period_1d: need C1 > 0");
    const double y_top = std::pow(2.0 * c1, 0.25);
    QuadOptions q{tol, 0.0, 4000};
    // C1 - xi^4/2 = (Y^4 - xi^4)/2 = d (Y + xi)(Y^2 + xi^2)/2 with d = Y - xi.
    return 4.0 * integrate_singular_upper(
                     [&](double xi, double d) {
                         return 1.0 / std::sqrt(d * (y_top + xi) *
                                                (y_top * y_top + xi * xi) / 2.0);
                     },
                     0.0, y_top, 0.5, q);
}

/// The same period measured mechanically: the x-advance of the intrinsic
/// curve between two successive returns of the heading to zero (one full
/// max-to-max excursion of the wave).
inline double period_1d_intrinsic(double c1, double rk_tol = 1e-10) {
    if (!(c1 > 0.0)) throw InvalidConstants("period_1d_intrinsic: need C1 > 0");
    const double y_top = std::pow(2.0 * c1, 0.25);
    const SolitonData data = canonical_form({CaseTag::deg_1d, std::nullopt});

    RkOptions rk;
    rk.rel_tol = rk_tol;
    rk.abs_tol = 1e-13;
    rk.max_step = 0.05;
    auto rhs = [&](double, const StateN<3>& s) { return detail::intrinsic_rhs(data, s); };

    // Walk forward from the crest (theta = 0) and bisect the theta zero
    // crossings; the second crossing is the next crest, one period away.
    StateN<3> prev{0.0, y_top, 0.0};
    double prev_s = 0.0;
    int crossings = 0;
    double period = 0.0;
    const double span = 6.0 * period_1d(c1);  // generous arclength budget
    rk45_drive<3>(rhs, prev, 0.0, span, rk,
                  [&](double s, const StateN<3>& y, const StateN<3>&) {
                      if (s > prev_s && prev[2] * y[2] < 0.0) {
                          double a = prev_s, b = s;
                          StateN<3> ya = prev;
                          for (int it = 0; it < 60; ++it) {
                              const double mid = (a + b) / 2.0;
                              StateN<3> ym = rk45_to<3>(rhs, ya, a, mid, rk);
                              if (std::abs(ym[2]) < 1e-13) {
                                  ya = ym;
                                  a = mid;
                                  break;
                              }
                              if ((ym[2] < 0.0) == (ya[2] < 0.0)) {
                                  a = mid;
                                  ya = ym;
                              } else {
                                  b = mid;
                              }
                          }
                          ++crossings;
                          if (crossings == 2) {
                              period = ya[0];  // x-advance from the start crest
                              return RkFlow::stop;
                          }
                      }
                      prev = y;
                      prev_s = s;
                      return RkFlow::continue_run;
                  });
    if (crossings < 2)
        throw Error("period_1d_intrinsic: did not complete a full period");
    return period;
}

// --- Family synthesis ---------------------------------------------------------

namespace detail {

// Quadrature family of the single-direction expansion case, items (3)/(4):
// the graph with one extremum at (C2, a), a = (2 C1)^(1/4), parametrized by
// tau with y = a + tau^2 so the vertex is a regular point of the sampling.
inline DiscreteCurve expansion_extremum_graph(const CurveFamily& fam, bool concave) {
    const double a = std::pow(2.0 * fam.c1, 0.25);
    require(fam.window.hi > a * 1.0001, "window must extend beyond the extremum height");
    const double tau_max = std::sqrt(fam.window.hi - a);
    const std::size_t half = std::max<std::size_t>(fam.samples / 2, 24);

    // xi^4/2 - C1 = (xi^4 - a^4)/2 = tau^2 (xi + a)(xi^2 + a^2)/2 with
    // xi = a + tau^2, so the tau-integrand is smooth through the vertex.
    auto integrand = [&](double tau) {
        const double xi = a + tau * tau;
        return 2.0 / std::sqrt((xi + a) * (xi * xi + a * a) / 2.0);
    };
    const auto grid = linspace(0.0, tau_max, half);
    const auto offsets = cumulative(integrand, grid, QuadOptions{1e-11, 0.0, 4000});

    std::vector<double> params;
    std::vector<Vec2> points;
    params.reserve(2 * half - 1);
    points.reserve(2 * half - 1);
    for (std::size_t i = half; i-- > 1;) {
        params.push_back(fam.c2 - offsets[i]);
        points.push_back({fam.c2 - offsets[i], a + grid[i] * grid[i]});
    }
    for (std::size_t i = 0; i < half; ++i) {
        params.push_back(fam.c2 + offsets[i]);
        points.push_back({fam.c2 + offsets[i], a + grid[i] * grid[i]});
    }
    if (concave)
        for (auto& p : points) p.y = -p.y;
    DiscreteCurve curve;
    curve.params = std::move(params);
    curve.points = std::move(points);
    curve.chart = ChartTag::graph_over_x;
    return curve;
}

// One full period of the contraction wave: four quarter arcs, each
// parametrized by tau with y = +-(Y - tau^2).
inline DiscreteCurve periodic_wave(const CurveFamily& fam) {
    const double y_top = std::pow(2.0 * fam.c1, 0.25);
    const std::size_t quarter = std::max<std::size_t>(fam.samples / 4, 24);

    // C1 - xi^4/2 = tau^2 (Y + xi)(Y^2 + xi^2)/2 with xi = Y - tau^2.
    auto integrand = [&](double tau) {
        const double xi = y_top - tau * tau;
        return 2.0 / std::sqrt((y_top + xi) * (y_top * y_top + xi * xi) / 2.0);
    };
    const auto grid = linspace(0.0, std::sqrt(y_top), quarter);
    const auto arc = cumulative(integrand, grid, QuadOptions{1e-11, 0.0, 4000});
    const double quarter_period = arc.back();

    std::vector<Vec2> pts;
    pts.reserve(4 * quarter);
    // ascending: y 0 -> Y over x in [c2, c2 + T/4]
    for (std::size_t i = grid.size(); i-- > 0;)
        pts.push_back({fam.c2 + quarter_period - arc[i], y_top - grid[i] * grid[i]});
    // descending: y Y -> 0
    for (std::size_t i = 1; i < grid.size(); ++i)
        pts.push_back({fam.c2 + quarter_period + arc[i], y_top - grid[i] * grid[i]});
    // descending below the axis: y 0 -> -Y
    for (std::size_t i = grid.size() - 1; i-- > 0;)
        pts.push_back({fam.c2 + 3.0 * quarter_period - arc[i],
                       -(y_top - grid[i] * grid[i])});
    // ascending back to y = 0
    for (std::size_t i = 1; i < grid.size(); ++i)
        pts.push_back({fam.c2 + 3.0 * quarter_period + arc[i],
                       -(y_top - grid[i] * grid[i])});

    // Drop the samples sitting exactly on the inflection line y = 0 (the
    // quarter junctions): with the un-cubed residual, k^(1/3) there is the
    // cube root of finite-difference noise. Neighbors carry genuine
    // curvature and stay accurate.
    const double y_band = y_top / static_cast<double>(quarter);
    std::vector<Vec2> kept;
    kept.reserve(pts.size());
    for (const Vec2& p : pts)
        if (std::abs(p.y) > y_band) kept.push_back(p);

    std::vector<double> params;
    params.reserve(kept.size());
    for (const Vec2& p : kept) params.push_back(p.x);
    DiscreteCurve curve;
    curve.params = std::move(params);
    curve.points = std::move(kept);
    curve.chart = ChartTag::graph_over_x;
    return curve;
}

// Graph y = f(x) read off a pair of phase trajectories through (u0, v0)
// integrated backward to window.lo and forward to window.hi. States within a
// small band of the system's inflection line (u -+ v = 0, the curvature zero
// of the graph) are skipped; see periodic_wave.
inline DiscreteCurve trajectory_graph(PhaseSystemTag sys, Vec2 initial,
                                      const Window& win, std::size_t samples) {
    require(win.lo <= 0.0 && 0.0 <= win.hi && win.lo < win.hi,
            "phase-graph window must contain x = 0");
    PhaseIntegrateOptions opt;
    opt.rk.max_step =
        std::max(1e-3, (win.hi - win.lo) / std::max<std::size_t>(samples, 64));
    opt.events = {};
    StopCondition stop;
    stop.max_radius = 1e6;

    const double band = 1e-3;
    auto inflection = [&](Vec2 uv) {
        return sys == PhaseSystemTag::sys_1c ? uv.x - uv.y : uv.x + uv.y;
    };
    std::vector<double> params;
    std::vector<Vec2> points;
    auto push = [&](const PhaseState& s) {
        if (std::abs(inflection(s.uv)) < band) return;
        params.push_back(s.x);
        points.push_back({s.x, s.uv.x});
    };
    if (win.lo < 0.0) {
        stop.max_span = -win.lo;
        const TrajectorySegment back = integrate(sys, initial, -1, stop, opt);
        for (std::size_t i = back.states.size(); i-- > 1;) push(back.states[i]);
    }
    stop.max_span = win.hi;
    const TrajectorySegment fwd = integrate(sys, initial, +1, stop, opt);
    for (const PhaseState& s : fwd.states) push(s);
    DiscreteCurve curve;
    curve.params = std::move(params);
    curve.points = std::move(points);
    curve.chart = ChartTag::graph_over_x;
    return curve;
}

}  // namespace detail

/// Synthesizes one member of a solution family as a discrete curve that
/// verifies against the canonical datum of its case below family_tolerance().
inline DiscreteCurve synthesize(const CurveFamily& fam) {
    detail::check_family(fam);
    const double lo = fam.window.lo, hi = fam.window.hi;
    const std::size_t n = std::max<std::size_t>(fam.samples, 16);
    using V = FamilyVariant;
    switch (fam.variant) {
        case V::line_x: {
            detail::require(lo < hi, "empty window");
            auto curve = sample_graph_y([&](double) { return fam.c; }, lo, hi, n);
            return curve;
        }
        case V::line_y: {
            detail::require(lo < hi, "empty window");
            return sample_graph_x([&](double) { return fam.c; }, lo, hi, n);
        }
        case V::parabola: {
            detail::require(lo < hi, "empty window");
            return sample_graph_x(
                [&](double x) { return x * x / 2.0 + fam.c1 * x + fam.c2; }, lo, hi, n);
        }
        case V::hyperbola_pos:
        case V::hyperbola_neg: {
            detail::require(lo < hi && lo * hi > 0.0,
                            "hyperbola window must exclude the pole x = C");
            const double branch = fam.variant == V::hyperbola_pos ? 1.0 : -1.0;
            return sample_graph_x(
                [&](double x) { return branch * std::numbers::sqrt2 / (x - fam.c); },
                fam.c + lo, fam.c + hi, n);
        }
        case V::convex_min: return detail::expansion_extremum_graph(fam, false);
        case V::concave_max: return detail::expansion_extremum_graph(fam, true);
        case V::inflection_inc:
        case V::inflection_dec: {
            detail::require(lo < hi, "empty window");
            const double sign = fam.variant == V::inflection_inc ? 1.0 : -1.0;
            auto integrand = [&](double xi) {
                return 1.0 / std::sqrt(xi * xi * xi * xi / 2.0 + fam.c1);
            };
            const auto grid = detail::linspace(lo, hi, n);
            // anchor the inflection point x(0) = c2
            const double at_lo =
                lo >= 0.0 ? integrate(integrand, 0.0, lo, QuadOptions{1e-11, 0.0, 4000})
                          : -integrate(integrand, lo, 0.0, QuadOptions{1e-11, 0.0, 4000});
            auto offsets = detail::cumulative(integrand, grid, QuadOptions{1e-11, 0.0, 4000});
            const double band = (hi - lo) / (2.0 * static_cast<double>(n));
            DiscreteCurve curve;
            curve.chart = ChartTag::graph_over_y;
            for (std::size_t i = 0; i < grid.size(); ++i) {
                // keep samples off the exact curvature zero at y = 0
                if (std::abs(grid[i]) < band) continue;
                curve.params.push_back(grid[i]);
                curve.points.push_back(
                    {fam.c2 + sign * (at_lo + offsets[i]), grid[i]});
            }
            return curve;
        }
        case V::periodic: return detail::periodic_wave(fam);
        case V::quintic: {
            detail::require(lo < hi, "empty window");
            auto curve = sample_graph_y(
                [&](double y) {
                    return y * y * y * y * y / 20.0 + fam.c1 * y + fam.c2;
                },
                lo, hi, n);
            // keep samples off the curvature zero at y = 0 (see periodic_wave)
            const double band = (hi - lo) / static_cast<double>(n);
            DiscreteCurve kept;
            kept.chart = curve.chart;
            for (std::size_t i = 0; i < curve.size(); ++i) {
                if (std::abs(curve.params[i]) < band) continue;
                kept.params.push_back(curve.params[i]);
                kept.points.push_back(curve.points[i]);
            }
            return kept;
        }
        case V::scooper_parabola: {
            detail::require(lo < hi, "empty window");
            return sample_graph_y([&](double y) { return y * y / 2.0 - y + fam.c; }, lo,
                                  hi, n);
        }
        case V::scooper: {
            ScooperWindow win;
            if (lo > 0.0) win.margin = lo;
            if (hi > 3.0) win.w_cut = hi;
            return scooper_branches(fam.c1, fam.c2, win, n);
        }
        case V::phase_graph: {
            const PhaseSystemTag sys = fam.tag == CaseTag::deg_1c
                                           ? PhaseSystemTag::sys_1c
                                           : PhaseSystemTag::sys_1e;
            return detail::trajectory_graph(sys, {fam.c1, fam.c2}, fam.window, n);
        }
        case V::separatrix_graph: {
            const double eps = fam.c1 > 0.0 ? fam.c1 : 0.1;
            const SeparatrixResult sep = find_separatrix(eps, 1e-12);
            return detail::trajectory_graph(PhaseSystemTag::sys_1c, sep.initial,
                                            fam.window, n);
        }
    }
    throw InvalidConstants("synthesize: unknown variant");
}

}  // namespace affsol
