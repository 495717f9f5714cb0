#pragma once

// Discrete planar curves and their differential geometry. Frenet data comes
// from local polynomial differentiation (Fornberg weights) on a 7-point
// stencil: exact for polynomial curves through degree six, second order
// guaranteed on arbitrary non-uniform grids, one-sided near the ends.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "affsol/errors.hpp"
#include "affsol/geometry.hpp"

namespace affsol {

enum class ChartTag { graph_over_x, graph_over_y, intrinsic };

inline const char* chart_tag_name(ChartTag t) {
    switch (t) {
        case ChartTag::graph_over_x: return "graph-over-x";
        case ChartTag::graph_over_y: return "graph-over-y";
        default: return "intrinsic";
    }
}

/// Ordered point samples with strictly increasing parameter values; the
/// universal curve exchange type.
struct DiscreteCurve {
    std::vector<double> params;
    std::vector<Vec2> points;
    ChartTag chart = ChartTag::intrinsic;
    /// Index of the first sample after a branch seam, for curves assembled
    /// from two parametrization branches.
    std::optional<std::size_t> seam;

    std::size_t size() const { return params.size(); }

    void validate() const {
        if (params.size() != points.size())
            throw std::invalid_argument("DiscreteCurve: params/points size mismatch");
        if (params.size() < 5)
            throw std::invalid_argument("DiscreteCurve: need at least 5 samples");
        for (std::size_t i = 0; i < params.size(); ++i) {
            if (!std::isfinite(params[i]) || !points[i].finite())
                throw std::invalid_argument("DiscreteCurve: non-finite sample");
            if (i > 0) {
                if (!(params[i] > params[i - 1]))
                    throw std::invalid_argument("DiscreteCurve: params not increasing");
                if ((points[i] - points[i - 1]).norm_sq() == 0.0)
                    throw std::invalid_argument(
                        "DiscreteCurve: consecutive points coincide");
            }
        }
    }
};

/// Unit tangent/normal and signed curvature at one sample. The normal is the
/// counterclockwise rotation of the tangent, N = J T, and
/// k = det(X_u, X_uu) / |X_u|^3.
struct FrenetSample {
    Vec2 tangent;
    Vec2 normal;
    double curvature = 0.0;
    double speed = 0.0;  ///< |X_u|
};

struct FrenetOptions {
    double speed_tol = 1e-10;  ///< below this |X_u| the sample is degenerate
    int stencil = 9;           ///< points per stencil (odd, >= 3)
};

namespace detail {

// Fornberg's finite-difference weights for derivatives 0..2 at x0 on an
// arbitrary grid (Math. Comp. 51, 1988).
struct DiffWeights {
    std::vector<double> d1, d2;
};

inline DiffWeights fornberg_weights(double x0, const double* grid, int n) {
    constexpr int kMaxDeriv = 2;
    std::vector<std::array<double, kMaxDeriv + 1>> c(n, {0.0, 0.0, 0.0});
    double c1 = 1.0;
    double c4 = grid[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, kMaxDeriv);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = grid[i] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = grid[i] - grid[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k)
                c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    DiffWeights w;
    w.d1.resize(n);
    w.d2.resize(n);
    for (int i = 0; i < n; ++i) {
        w.d1[i] = c[i][1];
        w.d2[i] = c[i][2];
    }
    return w;
}

struct CurveDerivatives {
    Vec2 first;
    Vec2 second;
};

inline CurveDerivatives curve_derivatives(const DiscreteCurve& c, std::size_t i,
                                          int stencil) {
    const std::size_t n = c.size();
    const std::size_t w = std::min<std::size_t>(static_cast<std::size_t>(stencil), n);
    std::size_t lo = i >= w / 2 ? i - w / 2 : 0;
    lo = std::min(lo, n - w);
    const DiffWeights weights =
        fornberg_weights(c.params[i], c.params.data() + lo, static_cast<int>(w));
    // Sums are anchored at the evaluated point: the weights annihilate
    // constants only up to roundoff, and the cube root of that residue would
    // otherwise put a visible curvature floor under straight lines.
    CurveDerivatives d;
    const Vec2 anchor = c.points[i];
    for (std::size_t j = 0; j < w; ++j) {
        const Vec2 rel = c.points[lo + j] - anchor;
        d.first += weights.d1[j] * rel;
        d.second += weights.d2[j] * rel;
    }
    return d;
}

}  // namespace detail

/// Frenet data at sample i, or nullopt when the speed estimate is below
/// tolerance (the sample is then unusable, not an error).
inline std::optional<FrenetSample> try_frenet(const DiscreteCurve& curve, std::size_t i,
                                              const FrenetOptions& opt = {}) {
    const auto d = detail::curve_derivatives(curve, i, opt.stencil);
    const double speed = d.first.norm();
    if (!(speed > opt.speed_tol)) return std::nullopt;
    FrenetSample fs;
    fs.speed = speed;
    fs.tangent = d.first / speed;
    fs.normal = fs.tangent.perp();
    fs.curvature = d.first.cross(d.second) / (speed * speed * speed);
    return fs;
}

inline FrenetSample frenet(const DiscreteCurve& curve, std::size_t i,
                           const FrenetOptions& opt = {}) {
    auto fs = try_frenet(curve, i, opt);
    if (!fs)
        throw DegenerateSample("frenet: |X_u| below tolerance at sample " +
                               std::to_string(i));
    return *fs;
}

inline std::vector<FrenetSample> frenet_all(const DiscreteCurve& curve,
                                            const FrenetOptions& opt = {}) {
    std::vector<FrenetSample> out;
    out.reserve(curve.size());
    for (std::size_t i = 0; i < curve.size(); ++i) out.push_back(frenet(curve, i, opt));
    return out;
}

/// Pointwise affine image of a curve; parameters and chart tag are kept.
inline DiscreteCurve transform_curve(const DiscreteCurve& curve, const AffineMap& map,
                                     double tol = 1e-14) {
    const double d = map.linear.det();
    if (std::abs(d) <= tol * map.linear.frobenius() * map.linear.frobenius())
        throw SingularMap("transform_curve: singular linear part");
    DiscreteCurve out = curve;
    for (auto& p : out.points) p = map(p);
    return out;
}

/// Predicted curvature of the affine image A X + H at every sample, from the
/// transformation law k_hat = det(A) k / |A T|^3 (unit tangent T).
inline std::vector<double> transformed_curvature(const DiscreteCurve& curve,
                                                 const AffineMap& map,
                                                 const FrenetOptions& opt = {}) {
    const double det_a = map.linear.det();
    std::vector<double> out;
    out.reserve(curve.size());
    for (std::size_t i = 0; i < curve.size(); ++i) {
        const FrenetSample fs = frenet(curve, i, opt);
        const double stretch = (map.linear * fs.tangent).norm();
        out.push_back(det_a * fs.curvature / (stretch * stretch * stretch));
    }
    return out;
}

// --- Sampling helpers -------------------------------------------------------

namespace detail {
inline void check_sampling(double lo, double hi, std::size_t n) {
    if (!(lo < hi) || n < 2)
        throw std::invalid_argument("sampling needs lo < hi and n >= 2");
}
}  // namespace detail

template <class F>
DiscreteCurve sample_graph_x(F&& f, double lo, double hi, std::size_t n) {
    detail::check_sampling(lo, hi, n);
    DiscreteCurve c;
    c.chart = ChartTag::graph_over_x;
    c.params.reserve(n);
    c.points.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
        c.params.push_back(x);
        c.points.push_back({x, f(x)});
    }
    return c;
}

template <class F>
DiscreteCurve sample_graph_y(F&& g, double lo, double hi, std::size_t n) {
    detail::check_sampling(lo, hi, n);
    DiscreteCurve c;
    c.chart = ChartTag::graph_over_y;
    c.params.reserve(n);
    c.points.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double y = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
        c.params.push_back(y);
        c.points.push_back({g(y), y});
    }
    return c;
}

template <class Fx, class Fy>
DiscreteCurve sample_parametric(Fx&& fx, Fy&& fy, double lo, double hi, std::size_t n) {
    detail::check_sampling(lo, hi, n);
    DiscreteCurve c;
    c.chart = ChartTag::intrinsic;
    c.params.reserve(n);
    c.points.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
        c.params.push_back(t);
        c.points.push_back({fx(t), fy(t)});
    }
    return c;
}

/// Builds a curve over the given points with cumulative chord-length
/// parameters (used for assembled multi-branch curves).
inline DiscreteCurve with_chord_params(std::vector<Vec2> pts,
                                       ChartTag tag = ChartTag::intrinsic) {
    DiscreteCurve c;
    c.chart = tag;
    c.points = std::move(pts);
    c.params.resize(c.points.size());
    double s = 0.0;
    for (std::size_t i = 0; i < c.points.size(); ++i) {
        if (i > 0) s += (c.points[i] - c.points[i - 1]).norm();
        c.params[i] = s;
    }
    return c;
}

}  // namespace affsol
