#pragma once

// Adaptive Gauss-Kronrod quadrature (7-15 pair, embedded error estimate,
// bisection of the worst interval) plus the de-singularizing endpoint
// substitutions used by every integral with an (a - x)^(-p) endpoint.

#include <algorithm>
#include <cmath>
#include <queue>
#include <type_traits>
#include <vector>

#include "affsol/errors.hpp"
#include "affsol/geometry.hpp"

namespace affsol {

namespace detail {

// 15-point Kronrod nodes (positive half) with embedded 7-point Gauss rule.
inline constexpr double kGk15Nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
inline constexpr double kGk15WeightsK[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
inline constexpr double kGk15WeightsG[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

inline double quad_abs(double v) { return std::abs(v); }
inline double quad_abs(Vec2 v) { return std::max(std::abs(v.x), std::abs(v.y)); }
inline double quad_abs(const Mat2& m) {
    return std::max(std::max(std::abs(m.a11), std::abs(m.a12)),
                    std::max(std::abs(m.a21), std::abs(m.a22)));
}

template <class T>
struct Panel {
    double a, b;
    T value;
    double error;
};

// One Gauss-Kronrod 7-15 evaluation on [a, b].
template <class F, class T = std::invoke_result_t<F, double>>
Panel<T> gk15_panel(F&& f, double a, double b) {
    const double c = (a + b) / 2.0;
    const double h = (b - a) / 2.0;
    T fc = f(c);
    T kronrod = kGk15WeightsK[7] * fc;
    T gauss = kGk15WeightsG[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kGk15Nodes[j];
        T lo = f(c - dx);
        T hi = f(c + dx);
        T pair_sum = lo + hi;
        kronrod = kronrod + kGk15WeightsK[j] * pair_sum;
        if (j % 2 == 1) gauss = gauss + kGk15WeightsG[j / 2] * pair_sum;
    }
    kronrod = kronrod * h;
    gauss = gauss * h;
    return {a, b, kronrod, quad_abs(kronrod - gauss)};
}

}  // namespace detail

struct QuadOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    int max_panels = 2000;
};

/// Adaptive quadrature of a scalar-, Vec2- or Mat2-valued integrand over
/// [a, b]. Endpoints are never evaluated (all Kronrod nodes are interior).
template <class F, class T = std::invoke_result_t<F, double>>
T integrate(F&& f, double a, double b, const QuadOptions& opt = {}) {
    if (a == b) return T{};
    auto worse = [](const detail::Panel<T>& p, const detail::Panel<T>& q) {
        return p.error < q.error;
    };
    std::priority_queue<detail::Panel<T>, std::vector<detail::Panel<T>>, decltype(worse)>
        panels(worse);
    panels.push(detail::gk15_panel(f, a, b));
    T total = panels.top().value;
    double total_err = panels.top().error;
    int n_panels = 1;
    while (total_err > std::max(opt.abs_tol, opt.rel_tol * detail::quad_abs(total))) {
        if (n_panels >= opt.max_panels)
            throw QuadratureFailure("integrate: panel budget exhausted", total_err);
        detail::Panel<T> p = panels.top();
        panels.pop();
        const double mid = (p.a + p.b) / 2.0;
        if (mid <= p.a || mid >= p.b)
            throw QuadratureFailure("integrate: interval underflow", total_err);
        auto left = detail::gk15_panel(f, p.a, mid);
        auto right = detail::gk15_panel(f, mid, p.b);
        total = total - p.value + left.value + right.value;
        total_err += left.error + right.error - p.error;
        panels.push(left);
        panels.push(right);
        ++n_panels;
    }
    return total;
}

namespace detail {

// Substitution order removing an endpoint singularity of exponent p < 1:
// with x = endpoint -+ tau^m and m >= 1/(1-p), the pulled-back integrand
// carries tau^(m(1-p)-1), which is bounded for the chosen m.
inline int desing_order(double p) {
    if (!(p < 1.0) || p < 0.0)
        throw QuadratureFailure("singular quadrature: exponent must be in [0,1)", 0.0);
    return std::max(2, static_cast<int>(std::ceil(1.0 / (1.0 - p))));
}

}  // namespace detail

/// Integral of f over [a, b] where f(x) ~ c (b - x)^(-p) as x -> b, 0 <= p < 1.
/// Substitutes x = b - tau^m, mapping the singular endpoint to tau = 0. The
/// integrand is called as f(x, d) with d = b - x held exactly (d = tau^m), so
/// callers can factor the vanishing quantity through d without cancellation.
template <class F>
double integrate_singular_upper(F&& f, double a, double b, double p,
                                const QuadOptions& opt = {}) {
    const int m = detail::desing_order(p);
    const double tau_max = std::pow(b - a, 1.0 / m);
    auto g = [&](double tau) {
        const double d = std::pow(tau, m);
        return m * std::pow(tau, m - 1) * f(b - d, d);
    };
    return integrate(g, 0.0, tau_max, opt);
}

/// Integral of f over [a, b] where f(x) ~ c (x - a)^(-p) as x -> a, 0 <= p < 1.
/// The integrand is called as f(x, d) with d = x - a exact.
template <class F>
double integrate_singular_lower(F&& f, double a, double b, double p,
                                const QuadOptions& opt = {}) {
    const int m = detail::desing_order(p);
    const double tau_max = std::pow(b - a, 1.0 / m);
    auto g = [&](double tau) {
        const double d = std::pow(tau, m);
        return m * std::pow(tau, m - 1) * f(a + d, d);
    };
    return integrate(g, 0.0, tau_max, opt);
}

/// Integral of f over [a, +inf), compactified by x = a + (1-s)/s onto s in (0,1].
/// The integrand must decay faster than x^(-2).
template <class F>
double integrate_to_infinity(F&& f, double a, const QuadOptions& opt = {}) {
    auto g = [&](double s) {
        const double x = a + (1.0 - s) / s;
        return f(x) / (s * s);
    };
    return integrate(g, 0.0, 1.0, opt);
}

}  // namespace affsol
