#pragma once

// The self-similar group action (A(t), H(t)) generated by a soliton datum:
//   A(t) = exp(t B)                                   if tr B = 0,
//   A(t) = exp( 3/(2 tr B) * ln(1 + (2/3) tr B t) B ) otherwise,
//   H(t) = integral_0^t (det A)^(-2/3) A(s) ds * C,
// with det A(t) = (1 + (2/3) tr B t)^(3/2) and maximal time
// t_max = -3/(2 tr B) when tr B < 0 (+infinity otherwise). The time interval
// [0, t_max) is open at t_max: the formulas blow up there.

#include <cmath>
#include <limits>

#include "affsol/errors.hpp"
#include "affsol/geometry.hpp"
#include "affsol/quadrature.hpp"
#include "affsol/soliton.hpp"

namespace affsol {

/// Maximal existence time: +inf when tr B >= 0, else -3/(2 tr B).
inline double max_time(const SolitonData& data) {
    const double tr = data.B.tr();
    if (tr >= 0.0) return std::numeric_limits<double>::infinity();
    return -1.5 / tr;
}

struct SolitonAction {
    SolitonData data;
    double t_max;
    QuadOptions quad{1e-12, 1e-12, 2000};
};

inline SolitonAction make_action(const SolitonData& data) {
    return {data, max_time(data), {}};
}

namespace detail {

inline void check_time(const SolitonAction& a, double t) {
    if (!(t >= 0.0) || !(t < a.t_max))
        throw TimeOutOfRange("action: t = " + std::to_string(t) +
                             " outside [0, t_max)");
}

// The scalar 1 + (2/3) tr B * t, positive on [0, t_max).
inline double det_base(const SolitonData& d, double t) {
    return 1.0 + (2.0 / 3.0) * d.B.tr() * t;
}

}  // namespace detail

/// det A(t) = (1 + (2/3) tr B t)^(3/2), valid on [0, t_max).
inline double action_det(const SolitonAction& a, double t) {
    detail::check_time(a, t);
    return std::pow(detail::det_base(a.data, t), 1.5);
}

inline Mat2 action_matrix(const SolitonAction& a, double t) {
    detail::check_time(a, t);
    const double tr = a.data.B.tr();
    if (tr == 0.0) return expm2(t * a.data.B);
    // log1p keeps the exponent accurate down to tiny traces, where the
    // formula must degrade continuously into the traceless branch exp(tB)
    const double f = 1.5 / tr * std::log1p((2.0 / 3.0) * tr * t);
    return expm2(f * a.data.B);
}

/// Time derivative A'(t) = (det A)^(-2/3) B A(t) (the defining system).
inline Mat2 action_matrix_derivative(const SolitonAction& a, double t) {
    return (1.0 / detail::det_base(a.data, t)) * (a.data.B * action_matrix(a, t));
}

/// H(t) by adaptive quadrature of (det A)^(-2/3) A(s) C; H(0) = 0.
inline Vec2 action_translation(const SolitonAction& a, double t) {
    detail::check_time(a, t);
    if (t == 0.0 || a.data.C.norm() == 0.0) return {};
    auto integrand = [&](double s) -> Vec2 {
        const double tr = a.data.B.tr();
        const double w = 1.0 / detail::det_base(a.data, s);
        const Mat2 as =
            tr == 0.0 ? expm2(s * a.data.B)
                      : expm2((1.5 / tr) * std::log1p((2.0 / 3.0) * tr * s) *
                              a.data.B);
        return w * (as * a.data.C);
    };
    return integrate(integrand, 0.0, t, a.quad);
}

/// H'(t) = (det A)^(-2/3) A(t) C, closed form.
inline Vec2 action_translation_derivative(const SolitonAction& a, double t) {
    return (1.0 / detail::det_base(a.data, t)) * (action_matrix(a, t) * a.data.C);
}

}  // namespace affsol
