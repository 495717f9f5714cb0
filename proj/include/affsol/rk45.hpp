#pragma once

// Adaptive embedded Runge-Kutta: the Dormand-Prince 5(4) pair with FSAL,
// PI-free step control, and an observer hook after every accepted step.
// Generic over fixed-size state arrays.

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>

#include "affsol/errors.hpp"

namespace affsol {

template <std::size_t N>
using StateN = std::array<double, N>;

struct RkOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double max_step = std::numeric_limits<double>::infinity();
    double initial_step = 0.0;  // 0 = choose automatically
    std::size_t max_steps = 5'000'000;
};

enum class RkFlow { continue_run, stop };

namespace detail {

template <std::size_t N>
StateN<N> axpy(const StateN<N>& y, double a, const StateN<N>& d) {
    StateN<N> r;
    for (std::size_t i = 0; i < N; ++i) r[i] = y[i] + a * d[i];
    return r;
}

}  // namespace detail

/// Drives y from x0 toward x_end (either direction). The observer is called
/// as observer(x, y, dydx) after every accepted step; returning RkFlow::stop
/// ends the run early. Throws StepUnderflow when the error control cannot
/// make progress.
template <std::size_t N, class Rhs, class Observer>
void rk45_drive(Rhs&& f, StateN<N> y, double x0, double x_end, const RkOptions& opt,
                Observer&& observer) {
    // Dormand-Prince coefficients.
    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                     a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                     a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                     b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    // 5th minus 4th order weights (error estimator).
    constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                     e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                     e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

    const double dir = x_end >= x0 ? 1.0 : -1.0;
    double x = x0;
    StateN<N> k1 = f(x, y);
    if (observer(x, y, k1) == RkFlow::stop) return;

    const double span = std::abs(x_end - x0);
    if (span == 0.0) return;
    double h = opt.initial_step > 0.0 ? opt.initial_step
                                      : std::min(span / 100.0, opt.max_step);
    h = std::min(h, opt.max_step) * dir;

    bool last_rejected = false;
    for (std::size_t step = 0; step < opt.max_steps; ++step) {
        if ((x - x_end) * dir >= 0.0) return;
        // Stretch (up to 40%) rather than clamp when the target is near, so
        // the final step never becomes a sliver; downstream consumers use the
        // accepted states as stencil nodes and near-duplicates would be
        // ill-conditioned. Never stretch right after a rejection (that would
        // undo the error control and loop), only forbid overshooting.
        if (!last_rejected && std::abs(x_end - x) <= 1.4 * std::abs(h))
            h = x_end - x;
        else if (std::abs(h) > std::abs(x_end - x))
            h = x_end - x;

        using detail::axpy;
        StateN<N> y2 = axpy(y, h * a21, k1);
        StateN<N> k2 = f(x + c2 * h, y2);
        StateN<N> y3 = y;
        for (std::size_t i = 0; i < N; ++i) y3[i] += h * (a31 * k1[i] + a32 * k2[i]);
        StateN<N> k3 = f(x + c3 * h, y3);
        StateN<N> y4 = y;
        for (std::size_t i = 0; i < N; ++i)
            y4[i] += h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        StateN<N> k4 = f(x + c4 * h, y4);
        StateN<N> y5 = y;
        for (std::size_t i = 0; i < N; ++i)
            y5[i] += h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        StateN<N> k5 = f(x + c5 * h, y5);
        StateN<N> y6 = y;
        for (std::size_t i = 0; i < N; ++i)
            y6[i] += h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                          a65 * k5[i]);
        StateN<N> k6 = f(x + h, y6);
        StateN<N> y_new = y;
        for (std::size_t i = 0; i < N; ++i)
            y_new[i] += h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                             b6 * k6[i]);
        StateN<N> k7 = f(x + h, y_new);

        double err = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] +
                                   e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            const double sc =
                opt.abs_tol + opt.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
            err = std::max(err, std::abs(ei) / sc);
        }

        const bool accepted = err <= 1.0;
        last_rejected = !accepted;
        if (accepted) {
            x += h;
            y = y_new;
            k1 = k7;  // FSAL
            if (observer(x, y, k1) == RkFlow::stop) return;
        }

        const double factor =
            err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
        h *= std::clamp(factor, 0.2, 5.0);
        if (std::abs(h) > opt.max_step) h = opt.max_step * dir;
        const double h_floor = 1e-14 * std::max(1.0, std::abs(x));
        if (!accepted && std::abs(h) < h_floor)
            throw StepUnderflow("rk45: step size underflow near x = " + std::to_string(x));
    }
    throw StepUnderflow("rk45: step budget exhausted");
}

/// Integrates y from x0 to exactly x1 and returns the final state.
template <std::size_t N, class Rhs>
StateN<N> rk45_to(Rhs&& f, const StateN<N>& y0, double x0, double x1,
                  const RkOptions& opt = {}) {
    StateN<N> result = y0;
    rk45_drive<N>(f, y0, x0, x1,
                  opt, [&](double, const StateN<N>& y, const StateN<N>&) {
                      result = y;
                      return RkFlow::continue_run;
                  });
    return result;
}

}  // namespace affsol
