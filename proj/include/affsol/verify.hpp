#pragma once

// The acceptance engine: residuals of the soliton equation on static curves,
// and of the flow equation <X_t, N> = k^(1/3) along the reconstructed
// self-similar motion X(t, u) = A(t) X(u) + H(t).

#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "affsol/action.hpp"
#include "affsol/curve.hpp"
#include "affsol/errors.hpp"
#include "affsol/soliton.hpp"

namespace affsol {

struct ResidualReport {
    double sup_norm = 0.0;
    std::vector<double> residuals;  ///< per sample; NaN where excluded
    std::size_t n_samples = 0;
    std::size_t n_excluded = 0;
    double argmax_u = 0.0;
    std::optional<double> argmax_t;  ///< present for flow residuals
};

/// Residual r(u) = <B X(u) + C, N(u)> - k(u)^(1/3) over all samples.
/// Samples whose Frenet estimate is unreliable (|X_u| below tolerance) are
/// excluded and counted; near-zero curvature samples stay in (both sides of
/// the equation are then small together, e.g. on lines).
inline ResidualReport soliton_residual(const DiscreteCurve& curve,
                                       const SolitonData& data,
                                       const FrenetOptions& opt = {}) {
    curve.validate();
    ResidualReport rep;
    rep.n_samples = curve.size();
    rep.residuals.assign(rep.n_samples, std::numeric_limits<double>::quiet_NaN());
    for (std::size_t i = 0; i < curve.size(); ++i) {
        const auto fs = try_frenet(curve, i, opt);
        if (!fs) {
            ++rep.n_excluded;
            continue;
        }
        const double r =
            soliton_equation_residual(data, curve.points[i], fs->normal, fs->curvature);
        rep.residuals[i] = r;
        if (std::abs(r) >= rep.sup_norm) {
            rep.sup_norm = std::abs(r);
            rep.argmax_u = curve.params[i];
        }
    }
    return rep;
}

struct FlowOptions {
    FrenetOptions frenet{};
    /// The flow residual is meaningful only for soliton curves; the base
    /// curve must verify below this first.
    double soliton_gate = 1e-4;
};

/// Residual of <X_t, N_t> = k_t^(1/3) along the motion A(t) X + H(t), with
/// X_t = A'(t) X + H'(t) in closed form and (N_t, k_t) from the affine
/// transformation laws applied to the base curve's Frenet data.
inline ResidualReport flow_residual(const DiscreteCurve& curve, const SolitonData& data,
                                    std::span<const double> times,
                                    const FlowOptions& opt = {}) {
    const ResidualReport base = soliton_residual(curve, data, opt.frenet);
    if (!(base.sup_norm < opt.soliton_gate))
        throw NotASoliton("flow_residual: base curve residual " +
                          std::to_string(base.sup_norm) + " exceeds gate");

    const SolitonAction action = make_action(data);
    ResidualReport rep;
    rep.n_samples = curve.size() * times.size();
    rep.residuals.reserve(rep.n_samples);

    for (const double t : times) {
        const Mat2 a = action_matrix(action, t);
        const double det_a = action_det(action, t);
        const Mat2 a_prime = action_matrix_derivative(action, t);
        const Vec2 h_prime = action_translation_derivative(action, t);
        const Mat2 a_inv_t = a.inverse().transpose();
        for (std::size_t i = 0; i < curve.size(); ++i) {
            const auto fs = try_frenet(curve, i, opt.frenet);
            if (!fs) {
                ++rep.n_excluded;
                rep.residuals.push_back(std::numeric_limits<double>::quiet_NaN());
                continue;
            }
            const double stretch = (a * fs->tangent).norm();
            const Vec2 n_t = (det_a / stretch) * (a_inv_t * fs->normal);
            const double k_t =
                det_a * fs->curvature / (stretch * stretch * stretch);
            const Vec2 velocity = a_prime * curve.points[i] + h_prime;
            const double r = dot(velocity, n_t) - cbrt_signed(k_t);
            rep.residuals.push_back(r);
            if (std::abs(r) >= rep.sup_norm) {
                rep.sup_norm = std::abs(r);
                rep.argmax_u = curve.params[i];
                rep.argmax_t = t;
            }
        }
    }
    return rep;
}

}  // namespace affsol
