#pragma once

// The soliton datum (B, C) of the equation <B X + C, N> = k^(1/3) and its
// transformation law under affine maps of the plane.

#include <cmath>

#include "affsol/errors.hpp"
#include "affsol/geometry.hpp"

namespace affsol {

/// The pair (B, C) defining the soliton equation <B X + C, N> = k^(1/3).
struct SolitonData {
    Mat2 B;
    Vec2 C;

    bool finite() const { return B.finite() && C.finite(); }
    /// Data magnitude |B|_F + |C|, the scale all classification tolerances
    /// are relative to.
    double scale() const { return B.frobenius() + C.norm(); }
};

/// How a soliton datum transforms when the curve is mapped by Y = P X + H:
///   B -> |det P|^(-2/3) P B P^(-1)
///   C -> |det P|^(-2/3) P (C - B P^(-1) H)
/// (translate in source coordinates first, then the linear part). The 2/3
/// power uses the odd cube root, so orientation-reversing maps are fine.
inline SolitonData pushforward(const SolitonData& data, const AffineMap& map,
                               double tol = 1e-14) {
    const Mat2& p = map.linear;
    const double d = p.det();
    if (std::abs(d) <= tol * p.frobenius() * p.frobenius())
        throw SingularMap("pushforward: singular linear part");
    const Mat2 p_inv = Mat2{p.a22, -p.a12, -p.a21, p.a11} * (1.0 / d);
    const double w = std::pow(std::abs(d), -2.0 / 3.0);
    SolitonData out;
    out.B = w * (p * data.B * p_inv);
    out.C = w * (p * (data.C - data.B * (p_inv * map.shift)));
    return out;
}

/// Residual of the defining equation at a single point with known unit normal
/// and curvature: <B X + C, N> - k^(1/3).
inline double soliton_equation_residual(const SolitonData& data, Vec2 point, Vec2 normal,
                                        double curvature) {
    return dot(data.B * point + data.C, normal) - cbrt_signed(curvature);
}

}  // namespace affsol
