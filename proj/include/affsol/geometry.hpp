#pragma once

// Exact-size 2D linear algebra: vectors, matrices, affine maps, the closed-form
// 2x2 matrix exponential and spectral decomposition everything else builds on.

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "affsol/errors.hpp"

namespace affsol {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2() = default;
    constexpr Vec2(double xx, double yy) : x(xx), y(yy) {}

    constexpr Vec2 operator+(Vec2 r) const { return {x + r.x, y + r.y}; }
    constexpr Vec2 operator-(Vec2 r) const { return {x - r.x, y - r.y}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
    friend constexpr Vec2 operator*(double s, Vec2 v) { return {v.x * s, v.y * s}; }
    Vec2& operator+=(Vec2 r) { x += r.x; y += r.y; return *this; }
    Vec2& operator-=(Vec2 r) { x -= r.x; y -= r.y; return *this; }

    constexpr double dot(Vec2 r) const { return x * r.x + y * r.y; }
    /// Scalar cross product det(*this, r).
    constexpr double cross(Vec2 r) const { return x * r.y - y * r.x; }
    double norm() const { return std::hypot(x, y); }
    constexpr double norm_sq() const { return x * x + y * y; }
    /// Counterclockwise quarter turn, J*v.
    constexpr Vec2 perp() const { return {-y, x}; }

    Vec2 normalized(double eps = 0.0) const {
        const double n = norm();
        if (n <= eps) throw DegenerateSample("normalized: zero-length vector");
        return {x / n, y / n};
    }

    bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

constexpr double dot(Vec2 a, Vec2 b) { return a.dot(b); }
constexpr double cross(Vec2 a, Vec2 b) { return a.cross(b); }

struct Mat2 {
    // Row-major entries.
    double a11 = 0.0, a12 = 0.0, a21 = 0.0, a22 = 0.0;

    constexpr Mat2() = default;
    constexpr Mat2(double m11, double m12, double m21, double m22)
        : a11(m11), a12(m12), a21(m21), a22(m22) {}

    static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static constexpr Mat2 diag(double d1, double d2) { return {d1, 0.0, 0.0, d2}; }
    /// Rotation generator J = [[0,-1],[1,0]].
    static constexpr Mat2 J() { return {0.0, -1.0, 1.0, 0.0}; }
    static Mat2 rotation(double angle) {
        const double c = std::cos(angle), s = std::sin(angle);
        return {c, -s, s, c};
    }
    /// Outer product u * v^T.
    static constexpr Mat2 outer(Vec2 u, Vec2 v) {
        return {u.x * v.x, u.x * v.y, u.y * v.x, u.y * v.y};
    }

    constexpr double det() const { return a11 * a22 - a12 * a21; }
    constexpr double tr() const { return a11 + a22; }
    constexpr Mat2 transpose() const { return {a11, a21, a12, a22}; }
    double frobenius() const {
        return std::sqrt(a11 * a11 + a12 * a12 + a21 * a21 + a22 * a22);
    }

    constexpr Vec2 operator*(Vec2 v) const {
        return {a11 * v.x + a12 * v.y, a21 * v.x + a22 * v.y};
    }
    constexpr Mat2 operator*(const Mat2& m) const {
        return {a11 * m.a11 + a12 * m.a21, a11 * m.a12 + a12 * m.a22,
                a21 * m.a11 + a22 * m.a21, a21 * m.a12 + a22 * m.a22};
    }
    constexpr Mat2 operator+(const Mat2& m) const {
        return {a11 + m.a11, a12 + m.a12, a21 + m.a21, a22 + m.a22};
    }
    constexpr Mat2 operator-(const Mat2& m) const {
        return {a11 - m.a11, a12 - m.a12, a21 - m.a21, a22 - m.a22};
    }
    constexpr Mat2 operator-() const { return {-a11, -a12, -a21, -a22}; }
    constexpr Mat2 operator*(double s) const { return {a11 * s, a12 * s, a21 * s, a22 * s}; }
    friend constexpr Mat2 operator*(double s, const Mat2& m) { return m * s; }

    Vec2 row(int i) const { return i == 0 ? Vec2{a11, a12} : Vec2{a21, a22}; }
    Vec2 col(int j) const { return j == 0 ? Vec2{a11, a21} : Vec2{a12, a22}; }

    Mat2 inverse(double tol = 1e-14) const {
        const double d = det();
        const double scale = frobenius();
        // fully relative test: a well-conditioned matrix of any magnitude inverts
        if (std::abs(d) <= tol * scale * scale)
            throw SingularMap("inverse: matrix is numerically singular");
        return Mat2{a22, -a12, -a21, a11} * (1.0 / d);
    }

    bool finite() const {
        return std::isfinite(a11) && std::isfinite(a12) && std::isfinite(a21) &&
               std::isfinite(a22);
    }
};

/// Affine map Y = linear * X + shift.
struct AffineMap {
    Mat2 linear = Mat2::identity();
    Vec2 shift{};

    Vec2 operator()(Vec2 v) const { return linear * v + shift; }

    /// (a ∘ b)(X) = a(b(X)).
    friend AffineMap compose(const AffineMap& a, const AffineMap& b) {
        return {a.linear * b.linear, a.linear * b.shift + a.shift};
    }

    AffineMap inverse(double tol = 1e-14) const {
        const Mat2 li = linear.inverse(tol);
        return {li, -(li * shift)};
    }

    static AffineMap translation(Vec2 h) { return {Mat2::identity(), h}; }
    static AffineMap linear_map(const Mat2& m) { return {m, Vec2{}}; }
};

/// Odd real cube root; negative curvature stays admissible through k^(1/3).
inline double cbrt_signed(double x) { return std::cbrt(x); }

namespace detail {

// cosh(sqrt(q)) and sinh(sqrt(q))/sqrt(q) as entire functions of q (so q < 0
// gives the trigonometric branch). Series near q = 0.
inline double cosh_of_sq(double q) {
    if (std::abs(q) < 1e-8) return 1.0 + q / 2.0 + q * q / 24.0;
    if (q > 0.0) return std::cosh(std::sqrt(q));
    return std::cos(std::sqrt(-q));
}

inline double sinhc_of_sq(double q) {
    if (std::abs(q) < 1e-8) return 1.0 + q / 6.0 + q * q / 120.0;
    if (q > 0.0) {
        const double d = std::sqrt(q);
        return std::sinh(d) / d;
    }
    const double w = std::sqrt(-q);
    return std::sin(w) / w;
}

}  // namespace detail

/// Closed-form 2x2 matrix exponential. Splits M = (tr/2) I + M0 with M0
/// traceless, where M0^2 = -det(M0) I, and evaluates the entire functions of
/// delta^2 = -det(M0) on the hyperbolic, trigonometric, or degenerate branch.
inline Mat2 expm2(const Mat2& m) {
    const double half_tr = m.tr() / 2.0;
    const Mat2 m0 = m - Mat2::diag(half_tr, half_tr);
    const double q = -m0.det();  // delta^2
    const double c = detail::cosh_of_sq(q);
    const double s = detail::sinhc_of_sq(q);
    return std::exp(half_tr) * (Mat2::diag(c, c) + s * m0);
}

/// Spectral summary of a 2x2 matrix.
struct Eigen2 {
    double tr = 0.0;
    double det = 0.0;
    double delta = 0.0;  ///< tr^2 - 4 det, discriminant of the characteristic polynomial
    std::array<std::complex<double>, 2> values{};
    /// Unit eigenvectors for the real eigenvalues, aligned with `values`;
    /// empty when the spectrum is complex, one entry for a defective matrix.
    std::vector<Vec2> vectors;
    bool diagonalizable = true;
    int rank = 0;
};

namespace detail {

// Best-conditioned unit kernel vector of a (near-)singular matrix: the
// orthogonal complement of the dominant row.
inline Vec2 kernel_vector(const Mat2& m) {
    const Vec2 r0 = m.row(0), r1 = m.row(1);
    const Vec2 r = r0.norm_sq() >= r1.norm_sq() ? r0 : r1;
    const double n = r.norm();
    if (n == 0.0) return {1.0, 0.0};
    return Vec2{r.y, -r.x} / n;
}

}  // namespace detail

inline Eigen2 eigen2(const Mat2& m, double tol = 1e-9) {
    Eigen2 e;
    e.tr = m.tr();
    e.det = m.det();
    e.delta = e.tr * e.tr - 4.0 * e.det;

    const double nb = m.frobenius();
    if (nb == 0.0) {
        e.values = {0.0, 0.0};
        e.vectors = {Vec2{1.0, 0.0}, Vec2{0.0, 1.0}};
        e.diagonalizable = true;
        e.rank = 0;
        return e;
    }
    e.rank = std::abs(e.det) <= tol * nb * nb ? 1 : 2;

    if (e.delta < -tol * nb * nb) {
        const double im = std::sqrt(-e.delta) / 2.0;
        e.values = {std::complex<double>(e.tr / 2.0, -im),
                    std::complex<double>(e.tr / 2.0, im)};
        e.diagonalizable = true;  // semisimple (diagonalizable over C)
        return e;
    }
    if (e.delta > tol * nb * nb) {
        // Two distinct real eigenvalues; compute the larger-magnitude root
        // first to avoid cancellation.
        const double sd = std::sqrt(e.delta);
        const double l_big = (e.tr >= 0.0 ? e.tr + sd : e.tr - sd) / 2.0;
        const double l_small = l_big != 0.0 ? e.det / l_big : (e.tr - sd) / 2.0;
        const double lo = std::min(l_small, l_big), hi = std::max(l_small, l_big);
        e.values = {lo, hi};
        e.vectors = {detail::kernel_vector(m - Mat2::diag(lo, lo)),
                     detail::kernel_vector(m - Mat2::diag(hi, hi))};
        e.diagonalizable = true;
        return e;
    }
    // Double real eigenvalue tr/2: scaled identity or a nontrivial Jordan block.
    const double lam = e.tr / 2.0;
    e.values = {lam, lam};
    const Mat2 n = m - Mat2::diag(lam, lam);
    if (n.frobenius() <= tol * nb) {
        e.diagonalizable = true;
        e.vectors = {Vec2{1.0, 0.0}, Vec2{0.0, 1.0}};
    } else {
        e.diagonalizable = false;
        e.vectors = {detail::kernel_vector(n)};
    }
    return e;
}

}  // namespace affsol
