#pragma once

// 17-way classification of soliton data (B, C) up to affine conjugacy:
// decides the case from the algebraic invariants (det B, tr B, the
// discriminant, Jordan structure, range membership of C) and constructs the
// normalizing affine map Y = Q X + H that carries (B, C) onto the canonical
// representative of its class.
//
// All dichotomies are tolerance bands. A discriminating quantity that is
// small but clearly above roundoff is resolved toward zero AND reported in
// boundary_flags; it is never silently dropped.

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "affsol/errors.hpp"
#include "affsol/geometry.hpp"
#include "affsol/rng.hpp"
#include "affsol/soliton.hpp"

namespace affsol {

enum class CaseTag {
    deg_1a,     // B = 0: translation
    deg_1b,     // positive eigenvalue, C in R(B): expansion in one direction
    deg_1c,     // positive eigenvalue, C not in R(B): expansion + translation
    deg_1d,     // negative eigenvalue, C in R(B): contraction in one direction
    deg_1e,     // negative eigenvalue, C not in R(B): contraction + translation
    deg_1f,     // nilpotent, C in R(B): skew steady
    deg_1g,     // nilpotent, C not in R(B): skew steady + translation
    nondeg_2a,  // rotation
    nondeg_2b,  // rotation + expansion        (parameter a > 0)
    nondeg_2c,  // rotation + contraction      (parameter a > 0)
    nondeg_2d,  // expansion
    nondeg_2e,  // contraction
    nondeg_2f,  // skew expansion
    nondeg_2g,  // skew contraction
    nondeg_2h,  // two distinct positive eigenvalues (0 < a < 1)
    nondeg_2i,  // two distinct negative eigenvalues (0 < a < 1)
    nondeg_2j,  // mixed-sign eigenvalues             (a > 0)
};

inline constexpr CaseTag kAllCaseTags[17] = {
    CaseTag::deg_1a,    CaseTag::deg_1b,    CaseTag::deg_1c,    CaseTag::deg_1d,
    CaseTag::deg_1e,    CaseTag::deg_1f,    CaseTag::deg_1g,    CaseTag::nondeg_2a,
    CaseTag::nondeg_2b, CaseTag::nondeg_2c, CaseTag::nondeg_2d, CaseTag::nondeg_2e,
    CaseTag::nondeg_2f, CaseTag::nondeg_2g, CaseTag::nondeg_2h, CaseTag::nondeg_2i,
    CaseTag::nondeg_2j,
};

inline const char* case_tag_name(CaseTag t) {
    switch (t) {
        case CaseTag::deg_1a: return "1-a";
        case CaseTag::deg_1b: return "1-b";
        case CaseTag::deg_1c: return "1-c";
        case CaseTag::deg_1d: return "1-d";
        case CaseTag::deg_1e: return "1-e";
        case CaseTag::deg_1f: return "1-f";
        case CaseTag::deg_1g: return "1-g";
        case CaseTag::nondeg_2a: return "2-a";
        case CaseTag::nondeg_2b: return "2-b";
        case CaseTag::nondeg_2c: return "2-c";
        case CaseTag::nondeg_2d: return "2-d";
        case CaseTag::nondeg_2e: return "2-e";
        case CaseTag::nondeg_2f: return "2-f";
        case CaseTag::nondeg_2g: return "2-g";
        case CaseTag::nondeg_2h: return "2-h";
        case CaseTag::nondeg_2i: return "2-i";
        case CaseTag::nondeg_2j: return "2-j";
    }
    return "?";
}

inline std::optional<CaseTag> parse_case_tag(const std::string& s) {
    for (CaseTag t : kAllCaseTags)
        if (s == case_tag_name(t)) return t;
    return std::nullopt;
}

inline bool is_degenerate(CaseTag t) { return t <= CaseTag::deg_1g; }

/// Does this case's normal form carry a free constant a?
inline bool case_has_parameter(CaseTag t) {
    switch (t) {
        case CaseTag::nondeg_2b:
        case CaseTag::nondeg_2c:
        case CaseTag::nondeg_2h:
        case CaseTag::nondeg_2i:
        case CaseTag::nondeg_2j: return true;
        default: return false;
    }
}

struct SolitonCase {
    CaseTag tag;
    std::optional<double> a;
};

/// The literal canonical (B0, C0) of each case.
inline SolitonData canonical_form(const SolitonCase& c) {
    auto need_a = [&](double lo, double hi) {
        if (!c.a)
            throw MissingParameter(std::string("canonical_form: case ") +
                                   case_tag_name(c.tag) + " needs parameter a");
        if (!(*c.a > lo) || !(*c.a < hi))
            throw MissingParameter(std::string("canonical_form: parameter a out of "
                                               "range for case ") +
                                   case_tag_name(c.tag));
        return *c.a;
    };
    constexpr double inf = std::numeric_limits<double>::infinity();
    switch (c.tag) {
        case CaseTag::deg_1a: return {Mat2{}, Vec2{0.0, 1.0}};
        case CaseTag::deg_1b: return {Mat2::diag(0.0, 1.0), Vec2{}};
        case CaseTag::deg_1c: return {Mat2::diag(0.0, 1.0), Vec2{1.0, 0.0}};
        case CaseTag::deg_1d: return {Mat2::diag(0.0, -1.0), Vec2{}};
        case CaseTag::deg_1e: return {Mat2::diag(0.0, -1.0), Vec2{1.0, 0.0}};
        case CaseTag::deg_1f: return {Mat2{0.0, 1.0, 0.0, 0.0}, Vec2{}};
        case CaseTag::deg_1g: return {Mat2{0.0, 1.0, 0.0, 0.0}, Vec2{0.0, 1.0}};
        case CaseTag::nondeg_2a: return {Mat2::J(), Vec2{}};
        case CaseTag::nondeg_2b: {
            const double a = need_a(0.0, inf);
            return {Mat2::identity() + a * Mat2::J(), Vec2{}};
        }
        case CaseTag::nondeg_2c: {
            const double a = need_a(0.0, inf);
            return {-Mat2::identity() + a * Mat2::J(), Vec2{}};
        }
        case CaseTag::nondeg_2d: return {Mat2::identity(), Vec2{}};
        case CaseTag::nondeg_2e: return {-Mat2::identity(), Vec2{}};
        case CaseTag::nondeg_2f: return {Mat2{1.0, 1.0, 0.0, 1.0}, Vec2{}};
        case CaseTag::nondeg_2g: return {Mat2{-1.0, 1.0, 0.0, -1.0}, Vec2{}};
        case CaseTag::nondeg_2h: {
            const double a = need_a(0.0, 1.0);
            return {Mat2::diag(a, 1.0), Vec2{}};
        }
        case CaseTag::nondeg_2i: {
            const double a = need_a(0.0, 1.0);
            return {Mat2::diag(-a, -1.0), Vec2{}};
        }
        case CaseTag::nondeg_2j: {
            const double a = need_a(0.0, inf);
            return {Mat2::diag(-a, 1.0), Vec2{}};
        }
    }
    throw MissingParameter("canonical_form: unknown tag");
}

struct ClassifyOptions {
    /// Relative decision tolerance: a discriminating quantity q with scale S
    /// is treated as zero when |q| <= tol * S.
    double tol = 1e-9;
    /// Below this relative size a quantity is consistent with roundoff and
    /// resolves to zero without a boundary flag.
    double roundoff = 2e-12;
};

struct ClassificationReport {
    SolitonCase soliton_case;
    AffineMap map;          ///< the Y = Q X + H of the classification
    SolitonData canonical;  ///< literal (B0, C0) of the detected case
    double residual_norm = 0.0;
    std::vector<std::string> boundary_flags;

    bool boundary() const { return !boundary_flags.empty(); }
};

namespace detail {

// Zero-vs-sign decision with a boundary band between roundoff and tol.
class Decider {
  public:
    Decider(const ClassifyOptions& opt, std::vector<std::string>& flags)
        : opt_(opt), flags_(flags) {}

    bool is_zero(double q, double scale, const char* name) {
        const double aq = std::abs(q);
        if (aq <= opt_.tol * scale) {
            if (aq > opt_.roundoff * scale) flags_.push_back(name);
            return true;
        }
        return false;
    }

  private:
    const ClassifyOptions& opt_;
    std::vector<std::string>& flags_;
};

// Rank-1 factorization B = w z^T of a (numerically) rank-1 matrix.
struct RankOne {
    Vec2 w;  // spans the range
    Vec2 z;  // spans the row space
};

inline RankOne rank_one_factors(const Mat2& b) {
    const Vec2 c0 = b.col(0), c1 = b.col(1);
    RankOne r;
    r.w = c0.norm_sq() >= c1.norm_sq() ? c0 : c1;
    r.z = (b.transpose() * r.w) / r.w.norm_sq();
    return r;
}

// Distance of C from the range of a rank-1 matrix, and a particular solution
// H of B H = C (valid when the distance vanishes).
inline double range_distance(const Mat2& b, Vec2 c, Vec2* solution) {
    const RankOne r = rank_one_factors(b);
    const Vec2 w_hat = r.w / r.w.norm();
    if (solution) *solution = r.z * (dot(w_hat, c) / r.w.norm() / r.z.norm_sq());
    return std::abs(cross(w_hat, c));
}

// Unit-determinant-magnitude basis [col0 | col1]: both columns scaled by the
// same factor, which keeps the represented matrix unchanged.
inline Mat2 unit_det_basis(Vec2 col0, Vec2 col1) {
    Mat2 q{col0.x, col1.x, col0.y, col1.y};
    const double d = std::sqrt(std::abs(q.det()));
    if (d == 0.0) throw SingularMap("classify: degenerate basis");
    return q * (1.0 / d);
}

// Basis in which B becomes bI + cJ (complex eigenvalues b +- ci, c > 0).
inline Mat2 complex_pair_basis(const Mat2& b_mat, double re, double im) {
    const Mat2 s = b_mat - Mat2::diag(re, re);
    // v_i: any direction not annihilated by S; v_r = S v_i / c.
    const Vec2 e1{1.0, 0.0}, e2{0.0, 1.0};
    const Vec2 vi = (s * e1).norm_sq() >= (s * e2).norm_sq() ? e1 : e2;
    const Vec2 vr = (s * vi) / im;
    return unit_det_basis(vi, vr);
}

// Basis in which B becomes an upper Jordan block [[lam, 1], [0, lam]].
inline Mat2 jordan_basis(const Mat2& b_mat, double lam) {
    const Mat2 n = b_mat - Mat2::diag(lam, lam);
    const Vec2 e1{1.0, 0.0}, e2{0.0, 1.0};
    const Vec2 u = (n * e1).norm_sq() >= (n * e2).norm_sq() ? e1 : e2;
    return unit_det_basis(n * u, u);
}

// Basis of eigenvectors ordered (l0, l1).
inline Mat2 eigen_basis(const Mat2& b_mat, double l0, double l1) {
    return unit_det_basis(kernel_vector(b_mat - Mat2::diag(l0, l0)),
                          kernel_vector(b_mat - Mat2::diag(l1, l1)));
}

}  // namespace detail

/// Classifies (B, C), constructing the normalizing map. Total: every finite
/// datum yields a report; tolerance-ambiguous branches set boundary_flags.
inline ClassificationReport classify(const SolitonData& data,
                                     const ClassifyOptions& opt = {}) {
    if (!data.finite()) throw std::invalid_argument("classify: non-finite data");

    ClassificationReport rep;
    detail::Decider decide(opt, rep.boundary_flags);

    const Mat2& b = data.B;
    const Vec2& c = data.C;
    const double nb = b.frobenius();
    const double nc = c.norm();
    const double s = nb + nc;

    AffineMap map;  // identity
    SolitonCase sc{CaseTag::deg_1a, std::nullopt};
    bool construction_failed = false;

    try {
    if (s == 0.0) {
        // (0, 0): every line solves the equation; no normal form applies.
        rep.boundary_flags.push_back("zero-data");
        sc.tag = CaseTag::deg_1a;
    } else if (decide.is_zero(nb, s, "b-near-zero")) {
        // (1-a) translation: rotate C to the positive y-axis, then scale so
        // that |det Q|^(-2/3) Q C has unit length.
        sc.tag = CaseTag::deg_1a;
        const Vec2 ch = c / nc;
        const Mat2 rot{ch.y, -ch.x, ch.x, ch.y};
        map = AffineMap::linear_map(nc * nc * nc * rot);
    } else if (decide.is_zero(b.det(), nb * nb, "det-b-near-zero")) {
        // Degenerate: eigenvalues {0, tr B}.
        const double tr = b.tr();
        Vec2 h_translate{};
        const double dist = detail::range_distance(b, c, &h_translate);
        const bool c_in_range = nc == 0.0 || decide.is_zero(dist, nc, "c-near-range");
        if (decide.is_zero(tr, nb, "b-near-nilpotent")) {
            // (1-f)/(1-g): nilpotent B.
            const Mat2 q1 = detail::jordan_basis(b, 0.0);
            const Mat2 q1i = q1.inverse();
            if (c_in_range) {
                sc.tag = CaseTag::deg_1f;
                map = compose(AffineMap::linear_map(q1i),
                              AffineMap::translation(h_translate));
            } else {
                sc.tag = CaseTag::deg_1g;
                // Kill the first component of the mapped C, then rescale the
                // second to 1 with diag(t^5, t), t = cbrt of that component.
                const SolitonData d1 = pushforward(data, AffineMap::linear_map(q1i));
                const Vec2 c1 = d1.C;
                const AffineMap shift = AffineMap::translation({0.0, c1.x});
                const double t = cbrt_signed(c1.y);
                const Mat2 rescale = Mat2::diag(t * t * t * t * t, t);
                map = compose(AffineMap::linear_map(rescale),
                              compose(shift, AffineMap::linear_map(q1i)));
            }
        } else {
            // (1-b)..(1-e): nonzero eigenvalue tr B of either sign.
            const Mat2 q1 = detail::eigen_basis(b, 0.0, tr);
            const double scale = std::pow(std::abs(tr), 0.75);
            const Mat2 p1 = scale * q1.inverse();
            if (c_in_range) {
                sc.tag = tr > 0.0 ? CaseTag::deg_1b : CaseTag::deg_1d;
                map = compose(AffineMap::linear_map(p1),
                              AffineMap::translation(h_translate));
            } else {
                sc.tag = tr > 0.0 ? CaseTag::deg_1c : CaseTag::deg_1e;
                // After the linear step C maps to (alpha, beta); kill beta by
                // a translation along the eigen-direction, then use
                // diag(1/alpha, alpha) to normalize C to (1, 0).
                const SolitonData d1 = pushforward(data, AffineMap::linear_map(p1));
                const Vec2 c1 = d1.C;
                const double sign2 = tr > 0.0 ? 1.0 : -1.0;
                const AffineMap shift = AffineMap::translation({0.0, sign2 * c1.y});
                const Mat2 rescale = Mat2::diag(1.0 / c1.x, c1.x);
                map = compose(AffineMap::linear_map(rescale),
                              compose(shift, AffineMap::linear_map(p1)));
            }
        }
    } else {
        // Nondegenerate: first translate by B^(-1) C, killing C entirely.
        const AffineMap center = AffineMap::translation(b.inverse() * c);
        const double tr = b.tr();
        const double delta = tr * tr - 4.0 * b.det();
        if (decide.is_zero(delta, nb * nb, "delta-near-zero")) {
            const double lam = tr / 2.0;
            const double scale = std::pow(std::abs(lam), 0.75);
            const Mat2 dev = b - Mat2::diag(lam, lam);
            if (decide.is_zero(dev.frobenius(), nb, "jordan-structure-near-scalar")) {
                // (2-d)/(2-e): B = lam I.
                sc.tag = lam > 0.0 ? CaseTag::nondeg_2d : CaseTag::nondeg_2e;
                map = compose(AffineMap::linear_map(Mat2::diag(scale, scale)), center);
            } else {
                // (2-f)/(2-g): Jordan block; diag(|lam|^(5/4), |lam|^(1/4))
                // turns the conjugated block into the unit normal form.
                sc.tag = lam > 0.0 ? CaseTag::nondeg_2f : CaseTag::nondeg_2g;
                const Mat2 q1i = detail::jordan_basis(b, lam).inverse();
                const double al = std::abs(lam);
                const Mat2 d = Mat2::diag(std::pow(al, 1.25), std::pow(al, 0.25));
                map = compose(AffineMap::linear_map(d * q1i), center);
            }
        } else if (delta < 0.0) {
            // (2-a)/(2-b)/(2-c): complex pair re +- i*im, im > 0.
            const double re = tr / 2.0;
            const double im = std::sqrt(-delta) / 2.0;
            const Mat2 q1i = detail::complex_pair_basis(b, re, im).inverse();
            if (decide.is_zero(tr, nb, "tr-b-near-zero")) {
                sc.tag = CaseTag::nondeg_2a;
                const double scale = std::pow(im, 0.75);
                map = compose(AffineMap::linear_map(scale * q1i), center);
            } else {
                sc.tag = tr > 0.0 ? CaseTag::nondeg_2b : CaseTag::nondeg_2c;
                sc.a = im / std::abs(re);
                const double scale = std::pow(std::abs(re), 0.75);
                map = compose(AffineMap::linear_map(scale * q1i), center);
            }
        } else {
            // Two distinct real eigenvalues, det != 0.
            const double sd = std::sqrt(delta);
            const double l_big = (tr >= 0.0 ? tr + sd : tr - sd) / 2.0;
            const double l_small = b.det() / l_big;
            double first, second;  // eigen-order: "second" maps to the +-1 slot
            if (b.det() > 0.0) {
                // Same sign: ratio in (0, 1), larger magnitude in slot 2.
                sc.tag = tr > 0.0 ? CaseTag::nondeg_2h : CaseTag::nondeg_2i;
                first = l_small;
                second = l_big;
                sc.a = std::abs(l_small / l_big);
            } else {
                // Mixed signs: negative eigenvalue in slot 1, positive in
                // slot 2; a = |l_neg| / l_pos is forced by positivity of the
                // conjugation scale factor (no a <-> 1/a folding exists).
                sc.tag = CaseTag::nondeg_2j;
                const double l_neg = std::min(l_small, l_big);
                const double l_pos = std::max(l_small, l_big);
                first = l_neg;
                second = l_pos;
                sc.a = -l_neg / l_pos;
            }
            const Mat2 q1i = detail::eigen_basis(b, first, second).inverse();
            const double scale = std::pow(std::abs(second), 0.75);
            map = compose(AffineMap::linear_map(scale * q1i), center);
        }
    }
    } catch (const SingularMap&) {
        construction_failed = true;
        map = AffineMap{};
    }

    rep.soliton_case = sc;
    rep.map = map;
    rep.canonical = canonical_form(sc);
    try {
        if (construction_failed) throw SingularMap("classify: map construction failed");
        const SolitonData mapped = pushforward(data, map);
        rep.residual_norm = std::max((mapped.B - rep.canonical.B).frobenius(),
                                     (mapped.C - rep.canonical.C).norm());
        if (!std::isfinite(rep.residual_norm))
            throw SingularMap("classify: residual overflow");
    } catch (const SingularMap&) {
        // the normalizing map is not representable at this data scale
        rep.boundary_flags.push_back("normalizing-map-degenerate");
        rep.residual_norm = std::numeric_limits<double>::infinity();
    }
    // A report only counts as unambiguous when the constructed map actually
    // certifies the class; ill-conditioned data just outside the tolerance
    // bands can miss this bound and is then reported, not silently accepted.
    if (!(rep.residual_norm < 1e-8 * (1.0 + data.scale())) && !rep.boundary())
        rep.boundary_flags.push_back("residual-above-bound");
    return rep;
}

/// Random member of a case's affine-conjugacy class: the canonical form
/// pulled back through a random well-conditioned affine map. Deterministic
/// given the seed; classify() recovers the tag.
inline SolitonData random_case_instance(SolitonCase c, std::uint64_t seed) {
    Rng rng(seed);
    if (case_has_parameter(c.tag) && !c.a) {
        // Draw a parameter comfortably inside the admissible range.
        switch (c.tag) {
            case CaseTag::nondeg_2b:
            case CaseTag::nondeg_2c: c.a = rng.uniform(0.2, 3.0); break;
            case CaseTag::nondeg_2h:
            case CaseTag::nondeg_2i: c.a = rng.uniform(0.15, 0.85); break;
            default: c.a = rng.uniform(0.2, 4.0); break;
        }
    }
    const SolitonData canon = canonical_form(c);
    // Random invertible P with bounded condition number, random shift.
    Mat2 p;
    for (;;) {
        p = Mat2{rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5),
                 rng.uniform(-1.5, 1.5)};
        const double d = std::abs(p.det());
        if (d < 0.25) continue;
        const double n2 = p.frobenius();
        // Frobenius bound: cond_2(P) <= |P|_F^2 / |det P|.
        if (n2 * n2 / d <= 8.0) break;
    }
    const Vec2 h{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
    // canonical = pushforward(instance, (P, h))  =>  instance = pushforward
    // of the canonical form through the inverse map.
    return pushforward(canon, AffineMap{p, h}.inverse());
}

}  // namespace affsol
