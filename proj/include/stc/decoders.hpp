#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>

#include "stc/channel.hpp"
#include "stc/complexmat.hpp"
#include "stc/stcodes.hpp"

namespace stc {

// S decodes (s1,s2) directly; T decodes (t1,t2) = (M2(s1),M2(s2)) and maps
// back through s = -M2(t).
enum class Branch { S, T };

enum class RsaMethod { M1, M2Guess, Unpruned };

struct DecodeResult {
    int message = 0;
    double metric = 0.0;  // squared Euclidean distance at the decision
    int slicings = 0;     // hypotheses actually sliced (suboptimal decoders)
    std::optional<Branch> branch;
    bool ml_fallback = false;
};

// Received block stacked as (y11, y21, y12*, y22*).
inline Vec4c stack_received(const Matrix2c& y) {
    return {{{y.m11, y.m21, std::conj(y.m12), std::conj(y.m22)}}};
}

struct StackedVectors {
    Vec4c a, b, c, d;
};

// Effective-channel vectors of the stacked model
//   ybar = s1 a + s2 b - D2(s1) c - D2(s2) d + n      (S branch)
// and the primed analogue in (t1,t2) for the T branch.
inline StackedVectors build_vectors(const ChannelMatrix& h, double theta, Branch branch) {
    const Complex rot = std::polar(1.0, theta);
    const Complex h11c = std::conj(h.m11), h12c = std::conj(h.m12);
    const Complex h21c = std::conj(h.m21), h22c = std::conj(h.m22);
    StackedVectors v;
    if (branch == Branch::S) {
        v.a = {{{rot * h.m11, rot * h.m21, 2.0 * h12c, 2.0 * h22c}}};
        v.b = {{{2.0 * h.m12, 2.0 * h.m22, -h11c, -h21c}}};
        v.c = {{{0.0, 0.0, h12c, h22c}}};
        v.d = {{{h.m12, h.m22, 0.0, 0.0}}};
    } else {
        v.a = {{{-2.0 * rot * h.m11, -2.0 * rot * h.m21, h12c, h22c}}};
        v.b = {{{h.m12, h.m22, 2.0 * h11c, 2.0 * h21c}}};
        v.c = {{{-rot * h.m11, -rot * h.m21, 0.0, 0.0}}};
        v.d = {{{0.0, 0.0, h11c, h21c}}};
    }
    return v;
}

// Initial-guess filters for the hypothesis (D2 signs): e1 = a - (5/2)c,
// e2 = b - (5/2)d. For the S branch these reduce to the closed forms
// (h11 Theta, h21 Theta, -h12*/2, -h22*/2) and (-h12/2, -h22/2, -h11*, -h21*).
inline std::pair<Vec4c, Vec4c> build_guess_filters(const StackedVectors& v) {
    return {v.a - Complex(2.5) * v.c, v.b - Complex(2.5) * v.d};
}

// Decode (s1,s2) when the second-column channel is at least as strong as the
// first; the angle bound 2|Theta-1|/5 then holds for the chosen branch.
inline Branch select_branch(const ChannelMatrix& h) {
    const double col2 = std::norm(h.m12) + std::norm(h.m22);
    const double col1 = std::norm(h.m11) + std::norm(h.m21);
    return col2 >= col1 ? Branch::S : Branch::T;
}

inline double cos_angle(const Vec4c& a, const Vec4c& b) {
    const double na = norm_sq(a), nb = norm_sq(b);
    if (na == 0.0 || nb == 0.0) throw std::invalid_argument("cos_angle: zero vector");
    return std::abs(hdot(a, b)) / std::sqrt(na * nb);
}

// Solve the two-regressor least-squares normal equations for z on span{a,b}.
// Returns nothing when the Gram determinant is numerically singular.
inline std::optional<std::pair<Complex, Complex>> zf_solve(const Vec4c& a, const Vec4c& b,
                                                           const Vec4c& z) {
    const double gaa = norm_sq(a), gbb = norm_sq(b);
    const Complex gab = hdot(a, b);
    const double det = gaa * gbb - std::norm(gab);
    if (det <= std::numeric_limits<double>::min()) return std::nullopt;
    const Complex za = hdot(a, z), zb = hdot(b, z);
    return std::make_pair((gbb * za - gab * zb) / det, (gaa * zb - std::conj(gab) * za) / det);
}

// Nearest 16-QAM point under the sign pattern q (components +-1): per axis,
// choose between the two 4-PAM values of that sign.
inline Qam16Symbol constrained_slice(Complex st, Complex q) {
    if (std::abs(q.real()) != 1.0 || std::abs(q.imag()) != 1.0)
        throw std::invalid_argument("constrained_slice: q components must be +-1");
    auto axis = [](double v, double sign) {
        if (sign > 0) return v >= 2.0 ? 3 : 1;
        return v <= -2.0 ? -3 : -1;
    };
    return {axis(st.real(), q.real()), axis(st.imag(), q.imag())};
}

// Unconstrained nearest 16-QAM point.
inline Qam16Symbol slice_qam16(Complex v) {
    auto axis = [](double x) {
        if (x >= 2.0) return 3;
        if (x >= 0.0) return 1;
        if (x >= -2.0) return -1;
        return -3;
    };
    return {axis(v.real()), axis(v.imag())};
}

// Exhaustive search over all 256 codewords; ties go to the smaller message.
inline DecodeResult ml_decode(const Codebook& cb, const ChannelMatrix& h, const Matrix2c& y,
                              double p) {
    if (!(p > 0.0)) throw std::invalid_argument("ml_decode: p must be > 0");
    const Matrix2c g = (std::sqrt(p) * cb.norm()) * h;
    DecodeResult res;
    res.metric = std::numeric_limits<double>::infinity();
    for (int msg = 0; msg < 256; ++msg) {
        const double d = frob_norm_sq(y - g * cb.raw(msg));
        if (d < res.metric) {
            res.metric = d;
            res.message = msg;
        }
    }
    return res;
}

// Matched-filter detection for the Alamouti code: project the stacked block
// on the two orthogonal channel vectors and slice per symbol. Equals
// exhaustive ML because a and b are orthogonal with equal norms.
inline DecodeResult alamouti_mf_decode(const Codebook& cb, const ChannelMatrix& h,
                                       const Matrix2c& y, double p) {
    if (cb.spec().kind != CodeKind::Alamouti)
        throw std::invalid_argument("alamouti_mf_decode: codebook is not Alamouti");
    if (!(p > 0.0)) throw std::invalid_argument("alamouti_mf_decode: p must be > 0");
    const Vec4c a = {{{h.m11, h.m21, std::conj(h.m12), std::conj(h.m22)}}};
    const Vec4c b = {{{h.m12, h.m22, -std::conj(h.m11), -std::conj(h.m21)}}};
    const double gain = norm_sq(a);  // == norm_sq(b)
    const double scale = std::sqrt(p) * cb.norm();
    DecodeResult res;
    if (gain * scale <= std::numeric_limits<double>::min()) {
        res.metric = frob_norm_sq(y);
        return res;
    }
    const Vec4c ybar = stack_received(y);
    const Qam16Symbol s1 = slice_qam16(hdot(a, ybar) / (gain * scale));
    const Qam16Symbol s2 = slice_qam16(hdot(b, ybar) / (gain * scale));
    res.message = detail::bits_from_qam16(s1) << 4 | detail::bits_from_qam16(s2);
    res.metric = frob_norm_sq(y - (scale * h) * cb.raw(res.message));
    return res;
}

namespace detail {

inline Complex csign(Complex v) {
    return {v.real() >= 0.0 ? 1.0 : -1.0, v.imag() >= 0.0 ? 1.0 : -1.0};
}

// hypothesis index -> (q1, q2), ascending lexicographic over
// (re q1, im q1, re q2, im q2) with -1 before +1
inline std::pair<Complex, Complex> hypothesis(int i) {
    auto sign = [](int bit) { return bit != 0 ? 1.0 : -1.0; };
    return {Complex(sign(i >> 3 & 1), sign(i >> 2 & 1)),
            Complex(sign(i >> 1 & 1), sign(i & 1))};
}

inline int hypothesis_index(Complex q1, Complex q2) {
    auto bit = [](double s) { return s > 0.0 ? 1 : 0; };
    return bit(q1.real()) << 3 | bit(q1.imag()) << 2 | bit(q2.real()) << 1 | bit(q2.imag());
}

}  // namespace detail

// Suboptimal decoder for the rotated-scaled Alamouti code: per-channel branch
// selection, then zero-forcing with sign-constrained slicing over the 16
// hypotheses for (D2(s1), D2(s2)). Pruning skips hypotheses whose
// out-of-span residual (a lower bound, available before slicing) already
// exceeds the incumbent; M2Guess additionally reorders so the hypothesis
// guessed from the e-filters is tried first. Pruning never changes the
// decision, only the slicing count.
inline DecodeResult rsa_decode(const Codebook& cb, const ChannelMatrix& h, const Matrix2c& y,
                               double p, RsaMethod method) {
    if (cb.spec().kind != CodeKind::RotScaledAlamouti)
        throw std::invalid_argument("rsa_decode: codebook is not rotated-scaled Alamouti");
    if (!(p > 0.0)) throw std::invalid_argument("rsa_decode: p must be > 0");

    const Branch branch = select_branch(h);
    const StackedVectors v = build_vectors(h, cb.spec().theta, branch);
    const double gaa = norm_sq(v.a), gbb = norm_sq(v.b);
    const Complex gab = hdot(v.a, v.b);
    const double det = gaa * gbb - std::norm(gab);
    if (det <= std::numeric_limits<double>::min()) {
        DecodeResult res = ml_decode(cb, h, y, p);
        res.branch = branch;
        res.ml_fallback = true;
        return res;
    }

    const double scale = std::sqrt(p) * cb.norm();
    const Vec4c ybar = Complex(1.0 / scale) * stack_received(y);

    std::array<int, 16> order;
    for (int i = 0; i < 16; ++i) order[static_cast<std::size_t>(i)] = i;
    if (method == RsaMethod::M2Guess) {
        auto [e1, e2] = build_guess_filters(v);
        const Complex g1 = hdot(e1, ybar) / norm_sq(e1);
        const Complex g2 = hdot(e2, ybar) / norm_sq(e2);
        const int guess = detail::hypothesis_index(detail::csign(g1), detail::csign(g2));
        int at = 1;
        for (int i = 0; i < 16; ++i)
            if (i != guess) order[static_cast<std::size_t>(at++)] = i;
        order[0] = guess;
    }

    const bool prune = method != RsaMethod::Unpruned;
    double best = std::numeric_limits<double>::infinity();
    Qam16Symbol best_s1{1, 1}, best_s2{1, 1};
    int slicings = 0;
    for (int idx : order) {
        const auto [q1, q2] = detail::hypothesis(idx);
        const Vec4c z = ybar + Complex(5.0) * q1 * v.c + Complex(5.0) * q2 * v.d;
        const Complex za = hdot(v.a, z), zb = hdot(v.b, z);
        const Complex st1 = (gbb * za - gab * zb) / det;
        const Complex st2 = (gaa * zb - std::conj(gab) * za) / det;
        // component of z outside span{a,b}: lower bound on any residual
        const double perp =
            norm_sq(z) - (std::conj(st1) * za + std::conj(st2) * zb).real();
        if (prune && perp >= best) continue;
        const Qam16Symbol s1 = constrained_slice(st1, q1);
        const Qam16Symbol s2 = constrained_slice(st2, q2);
        ++slicings;
        const Complex d1 = st1 - s1.to_complex(), d2 = st2 - s2.to_complex();
        const double resid = perp + gaa * std::norm(d1) + gbb * std::norm(d2) +
                             2.0 * (std::conj(d1) * gab * d2).real();
        if (resid < best) {
            best = resid;
            best_s1 = s1;
            best_s2 = s2;
        }
    }

    if (branch == Branch::T) {
        // sliced symbols were (t1,t2); invert t = M2(s) via s = -M2(t)
        const Qam16Symbol u1 = m2c(best_s1), u2 = m2c(best_s2);
        best_s1 = {-u1.re, -u1.im};
        best_s2 = {-u2.re, -u2.im};
    }

    DecodeResult res;
    res.message = detail::bits_from_qam16(best_s1) << 4 | detail::bits_from_qam16(best_s2);
    // cancellation in the Gram expansion can leave a tiny negative residual
    res.metric = std::max(0.0, best) * scale * scale;
    res.slicings = slicings;
    res.branch = branch;
    return res;
}

}  // namespace stc
