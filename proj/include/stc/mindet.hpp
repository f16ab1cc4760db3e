#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "stc/stcodes.hpp"

namespace stc {

// Minimum |det| over all difference matrices of distinct raw (unnormalized)
// codewords. Unordered pairs suffice: |det(A-B)| = |det(B-A)|.
inline double min_det(const CodeSpec& code) {
    std::vector<Matrix2c> cb;
    cb.reserve(256);
    for (int msg = 0; msg < 256; ++msg) cb.push_back(raw_codeword(code, msg));
    double best = 1e300;
    for (int i = 0; i < 256; ++i)
        for (int k = i + 1; k < 256; ++k) {
            double d = std::abs(det2(cb[static_cast<std::size_t>(i)] -
                                     cb[static_cast<std::size_t>(k)]));
            if (d < best) best = d;
        }
    return best;
}

struct SweepPoint {
    double theta;
    double mindet;
};

struct SweepResult {
    std::vector<SweepPoint> points;
    double theta_opt = 0.0;
    double mindet_opt = 0.0;
};

namespace detail {

// det of a rotated-scaled-Alamouti difference splits as e^{j theta} A + B,
// where A depends only on the s1 pair and B only on the s2 pair:
//   A = (s1 - s1') (M2(s1*) - M2(s1'*)),  B = (s2* - s2'*) (M2(s2) - M2(s2')).
// Both factor lists are theta-independent, so one sweep reuses them.
struct RsaPairTerms {
    std::vector<Complex> a, b;  // nonzero-pair products
    double min_abs_a = 1e300, min_abs_b = 1e300;
};

inline RsaPairTerms rsa_pair_terms() {
    RsaPairTerms t;
    for (int i = 0; i < 16; ++i)
        for (int k = i + 1; k < 16; ++k) {
            Qam16Symbol si = qam16_from_bits(i), sk = qam16_from_bits(k);
            Complex da = (si.to_complex() - sk.to_complex()) *
                         (m2c(si.conj()).to_complex() - m2c(sk.conj()).to_complex());
            Complex db = (std::conj(si.to_complex()) - std::conj(sk.to_complex())) *
                         (m2c(si).to_complex() - m2c(sk).to_complex());
            t.a.push_back(da);
            t.b.push_back(db);
            t.min_abs_a = std::min(t.min_abs_a, std::abs(da));
            t.min_abs_b = std::min(t.min_abs_b, std::abs(db));
        }
    return t;
}

inline double rsa_min_det(const RsaPairTerms& t, double theta) {
    const Complex rot = std::polar(1.0, theta);
    // pairs differing in exactly one of s1, s2
    double best = std::min(t.min_abs_a, t.min_abs_b);
    for (const Complex& a : t.a) {
        const Complex ra = rot * a;
        for (const Complex& b : t.b) {
            double d = std::abs(ra + b);
            if (d < best) best = d;
        }
    }
    return best;
}

}  // namespace detail

// min_det(rsa(theta)) on the inclusive grid lo, lo+step, ..., hi.
inline SweepResult theta_sweep(double lo, double hi, double step) {
    if (!(lo >= 0.0 && lo < hi && hi <= std::numbers::pi / 2.0 + 1e-12 && step > 0.0))
        throw std::invalid_argument("theta_sweep: need 0 <= lo < hi <= pi/2 and step > 0");
    const detail::RsaPairTerms terms = detail::rsa_pair_terms();
    SweepResult out;
    const long n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    for (long i = 0; i <= n; ++i) {
        const double theta = lo + static_cast<double>(i) * step;
        const double md = detail::rsa_min_det(terms, theta);
        out.points.push_back({theta, md});
        if (md > out.mindet_opt) {
            out.mindet_opt = md;
            out.theta_opt = theta;
        }
    }
    return out;
}

// Two-stage search: coarse sweep of [lo, hi], then a fine sweep of one
// coarse cell around the argmax. Points returned are the coarse grid.
inline SweepResult optimize_theta(double lo = 0.0, double hi = std::numbers::pi / 2.0,
                                  double coarse_step = 0.002, double fine_step = 1e-4) {
    SweepResult res = theta_sweep(lo, hi, coarse_step);
    const double wlo = std::max(lo, res.theta_opt - coarse_step);
    const double whi = std::min(hi, res.theta_opt + coarse_step);
    SweepResult fine = theta_sweep(wlo, whi, fine_step);
    res.theta_opt = fine.theta_opt;
    res.mindet_opt = fine.mindet_opt;
    return res;
}

}  // namespace stc
