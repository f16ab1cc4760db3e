#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "stc/gauss_hermite.hpp"

namespace stc {

// 4-PAM alphabet {-3,-1,+1,+3}.
class Pam4Symbol {
  public:
    explicit Pam4Symbol(int v) : value_(v) {
        if (v != -3 && v != -1 && v != 1 && v != 3)
            throw std::invalid_argument("Pam4Symbol: value not in {-3,-1,+1,+3}");
    }
    int value() const { return value_; }
    friend bool operator==(Pam4Symbol a, Pam4Symbol b) { return a.value_ == b.value_; }

  private:
    int value_;
};

enum class RepetitionScheme { Ordinary, Scaled };

// bit/transmission over the real AWGN channel at linear snr.
inline double awgn_capacity(double snr) {
    if (snr < 0.0) throw std::invalid_argument("awgn_capacity: snr must be >= 0");
    return 0.5 * std::log2(1.0 + snr);
}

// bit/transmission when the symbol is sent twice (one repetition).
inline double repetition_capacity(double snr) {
    if (snr < 0.0) throw std::invalid_argument("repetition_capacity: snr must be >= 0");
    return 0.25 * std::log2(1.0 + 2.0 * snr);
}

// Scaled-repetition remap: 2x-5 for x>0, 2x+5 for x<0. Permutes the alphabet.
inline Pam4Symbol m2(Pam4Symbol x) {
    int v = x.value();
    return Pam4Symbol(v > 0 ? 2 * v - 5 : 2 * v + 5);
}

// Sign offset, so that m2(x) = 2x - d2(x).
inline int d2(Pam4Symbol x) { return x.value() > 0 ? 5 : -5; }

namespace detail {

inline double m2_real(double v) { return v > 0 ? 2.0 * v - 5.0 : 2.0 * v + 5.0; }

}  // namespace detail

// I(X; Y1,Y2)/2 in bit/transmission for X uniform on {+-1,+-3}*sqrt(snr/5),
// Y1 = X + N1, Y2 = map(X) + N2, unit noise variance per output. The map is
// the identity (ordinary repetition) or M2 on the same scaled grid (scaled).
// Output entropy of the 4-component Gaussian mixture by tensor Gauss-Hermite.
inline double pam4_mutual_information(double snr, RepetitionScheme scheme) {
    if (snr < 0.0) throw std::invalid_argument("pam4_mutual_information: snr must be >= 0");
    static const GaussHermite gh = gauss_hermite(64);
    const int n = static_cast<int>(gh.node.size());
    const double c = std::sqrt(snr / 5.0);  // E[X^2] = snr on the scaled grid
    double x[4], y[4];
    for (int k = 0; k < 4; ++k) {
        double raw = 2.0 * k - 3.0;
        x[k] = c * raw;
        y[k] = scheme == RepetitionScheme::Scaled ? c * detail::m2_real(raw) : x[k];
    }
    const double sqrt2 = std::numbers::sqrt2;
    const double log2e = std::numbers::log2e;
    // h(Y1,Y2) = -(1/4) sum_k E_noise[log2 p(x_k + n1, y_k + n2)]
    double hY = 0.0;
    for (int k = 0; k < 4; ++k) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
            const double y1 = x[k] + sqrt2 * gh.node[static_cast<std::size_t>(i)];
            const double wi = gh.weight[static_cast<std::size_t>(i)];
            for (int j = 0; j < n; ++j) {
                const double y2 = y[k] + sqrt2 * gh.node[static_cast<std::size_t>(j)];
                // log p up to the common -log(8 pi) factor, via log-sum-exp
                double d2min = 1e300, d2v[4];
                for (int m = 0; m < 4; ++m) {
                    double dy1 = y1 - x[m], dy2 = y2 - y[m];
                    d2v[m] = dy1 * dy1 + dy2 * dy2;
                    d2min = std::min(d2min, d2v[m]);
                }
                double sum = 0.0;
                for (int m = 0; m < 4; ++m) sum += std::exp(-0.5 * (d2v[m] - d2min));
                acc += wi * gh.weight[static_cast<std::size_t>(j)] *
                       (-0.5 * d2min + std::log(sum));
            }
        }
        // E[...] = (1/pi) sum_ij w_i w_j f(sqrt2 t_i, sqrt2 t_j)
        hY += acc / std::numbers::pi;
    }
    hY = -0.25 * hY * log2e + std::log2(8.0 * std::numbers::pi);
    const double bits = hY - std::log2(2.0 * std::numbers::pi * std::numbers::e);
    return std::max(0.0, bits / 2.0);
}

// Two-candidate demodulator for scaled repetition: threshold u = y1 + 2*y2
// once per sign class, then keep the better of the two candidates under the
// full Euclidean metric. Equals the 4-candidate brute force everywhere.
inline Pam4Symbol scaled_rep_demod(double y1, double y2) {
    const int neg = y1 + 2.0 * y2 > 0.0 ? -1 : -3;  // candidate among {-3,-1}
    const int pos = y1 + 2.0 * y2 > 0.0 ? 3 : 1;    // candidate among {+1,+3}
    auto metric = [&](int v) {
        double d1 = y1 - v, d2 = y2 - detail::m2_real(v);
        return d1 * d1 + d2 * d2;
    };
    const double mn = metric(neg), mp = metric(pos);
    if (mn < mp) return Pam4Symbol(neg);
    if (mp < mn) return Pam4Symbol(pos);
    return Pam4Symbol(std::abs(neg) <= std::abs(pos) ? neg : pos);
}

}  // namespace stc
