#pragma once

#include <cmath>
#include <stdexcept>

#include "stc/complexmat.hpp"
#include "stc/rng.hpp"

namespace stc {

using ChannelMatrix = Matrix2c;

// Four i.i.d. unit-variance circularly symmetric Gaussian coefficients,
// drawn row-major (m11, m12, m21, m22). Constant over one codeword block.
inline ChannelMatrix sample_channel(Rng& rng) {
    ChannelMatrix h;
    h.m11 = sample_cgauss(rng, 1.0);
    h.m12 = sample_cgauss(rng, 1.0);
    h.m21 = sample_cgauss(rng, 1.0);
    h.m22 = sample_cgauss(rng, 1.0);
    return h;
}

// Y = H X + N, noise i.i.d. per entry with E|n|^2 = sigma2, columns
// (transmissions) independent. Noise is drawn column-major (n11, n21, n12,
// n22): one antenna pair per transmission.
inline Matrix2c transmit(const ChannelMatrix& h, const Matrix2c& x, double sigma2, Rng& rng) {
    if (!(sigma2 > 0.0)) throw std::invalid_argument("transmit: sigma2 must be > 0");
    Matrix2c y = h * x;
    y.m11 += sample_cgauss(rng, sigma2);
    y.m21 += sample_cgauss(rng, sigma2);
    y.m12 += sample_cgauss(rng, sigma2);
    y.m22 += sample_cgauss(rng, sigma2);
    return y;
}

inline Matrix2c transmit_noiseless(const ChannelMatrix& h, const Matrix2c& x) { return h * x; }

// log2 det(I + (snr/2) H H^dagger) via the 2x2 closed form.
inline double telatar_capacity(const ChannelMatrix& h, double snr) {
    const double r = snr / 2.0;  // power split over the two transmit antennas
    return std::log2(1.0 + r * gram_trace(h) + r * r * std::norm(det2(h)));
}

// Monte Carlo Pr{telatar_capacity(H) < rate}. Trials are indexed substreams
// of rng, so the estimate depends only on (rng state, trials).
inline double outage_probability(double snr, double rate, long trials, const Rng& rng) {
    if (trials < 1) throw std::invalid_argument("outage_probability: trials must be >= 1");
    long outages = 0;
    for (long i = 0; i < trials; ++i) {
        Rng r = rng.fork(static_cast<std::uint64_t>(i));
        if (telatar_capacity(sample_channel(r), snr) < rate) ++outages;
    }
    return static_cast<double>(outages) / static_cast<double>(trials);
}

}  // namespace stc
