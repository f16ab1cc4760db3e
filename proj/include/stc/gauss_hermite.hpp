#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace stc {

struct GaussHermite {
    std::vector<double> node;    // ascending
    std::vector<double> weight;  // for the weight function exp(-x^2)
};

// Gauss-Hermite rule by Newton iteration on the orthonormal recurrence
// (stable for large n, unlike the monic polynomials which overflow).
// Exact for polynomials up to degree 2n-1 against exp(-x^2) dx.
inline GaussHermite gauss_hermite(int n) {
    if (n < 1) throw std::invalid_argument("gauss_hermite: n must be >= 1");
    const double pim4 = 0.7511255444649425;  // pi^(-1/4)
    std::vector<double> x(static_cast<std::size_t>(n)), w(static_cast<std::size_t>(n));
    const int m = (n + 1) / 2;
    double z = 0.0, pp = 0.0;
    for (int i = 0; i < m; ++i) {
        // Asymptotic first guesses for the descending positive roots.
        if (i == 0) {
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        } else if (i == 1) {
            z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
        } else if (i == 2) {
            z = 1.86 * z - 0.86 * x[static_cast<std::size_t>(n - 1)];
        } else if (i == 3) {
            z = 1.91 * z - 0.91 * x[static_cast<std::size_t>(n - 2)];
        } else {
            z = 2.0 * z - x[static_cast<std::size_t>(n - i + 1)];
        }
        for (int it = 0; it < 100; ++it) {
            double p1 = pim4, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;  // derivative of the degree-n polynomial
            double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) <= 1e-15 * (1.0 + std::abs(z))) break;
        }
        x[static_cast<std::size_t>(n - 1 - i)] = z;
        x[static_cast<std::size_t>(i)] = -z;
        w[static_cast<std::size_t>(i)] = 2.0 / (pp * pp);
        w[static_cast<std::size_t>(n - 1 - i)] = w[static_cast<std::size_t>(i)];
    }
    if (n % 2 == 1) x[static_cast<std::size_t>(n / 2)] = 0.0;  // exact by symmetry
    return {std::move(x), std::move(w)};
}

}  // namespace stc
