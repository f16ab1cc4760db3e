#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace stc {

using Complex = std::complex<double>;

// One space-time codeword / channel matrix / received block: rows are
// receive (or transmit) antennas, columns are the two transmissions.
struct Matrix2c {
    Complex m11{}, m12{}, m21{}, m22{};

    friend Matrix2c operator+(const Matrix2c& a, const Matrix2c& b) {
        return {a.m11 + b.m11, a.m12 + b.m12, a.m21 + b.m21, a.m22 + b.m22};
    }
    friend Matrix2c operator-(const Matrix2c& a, const Matrix2c& b) {
        return {a.m11 - b.m11, a.m12 - b.m12, a.m21 - b.m21, a.m22 - b.m22};
    }
    friend Matrix2c operator*(const Matrix2c& a, const Matrix2c& b) {
        return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
                a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
    }
    friend Matrix2c operator*(double s, const Matrix2c& m) {
        return {s * m.m11, s * m.m12, s * m.m21, s * m.m22};
    }
    friend Matrix2c operator*(Complex s, const Matrix2c& m) {
        return {s * m.m11, s * m.m12, s * m.m21, s * m.m22};
    }
    friend bool operator==(const Matrix2c& a, const Matrix2c& b) {
        return a.m11 == b.m11 && a.m12 == b.m12 && a.m21 == b.m21 && a.m22 == b.m22;
    }

    Matrix2c adjoint() const {
        return {std::conj(m11), std::conj(m21), std::conj(m12), std::conj(m22)};
    }
    static Matrix2c identity() { return {1.0, 0.0, 0.0, 1.0}; }
};

inline Complex det2(const Matrix2c& m) { return m.m11 * m.m22 - m.m12 * m.m21; }

inline double frob_norm_sq(const Matrix2c& m) {
    return std::norm(m.m11) + std::norm(m.m12) + std::norm(m.m21) + std::norm(m.m22);
}

// tr(M M^dagger), same as the squared Frobenius norm but kept separate
// where the Gram trace is meant.
inline double gram_trace(const Matrix2c& m) { return frob_norm_sq(m); }

struct Vec4c {
    std::array<Complex, 4> v{};

    Complex& operator[](int i) { return v[static_cast<std::size_t>(i)]; }
    const Complex& operator[](int i) const { return v[static_cast<std::size_t>(i)]; }

    friend Vec4c operator+(const Vec4c& a, const Vec4c& b) {
        return {{{a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]}}};
    }
    friend Vec4c operator-(const Vec4c& a, const Vec4c& b) {
        return {{{a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]}}};
    }
    friend Vec4c operator*(Complex s, const Vec4c& a) {
        return {{{s * a[0], s * a[1], s * a[2], s * a[3]}}};
    }
};

// Hermitian inner product, conjugate-linear in the first argument.
inline Complex hdot(const Vec4c& u, const Vec4c& v) {
    Complex acc = 0.0;
    for (int i = 0; i < 4; ++i) acc += std::conj(u[i]) * v[i];
    return acc;
}

inline double norm_sq(const Vec4c& u) {
    return std::norm(u[0]) + std::norm(u[1]) + std::norm(u[2]) + std::norm(u[3]);
}

}  // namespace stc
