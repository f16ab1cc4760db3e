#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "stc/complexmat.hpp"

namespace stc {

// Paper-optimal rotation angle for the rotated-scaled Alamouti code.
inline constexpr double kRsaThetaOpt = 1.028;

// 16-QAM symbol: both axes on the 4-PAM grid {-3,-1,+1,+3}.
struct Qam16Symbol {
    int re, im;

    Qam16Symbol(int re_, int im_) : re(re_), im(im_) {
        if (!axis_ok(re) || !axis_ok(im))
            throw std::invalid_argument("Qam16Symbol: components must be in {-3,-1,+1,+3}");
    }
    Complex to_complex() const { return {static_cast<double>(re), static_cast<double>(im)}; }
    Qam16Symbol conj() const { return {re, -im}; }
    friend bool operator==(Qam16Symbol a, Qam16Symbol b) { return a.re == b.re && a.im == b.im; }

    static bool axis_ok(int v) { return v == -3 || v == -1 || v == 1 || v == 3; }
};

// 4-QAM symbol: both axes in {-1,+1}.
struct Qam4Symbol {
    int re, im;

    Qam4Symbol(int re_, int im_) : re(re_), im(im_) {
        if (std::abs(re) != 1 || std::abs(im) != 1)
            throw std::invalid_argument("Qam4Symbol: components must be +-1");
    }
    Complex to_complex() const { return {static_cast<double>(re), static_cast<double>(im)}; }
};

// Complex sign offset: 5*(sign(re) + j sign(im)).
inline Complex d2c(Qam16Symbol s) {
    return {s.re > 0 ? 5.0 : -5.0, s.im > 0 ? 5.0 : -5.0};
}

// Componentwise scaled-repetition remap M2; a bijection on 16-QAM.
inline Qam16Symbol m2c(Qam16Symbol s) {
    auto map1 = [](int v) { return v > 0 ? 2 * v - 5 : 2 * v + 5; };
    return {map1(s.re), map1(s.im)};
}

enum class CodeKind { Uncoded, Alamouti, TiltedQam, RotScaledAlamouti, Golden };

struct CodeSpec {
    CodeKind kind;
    double theta = kRsaThetaOpt;  // only meaningful for RotScaledAlamouti

    static CodeSpec uncoded() { return {CodeKind::Uncoded}; }
    static CodeSpec alamouti() { return {CodeKind::Alamouti}; }
    static CodeSpec tilted_qam() { return {CodeKind::TiltedQam}; }
    static CodeSpec golden() { return {CodeKind::Golden}; }
    static CodeSpec rsa(double theta = kRsaThetaOpt) {
        if (!(theta >= 0.0 && theta <= std::numbers::pi / 2.0))
            throw std::invalid_argument("CodeSpec: theta must be in [0, pi/2]");
        return {CodeKind::RotScaledAlamouti, theta};
    }
};

inline const char* code_name(CodeKind kind) {
    switch (kind) {
        case CodeKind::Uncoded: return "uncoded";
        case CodeKind::Alamouti: return "alamouti";
        case CodeKind::TiltedQam: return "tilted";
        case CodeKind::RotScaledAlamouti: return "rsa";
        case CodeKind::Golden: return "golden";
    }
    return "?";
}

struct Codeword {
    Matrix2c raw;  // unnormalized code matrix
    double norm;   // scale giving the codebook unit average energy per transmission
};

namespace detail {

// Natural binary, 2 bits per axis: {00,01,10,11} -> {-3,-1,+1,+3}.
inline Qam16Symbol qam16_from_bits(int b4) {
    return {2 * ((b4 >> 2) & 3) - 3, 2 * (b4 & 3) - 3};
}

inline int bits_from_qam16(Qam16Symbol s) {
    return ((s.re + 3) / 2) << 2 | ((s.im + 3) / 2);
}

// Natural binary, 1 bit per axis: {0,1} -> {-1,+1}.
inline Qam4Symbol qam4_from_bits(int b2) {
    return {2 * ((b2 >> 1) & 1) - 1, 2 * (b2 & 1) - 1};
}

}  // namespace detail

// Message (0..255) -> unnormalized code matrix. Bits are consumed high to
// low: 16-QAM codes use bits 7..4 for s1 and 3..0 for s2; four-symbol 4-QAM
// codes use 2-bit fields in declaration order.
inline Matrix2c raw_codeword(const CodeSpec& code, int msg) {
    if (msg < 0 || msg > 255) throw std::invalid_argument("raw_codeword: message out of range");
    switch (code.kind) {
        case CodeKind::Uncoded: {
            // row-major x11, x12, x21, x22
            return {detail::qam4_from_bits(msg >> 6).to_complex(),
                    detail::qam4_from_bits((msg >> 4) & 3).to_complex(),
                    detail::qam4_from_bits((msg >> 2) & 3).to_complex(),
                    detail::qam4_from_bits(msg & 3).to_complex()};
        }
        case CodeKind::Alamouti: {
            Complex s1 = detail::qam16_from_bits(msg >> 4).to_complex();
            Complex s2 = detail::qam16_from_bits(msg & 15).to_complex();
            return {s1, -std::conj(s2), s2, std::conj(s1)};
        }
        case CodeKind::TiltedQam: {
            Complex sa = detail::qam4_from_bits(msg >> 6).to_complex();
            Complex sb = detail::qam4_from_bits((msg >> 4) & 3).to_complex();
            Complex sc = detail::qam4_from_bits((msg >> 2) & 3).to_complex();
            Complex sd = detail::qam4_from_bits(msg & 3).to_complex();
            const double t1 = 0.5 * std::atan(0.5), t2 = 0.5 * std::atan(2.0);
            Matrix2c x;
            x.m11 = std::cos(t1) * sa - std::sin(t1) * sb;
            x.m22 = std::sin(t1) * sa + std::cos(t1) * sb;
            x.m21 = std::cos(t2) * sc - std::sin(t2) * sd;
            x.m12 = std::sin(t2) * sc + std::cos(t2) * sd;
            return x;
        }
        case CodeKind::RotScaledAlamouti: {
            Qam16Symbol s1 = detail::qam16_from_bits(msg >> 4);
            Qam16Symbol s2 = detail::qam16_from_bits(msg & 15);
            Complex rot = std::polar(1.0, code.theta);
            return {rot * s1.to_complex(), -std::conj(s2.to_complex()),
                    m2c(s2).to_complex(), m2c(s1.conj()).to_complex()};
        }
        case CodeKind::Golden: {
            Complex z1 = detail::qam4_from_bits(msg >> 6).to_complex();
            Complex z2 = detail::qam4_from_bits((msg >> 4) & 3).to_complex();
            Complex z3 = detail::qam4_from_bits((msg >> 2) & 3).to_complex();
            Complex z4 = detail::qam4_from_bits(msg & 3).to_complex();
            const double th = (1.0 + std::sqrt(5.0)) / 2.0;
            const double tb = (1.0 - std::sqrt(5.0)) / 2.0;
            const Complex j{0.0, 1.0};
            const Complex al = 1.0 + j - j * th;
            const Complex ab = 1.0 + j - j * tb;
            const double f = 1.0 / std::sqrt(5.0);
            return {f * al * (z1 + z2 * th), f * al * (z3 + z4 * th),
                    f * j * ab * (z3 + z4 * tb), f * ab * (z1 + z2 * tb)};
        }
    }
    throw std::invalid_argument("raw_codeword: unknown code kind");
}

// Mean over messages and transmissions of the two-antenna energy of one
// column of the raw matrix. The power constraint divides by this.
inline double average_energy(const CodeSpec& code) {
    double sum = 0.0;
    for (int msg = 0; msg < 256; ++msg) sum += frob_norm_sq(raw_codeword(code, msg));
    return sum / (256.0 * 2.0);  // 2 transmissions per codeword
}

inline Codeword encode(const CodeSpec& code, int msg) {
    return {raw_codeword(code, msg), 1.0 / std::sqrt(average_energy(code))};
}

// Precomputed 256-word codebook sharing one normalization factor.
class Codebook {
  public:
    explicit Codebook(const CodeSpec& spec) : spec_(spec) {
        raw_.reserve(256);
        for (int msg = 0; msg < 256; ++msg) raw_.push_back(raw_codeword(spec, msg));
        norm_ = 1.0 / std::sqrt(average_energy(spec));
    }

    const CodeSpec& spec() const { return spec_; }
    const Matrix2c& raw(int msg) const { return raw_[static_cast<std::size_t>(msg)]; }
    double norm() const { return norm_; }

  private:
    CodeSpec spec_;
    std::vector<Matrix2c> raw_;
    double norm_ = 0.0;
};

}  // namespace stc
