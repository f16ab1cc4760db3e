#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "stc/stcodes.hpp"

using namespace stc;

namespace {

const CodeSpec kAll[] = {CodeSpec::uncoded(), CodeSpec::alamouti(), CodeSpec::tilted_qam(),
                         CodeSpec::rsa(), CodeSpec::golden()};

}  // namespace

TEST_CASE("complex sign offset", "[stcodes]") {
    CHECK(d2c(Qam16Symbol(1, 1)) == Complex(5.0, 5.0));
    CHECK(d2c(Qam16Symbol(-3, 1)) == Complex(-5.0, 5.0));
    for (int b = 0; b < 16; ++b) {
        const Qam16Symbol s = detail::qam16_from_bits(b);
        const Complex r = 2.0 * s.to_complex() - d2c(s);
        CHECK(Qam16Symbol::axis_ok(static_cast<int>(std::lround(r.real()))));
        CHECK(Qam16Symbol::axis_ok(static_cast<int>(std::lround(r.imag()))));
        CHECK(m2c(s).to_complex() == r);
    }
}

TEST_CASE("componentwise remap orbits", "[stcodes]") {
    CHECK(m2c(Qam16Symbol(3, 1)) == Qam16Symbol(1, -3));
    CHECK(m2c(Qam16Symbol(1, -1)) == Qam16Symbol(-3, 3));

    // one full orbit
    CHECK(m2c(Qam16Symbol(1, -3)) == Qam16Symbol(-3, -1));
    CHECK(m2c(Qam16Symbol(-3, -1)) == Qam16Symbol(-1, 3));
    CHECK(m2c(Qam16Symbol(-1, 3)) == Qam16Symbol(3, 1));

    // cycle structure: applying twice negates, four times is the identity
    for (int b = 0; b < 16; ++b) {
        const Qam16Symbol s = detail::qam16_from_bits(b);
        const Qam16Symbol s2 = m2c(m2c(s));
        CHECK(s2 == Qam16Symbol(-s.re, -s.im));
        CHECK(m2c(m2c(s2)) == s);
        // commutes with conjugation
        CHECK(m2c(s.conj()) == m2c(s).conj());
    }
}

TEST_CASE("symbol validation", "[stcodes]") {
    CHECK_THROWS_AS(Qam16Symbol(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(Qam16Symbol(1, 5), std::invalid_argument);
    CHECK_THROWS_AS(Qam4Symbol(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(CodeSpec::rsa(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(CodeSpec::rsa(2.0), std::invalid_argument);
    CHECK(CodeSpec::rsa().theta == 1.028);
    CHECK(CodeSpec::rsa(0.0).theta == 0.0);
}

TEST_CASE("codeword construction", "[stcodes]") {
    // Alamouti, (s1, s2) = (1+j, 1-j): msg fields 1010 / 1001
    const Matrix2c a = raw_codeword(CodeSpec::alamouti(), 0xA9);
    CHECK(a.m11 == Complex(1.0, 1.0));
    CHECK(a.m12 == Complex(-1.0, -1.0));
    CHECK(a.m21 == Complex(1.0, -1.0));
    CHECK(a.m22 == Complex(1.0, -1.0));

    // rotated-scaled, (s1, s2) = (3+3j, 1+1j): second row is remapped, first
    // row carries the rotation
    const Matrix2c r = raw_codeword(CodeSpec::rsa(), 0xFA);
    CHECK(r.m21 == Complex(-3.0, -3.0));
    CHECK(r.m22 == Complex(1.0, -1.0));
    CHECK(r.m12 == Complex(-1.0, 1.0));
    CHECK(r.m11 == std::polar(1.0, 1.028) * Complex(3.0, 3.0));

    // golden code, all four symbols 1+j (frozen independent evaluation)
    const Matrix2c g = raw_codeword(CodeSpec::golden(), 0xFF);
    const double eps = 1e-12;
    CHECK(std::abs(g.m11 - Complex(1.894427190999916, 0.447213595499958)) < eps);
    CHECK(std::abs(g.m12 - Complex(1.894427190999916, 0.447213595499958)) < eps);
    CHECK(std::abs(g.m21 - Complex(-0.447213595499958, -0.105572809000084)) < eps);
    CHECK(std::abs(g.m22 - Complex(-0.105572809000084, 0.447213595499958)) < eps);

    // uncoded: row-major 2-bit fields
    const Matrix2c u = raw_codeword(CodeSpec::uncoded(), 0b11'01'00'10);
    CHECK(u.m11 == Complex(1.0, 1.0));
    CHECK(u.m12 == Complex(-1.0, 1.0));
    CHECK(u.m21 == Complex(-1.0, -1.0));
    CHECK(u.m22 == Complex(1.0, -1.0));

    CHECK_THROWS_AS(raw_codeword(CodeSpec::alamouti(), -1), std::invalid_argument);
    CHECK_THROWS_AS(raw_codeword(CodeSpec::alamouti(), 256), std::invalid_argument);
}

TEST_CASE("tilted rotations preserve pair energy", "[stcodes]") {
    for (int msg = 0; msg < 256; ++msg) {
        const Matrix2c x = raw_codeword(CodeSpec::tilted_qam(), msg);
        CHECK(std::norm(x.m11) + std::norm(x.m22) == Catch::Approx(4.0).margin(1e-12));
        CHECK(std::norm(x.m21) + std::norm(x.m12) == Catch::Approx(4.0).margin(1e-12));
    }
}

TEST_CASE("codebook energy normalization", "[stcodes]") {
    CHECK(average_energy(CodeSpec::uncoded()) == Catch::Approx(4.0).margin(1e-12));
    CHECK(average_energy(CodeSpec::alamouti()) == Catch::Approx(20.0).margin(1e-12));
    CHECK(average_energy(CodeSpec::tilted_qam()) == Catch::Approx(4.0).margin(1e-12));
    CHECK(average_energy(CodeSpec::rsa()) == Catch::Approx(20.0).margin(1e-12));
    CHECK(average_energy(CodeSpec::golden()) == Catch::Approx(4.0).margin(1e-12));

    for (const CodeSpec& code : kAll) {
        const Codebook cb(code);
        double sum = 0.0;
        for (int msg = 0; msg < 256; ++msg)
            sum += frob_norm_sq(cb.norm() * cb.raw(msg));
        CHECK(sum / (256.0 * 2.0) == Catch::Approx(1.0).margin(1e-12));
        CHECK(cb.norm() == encode(code, 0).norm);
        CHECK(cb.raw(17) == raw_codeword(code, 17));
    }
}

TEST_CASE("encode is injective", "[stcodes]") {
    for (const CodeSpec& code : kAll) {
        std::vector<Matrix2c> all;
        all.reserve(256);
        for (int msg = 0; msg < 256; ++msg) all.push_back(raw_codeword(code, msg));
        for (int i = 0; i < 256; ++i)
            for (int j = i + 1; j < 256; ++j)
                CHECK(frob_norm_sq(all[static_cast<std::size_t>(i)] -
                                   all[static_cast<std::size_t>(j)]) > 1e-12);
    }
}

TEST_CASE("rotation and remap keep the 16-QAM magnitude multiset", "[stcodes]") {
    auto magnitudes = [](const CodeSpec& code) {
        std::vector<double> m;
        m.reserve(256 * 4);
        for (int msg = 0; msg < 256; ++msg) {
            const Matrix2c x = raw_codeword(code, msg);
            m.push_back(std::abs(x.m11));
            m.push_back(std::abs(x.m12));
            m.push_back(std::abs(x.m21));
            m.push_back(std::abs(x.m22));
        }
        std::sort(m.begin(), m.end());
        return m;
    };
    const std::vector<double> a = magnitudes(CodeSpec::alamouti());
    const std::vector<double> r = magnitudes(CodeSpec::rsa());
    REQUIRE(a.size() == r.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(a[i] == Catch::Approx(r[i]).margin(1e-9));
}
