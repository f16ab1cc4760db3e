#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>

#include "stc/mindet.hpp"
#include "stc/rng.hpp"

using namespace stc;

TEST_CASE("minimum determinant of the baseline codes", "[mindet]") {
    CHECK(min_det(CodeSpec::uncoded()) == Catch::Approx(0.0).margin(1e-12));
    CHECK(min_det(CodeSpec::alamouti()) == Catch::Approx(4.0).margin(1e-12));
    CHECK(min_det(CodeSpec::tilted_qam()) == Catch::Approx(0.8944271909999144).margin(1e-9));
    CHECK(min_det(CodeSpec::golden()) == Catch::Approx(1.7888543819998308).margin(1e-9));
    CHECK(min_det(CodeSpec::rsa(1.028)) == Catch::Approx(7.607401868337828).margin(1e-9));
    CHECK(min_det(CodeSpec::rsa(0.0)) == Catch::Approx(0.0).margin(1e-9));

    // paper-scale window for the rotated-scaled code at its quoted angle
    CHECK(min_det(CodeSpec::rsa(1.028)) == Catch::Approx(7.613).margin(0.01));
}

TEST_CASE("alamouti difference determinant closed form", "[mindet]") {
    // det of an Alamouti difference is |ds1|^2 + |ds2|^2; minimum over
    // distinct 16-QAM pairs is 2^2 = 4
    double best = 1e300;
    for (int i = 0; i < 16; ++i)
        for (int k = 0; k < 16; ++k)
            for (int m = 0; m < 16; ++m)
                for (int n = 0; n < 16; ++n) {
                    if (i == k && m == n) continue;
                    const Complex d1 = detail::qam16_from_bits(i).to_complex() -
                                       detail::qam16_from_bits(k).to_complex();
                    const Complex d2 = detail::qam16_from_bits(m).to_complex() -
                                       detail::qam16_from_bits(n).to_complex();
                    best = std::min(best, std::norm(d1) + std::norm(d2));
                }
    CHECK(best == Catch::Approx(min_det(CodeSpec::alamouti())).margin(1e-12));
}

TEST_CASE("pair determinants are phase invariant", "[mindet]") {
    Rng rng(3);
    const CodeSpec code = CodeSpec::rsa(0.9);
    for (int it = 0; it < 500; ++it) {
        const int i = static_cast<int>(rng.next_u64() & 255);
        int k = static_cast<int>(rng.next_u64() & 255);
        if (k == i) k = (k + 1) & 255;
        const Matrix2c d = raw_codeword(code, i) - raw_codeword(code, k);
        const Complex phase = std::polar(1.0, 2.0 * std::numbers::pi * rng.next_unit());
        CHECK(std::abs(det2(phase * d)) == Catch::Approx(std::abs(det2(d))).epsilon(1e-12));
    }
}

TEST_CASE("sweep agrees with the exhaustive evaluation", "[mindet]") {
    for (double theta : {0.3, 0.7, 1.028}) {
        const SweepResult r = theta_sweep(theta, theta + 5e-4, 5e-4);
        REQUIRE(r.points.size() >= 1);
        CHECK(r.points[0].theta == theta);
        CHECK(r.points[0].mindet == Catch::Approx(min_det(CodeSpec::rsa(theta))).margin(1e-9));
    }
}

TEST_CASE("sweep grid and argmax bookkeeping", "[mindet]") {
    const SweepResult r = theta_sweep(0.1, 0.2, 0.02);
    REQUIRE(r.points.size() == 6);
    CHECK(r.points.front().theta == Catch::Approx(0.1));
    CHECK(r.points.back().theta == Catch::Approx(0.2));
    double best = -1.0;
    for (const SweepPoint& p : r.points) best = std::max(best, p.mindet);
    CHECK(r.mindet_opt == best);

    CHECK_THROWS_AS(theta_sweep(0.5, 0.4, 0.01), std::invalid_argument);
    CHECK_THROWS_AS(theta_sweep(-0.1, 0.4, 0.01), std::invalid_argument);
    CHECK_THROWS_AS(theta_sweep(0.0, 2.0, 0.01), std::invalid_argument);
    CHECK_THROWS_AS(theta_sweep(0.1, 0.2, 0.0), std::invalid_argument);
}

TEST_CASE("two-stage optimum in a small window", "[mindet]") {
    const SweepResult r = optimize_theta(1.0, 1.05, 0.002, 1e-4);
    CHECK(r.theta_opt == Catch::Approx(1.0276).margin(2.5e-4));
    CHECK(r.mindet_opt == Catch::Approx(7.613212).margin(1e-3));
    CHECK(r.points.size() == 26);
}
