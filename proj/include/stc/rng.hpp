#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

#include "stc/complexmat.hpp"

namespace stc {

namespace detail {

// splitmix64 finalizer. Good avalanche, cheap, and stateless: we use it both
// as the per-draw output function and to mix stream ids into the state.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace detail

// Counter-based generator: output i of stream s is mix64(state(s) + i), so a
// fork is just a re-mixed state and draws never depend on sibling streams.
// Identical (seed, fork path, draw index) gives identical bits on every
// platform; there is no hidden state beyond the counter.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(detail::mix64(seed)) {}

    // Independent substream; fork(i) != fork(j) for i != j, and forking does
    // not advance this generator.
    Rng fork(std::uint64_t index) const {
        Rng child(0);
        child.state_ = detail::mix64(state_ ^ detail::mix64(index + 0x632be59bd9b4e019ULL));
        child.counter_ = 0;
        return child;
    }

    std::uint64_t next_u64() { return detail::mix64(state_ + ++counter_); }

    // Uniform on (0, 1]: zero is excluded so log() below is always finite.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53 + 0x1.0p-53;
    }

    // One Box-Muller pair of independent standard normals, consuming exactly
    // two uniforms.
    void next_gauss_pair(double& z0, double& z1) {
        double u1 = next_unit();
        double u2 = next_unit();
        double r = std::sqrt(-2.0 * std::log(u1));
        double phi = 2.0 * std::numbers::pi * u2;
        z0 = r * std::cos(phi);
        z1 = r * std::sin(phi);
    }

  private:
    std::uint64_t state_ = 0;
    std::uint64_t counter_ = 0;
};

// Circularly symmetric complex Gaussian with E|z|^2 = var (var/2 per part).
inline Complex sample_cgauss(Rng& rng, double var) {
    if (!(var > 0.0)) throw std::invalid_argument("sample_cgauss: var must be > 0");
    double z0, z1;
    rng.next_gauss_pair(z0, z1);
    double s = std::sqrt(var / 2.0);
    return {s * z0, s * z1};
}

}  // namespace stc
