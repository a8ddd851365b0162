// rng.hpp — deterministic random number generation.
//
// Every stochastic result in this project is a pure function of (inputs, seed).
// To keep seeded outputs stable across platforms and over time, nothing here
// uses <random> distributions; the exact algorithms are spelled out below and
// are part of the published behavior:
//
//   * Generator: splitmix64. state += 0x9E3779B97F4A7C15; the output function
//     is mix64() below (Steele, Lea & Flood's finalizer).
//   * Uniforms: u01(x) = (x >> 11) * 2^-53 in [0,1);
//     u01_open(x) = ((x >> 11) + 1) * 2^-53 in (0,1] (safe for logarithms).
//   * Standard normal: Box-Muller, z = sqrt(-2 ln u1) * cos(2 pi u2), one
//     variate per pair of uniforms (the sine branch is discarded).
//   * Poisson(mu):
//       mu <= 0      -> 0
//       mu < 10      -> Knuth's product-of-uniforms method
//       mu >= 10     -> normal approximation with continuity correction,
//                       k = max(0, floor(mu + sqrt(mu) * z + 1/2))
//     The mu threshold of 10 is fixed; changing it would change seeded output.
//   * Stream derivation: derive_seed(base, n) = mix64(base + GOLDEN*(n+1)),
//     GOLDEN = 0x9E3779B97F4A7C15. Used to give rows / samples / channels
//     independent generators so results cannot depend on evaluation order.
//
// Remaining platform sensitivity is limited to 1-ulp differences in libm
// exp/log/cos; these can flip a count only when a uniform lands within a few
// ulps of a decision boundary.
#pragma once

#include <cstdint>

namespace antibunch {

/// splitmix64 output function (finalizer). Fixed algorithm, do not change.
inline std::uint64_t mix64(std::uint64_t x) {
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

/// Independent stream seed for sub-task `stream` of a base seed.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    return mix64(base + kGolden * (stream + 1));
}

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += kGolden;
        return mix64(state_);
    }

    /// Uniform in [0, 1).
    double u01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform in (0, 1].
    double u01_open() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

    /// Standard normal via Box-Muller (cosine branch only).
    double standard_normal();

    /// Poisson variate with mean mu; algorithm documented in the file header.
    std::int64_t poisson(double mu);

private:
    std::uint64_t state_;
};

}  // namespace antibunch
