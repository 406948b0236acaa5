// SPDX-License-Identifier: Apache-2.0
//
// Deterministic random number utilities. Monte Carlo code derives one
// independent substream per trial from a master seed, so trial results do not
// depend on scheduling and runs are reproducible bit-for-bit. Gaussian
// variates use an explicit Box-Muller transform rather than
// std::normal_distribution, whose output is implementation-defined.

#pragma once

#include <cstdint>
#include <random>

#include "bfdm/types.hpp"

namespace bfdm {

/// SplitMix64 mixing step; used both as a stand-alone generator for seeding
/// and to hash (seed, stream) pairs into substream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Derive the seed of substream `stream` from a master seed.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t stream) {
    return splitmix64(splitmix64(master) ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1).
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n).
    std::uint64_t uniform_int(std::uint64_t n) {
        // Rejection sampling to avoid modulo bias.
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do { v = next_u64(); } while (v >= limit);
        return v % n;
    }

    /// Standard normal via Box-Muller.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1, u2;
        do { u1 = uniform(); } while (u1 <= 0.0);
        u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * pi * u2);
        have_spare_ = true;
        return r * std::cos(2.0 * pi * u2);
    }

    /// Circularly symmetric complex normal with E|z|^2 = 1.
    cplx cgaussian() {
        constexpr double s = 0.70710678118654752440;  // 1/sqrt(2)
        double re = gaussian();
        double im = gaussian();
        return cplx(re * s, im * s);
    }

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace bfdm
