#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "pfwd/errors.hpp"

namespace pfwd {

/// SplitMix64 step; used to derive substream seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Mix a seed with a tag (e.g. chunk index, sweep position) into a fresh seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag) {
    std::uint64_t s = seed ^ (0x9e3779b97f4a7c15ULL + tag * 0xff51afd7ed558ccdULL);
    splitmix64(s);
    return splitmix64(s);
}

/// Seeded random source. The engine is std::mt19937_64, which the standard
/// pins bit-for-bit; all conversions below avoid std::*_distribution so the
/// generated streams do not depend on the standard library implementation.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Standard normal via Box-Muller (cosine branch only, two draws per call).
    double normal() {
        double u1 = uniform01(), u2 = uniform01();
        while (u1 == 0.0) u1 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    /// Beta(r, s) on [0, 1] via Johnk's rejection method.
    double beta(double r, double s) {
        for (int tries = 0; tries < 100000; ++tries) {
            const double x = std::pow(uniform01(), 1.0 / r);
            const double y = std::pow(uniform01(), 1.0 / s);
            if (x + y <= 1.0 && x + y > 0.0) return x / (x + y);
        }
        throw numerical_error("beta sampler failed to accept");
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace pfwd
