#pragma once

#include <cmath>
#include <cstdint>

#include "equiloci/complex3.hpp"

namespace equiloci {

/// Deterministic, platform-independent generator (splitmix64 core). All sampling in the
/// library goes through this so that fixed seeds give identical streams everywhere.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller.
    double gaussian() {
        double u1 = uniform();
        double u2 = uniform();
        if (u1 < 1e-300) u1 = 1e-300;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    Complex gaussian_complex() { return {gaussian(), gaussian()}; }

    Vec3 gaussian_vec3() { return {gaussian_complex(), gaussian_complex(), gaussian_complex()}; }

    /// Derive an independent stream; used to hand disjoint seed ranges to sub-tasks.
    Rng fork(std::uint64_t salt) { return Rng(next_u64() ^ (0x632be59bd9b4e019ULL * (salt + 1))); }

  private:
    std::uint64_t state_;
};

}  // namespace equiloci
