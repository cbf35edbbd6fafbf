#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>

namespace thermex {

// Deterministic random stream. The generator and every transform below are
// pinned so that a given seed produces the same draw sequence on every
// platform:
//
//   engine       std::mt19937_64 (bit-exact per the C++ standard)
//   uniform()    top 53 bits of one u64 -> double in [0,1)
//   uniform_int  rejection sampling on u64, unbiased, >= 1 draw
//   poisson      Knuth multiplication method, one uniform per iteration
//   gauss        Box-Muller (cosine branch), exactly two uniforms
//
// Distribution helpers from <random> are intentionally not used: their
// algorithms are implementation-defined and would break cross-platform
// reproducibility.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform double in [0,1) with 53-bit resolution.
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + uniform() * (hi - lo);
    }

    // Uniform integer in [lo, hi], both inclusive.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1u;
        if (span == 0) // full 64-bit range
            return static_cast<std::int64_t>(next_u64());
        const std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
        const std::uint64_t excess = (kMax % span + 1) % span; // 2^64 mod span
        for (;;) {
            const std::uint64_t u = next_u64();
            if (u <= kMax - excess)
                return lo + static_cast<std::int64_t>(u % span);
        }
    }

    // Poisson(lam) by Knuth's multiplication method. Intended for small
    // means (walker durations); run time grows linearly with lam.
    int poisson(double lam) {
        const double limit = std::exp(-lam);
        int k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= uniform();
        } while (p > limit);
        return k - 1;
    }

    // Standard normal via Box-Muller; consumes exactly two uniforms.
    double gauss() {
        const double u1 = 1.0 - uniform(); // (0,1], keeps log finite
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

    double gauss(double mu, double sigma) { return mu + sigma * gauss(); }

private:
    std::mt19937_64 gen_;
};

} // namespace thermex
