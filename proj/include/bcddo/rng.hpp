#pragma once

#include <cstdint>
#include <random>

namespace bcddo {

/// Seeded random source with portable draw semantics. All stochastic
/// choices in the optimizer go through this wrapper so that a seed fully
/// determines a run regardless of the standard library's distribution
/// implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform real in [lo, hi).
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * next_unit();
    }

    /// Uniform real in [0, 1) with 53 bits of randomness.
    double next_unit() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform index in [0, n). Rejection sampling keeps the mapping
    /// unbiased and independent of the platform.
    std::size_t index(std::size_t n) {
        const std::uint64_t bound = n;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t v;
        do {
            v = engine_();
        } while (v >= limit);
        return static_cast<std::size_t>(v % bound);
    }

    std::uint64_t raw() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace bcddo
