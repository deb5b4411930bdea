#pragma once

// Counter-based pseudo-random generator: draw k is a pure function of
// (seed, k), so every stream is reproducible and the number of draws
// consumed is observable.

#include <cstdint>

namespace ospan {

class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t next_u64() { return mix(seed_, counter_++); }

    // Uniform in [0, 1), 53-bit resolution.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return next_double() < p; }

    // Uniform in [0, n); rejection sampling, no modulo bias.
    int next_below(int n) {
        if (n <= 0) return 0;
        const std::uint64_t bound = static_cast<std::uint64_t>(n);
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit);
        return static_cast<int>(v % bound);
    }

    std::uint64_t draws() const { return counter_; }
    std::uint64_t seed() const { return seed_; }

private:
    // SplitMix64 finalizer over seed + counter * golden gamma.
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t ctr) {
        std::uint64_t z = seed + (ctr + 1) * 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

}  // namespace ospan
