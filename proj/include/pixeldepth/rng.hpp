#pragma once

#include <cstdint>

namespace pixeldepth {

// Deterministic 64-bit generator (splitmix64). All seeded generation in the
// toolkit goes through this so that identical specs produce bit-identical
// images on every platform. Algorithm id: "splitmix64-1".
class Rng {
public:
    static constexpr const char* algorithm_id = "splitmix64-1";

    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1), 53-bit resolution.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * (1.0 / 9007199254740992.0);
    }

    /// Uniform integer in [0, bound). bound must be > 0.
    uint64_t next_below(uint64_t bound) {
        // rejection sampling on the top bits, no modulo bias
        uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    bool next_bit() { return (next_u64() >> 63) != 0; }

    /// Derive an independent stream (e.g. per run index) from this seed.
    static uint64_t derive(uint64_t seed, uint64_t stream) {
        Rng r(seed ^ (0xA0761D6478BD642Full * (stream + 1)));
        return r.next_u64();
    }

private:
    uint64_t state_;
};

} // namespace pixeldepth
