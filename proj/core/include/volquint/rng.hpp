#pragma once

#include <cmath>
#include <cstdint>

namespace volquint {

// Counter-based generator: every draw is a pure function of
// (seed, stream, counter), so scenarios are reproducible byte for byte and
// independent of draw order. Core mixer is the splitmix64 finalizer.
class CounterRng {
public:
    explicit CounterRng(uint64_t seed) : seed_(seed) {}

    uint64_t bits(uint64_t stream, uint64_t counter) const {
        uint64_t key = mix(seed_ + 0x9E3779B97F4A7C15ULL * (stream + 1));
        return mix(key ^ mix(counter + 0xBF58476D1CE4E5B9ULL));
    }

    // Uniform on the open interval (0, 1).
    double uniform(uint64_t stream, uint64_t counter) const {
        return (static_cast<double>(bits(stream, counter) >> 11) + 0.5) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; consumes counters 2c and 2c+1.
    double normal(uint64_t stream, uint64_t counter) const {
        double u1 = uniform(stream, 2 * counter);
        double u2 = uniform(stream, 2 * counter + 1);
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    uint64_t seed() const { return seed_; }

private:
    static uint64_t mix(uint64_t z) {
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    uint64_t seed_;
};

} // namespace volquint
