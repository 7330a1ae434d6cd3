#pragma once

// Deterministic random numbers with an explicitly spelled-out pipeline, so
// streams are reproducible bit for bit across platforms and standard-library
// versions. splitmix64 both seeds the generator and derives independent
// per-cell substreams.

#include <cmath>
#include <cstdint>
#include <numbers>

namespace reeblab {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Derive a stream seed for substream `index` of `seed` (used for scan cells).
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t s = seed ^ (0x853c49e6748fea9bULL + index * 0xda3e39cb94b95bdbULL);
    return splitmix64(s);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        // Expand the seed into generator state via splitmix64, the standard
        // recipe for initializing xorshift-family generators.
        std::uint64_t sm = seed;
        s0_ = splitmix64(sm);
        s1_ = splitmix64(sm);
    }

    // xorshift128+ core.
    std::uint64_t next_u64() {
        std::uint64_t x = s0_;
        const std::uint64_t y = s1_;
        s0_ = y;
        x ^= x << 23;
        s1_ = x ^ y ^ (x >> 17) ^ (y >> 26);
        return s1_ + y;
    }

    // Uniform in [0, 1): top 53 bits scaled by 2^-53.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Box-Muller, one fresh pair per call; the sine partner is discarded so
    // no state is cached between calls.
    double gaussian() {
        double u1 = uniform01();
        while (u1 == 0.0) u1 = uniform01();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::uint64_t s0_, s1_;
};

} // namespace reeblab
