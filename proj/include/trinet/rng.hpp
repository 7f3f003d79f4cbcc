#pragma once

#include <cmath>
#include <cstdint>

namespace trinet {

// SplitMix64: 64-bit-state generator (Steele, Lea & Flood 2014). Chosen over
// <random> engines because the standard distributions are implementation
// defined; every draw here is specified bit-for-bit, so seeded runs replay
// identically across platforms. The draw order used by the initial-condition
// samplers is documented in the README.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform on [0,1), 53 random mantissa bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

    // Box-Muller, cosine branch only: consumes exactly two uniforms per call.
    double normal(double mean, double stddev) {
        const double u1 = 1.0 - next_double(); // (0,1], keeps log finite
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        return mean + stddev * r * std::cos(2.0 * M_PI * u2);
    }

private:
    std::uint64_t state_;
};

} // namespace trinet
