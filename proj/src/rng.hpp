#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace wsnloc {

// splitmix64 finalizer; also used to derive child seeds so that adding
// runs or streams never perturbs earlier ones.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) {
    return mix64(parent + 0x9E3779B97F4A7C15ULL * (index + 1));
}

// Deterministic random stream (splitmix64). All simulation randomness goes
// through this so results are reproducible across platforms, unlike the
// implementation-defined std:: distributions.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix64(state_);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }

    // Standard normal via Box-Muller; consumes exactly two uniform draws.
    double normal() {
        double u1 = uniform01();
        double u2 = uniform01();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::uint64_t state_;
};

}  // namespace wsnloc
