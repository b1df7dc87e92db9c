#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace roughcp {

// Fixed generator stack so that seeds mean the same thing on every platform:
// SplitMix64 derives substream seeds, std::mt19937_64 (bit-exact per the C++
// standard) supplies uniforms, and an explicit Box-Muller maps them to normals.
inline constexpr const char* rng_algorithm_id = "splitmix64-substreams/mt19937_64/box-muller";

struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
};

// Substream i gets the (i+1)-th SplitMix64 output for the master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    SplitMix64 sm(master);
    std::uint64_t out = sm.next();
    for (std::uint64_t i = 0; i < index; ++i) out = sm.next();
    return out;
}

class GaussianSampler {
public:
    explicit GaussianSampler(std::uint64_t seed) : eng_(seed) {}

    // uniform on (0,1]; never 0 so log() below is safe
    double uniform_open() { return static_cast<double>((eng_() >> 11) + 1) * 0x1.0p-53; }
    // uniform on [0,1)
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform_open()));
        const double a = 2.0 * std::numbers::pi * uniform();
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

private:
    std::mt19937_64 eng_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace roughcp
