#pragma once

#include <cmath>
#include <cstdint>

namespace solarcast {

// SplitMix64 (Steele, Lea & Flood 2014). Chosen over std::mt19937 because the
// whole generation path, including the uniform and normal transforms below, is
// pinned down here: the same seed gives the same stream on every platform and
// thread count.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1), 53 mantissa bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Unbiased-enough integer in [0, n) via Lemire's multiply-shift.
    std::uint64_t below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * n) >> 64);
    }

    // Box-Muller, cosine branch only; two uniforms per draw, no cached spare.
    double normal(double mean = 0.0, double stddev = 1.0) {
        const double u1 = 1.0 - uniform01();  // (0, 1]
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        return mean + stddev * r * std::cos(6.283185307179586476925286766559 * u2);
    }

private:
    std::uint64_t state_;
};

// Independent sub-stream seed for (master, stream). Used wherever several
// seeded series or workers must stay reproducible regardless of scheduling.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    SplitMix64 mixer(master ^ (stream * 0xD2B74407B1CE6E93ULL + 0x9E3779B97F4A7C15ULL));
    return mixer.next();
}

}  // namespace solarcast
