#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace cremer {

// SplitMix64 finalizer. Used to derive independent seeds from a master seed
// plus stream tags, so no module ever consumes another module's stream.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// derive_seed(master, a, b) is stable across runs and platforms; streams for
// distinct (a, b) are decorrelated.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) {
    return splitmix64(splitmix64(splitmix64(master) ^ a) ^ b);
}

// Stream tags. One per independent consumer of randomness.
namespace seed_tag {
inline constexpr std::uint64_t kTree = 0x01;
inline constexpr std::uint64_t kPoisson = 0x02;
inline constexpr std::uint64_t kUniform = 0x03;
inline constexpr std::uint64_t kAltitude = 0x04;
inline constexpr std::uint64_t kKMeans = 0x05;
inline constexpr std::uint64_t kShuffle = 0x06;
inline constexpr std::uint64_t kSplit = 0x07;
inline constexpr std::uint64_t kRun = 0x08;
inline constexpr std::uint64_t kSweep = 0x09;
inline constexpr std::uint64_t kCycle = 0x0a;
inline constexpr std::uint64_t kPositives = 0x0b;
inline constexpr std::uint64_t kTopUp = 0x0c;
inline constexpr std::uint64_t kTrim = 0x0d;
} // namespace seed_tag

// Deterministic RNG: mt19937_64 (fully specified by the standard) with
// hand-rolled distributions, since std distributions are implementation
// defined. Same seed gives bit-identical draws everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Unbiased integer in [0, n). Lemire's multiply-shift with rejection.
    std::uint64_t below(std::uint64_t n) {
        __uint128_t m = static_cast<__uint128_t>(next_u64()) * n;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < n) {
            const std::uint64_t threshold = -n % n;
            while (lo < threshold) {
                m = static_cast<__uint128_t>(next_u64()) * n;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    // [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Box-Muller, one value per call (the second is discarded so that the
    // stream position never depends on call history).
    double normal(double mean, double sd) {
        const double u1 = 1.0 - uniform01(); // (0, 1], keeps log finite
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        return mean + sd * r * std::cos(2.0 * M_PI * u2);
    }

    // Fisher-Yates. std::shuffle's engine usage is unspecified, this is not.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 gen_;
};

// FNV-1a, used for stable config hashes embedded in model files.
inline std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace cremer
