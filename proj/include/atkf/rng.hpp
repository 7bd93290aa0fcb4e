#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace atkf {

/// splitmix64 step (Steele/Lea/Flood mixing constants). Used for seed
/// expansion and sub-stream derivation so that datasets reproduce across
/// platforms regardless of the standard library in use.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Derives a sub-stream seed from a root seed and a list of integer tags
/// (stage ids, instance indices, ...). Chaining splitmix64 over the tags
/// makes the fan-out explicit and order-sensitive.
inline std::uint64_t derive_seed(std::uint64_t root, std::initializer_list<std::uint64_t> tags) {
    std::uint64_t s = root;
    splitmix64(s);
    for (std::uint64_t t : tags) {
        s ^= t * 0x9E3779B97F4A7C15ULL;
        splitmix64(s);
    }
    return s;
}

/// xoshiro256++ generator (Blackman & Vigna) with Box-Muller Gaussian draws.
/// All noise in the project flows through this class; the algorithm is fixed
/// here rather than delegated to std::normal_distribution, whose output is
/// implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : state_) word = splitmix64(sm);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1), 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Standard normal via Box-Muller; the second draw of each pair is cached.
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        // u1 in (0, 1] so the logarithm stays finite.
        const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
        const double u2 = uniform01();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * kPi * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

    std::vector<double> gaussian_vector(int n) {
        std::vector<double> out(static_cast<std::size_t>(n));
        for (auto& v : out) v = gaussian();
        return out;
    }

private:
    static constexpr double kPi = 3.14159265358979323846;

    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t state_[4];
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace atkf
