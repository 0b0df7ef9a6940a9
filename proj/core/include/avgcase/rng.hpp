#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace avgcase {

// All randomness flows through RngStream so results depend only on
// (master seed, stream id), never on scheduling or platform.
// mt19937_64 seeded from a single 64-bit value plus the explicit
// transforms below are fully specified, so identical seeds reproduce
// bit-identical draws everywhere.  std::uniform_real_distribution and
// std::normal_distribution are implementation-defined and deliberately
// not used.

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Seed for sub-stream `stream` of a master seed.  Mixing twice keeps
// adjacent masters and adjacent streams decorrelated.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t s = master;
    (void)splitmix64(s);
    s ^= 0x9E3779B97F4A7C15ULL * (stream + 1);
    return splitmix64(s);
}

class RngStream {
public:
    RngStream(std::uint64_t master, std::uint64_t stream)
        : seed_(derive_seed(master, stream)), gen_(seed_) {}
    explicit RngStream(std::uint64_t seed) : seed_(seed), gen_(seed) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t bits() { return gen_(); }

    // Uniform on [0,1) with 53 random bits.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // Uniform on (0,1]; never zero, so log() is safe.
    double uniform_pos() {
        return static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53;
    }

    // Unbiased integer in [0, n) by rejection.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = n * ((~std::uint64_t{0}) / n);
        std::uint64_t x;
        do {
            x = gen_();
        } while (x >= limit);
        return x % n;
    }

    // Standard normal via Box-Muller; consumes exactly two uniforms per
    // pair of variates.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform_pos();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace avgcase
