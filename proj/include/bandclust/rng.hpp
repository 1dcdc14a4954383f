#pragma once
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace bandclust {

// splitmix64 output function; used for seed derivation only.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Splittable streams: a master seed plus (purpose, a, b) coordinates gives an
// independent substream seed. Trials and grid points never share a stream, so
// results do not depend on execution order.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t purpose,
                                 std::uint64_t a = 0, std::uint64_t b = 0) {
    std::uint64_t h = splitmix64(master);
    h = splitmix64(h ^ (purpose + 0xD1B54A32D192ED03ULL));
    h = splitmix64(h ^ (a + 0x8CB92BA72F3D8DD7ULL));
    h = splitmix64(h ^ (b + 0xEB44ACCAB455D165ULL));
    return h;
}

// Seeded stream with fixed, engine-portable draw rules. The engine is
// std::mt19937_64 (bit-exact across standard libraries); the distribution
// transforms below are our own so sequences never depend on the stdlib's
// unspecified std::normal_distribution internals.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // 53-bit uniform in [0,1); one u64 per call
    double uniform01() { return double(next_u64() >> 11) * 0x1.0p-53; }

    // standard normal via Box-Muller (cosine branch); exactly two u64 per call
    double normal() {
        double u1 = double((next_u64() >> 11) + 1) * 0x1.0p-53; // (0,1]
        double u2 = double(next_u64() >> 11) * 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

    // unbiased integer in [0,n) via rejection; n <= 1 consumes nothing
    std::int64_t below(std::int64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t un = std::uint64_t(n);
        const std::uint64_t rem = (0 - un) % un; // 2^64 mod n
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x < rem);
        return std::int64_t(x % un);
    }

    // one uniform per call
    bool coin(double p) { return uniform01() < p; }

private:
    std::mt19937_64 eng_;
};

} // namespace bandclust
