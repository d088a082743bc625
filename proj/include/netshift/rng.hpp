#pragma once

#include <cstdint>
#include <initializer_list>

namespace netshift {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace detail

/// Deterministic child seed keyed by (root, path).
inline std::uint64_t derive_seed(std::uint64_t root, std::initializer_list<std::uint64_t> path) {
    std::uint64_t h = detail::splitmix64(root);
    for (std::uint64_t p : path) h = detail::splitmix64(h ^ detail::splitmix64(p));
    return h;
}

/// Small counter-free PRNG (xoshiro256**) with splitmix64 seeding and a
/// splittable stream derivation, so every trial gets an independent stream
/// that is identical whether trials run serially or in parallel. Using our
/// own draw primitives keeps outputs identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& word : state_) word = (x = detail::splitmix64(x));
    }

    /// Derives an independent stream keyed by (root seed, path).
    static Rng stream(std::uint64_t root, std::initializer_list<std::uint64_t> path) {
        std::uint64_t h = detail::splitmix64(root);
        for (std::uint64_t p : path) h = detail::splitmix64(h ^ detail::splitmix64(p));
        return Rng(h);
    }

    std::uint64_t next_u64() {
        auto rotl = [](std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); };
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform integer in [0, n), unbiased via rejection.
    std::uint64_t uniform_u64(std::uint64_t n) {
        const std::uint64_t limit = n * (UINT64_MAX / n);
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % n;
    }

    /// Uniform integer in [lo, hi] inclusive.
    std::uint64_t uniform_range(std::uint64_t lo, std::uint64_t hi) {
        return lo + uniform_u64(hi - lo + 1);
    }

    /// Uniform double in [0, 1).
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_[4];
};

}  // namespace netshift
