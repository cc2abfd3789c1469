#pragma once

#include <array>
#include <cstdint>

namespace rso {

// Counter-based randomness. Every draw is a pure function of
// (master seed, stream, counter words), so coordinate draws are
// order-independent and conditional resampling can freeze a subset of
// coordinates while redrawing the rest from a fresh stream.

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline std::uint64_t mix_in(std::uint64_t h, std::uint64_t w) {
    return splitmix64(h ^ (w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2)));
}

template <typename... Ws>
std::uint64_t derive_seed(std::uint64_t seed, Ws... words) {
    std::uint64_t h = splitmix64(seed);
    ((h = mix_in(h, static_cast<std::uint64_t>(words))), ...);
    return h;
}

// Uniform in [0,1) from the top 53 bits.
inline double u01(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

// Strictly inside (0,1); safe to feed through an inverse CDF.
inline double u01_open(std::uint64_t bits) {
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

// Lattice coordinates packed into one word; |n_i| < 2^20 is far beyond any
// box this tool can hold in memory.
inline std::uint64_t pack_coord(const std::array<int, 3>& n) {
    constexpr std::uint64_t bias = 1u << 20;
    return ((static_cast<std::uint64_t>(n[0]) + bias) << 42) |
           ((static_cast<std::uint64_t>(n[1]) + bias) << 21) |
           (static_cast<std::uint64_t>(n[2]) + bias);
}

// Sequential stream for bulk draws (bootstrap resampling, synthetic samples).
// Thin counter wrapper, same reproducibility guarantees.
struct StreamRng {
    std::uint64_t base;
    std::uint64_t ctr = 0;
    explicit StreamRng(std::uint64_t seed) : base(seed) {}
    std::uint64_t next() { return splitmix64(base + 0x632be59bd9b4e019ull * ++ctr); }
    double next_u01() { return u01(next()); }
    double next_u01_open() { return u01_open(next()); }
    // Uniform integer in [0, n) by rejection-free scaling; bias is < 2^-53*n,
    // irrelevant for bootstrap index draws.
    std::uint64_t next_index(std::uint64_t n) {
        return static_cast<std::uint64_t>(next_u01() * static_cast<double>(n));
    }
};

}  // namespace rso
