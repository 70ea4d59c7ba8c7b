#ifndef HLLL_HASHING_HPP
#define HLLL_HASHING_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hlll {

// Multiplicative constant for Fibonacci hashing: 2^64 / phi, rounded to odd.
inline constexpr std::uint64_t kFibonacciMultiplier = 0x9E3779B97F4A7C15ULL;

// Identifies the 64-bit hash in use. Sketches are mergeable only when both
// sides carry the same id and seed, so the pair travels in the serialized
// header.
struct HashConfig {
    std::string hash_id = "xxh64";
    std::uint64_t seed = 0;

    bool operator==(const HashConfig&) const = default;
};

// Seeded 64-bit xxHash (XXH64) over an arbitrary byte range.
std::uint64_t xxh64(const void* data, std::size_t len, std::uint64_t seed);

inline std::uint64_t hash_bytes(std::string_view key, std::uint64_t seed) {
    return xxh64(key.data(), key.size(), seed);
}

// 64-bit keys are hashed as their 8 little-endian bytes so the value is
// independent of host byte order.
inline std::uint64_t hash_u64(std::uint64_t key, std::uint64_t seed) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i)
        b[i] = static_cast<unsigned char>(key >> (8 * i));
    return xxh64(b, 8, seed);
}

// Register index: top log2m bits of h * kFibonacciMultiplier mod 2^64.
// The multiplier is odd, so the multiplication itself is a permutation of
// [2^64]; only the truncation can collide.
inline std::uint64_t register_index(std::uint64_t h, unsigned log2m) {
    if (log2m < 1 || log2m > 64)
        throw std::invalid_argument("register_index: log2m must be in [1, 64]");
    return (h * kFibonacciMultiplier) >> (64 - log2m);
}

// 1-based position of the first one-bit reading from the most significant
// end: rho(0^{k-1}1...) = k. Zero has no one-bit and maps to 64; combined
// with clamp_rank this affects estimates by at most n * 2^-62 relative.
inline unsigned rho(std::uint64_t x) {
    return x == 0 ? 64u : static_cast<unsigned>(std::countl_zero(x)) + 1u;
}

// Ranks are stored in 6-bit registers, so 64 becomes 63.
inline unsigned clamp_rank(unsigned r) {
    return r < 63 ? r : 63;
}

}  // namespace hlll

#endif
