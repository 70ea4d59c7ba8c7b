#include "hlll/datagen.hpp"

#include "hlll/hashing.hpp"

namespace hlll {

namespace {

constexpr char kAlphabet[] =
    "0123456789"
    "ABCDEFGHIJKLMNOPQRSTUVWXYZ"
    "abcdefghijklmnopqrstuvwxyz";
static_assert(sizeof(kAlphabet) == 63);  // 62 characters + NUL

}  // namespace

std::string_view to_string(InputKind k) {
    switch (k) {
        case InputKind::U64: return "u64";
        case InputKind::Ascii8: return "ascii8";
        case InputKind::Pair: return "pair";
    }
    return "?";
}

std::optional<InputKind> parse_input_kind(std::string_view s) {
    if (s == "u64")
        return InputKind::U64;
    if (s == "ascii8")
        return InputKind::Ascii8;
    if (s == "pair")
        return InputKind::Pair;
    return std::nullopt;
}

std::string DataGenerator::next_ascii8() {
    std::string s(8, '\0');
    for (char& c : s) {
        // multiply-shift bound on the high 32 bits; bias is below 62/2^32
        const std::uint32_t hi = static_cast<std::uint32_t>(rng_() >> 32);
        c = kAlphabet[(static_cast<std::uint64_t>(hi) * 62) >> 32];
    }
    return s;
}

PairUpdate DataGenerator::next_pair(unsigned log2m) {
    const std::uint64_t j = rng_() >> (64 - log2m);
    const unsigned r = clamp_rank(rho(rng_()));
    return {static_cast<std::uint32_t>(j), static_cast<std::uint8_t>(r)};
}

std::uint64_t derive_trial_seed(std::uint64_t seed, std::uint64_t trial) {
    return hash_u64(seed ^ trial, 0);
}

}  // namespace hlll
