#ifndef HLLL_DATAGEN_HPP
#define HLLL_DATAGEN_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>

namespace hlll {

// Experiment input kinds: raw 64-bit integers, 8-character alphanumeric
// ASCII strings, and hash-free (j, r) register updates.
enum class InputKind {
    U64,
    Ascii8,
    Pair,
};

std::string_view to_string(InputKind k);
std::optional<InputKind> parse_input_kind(std::string_view s);

struct PairUpdate {
    std::uint32_t j;
    std::uint8_t r;
};

// Deterministic element stream for a fixed seed. The PRNG is mt19937_64,
// fixed per release for reproducibility.
class DataGenerator {
public:
    explicit DataGenerator(std::uint64_t seed) : rng_(seed) {}

    std::uint64_t next_u64() { return rng_(); }

    // Exactly 8 characters from [0-9A-Za-z].
    std::string next_ascii8();

    // j uniform on [0, 2^log2m); r is the rank of a uniform 64-bit draw
    // clamped to [1, 63], i.e. Geom(1/2) truncated with the residual mass
    // on 63.
    PairUpdate next_pair(unsigned log2m);

private:
    std::mt19937_64 rng_;
};

// Per-trial seed: the trial index is folded into the base seed and run
// through the 64-bit hash so neighboring trials are uncorrelated.
std::uint64_t derive_trial_seed(std::uint64_t seed, std::uint64_t trial);

}  // namespace hlll

#endif
