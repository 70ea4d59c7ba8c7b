#ifndef HLLL_SKETCH_IO_HPP
#define HLLL_SKETCH_IO_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <variant>
#include <vector>

#include "hlll/errors.hpp"
#include "hlll/hll_sketch.hpp"
#include "hlll/hlll_sketch.hpp"

namespace hlll {

// Envelope layout (all multi-byte fields little-endian):
//   magic "HLLL" | version 1 | kind | log2m | kappa | B |
//   hash_id_len | hash_id bytes | seed (8) | sparse_count (8) |
//   dense words | sparse words
// kind: 0 = HLL, 1 = HLLL exact, 2 = HLLL star, 3 = HLLL base-min.
// For HLL, kappa, B, and sparse_count are zero and there are no sparse
// words. Payload lengths are derivable from the header alone. Malformed
// input is rejected with FormatError, never repaired.

inline constexpr char kSketchFileExtension[] = ".hlls";

enum class SketchKind : std::uint8_t {
    Hll = 0,
    HlllExact = 1,
    HlllStar = 2,
    HlllBaseMin = 3,
};

using AnySketch = std::variant<HllSketch, HlllSketch>;

std::vector<std::uint8_t> serialize(const HllSketch& s);
std::vector<std::uint8_t> serialize(const HlllSketch& s);
std::vector<std::uint8_t> serialize(const AnySketch& s);

AnySketch deserialize(std::span<const std::uint8_t> bytes);

void save_file(const std::filesystem::path& path, const AnySketch& s);
AnySketch load_file(const std::filesystem::path& path);

SketchKind kind_of(const AnySketch& s);
HlllVariant variant_of(SketchKind kind);

}  // namespace hlll

#endif
