#include <doctest.h>

#include <cstdint>
#include <random>
#include <vector>

#include "hlll/packed_array.hpp"

using hlll::PackedArray;

namespace {

// Independent reference storing every element bit individually.
class BitOracle {
public:
    BitOracle(std::uint64_t length, unsigned width)
        : width_(width), bits_(length * width, 0) {}

    void set(std::uint64_t i, std::uint64_t v) {
        for (unsigned b = 0; b < width_; ++b)
            bits_[i * width_ + b] = static_cast<std::uint8_t>((v >> b) & 1);
    }

    std::uint64_t get(std::uint64_t i) const {
        std::uint64_t v = 0;
        for (unsigned b = 0; b < width_; ++b)
            v |= static_cast<std::uint64_t>(bits_[i * width_ + b]) << b;
        return v;
    }

private:
    unsigned width_;
    std::vector<std::uint8_t> bits_;
};

}  // namespace

TEST_CASE("packed array construction") {
    PackedArray a(16, 6);  // 96 bits -> 2 words
    CHECK(a.words().size() == 2);
    CHECK(a.size() == 16);
    for (std::uint64_t i = 0; i < 16; ++i)
        CHECK(a.get(i) == 0);

    PackedArray empty(0, 3);
    CHECK(empty.words().empty());

    CHECK(PackedArray(100, 3).get(99) == 0);

    CHECK_THROWS_AS(PackedArray(4, 0), std::invalid_argument);
    CHECK_THROWS_AS(PackedArray(4, 65), std::invalid_argument);
}

TEST_CASE("word count arithmetic") {
    CHECK(PackedArray::word_count(16, 6) == 2);
    CHECK(PackedArray::word_count(0, 3) == 0);
    CHECK(PackedArray::word_count(64, 1) == 1);
    CHECK(PackedArray::word_count(65, 1) == 2);
    CHECK(PackedArray::word_count(3, 64) == 3);
}

TEST_CASE("boundary-crossing element width 3") {
    PackedArray a(32, 3);
    a.set(21, 5);  // stream bits 63..65
    CHECK(a.get(21) == 5);
    // 5 = 0b101: bit 0 -> word 0 bit 63, bits 1..2 -> word 1 bits 0..1
    CHECK((a.words()[0] >> 63) == 1);
    CHECK((a.words()[1] & 3) == 2);
    CHECK(a.get(20) == 0);
    CHECK(a.get(22) == 0);
}

TEST_CASE("boundary-crossing element width 5 leaves neighbors alone") {
    PackedArray a(16, 5);
    a.set(11, 30);
    a.set(13, 7);
    a.set(12, 17);  // stream bits 60..64
    CHECK(a.get(12) == 17);
    CHECK(a.get(11) == 30);
    CHECK(a.get(13) == 7);
}

TEST_CASE("full-width elements") {
    PackedArray a(3, 64);
    const std::uint64_t max = ~std::uint64_t{0};
    a.set(0, max);
    CHECK(a.get(0) == max);
    CHECK(a.get(1) == 0);
    a.set(2, 0x0123456789ABCDEFULL);
    CHECK(a.get(2) == 0x0123456789ABCDEFULL);
}

TEST_CASE("overwrite and max value") {
    PackedArray a(16, 6);
    a.set(10, 12);
    a.set(10, 63);
    CHECK(a.get(10) == 63);
    a.set(10, 1);
    CHECK(a.get(10) == 1);
}

TEST_CASE("bounds and value range errors") {
    PackedArray a(8, 6);
    CHECK_THROWS_AS(a.get(8), std::out_of_range);
    CHECK_THROWS_AS(a.set(8, 0), std::out_of_range);
    CHECK_THROWS_AS(a.set(0, 64), std::invalid_argument);
    CHECK_NOTHROW(a.set(0, 63));
}

TEST_CASE("randomized agreement with per-bit oracle") {
    std::mt19937_64 rng(0xbadc0ffee0ddf00dULL);
    for (int round = 0; round < 40; ++round) {
        const unsigned width = 1 + static_cast<unsigned>(rng() % 64);
        const std::uint64_t length = 1 + rng() % 200;
        PackedArray a(length, width);
        BitOracle oracle(length, width);
        const std::uint64_t mask =
            width == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
        for (int op = 0; op < 300; ++op) {
            const std::uint64_t i = rng() % length;
            const std::uint64_t v = rng() & mask;
            a.set(i, v);
            oracle.set(i, v);
        }
        for (std::uint64_t i = 0; i < length; ++i)
            REQUIRE(a.get(i) == oracle.get(i));
    }
}

TEST_CASE("canonical form: write order does not matter") {
    std::mt19937_64 rng(42);
    const unsigned width = 7;
    const std::uint64_t length = 50;
    std::vector<std::uint64_t> values(length);
    for (auto& v : values)
        v = rng() % 128;

    PackedArray fwd(length, width);
    for (std::uint64_t i = 0; i < length; ++i)
        fwd.set(i, values[i]);

    PackedArray rev(length, width);
    for (std::uint64_t i = length; i-- > 0;) {
        rev.set(i, 99 % 128);  // scribble first, then final value
        rev.set(i, values[i]);
    }

    CHECK(fwd == rev);
    REQUIRE(fwd.words().size() == rev.words().size());
    for (std::size_t w = 0; w < fwd.words().size(); ++w)
        CHECK(fwd.words()[w] == rev.words()[w]);
}

TEST_CASE("trailing bits of the last word stay zero") {
    PackedArray a(7, 6);  // 42 bits used of 64
    for (std::uint64_t i = 0; i < 7; ++i)
        a.set(i, 63);
    CHECK((a.words()[0] >> 42) == 0);
}

TEST_CASE("assign_words validates shape and canonical form") {
    PackedArray a(7, 6);
    CHECK_THROWS_AS(a.assign_words({1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(a.assign_words({std::uint64_t{1} << 42}), std::invalid_argument);
    a.assign_words({0x3FFu});
    CHECK(a.get(0) == 63);
    CHECK(a.get(1) == 15);
}
