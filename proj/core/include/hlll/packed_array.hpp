#ifndef HLLL_PACKED_ARRAY_HPP
#define HLLL_PACKED_ARRAY_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hlll {

// Fixed-width array of unsigned integers packed into 64-bit words.
// Elements may cross word boundaries. Element bit b lives at stream bit
// i*width+b; stream bit k lives in word k/64 at in-word position k%64.
//
// Bits past length*width in the last word are kept zero, so arrays with
// equal contents have equal word sequences regardless of write order.
class PackedArray {
public:
    PackedArray() = default;

    PackedArray(std::uint64_t length, unsigned width)
        : length_(length), width_(width) {
        if (width < 1 || width > 64)
            throw std::invalid_argument("PackedArray: width must be in [1, 64]");
        words_.assign(word_count(length, width), 0);
    }

    std::uint64_t get(std::uint64_t i) const {
        if (i >= length_)
            throw std::out_of_range("PackedArray::get: index out of range");
        const std::uint64_t bit = i * width_;
        const std::uint64_t w = bit >> 6;
        const unsigned off = static_cast<unsigned>(bit & 63);
        std::uint64_t v = words_[w] >> off;
        if (off + width_ > 64)
            v |= words_[w + 1] << (64 - off);
        return v & mask();
    }

    void set(std::uint64_t i, std::uint64_t v) {
        if (i >= length_)
            throw std::out_of_range("PackedArray::set: index out of range");
        if (width_ < 64 && (v >> width_) != 0)
            throw std::invalid_argument("PackedArray::set: value does not fit width");
        const std::uint64_t bit = i * width_;
        const std::uint64_t w = bit >> 6;
        const unsigned off = static_cast<unsigned>(bit & 63);
        words_[w] = (words_[w] & ~(mask() << off)) | (v << off);
        if (off + width_ > 64) {
            const unsigned spill = 64 - off;  // bits of the element in word w
            words_[w + 1] = (words_[w + 1] & ~(mask() >> spill)) | (v >> spill);
        }
    }

    std::uint64_t size() const { return length_; }
    unsigned width() const { return width_; }
    std::span<const std::uint64_t> words() const { return words_; }

    // Replaces the word storage wholesale. The caller must supply exactly
    // word_count(length, width) words with zero trailing bits; this is
    // checked so deserialized arrays stay canonical.
    void assign_words(std::vector<std::uint64_t> words) {
        if (words.size() != word_count(length_, width_))
            throw std::invalid_argument("PackedArray::assign_words: wrong word count");
        const std::uint64_t used = length_ * width_;
        if (used % 64 != 0 && !words.empty()) {
            const std::uint64_t tail = words.back() >> (used % 64);
            if (tail != 0)
                throw std::invalid_argument("PackedArray::assign_words: trailing bits not zero");
        }
        words_ = std::move(words);
    }

    static constexpr std::uint64_t word_count(std::uint64_t length, unsigned width) {
        return (length * width + 63) / 64;
    }

    bool operator==(const PackedArray&) const = default;

private:
    constexpr std::uint64_t mask() const {
        return width_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width_) - 1;
    }

    std::uint64_t length_ = 0;
    unsigned width_ = 1;
    std::vector<std::uint64_t> words_;
};

}  // namespace hlll

#endif
