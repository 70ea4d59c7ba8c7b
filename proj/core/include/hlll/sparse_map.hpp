#ifndef HLLL_SPARSE_MAP_HPP
#define HLLL_SPARSE_MAP_HPP

#include <cstdint>
#include <optional>

#include "hlll/packed_array.hpp"

namespace hlll {

// Sorted associative array of (register index, register value) pairs,
// packed into a bit-packed array. Each entry is log2m + 6 bits with the
// key in the high bits and the 6-bit value in the low bits, so ordering
// by packed entry equals ordering by key.
//
// Keys are unique and strictly ascending. Bits beyond count*entry_width
// in the backing array are kept zero; the backing words up to that point
// are the canonical serialized form.
class SparseRegisterMap {
public:
    explicit SparseRegisterMap(unsigned log2m);

    std::uint64_t count() const { return count_; }
    unsigned entry_width() const { return entry_width_; }

    bool contains(std::uint64_t j) const { return find(j).has_value(); }
    std::optional<unsigned> lookup(std::uint64_t j) const;

    // Inserts or overwrites; returns true when a new key was added.
    bool set(std::uint64_t j, unsigned value);

    // Returns true when the key was present.
    bool erase(std::uint64_t j);

    // Appends an entry with a key greater than every present key; used by
    // rebase and merge, which produce entries in ascending index order.
    void append(std::uint64_t j, unsigned value);

    void clear();

    std::uint64_t key_at(std::uint64_t idx) const { return entries_.get(idx) >> 6; }
    unsigned value_at(std::uint64_t idx) const {
        return static_cast<unsigned>(entries_.get(idx) & 63u);
    }

    // Words of the canonical prefix holding the first count() entries.
    std::uint64_t used_word_count() const {
        return PackedArray::word_count(count_, entry_width_);
    }
    std::span<const std::uint64_t> words() const { return entries_.words(); }

    // Logical equality: entry sequences match, capacities may differ.
    bool operator==(const SparseRegisterMap& other) const;

private:
    std::optional<std::uint64_t> find(std::uint64_t j) const;
    std::uint64_t lower_bound(std::uint64_t j) const;
    void reserve(std::uint64_t want);

    unsigned entry_width_;
    std::uint64_t count_ = 0;
    PackedArray entries_;
};

}  // namespace hlll

#endif
