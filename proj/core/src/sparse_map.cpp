#include "hlll/sparse_map.hpp"

#include <cassert>
#include <stdexcept>

namespace hlll {

SparseRegisterMap::SparseRegisterMap(unsigned log2m)
    : entry_width_(log2m + 6), entries_(0, entry_width_) {
    if (log2m < 1 || log2m > 58)
        throw std::invalid_argument("SparseRegisterMap: log2m out of range");
}

std::optional<unsigned> SparseRegisterMap::lookup(std::uint64_t j) const {
    const auto idx = find(j);
    if (!idx)
        return std::nullopt;
    return value_at(*idx);
}

std::optional<std::uint64_t> SparseRegisterMap::find(std::uint64_t j) const {
    const std::uint64_t pos = lower_bound(j);
    if (pos < count_ && key_at(pos) == j)
        return pos;
    return std::nullopt;
}

std::uint64_t SparseRegisterMap::lower_bound(std::uint64_t j) const {
    std::uint64_t lo = 0, hi = count_;
    while (lo < hi) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        if (key_at(mid) < j)
            lo = mid + 1;
        else
            hi = mid;
    }
    return lo;
}

bool SparseRegisterMap::set(std::uint64_t j, unsigned value) {
    assert(value <= 63);
    const std::uint64_t packed = (j << 6) | value;
    const std::uint64_t pos = lower_bound(j);
    if (pos < count_ && key_at(pos) == j) {
        entries_.set(pos, packed);
        return false;
    }
    reserve(count_ + 1);
    for (std::uint64_t i = count_; i > pos; --i)
        entries_.set(i, entries_.get(i - 1));
    entries_.set(pos, packed);
    ++count_;
    return true;
}

bool SparseRegisterMap::erase(std::uint64_t j) {
    const auto idx = find(j);
    if (!idx)
        return false;
    for (std::uint64_t i = *idx; i + 1 < count_; ++i)
        entries_.set(i, entries_.get(i + 1));
    entries_.set(count_ - 1, 0);  // keep trailing bits canonical
    --count_;
    return true;
}

void SparseRegisterMap::append(std::uint64_t j, unsigned value) {
    assert(value <= 63);
    assert(count_ == 0 || key_at(count_ - 1) < j);
    reserve(count_ + 1);
    entries_.set(count_, (j << 6) | value);
    ++count_;
}

void SparseRegisterMap::clear() {
    entries_ = PackedArray(0, entry_width_);
    count_ = 0;
}

void SparseRegisterMap::reserve(std::uint64_t want) {
    if (want <= entries_.size())
        return;
    std::uint64_t cap = entries_.size() < 8 ? 8 : entries_.size() * 2;
    if (cap < want)
        cap = want;
    PackedArray grown(cap, entry_width_);
    for (std::uint64_t i = 0; i < count_; ++i)
        grown.set(i, entries_.get(i));
    entries_ = std::move(grown);
}

bool SparseRegisterMap::operator==(const SparseRegisterMap& other) const {
    if (entry_width_ != other.entry_width_ || count_ != other.count_)
        return false;
    for (std::uint64_t i = 0; i < count_; ++i)
        if (entries_.get(i) != other.entries_.get(i))
            return false;
    return true;
}

}  // namespace hlll
