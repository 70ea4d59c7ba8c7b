#ifndef HLLL_HLL_SKETCH_HPP
#define HLLL_HLL_SKETCH_HPP

#include <cstdint>
#include <string_view>
#include <vector>

#include "hlll/estimator.hpp"
#include "hlll/hashing.hpp"
#include "hlll/packed_array.hpp"

namespace hlll {

// Vanilla HyperLogLog: m = 2^log2m six-bit registers, each holding the
// maximum clamped rank seen in its substream. Register values never
// decrease, so updates are idempotent and order-independent and merge is
// an elementwise max.
class HllSketch {
public:
    static constexpr unsigned kMinLog2m = 4;
    static constexpr unsigned kMaxLog2m = 18;
    static constexpr unsigned kRegisterBits = 6;

    explicit HllSketch(unsigned log2m, HashConfig hash_cfg = {});

    void update(std::uint64_t key) { apply_hash(hash_u64(key, hash_cfg_.seed)); }
    void update(std::string_view key) { apply_hash(hash_bytes(key, hash_cfg_.seed)); }

    // Hash-free update path: register j takes max(current, clamp_rank(r)).
    // Requires j < m and r in [1, 64].
    void insert_pair(std::uint64_t j, unsigned r);

    static HllSketch merge(const HllSketch& a, const HllSketch& b);

    double estimate(EstimatorConfig cfg = {}) const {
        return estimate_breakdown(cfg).result;
    }
    EstimateBreakdown estimate_breakdown(EstimatorConfig cfg = {}) const;

    std::uint64_t size_bits() const { return 6 * m_; }

    unsigned log2m() const { return log2m_; }
    std::uint64_t register_count() const { return m_; }
    const HashConfig& hash_config() const { return hash_cfg_; }
    std::uint8_t register_at(std::uint64_t j) const {
        return static_cast<std::uint8_t>(registers_.get(j));
    }
    std::vector<std::uint8_t> registers() const;
    const PackedArray& register_array() const { return registers_; }

    // Rebuilds a sketch from deserialized parts; the array must already be
    // validated.
    static HllSketch from_parts(unsigned log2m, HashConfig hash_cfg, PackedArray registers);

    bool operator==(const HllSketch&) const = default;

private:
    void apply_hash(std::uint64_t h) {
        const std::uint64_t j = register_index(h, log2m_);
        const unsigned r = clamp_rank(rho(h));
        if (r > registers_.get(j))
            registers_.set(j, r);
    }

    unsigned log2m_;
    std::uint64_t m_;
    HashConfig hash_cfg_;
    PackedArray registers_;
};

}  // namespace hlll

#endif
