#ifndef HLLL_HLLL_SKETCH_HPP
#define HLLL_HLLL_SKETCH_HPP

#include <cstdint>
#include <string_view>
#include <vector>

#include "hlll/estimator.hpp"
#include "hlll/hashing.hpp"
#include "hlll/hll_sketch.hpp"
#include "hlll/packed_array.hpp"
#include "hlll/sparse_map.hpp"

namespace hlll {

enum class HlllVariant {
    Exact,    // optimal sparse-dense split after every change
    Star,     // compress only when the sparse map grows, single candidate
    BaseMin,  // base pinned to the minimum register value
};

std::string_view to_string(HlllVariant v);

// Compressed HyperLogLog. Register j holds the same value it would hold
// in an HllSketch fed the same stream; the representation splits it into
// a base value B, a dense array of kappa-bit offsets for registers whose
// value lies in [B, B + 2^kappa), and a sorted sparse map for the rest.
//
// Representation invariant, all variants: j is in the sparse map iff its
// register value lies outside [B, B + 2^kappa); dense slots of sparsely
// stored registers are zero, which makes equal sketches word-equal.
class HlllSketch {
public:
    static constexpr unsigned kDefaultKappa = 3;

    explicit HlllSketch(unsigned log2m, HlllVariant variant = HlllVariant::Exact,
                        unsigned kappa = kDefaultKappa, HashConfig hash_cfg = {});

    void update(std::uint64_t key) { apply_hash(hash_u64(key, hash_cfg_.seed)); }
    void update(std::string_view key) { apply_hash(hash_bytes(key, hash_cfg_.seed)); }

    // Hash-free update. Requires j < m and r in [1, 64]; r is clamped to 63.
    // Updates with r <= min register value return without touching the
    // structure.
    void insert_pair(std::uint64_t j, unsigned r) {
        check_pair(j, r);
        const unsigned rank = clamp_rank(r);
        if (rank <= min_value_)
            return;
        insert_above_min(j, rank);
    }

    // Uncompressed value of register j.
    unsigned get(std::uint64_t j) const {
        if (j >= m_)
            throw std::out_of_range("HlllSketch::get: register index out of range");
        if (const auto v = sparse_.lookup(j))
            return *v;
        return base_ + static_cast<unsigned>(dense_.get(j));
    }

    // Moves the base to the smallest maximizer of the dense-representable
    // count; candidates are the register values present in the sketch.
    void compress();

    // Rewrites the whole structure under the given base without changing
    // any register value. Single linear pass.
    void rebase(unsigned new_base);

    // Compressed-domain merge. Requires equal log2m, kappa, and hash
    // config; the result takes a's variant.
    static HlllSketch merge(const HlllSketch& a, const HlllSketch& b);

    double estimate(EstimatorConfig cfg = {}) const {
        return estimate_breakdown(cfg).result;
    }
    EstimateBreakdown estimate_breakdown(EstimatorConfig cfg = {}) const;

    // Reported size: m*kappa + |S|*(log2m + 6). The base value and min
    // cache are constant overhead and excluded by convention.
    std::uint64_t size_bits() const {
        return m_ * kappa_ + sparse_.count() * (log2m_ + 6);
    }

    HllSketch to_hll() const;
    static HlllSketch from_hll(const HllSketch& hll,
                               HlllVariant variant = HlllVariant::Exact,
                               unsigned kappa = kDefaultKappa);

    unsigned log2m() const { return log2m_; }
    std::uint64_t register_count() const { return m_; }
    unsigned kappa() const { return kappa_; }
    unsigned base() const { return base_; }
    HlllVariant variant() const { return variant_; }
    const HashConfig& hash_config() const { return hash_cfg_; }
    std::uint64_t sparse_count() const { return sparse_.count(); }
    unsigned min_value() const { return min_value_; }
    std::uint64_t min_count() const { return min_count_; }
    std::uint64_t compress_calls() const { return compress_calls_; }

    const PackedArray& dense_array() const { return dense_; }
    const SparseRegisterMap& sparse_map() const { return sparse_; }

    std::vector<std::uint8_t> registers() const;

    // Ascending (j, value) traversal in one pass over dense array and
    // sparse map.
    template <typename F>
    void for_each_register(F&& f) const {
        std::uint64_t si = 0;
        std::uint64_t next_key = si < sparse_.count() ? sparse_.key_at(si) : m_;
        for (std::uint64_t j = 0; j < m_; ++j) {
            unsigned v;
            if (j == next_key) {
                v = sparse_.value_at(si);
                ++si;
                next_key = si < sparse_.count() ? sparse_.key_at(si) : m_;
            } else {
                v = base_ + static_cast<unsigned>(dense_.get(j));
            }
            f(j, v);
        }
    }

    // Rebuilds a sketch from deserialized parts; structural validation is
    // the caller's job, the min cache is recomputed here.
    static HlllSketch from_parts(unsigned log2m, HlllVariant variant, unsigned kappa,
                                 HashConfig hash_cfg, unsigned base, PackedArray dense,
                                 SparseRegisterMap sparse);

    // Equality over the logical state; the compress-call counter is a
    // diagnostic and not compared.
    bool operator==(const HlllSketch& other) const;

private:
    void check_pair(std::uint64_t j, unsigned r) const {
        if (j >= m_)
            throw std::invalid_argument("HlllSketch::insert_pair: register index out of range");
        if (r < 1 || r > 64)
            throw std::invalid_argument("HlllSketch::insert_pair: rank must be in [1, 64]");
    }
    void apply_hash(std::uint64_t h) {
        const std::uint64_t j = register_index(h, log2m_);
        const unsigned r = clamp_rank(rho(h));
        if (r <= min_value_)
            return;
        insert_above_min(j, r);
    }

    void insert_above_min(std::uint64_t j, unsigned r);
    bool place(std::uint64_t j, unsigned r);
    void rescan_min();
    void star_compress();
    std::uint64_t window_count(const std::uint32_t* hist, unsigned base) const;

    unsigned log2m_;
    std::uint64_t m_;
    unsigned kappa_;
    HlllVariant variant_;
    HashConfig hash_cfg_;
    unsigned base_ = 0;
    PackedArray dense_;
    SparseRegisterMap sparse_;
    unsigned min_value_ = 0;
    std::uint64_t min_count_;
    std::uint64_t compress_calls_ = 0;
};

}  // namespace hlll

#endif
