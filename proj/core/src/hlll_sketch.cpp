#include "hlll/hlll_sketch.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "hlll/errors.hpp"

namespace hlll {

std::string_view to_string(HlllVariant v) {
    switch (v) {
        case HlllVariant::Exact: return "exact";
        case HlllVariant::Star: return "star";
        case HlllVariant::BaseMin: return "base-min";
    }
    return "?";
}

HlllSketch::HlllSketch(unsigned log2m, HlllVariant variant, unsigned kappa,
                       HashConfig hash_cfg)
    : log2m_(log2m),
      m_(std::uint64_t{1} << log2m),
      kappa_(kappa),
      variant_(variant),
      hash_cfg_(std::move(hash_cfg)),
      dense_((std::uint64_t{1} << log2m), kappa),
      sparse_(log2m),
      min_count_(m_) {
    if (log2m < HllSketch::kMinLog2m || log2m > HllSketch::kMaxLog2m)
        throw std::invalid_argument("HlllSketch: log2m must be in [4, 18]");
    if (kappa < 1 || kappa > 6)
        throw std::invalid_argument("HlllSketch: kappa must be in [1, 6]");
}

void HlllSketch::insert_above_min(std::uint64_t j, unsigned r) {
    const unsigned r0 = get(j);
    if (r <= r0)
        return;
    const bool sparse_grew = place(j, r);
    if (r0 == min_value_) {
        if (--min_count_ == 0) {
            rescan_min();
            if (variant_ == HlllVariant::BaseMin) {
                ++compress_calls_;
                rebase(min_value_);
            }
        }
    }
    if (variant_ == HlllVariant::Exact)
        compress();
    else if (variant_ == HlllVariant::Star && sparse_grew)
        star_compress();
}

// Stores value r for register j relative to the current base. Returns true
// when the sparse map gained an entry.
bool HlllSketch::place(std::uint64_t j, unsigned r) {
    const unsigned lo = base_;
    const unsigned hi = base_ + (1u << kappa_);
    if (r >= lo && r < hi) {
        sparse_.erase(j);
        dense_.set(j, r - lo);
        return false;
    }
    dense_.set(j, 0);
    return sparse_.set(j, r);
}

void HlllSketch::rescan_min() {
    unsigned mv = 64;
    std::uint64_t mc = 0;
    for_each_register([&](std::uint64_t, unsigned v) {
        if (v < mv) {
            mv = v;
            mc = 1;
        } else if (v == mv) {
            ++mc;
        }
    });
    min_value_ = mv;
    min_count_ = mc;
}

std::uint64_t HlllSketch::window_count(const std::uint32_t* hist, unsigned base) const {
    const unsigned hi = base + (1u << kappa_);
    std::uint64_t c = 0;
    for (unsigned v = base; v < hi && v < 64; ++v)
        c += hist[v];
    return c;
}

void HlllSketch::compress() {
    ++compress_calls_;
    std::uint32_t hist[64] = {};
    for_each_register([&](std::uint64_t, unsigned v) { ++hist[v]; });

    // Candidates are the values present, scanned ascending. Registers
    // strictly below a candidate stay sparse for it and for every larger
    // candidate, which gives the early-termination bound.
    std::uint64_t best_count = 0;
    unsigned best_base = 0;
    std::uint64_t below = 0;
    for (unsigned v = 0; v < 64; ++v) {
        if (hist[v] == 0)
            continue;
        if (m_ - below <= best_count)
            break;
        const std::uint64_t cnt = window_count(hist, v);
        if (cnt > best_count) {
            best_count = cnt;
            best_base = v;
        }
        below += hist[v];
    }
    if (best_base != base_)
        rebase(best_base);
}

// Star heuristic: try only the next register value above the current base,
// and move only if the sparse map does not grow.
void HlllSketch::star_compress() {
    ++compress_calls_;
    std::uint32_t hist[64] = {};
    for_each_register([&](std::uint64_t, unsigned v) { ++hist[v]; });

    unsigned next = 64;
    for (unsigned v = base_ + 1; v < 64; ++v) {
        if (hist[v] != 0) {
            next = v;
            break;
        }
    }
    if (next == 64)
        return;
    if (window_count(hist, next) >= window_count(hist, base_))
        rebase(next);
}

void HlllSketch::rebase(unsigned new_base) {
    if (new_base > 63)
        throw std::invalid_argument("HlllSketch::rebase: base must be in [0, 63]");
    PackedArray new_dense(m_, kappa_);
    SparseRegisterMap new_sparse(log2m_);
    const unsigned lo = new_base;
    const unsigned hi = new_base + (1u << kappa_);
    for_each_register([&](std::uint64_t j, unsigned v) {
        if (v >= lo && v < hi)
            new_dense.set(j, v - lo);
        else
            new_sparse.append(j, v);
    });
    dense_ = std::move(new_dense);
    sparse_ = std::move(new_sparse);
    base_ = new_base;
}

HlllSketch HlllSketch::merge(const HlllSketch& a, const HlllSketch& b) {
    if (a.log2m_ != b.log2m_ || a.kappa_ != b.kappa_ || !(a.hash_cfg_ == b.hash_cfg_))
        throw IncompatibleSketchError("HlllSketch::merge: mismatched parameters");

    HlllSketch out(a.log2m_, a.variant_, a.kappa_, a.hash_cfg_);
    out.base_ = std::max(a.base_, b.base_);
    const unsigned lo = out.base_;
    const unsigned hi = out.base_ + (1u << out.kappa_);

    PackedArray dense(out.m_, out.kappa_);
    SparseRegisterMap sparse(out.log2m_);
    unsigned mv = 64;
    std::uint64_t mc = 0;

    std::uint64_t sa = 0, sb = 0;
    std::uint64_t ka = sa < a.sparse_.count() ? a.sparse_.key_at(sa) : a.m_;
    std::uint64_t kb = sb < b.sparse_.count() ? b.sparse_.key_at(sb) : b.m_;
    for (std::uint64_t j = 0; j < out.m_; ++j) {
        unsigned ra;
        if (j == ka) {
            ra = a.sparse_.value_at(sa);
            ++sa;
            ka = sa < a.sparse_.count() ? a.sparse_.key_at(sa) : a.m_;
        } else {
            ra = a.base_ + static_cast<unsigned>(a.dense_.get(j));
        }
        unsigned rb;
        if (j == kb) {
            rb = b.sparse_.value_at(sb);
            ++sb;
            kb = sb < b.sparse_.count() ? b.sparse_.key_at(sb) : b.m_;
        } else {
            rb = b.base_ + static_cast<unsigned>(b.dense_.get(j));
        }
        const unsigned r = std::max(ra, rb);
        if (r >= lo && r < hi)
            dense.set(j, r - lo);
        else
            sparse.append(j, r);
        if (r < mv) {
            mv = r;
            mc = 1;
        } else if (r == mv) {
            ++mc;
        }
    }

    out.dense_ = std::move(dense);
    out.sparse_ = std::move(sparse);
    out.min_value_ = mv;
    out.min_count_ = mc;

    if (out.variant_ == HlllVariant::BaseMin) {
        ++out.compress_calls_;
        if (out.min_value_ != out.base_)
            out.rebase(out.min_value_);
    } else {
        out.compress();
    }
    return out;
}

EstimateBreakdown HlllSketch::estimate_breakdown(EstimatorConfig cfg) const {
    return estimate_registers(registers(), cfg);
}

std::vector<std::uint8_t> HlllSketch::registers() const {
    std::vector<std::uint8_t> out(m_);
    for_each_register([&](std::uint64_t j, unsigned v) {
        out[j] = static_cast<std::uint8_t>(v);
    });
    return out;
}

HllSketch HlllSketch::to_hll() const {
    PackedArray regs(m_, HllSketch::kRegisterBits);
    for_each_register([&](std::uint64_t j, unsigned v) {
        if (v != 0)
            regs.set(j, v);
    });
    return HllSketch::from_parts(log2m_, hash_cfg_, std::move(regs));
}

HlllSketch HlllSketch::from_hll(const HllSketch& hll, HlllVariant variant, unsigned kappa) {
    HlllSketch out(hll.log2m(), variant, kappa, hll.hash_config());
    const unsigned hi = 1u << kappa;  // window with base 0
    unsigned mv = 64;
    std::uint64_t mc = 0;
    for (std::uint64_t j = 0; j < out.m_; ++j) {
        const unsigned v = hll.register_at(j);
        if (v < hi)
            out.dense_.set(j, v);
        else
            out.sparse_.append(j, v);
        if (v < mv) {
            mv = v;
            mc = 1;
        } else if (v == mv) {
            ++mc;
        }
    }
    out.min_value_ = mv;
    out.min_count_ = mc;
    if (variant == HlllVariant::BaseMin) {
        ++out.compress_calls_;
        if (out.min_value_ != out.base_)
            out.rebase(out.min_value_);
    } else {
        out.compress();
    }
    return out;
}

HlllSketch HlllSketch::from_parts(unsigned log2m, HlllVariant variant, unsigned kappa,
                                  HashConfig hash_cfg, unsigned base, PackedArray dense,
                                  SparseRegisterMap sparse) {
    HlllSketch out(log2m, variant, kappa, std::move(hash_cfg));
    if (base > 63)
        throw std::invalid_argument("HlllSketch::from_parts: base out of range");
    if (dense.size() != out.m_ || dense.width() != kappa)
        throw std::invalid_argument("HlllSketch::from_parts: dense array has wrong shape");
    if (sparse.entry_width() != log2m + 6)
        throw std::invalid_argument("HlllSketch::from_parts: sparse map has wrong entry width");
    out.base_ = base;
    out.dense_ = std::move(dense);
    out.sparse_ = std::move(sparse);
    out.rescan_min();
    return out;
}

bool HlllSketch::operator==(const HlllSketch& other) const {
    return log2m_ == other.log2m_ && kappa_ == other.kappa_ &&
           variant_ == other.variant_ && hash_cfg_ == other.hash_cfg_ &&
           base_ == other.base_ && dense_ == other.dense_ && sparse_ == other.sparse_ &&
           min_value_ == other.min_value_ && min_count_ == other.min_count_;
}

}  // namespace hlll
