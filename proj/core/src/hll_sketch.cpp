#include "hlll/hll_sketch.hpp"

#include <stdexcept>
#include <utility>

#include "hlll/errors.hpp"

namespace hlll {

HllSketch::HllSketch(unsigned log2m, HashConfig hash_cfg)
    : log2m_(log2m),
      m_(std::uint64_t{1} << log2m),
      hash_cfg_(std::move(hash_cfg)),
      registers_(m_, kRegisterBits) {
    if (log2m < kMinLog2m || log2m > kMaxLog2m)
        throw std::invalid_argument("HllSketch: log2m must be in [4, 18]");
}

void HllSketch::insert_pair(std::uint64_t j, unsigned r) {
    if (j >= m_)
        throw std::invalid_argument("HllSketch::insert_pair: register index out of range");
    if (r < 1 || r > 64)
        throw std::invalid_argument("HllSketch::insert_pair: rank must be in [1, 64]");
    r = clamp_rank(r);
    if (r > registers_.get(j))
        registers_.set(j, r);
}

HllSketch HllSketch::merge(const HllSketch& a, const HllSketch& b) {
    if (a.log2m_ != b.log2m_ || !(a.hash_cfg_ == b.hash_cfg_))
        throw IncompatibleSketchError("HllSketch::merge: mismatched register count or hash config");
    HllSketch out = a;
    for (std::uint64_t j = 0; j < out.m_; ++j) {
        const std::uint64_t rb = b.registers_.get(j);
        if (rb > out.registers_.get(j))
            out.registers_.set(j, rb);
    }
    return out;
}

EstimateBreakdown HllSketch::estimate_breakdown(EstimatorConfig cfg) const {
    return estimate_registers(registers(), cfg);
}

std::vector<std::uint8_t> HllSketch::registers() const {
    std::vector<std::uint8_t> out(m_);
    for (std::uint64_t j = 0; j < m_; ++j)
        out[j] = static_cast<std::uint8_t>(registers_.get(j));
    return out;
}

HllSketch HllSketch::from_parts(unsigned log2m, HashConfig hash_cfg, PackedArray registers) {
    HllSketch s(log2m, std::move(hash_cfg));
    if (registers.size() != s.m_ || registers.width() != kRegisterBits)
        throw std::invalid_argument("HllSketch::from_parts: register array has wrong shape");
    s.registers_ = std::move(registers);
    return s;
}

}  // namespace hlll
