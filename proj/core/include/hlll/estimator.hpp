#ifndef HLLL_ESTIMATOR_HPP
#define HLLL_ESTIMATOR_HPP

#include <cstdint>
#include <span>
#include <string_view>

namespace hlll {

struct EstimatorConfig {
    // The large-range branch uses 2^32-based constants even though hashes
    // are 64 bits wide; it can be switched off when that is unwanted.
    bool large_range_correction = true;
};

enum class EstimateBranch {
    Raw,
    LinearCounting,
    LargeRange,
};

std::string_view to_string(EstimateBranch b);

struct EstimateBreakdown {
    double raw_estimate = 0.0;        // alpha_m * m^2 / sum(2^-M[j])
    std::uint64_t zero_registers = 0; // V
    EstimateBranch branch = EstimateBranch::Raw;
    double result = 0.0;
};

// Bias-correction constant alpha_m. Requires m in {16, 32, 64} or a power
// of two >= 128.
double alpha(std::uint64_t m);

// Cardinality estimate from m register values in [0, 63], m = size of the
// span. The sum of 2^-M[j] runs in ascending index order so sketches with
// equal register vectors produce bit-identical results.
EstimateBreakdown estimate_registers(std::span<const std::uint8_t> registers,
                                     EstimatorConfig cfg = {});

}  // namespace hlll

#endif
