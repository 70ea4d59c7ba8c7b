#include "hlll/estimator.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace hlll {

namespace {

constexpr std::array<double, 64> make_pow2_neg() {
    std::array<double, 64> t{};
    double v = 1.0;
    for (int k = 0; k < 64; ++k) {
        t[static_cast<std::size_t>(k)] = v;
        v /= 2.0;
    }
    return t;
}

// 2^-k for k in [0, 63]; every entry is an exact double.
constexpr std::array<double, 64> kPow2Neg = make_pow2_neg();

constexpr double kTwoPow32 = 4294967296.0;

bool is_power_of_two(std::uint64_t m) {
    return m != 0 && (m & (m - 1)) == 0;
}

}  // namespace

std::string_view to_string(EstimateBranch b) {
    switch (b) {
        case EstimateBranch::Raw: return "raw";
        case EstimateBranch::LinearCounting: return "linear-counting";
        case EstimateBranch::LargeRange: return "large-range";
    }
    return "?";
}

double alpha(std::uint64_t m) {
    switch (m) {
        case 16: return 0.673;
        case 32: return 0.697;
        case 64: return 0.709;
        default: break;
    }
    if (m >= 128 && is_power_of_two(m))
        return 0.7213 / (1.0 + 1.079 / static_cast<double>(m));
    throw std::invalid_argument("alpha: m must be 16, 32, 64, or a power of two >= 128");
}

EstimateBreakdown estimate_registers(std::span<const std::uint8_t> registers,
                                     EstimatorConfig cfg) {
    const std::uint64_t m = registers.size();
    const double am = alpha(m);  // validates m

    double sum = 0.0;
    std::uint64_t zeros = 0;
    for (std::uint8_t r : registers) {
        if (r > 63)
            throw std::invalid_argument("estimate_registers: register value out of [0, 63]");
        sum += kPow2Neg[r];
        if (r == 0)
            ++zeros;
    }

    const double md = static_cast<double>(m);
    EstimateBreakdown out;
    out.raw_estimate = am * md * md / sum;
    out.zero_registers = zeros;

    if (out.raw_estimate <= 2.5 * md && zeros != 0) {
        out.branch = EstimateBranch::LinearCounting;
        out.result = md * std::log(md / static_cast<double>(zeros));
    } else if (cfg.large_range_correction && out.raw_estimate > kTwoPow32 / 30.0) {
        out.branch = EstimateBranch::LargeRange;
        out.result = -kTwoPow32 * std::log1p(-out.raw_estimate / kTwoPow32);
    } else {
        out.branch = EstimateBranch::Raw;
        out.result = out.raw_estimate;
    }
    return out;
}

}  // namespace hlll
