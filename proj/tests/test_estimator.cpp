#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "hlll/estimator.hpp"

using namespace hlll;

TEST_CASE("alpha constants and formula") {
    CHECK(alpha(16) == 0.673);
    CHECK(alpha(32) == 0.697);
    CHECK(alpha(64) == 0.709);
    CHECK(alpha(1024) == doctest::Approx(0.7213 / (1.0 + 1.079 / 1024.0)).epsilon(1e-15));
    CHECK(alpha(1024) == doctest::Approx(0.720540).epsilon(1e-6));
    CHECK(alpha(128) == 0.7213 / (1.0 + 1.079 / 128.0));

    CHECK_THROWS_AS(alpha(15), std::invalid_argument);
    CHECK_THROWS_AS(alpha(24), std::invalid_argument);
    CHECK_THROWS_AS(alpha(0), std::invalid_argument);
    CHECK_THROWS_AS(alpha(129), std::invalid_argument);
}

TEST_CASE("empty sketch estimates zero via linear counting") {
    std::vector<std::uint8_t> regs(16, 0);
    const auto e = estimate_registers(regs);
    CHECK(e.raw_estimate == doctest::Approx(10.768).epsilon(1e-12));
    CHECK(e.zero_registers == 16);
    CHECK(e.branch == EstimateBranch::LinearCounting);
    CHECK(e.result == 0.0);
}

TEST_CASE("all-ones register vector takes the raw branch") {
    std::vector<std::uint8_t> regs(16, 1);
    const auto e = estimate_registers(regs);
    CHECK(e.zero_registers == 0);
    CHECK(e.branch == EstimateBranch::Raw);
    CHECK(e.result == doctest::Approx(0.673 * 256.0 / 8.0).epsilon(1e-12));
    CHECK(e.result == doctest::Approx(21.536).epsilon(1e-12));
}

TEST_CASE("single nonzero register linear counting") {
    std::vector<std::uint8_t> regs(16, 0);
    regs[7] = 1;
    const auto e = estimate_registers(regs);
    CHECK(e.raw_estimate == doctest::Approx(0.673 * 256.0 / 15.5).epsilon(1e-12));
    CHECK(e.zero_registers == 15);
    CHECK(e.branch == EstimateBranch::LinearCounting);
    CHECK(e.result == doctest::Approx(16.0 * std::log(16.0 / 15.0)).epsilon(1e-12));
    CHECK(e.result == doctest::Approx(1.032616).epsilon(1e-6));
}

TEST_CASE("linear-counting boundary at E = 2.5m") {
    // fifteen 2s and one 0: E = 344.576/9.5 ~ 36.3 <= 40, V = 1 -> LC
    std::vector<std::uint8_t> lc(16, 2);
    lc[0] = 0;
    CHECK(estimate_registers(lc).branch == EstimateBranch::LinearCounting);
    CHECK(estimate_registers(lc).result == doctest::Approx(16.0 * std::log(16.0)));

    // fifteen 3s and one 0: E = 344.576/5.75 ~ 59.9 > 40 -> raw despite V != 0
    std::vector<std::uint8_t> raw(16, 3);
    raw[0] = 0;
    CHECK(estimate_registers(raw).raw_estimate > 40.0);
    CHECK(estimate_registers(raw).branch == EstimateBranch::Raw);

    // V = 0 forces raw even with tiny E
    std::vector<std::uint8_t> ones(16, 1);
    CHECK(estimate_registers(ones).raw_estimate < 40.0);
    CHECK(estimate_registers(ones).branch == EstimateBranch::Raw);
}

TEST_CASE("large-range branch and its flag") {
    // all registers 18 at m=1024: E = alpha*m*2^18 ~ 1.94e8 > 2^32/30
    std::vector<std::uint8_t> regs(1024, 18);
    const auto on = estimate_registers(regs);
    CHECK(on.branch == EstimateBranch::LargeRange);
    const double e = on.raw_estimate;
    CHECK(e > std::ldexp(1.0, 32) / 30.0);
    CHECK(on.result ==
          doctest::Approx(-std::ldexp(1.0, 32) * std::log1p(-e / std::ldexp(1.0, 32))));
    CHECK(on.result > e);  // correction inflates

    const auto off = estimate_registers(regs, EstimatorConfig{.large_range_correction = false});
    CHECK(off.branch == EstimateBranch::Raw);
    CHECK(off.result == e);

    // just below the threshold: all registers 17 -> raw
    std::vector<std::uint8_t> below(1024, 17);
    const auto b = estimate_registers(below);
    CHECK(b.raw_estimate < std::ldexp(1.0, 32) / 30.0);
    CHECK(b.branch == EstimateBranch::Raw);
}

TEST_CASE("estimate is a pure function of the register vector") {
    std::vector<std::uint8_t> a{5, 0, 3, 63, 1, 0, 9, 2, 5, 0, 3, 63, 1, 0, 9, 2};
    std::vector<std::uint8_t> b = a;
    CHECK(estimate_registers(a).result == estimate_registers(b).result);
    CHECK(estimate_registers(a).raw_estimate == estimate_registers(b).raw_estimate);
}

TEST_CASE("raising any register never lowers the raw estimate") {
    std::mt19937_64 rng(7);
    for (int round = 0; round < 200; ++round) {
        std::vector<std::uint8_t> regs(64);
        for (auto& r : regs)
            r = static_cast<std::uint8_t>(rng() % 20);
        const double before = estimate_registers(regs).raw_estimate;
        const std::size_t idx = rng() % regs.size();
        regs[idx] = static_cast<std::uint8_t>(regs[idx] + 1 + rng() % 10);
        if (regs[idx] > 63)
            regs[idx] = 63;
        REQUIRE(estimate_registers(regs).raw_estimate >= before);
    }
}

TEST_CASE("register vectors are validated") {
    std::vector<std::uint8_t> bad(16, 0);
    bad[3] = 64;
    CHECK_THROWS_AS(estimate_registers(bad), std::invalid_argument);
    std::vector<std::uint8_t> wrong_m(17, 0);
    CHECK_THROWS_AS(estimate_registers(wrong_m), std::invalid_argument);
}
