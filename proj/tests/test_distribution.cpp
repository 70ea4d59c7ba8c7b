#include <doctest.h>

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "hlll/datagen.hpp"
#include "hlll/distribution.hpp"
#include "hlll/hll_sketch.hpp"
#include "hlll/hlll_sketch.hpp"

using namespace hlll;

TEST_CASE("point values of the register pmf and cdf") {
    CHECK(pr_register_eq(2, 1, 0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(pr_register_leq(2, 1, 0.0) == doctest::Approx(0.5).epsilon(1e-15));

    // empty stream: point mass at zero
    CHECK(pr_register_eq(16, 0, 0) == 1.0);
    for (unsigned k = 1; k <= 63; ++k)
        CHECK(pr_register_eq(16, 0, k) == 0.0);

    CHECK(pr_register_leq(16, 12345, 63.0) == 1.0);

    CHECK_THROWS_AS(pr_register_eq(16, 1, 64), std::invalid_argument);
    CHECK_THROWS_AS(pr_register_leq(16, 1, -0.5), std::invalid_argument);
    CHECK_THROWS_AS(pr_register_eq(0, 1, 0), std::invalid_argument);
}

TEST_CASE("pmf normalizes and stays nonnegative across the grid") {
    for (std::uint64_t m : {2ull, 16ull, 1024ull, 1ull << 18}) {
        for (std::uint64_t n : {0ull, 1ull, 100ull, 1ull << 20, 1ull << 40}) {
            RegisterDistribution d(m, n);
            double total = 0.0;
            for (unsigned k = 0; k <= 63; ++k) {
                REQUIRE(d.pmf(k) >= 0.0);
                total += d.pmf(k);
            }
            REQUIRE(total == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("cdf increments equal the pmf") {
    const std::uint64_t m = 64, n = 100000;
    for (unsigned k = 1; k <= 63; ++k) {
        const double inc = pr_register_leq(m, n, k) - pr_register_leq(m, n, k - 1);
        REQUIRE(inc == doctest::Approx(pr_register_eq(m, n, k)).epsilon(1e-9));
    }
    CHECK(pr_register_leq(m, n, 0.0) == doctest::Approx(pr_register_eq(m, n, 0)));
}

TEST_CASE("tail bound values") {
    const auto [lower, upper] = register_tail_bounds(16, 1 << 16, 3.0);
    CHECK(upper == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(lower == doctest::Approx(std::exp(-8.0)).epsilon(1e-12));
    CHECK(lower == doctest::Approx(3.3546e-4).epsilon(1e-4));

    // delta must lie in (0, log2(n/m))
    CHECK_THROWS_AS(register_tail_bounds(16, 1 << 16, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(register_tail_bounds(16, 1 << 16, 12.0), std::invalid_argument);
    CHECK_THROWS_AS(register_tail_bounds(16, 16, 1.0), std::invalid_argument);
}

TEST_CASE("exact tails never exceed the bounds") {
    std::mt19937_64 rng(11);
    int tested = 0;
    while (tested < 60) {
        const std::uint64_t m = std::uint64_t{1} << (4 + rng() % 11);
        const std::uint64_t n = m << (3 + rng() % 15);
        const double base = std::log2(static_cast<double>(n) / static_cast<double>(m));
        const double delta = 0.25 + (base - 0.5) * (static_cast<double>(rng() % 1000) / 1000.0);
        if (!(delta > 0 && delta < base))
            continue;
        const auto [lower_bound, upper_bound] = register_tail_bounds(m, n, delta);
        const double below = pr_register_leq(m, n, base - delta);
        const double above = 1.0 - pr_register_leq(m, n, base + delta);
        REQUIRE(below <= lower_bound);
        REQUIRE(above <= upper_bound);
        ++tested;
    }
}

TEST_CASE("expected sparse count edge cases") {
    CHECK(expected_sparse_count(16, 1000, 0, 6) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(expected_sparse_count(16, 0, 0, 3) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_THROWS_AS(expected_sparse_count(16, 10, 64, 3), std::invalid_argument);
    CHECK_THROWS_AS(expected_sparse_count(16, 10, 0, 0), std::invalid_argument);
}

TEST_CASE("expected sparse count tracks real sketches within 20 percent") {
    const unsigned log2m = 10;
    const std::uint64_t m = 1 << log2m;
    const std::uint64_t n = 1 << 20;
    const unsigned kappa = 3;

    double predicted = 1e300;
    for (unsigned b = 0; b <= 63; ++b)
        predicted = std::min(predicted, expected_sparse_count(m, n, b, kappa));

    double mean_sparse = 0.0;
    const int kTrials = 100;
    for (int t = 0; t < kTrials; ++t) {
        HlllSketch s(log2m, HlllVariant::Exact, kappa);
        DataGenerator gen(derive_trial_seed(2024, static_cast<std::uint64_t>(t)));
        for (std::uint64_t i = 0; i < n; ++i) {
            const auto p = gen.next_pair(log2m);
            s.insert_pair(p.j, p.r);
        }
        mean_sparse += static_cast<double>(s.sparse_count());
    }
    mean_sparse /= kTrials;

    // independence approximation; registers are negatively dependent
    CHECK(mean_sparse >= 0.8 * predicted);
    CHECK(mean_sparse <= 1.2 * predicted);
}

TEST_CASE("register entropy basics") {
    CHECK(register_entropy(16, 0) == 0.0);
    const double h = register_entropy(1024, 1024);
    CHECK(h > 0.0);
    CHECK(h < 6.0);
    // near the known peak the entropy stays just below 2.832
    CHECK(register_entropy(1024, 1024 << 10) < 2.84);
}

TEST_CASE("Monte-Carlo register histogram matches the pmf") {
    const unsigned log2m = 4;
    const std::uint64_t n = 1024;
    const int kSketches = 20000;

    std::array<std::uint64_t, 64> counts{};
    for (int t = 0; t < kSketches; ++t) {
        HllSketch s(log2m);
        DataGenerator gen(derive_trial_seed(77, static_cast<std::uint64_t>(t)));
        for (std::uint64_t i = 0; i < n; ++i) {
            const auto p = gen.next_pair(log2m);
            s.insert_pair(p.j, p.r);
        }
        ++counts[s.register_at(0)];
    }

    RegisterDistribution d(16, n);
    double tv = 0.0;
    for (unsigned k = 0; k <= 63; ++k) {
        const double emp = static_cast<double>(counts[k]) / kSketches;
        tv += std::abs(emp - d.pmf(k));
    }
    tv /= 2.0;
    CHECK(tv <= 0.03);
}
