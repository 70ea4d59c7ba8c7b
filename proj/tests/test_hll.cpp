#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "hlll/distribution.hpp"
#include "hlll/errors.hpp"
#include "test_helpers.hpp"

using namespace hlll;
using test::feed;

TEST_CASE("fresh sketch is all zeros and estimates zero") {
    HllSketch s(4);
    for (std::uint64_t j = 0; j < 16; ++j)
        CHECK(s.register_at(j) == 0);
    CHECK(s.estimate() == 0.0);
    CHECK(s.size_bits() == 96);
}

TEST_CASE("log2m bounds") {
    CHECK_THROWS_AS(HllSketch(3), std::invalid_argument);
    CHECK_THROWS_AS(HllSketch(19), std::invalid_argument);
    CHECK_NOTHROW(HllSketch(4));
    CHECK_NOTHROW(HllSketch(18));
}

TEST_CASE("updates are idempotent") {
    HllSketch s(6);
    s.update(std::uint64_t{12345});
    const HllSketch once = s;
    s.update(std::uint64_t{12345});
    CHECK(s == once);

    s.update(std::string_view{"a string key"});
    const HllSketch with_str = s;
    s.update(std::string_view{"a string key"});
    CHECK(s == with_str);
}

TEST_CASE("insert_pair sets the register to the max") {
    HllSketch s(4);
    s.insert_pair(3, 5);
    CHECK(s.register_at(3) == 5);
    for (std::uint64_t j = 0; j < 16; ++j)
        if (j != 3)
            CHECK(s.register_at(j) == 0);

    s.insert_pair(3, 2);  // lower rank, no change
    CHECK(s.register_at(3) == 5);
    s.insert_pair(3, 7);
    CHECK(s.register_at(3) == 7);

    s.insert_pair(0, 1);
    CHECK(s.register_at(0) == 1);
    s.insert_pair(0, 64);  // clamped
    CHECK(s.register_at(0) == 63);

    CHECK_THROWS_AS(s.insert_pair(16, 1), std::invalid_argument);
    CHECK_THROWS_AS(s.insert_pair(0, 0), std::invalid_argument);
    CHECK_THROWS_AS(s.insert_pair(0, 65), std::invalid_argument);
}

TEST_CASE("update order does not matter") {
    std::mt19937_64 rng(100);
    std::vector<std::uint64_t> keys(500);
    for (auto& k : keys)
        k = rng();

    HllSketch a(5);
    for (auto k : keys)
        a.update(k);

    std::shuffle(keys.begin(), keys.end(), rng);
    HllSketch b(5);
    for (auto k : keys)
        b.update(k);

    CHECK(a == b);
}

TEST_CASE("merge is a join: union, identity, idempotence, commutativity") {
    HllSketch a(6), b(6), ab(6);
    DataGenerator ga(1), gb(2);
    for (int i = 0; i < 4000; ++i) {
        const auto ka = ga.next_u64();
        const auto kb = gb.next_u64();
        a.update(ka);
        b.update(kb);
        ab.update(ka);
        ab.update(kb);
    }

    CHECK(HllSketch::merge(a, b) == ab);
    CHECK(HllSketch::merge(b, a) == ab);
    CHECK(HllSketch::merge(a, a) == a);
    CHECK(HllSketch::merge(a, HllSketch(6)) == a);
    const auto c = HllSketch::merge(a, b);
    CHECK(HllSketch::merge(c, b) == c);
}

TEST_CASE("incompatible merges are rejected") {
    HllSketch a(6), b(7);
    CHECK_THROWS_AS(HllSketch::merge(a, b), IncompatibleSketchError);

    HllSketch seeded(6, HashConfig{.hash_id = "xxh64", .seed = 99});
    CHECK_THROWS_AS(HllSketch::merge(a, seeded), IncompatibleSketchError);
}

TEST_CASE("estimate delegates to the shared estimator") {
    HllSketch s(4);
    s.insert_pair(9, 1);
    CHECK(s.estimate() == doctest::Approx(16.0 * std::log(16.0 / 15.0)).epsilon(1e-12));
    const auto bd = s.estimate_breakdown();
    CHECK(bd.branch == EstimateBranch::LinearCounting);
    CHECK(bd.zero_registers == 15);
}

TEST_CASE("size in bits is six per register") {
    CHECK(HllSketch(4).size_bits() == 96);
    CHECK(HllSketch(15).size_bits() == 196608);
    CHECK(HllSketch(18).size_bits() == 1572864);
}

TEST_CASE("pair input register histogram matches the distribution oracle") {
    const unsigned log2m = 4;
    const std::uint64_t n = 256;
    const int kTrials = 10000;

    std::array<std::uint64_t, 64> counts{};
    std::uint64_t samples = 0;
    for (int t = 0; t < kTrials; ++t) {
        HllSketch s(log2m);
        feed(s, InputKind::Pair, n, derive_trial_seed(31337, static_cast<std::uint64_t>(t)));
        // registers are exchangeable, pool them for the marginal
        for (std::uint64_t j = 0; j < 16; ++j) {
            ++counts[s.register_at(j)];
            ++samples;
        }
    }

    RegisterDistribution d(16, n);
    double tv = 0.0;
    for (unsigned k = 0; k <= 63; ++k)
        tv += std::abs(static_cast<double>(counts[k]) / static_cast<double>(samples) - d.pmf(k));
    tv /= 2.0;
    CHECK(tv <= 0.02);
}

TEST_CASE("single-trial relative error is within the sanity bound") {
    const unsigned log2m = 10;
    const std::uint64_t n = 1 << 20;
    HllSketch s(log2m);
    feed(s, InputKind::Pair, n, 4242);
    const double rel = (s.estimate() - static_cast<double>(n)) / static_cast<double>(n);
    CHECK(std::abs(rel) <= 5.0 * 1.04 / std::sqrt(1024.0));
}
