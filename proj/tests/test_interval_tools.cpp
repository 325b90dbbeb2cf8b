#include "dfds/interval_tools.hpp"
#include "dfds/oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

namespace dfds {
namespace {

PointSeq random_seq(std::size_t n, std::mt19937_64& rng, double span = 10.0)
{
    std::uniform_real_distribution<double> u(0, span);
    std::vector<Point> pts(n);
    for (auto& p : pts)
        p = {u(rng), u(rng)};
    return PointSeq(pts);
}

const PointSeq kSquareA{{0, 0}, {1, 0}};
const PointSeq kSquareB{{0, 1}, {1, 1}};

TEST(CountExact, Examples)
{
    EXPECT_EQ(count_in_interval_exact(kSquareA, kSquareB, {1, 2.25}), 2u);
    EXPECT_EQ(count_in_interval_exact(kSquareA, kSquareB, {0, 1}), 2u);
    EXPECT_EQ(count_in_interval_exact(kSquareA, kSquareB, {4, 9}), 0u);
}

TEST(CountExact, WholeLineAndAdditivity)
{
    std::mt19937_64 rng(1);
    for (int it = 0; it < 50; ++it) {
        const PointSeq a = random_seq(1 + it % 13, rng);
        const PointSeq b = random_seq(1 + it % 11, rng);
        EXPECT_EQ(count_in_interval_exact(a, b, {0, kInf}), a.size() * b.size());
        std::uniform_real_distribution<double> u(0, 200);
        double x = u(rng), y = u(rng), z = u(rng);
        double v[3] = {x, y, z};
        std::sort(v, v + 3);
        EXPECT_EQ(count_in_interval_exact(a, b, {v[0], v[1]}) +
                      count_in_interval_exact(a, b, {v[1], v[2]}),
                  count_in_interval_exact(a, b, {v[0], v[2]}));
        EXPECT_EQ(pairs_in_interval(a, b, {v[0], v[2]}).size(),
                  count_in_interval_exact(a, b, {v[0], v[2]}));
    }
}

TEST(Threshold, SmallIntervalIsCountedExactly)
{
    const auto out = threshold_count_and_sample(kSquareA, kSquareB, {0, 2.25}, 4, 7);
    ASSERT_TRUE(std::holds_alternative<AtMostL>(out));
    EXPECT_EQ(std::get<AtMostL>(out).count, 4u);
}

TEST(Threshold, EmptyIntervalContent)
{
    std::mt19937_64 rng(2);
    const PointSeq a = random_seq(30, rng);
    const PointSeq b = random_seq(30, rng);
    const auto out = threshold_count_and_sample(a, b, {1e6, kInf}, 5, 3);
    ASSERT_TRUE(std::holds_alternative<AtMostL>(out));
    EXPECT_EQ(std::get<AtMostL>(out).count, 0u);
}

TEST(Threshold, InvalidLIsRejected)
{
    EXPECT_THROW(threshold_count_and_sample(kSquareA, kSquareB, {0, kInf}, 0, 1),
                 std::invalid_argument);
    EXPECT_THROW(threshold_count_and_sample(kSquareA, kSquareB, {0, kInf}, 5, 1),
                 std::invalid_argument);
}

TEST(Threshold, LargeCountGivesSoundBoundedSample)
{
    std::mt19937_64 rng(3);
    const PointSeq a = random_seq(100, rng);
    const PointSeq b = random_seq(100, rng);
    const std::size_t cap = threshold_sample_cap(100, 100, SamplingConstants{});
    EXPECT_LE(static_cast<double>(cap), SamplingConstants{}.sample_cap * std::log(200.0) + 1.0);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const HalfOpenInterval iv{0, kInf};
        const auto out = threshold_count_and_sample(a, b, iv, 50, seed);
        ASSERT_TRUE(std::holds_alternative<MoreThanL>(out)) << "seed " << seed;
        const auto& sample = std::get<MoreThanL>(out).sample;
        EXPECT_FALSE(sample.empty());
        EXPECT_LE(sample.size(), cap);
        for (const PairIndex& p : sample)
            EXPECT_TRUE(iv.contains(pair_value(a, b, p)));
    }
}

TEST(Threshold, SampleSoundnessOnNarrowIntervals)
{
    std::mt19937_64 rng(4);
    for (auto backend : {ThresholdBackend::Sampling, ThresholdBackend::Hierarchical}) {
        for (std::uint64_t seed = 0; seed < 40; ++seed) {
            const PointSeq a = random_seq(60, rng);
            const PointSeq b = random_seq(60, rng);
            const HalfOpenInterval iv{10.0, 40.0};
            ThresholdOptions opts;
            opts.backend = backend;
            const auto out = threshold_count_and_sample(a, b, iv, 20, seed, opts);
            if (const auto* more = std::get_if<MoreThanL>(&out)) {
                for (const PairIndex& p : more->sample)
                    EXPECT_TRUE(iv.contains(pair_value(a, b, p)));
                EXPECT_GE(count_in_interval_exact(a, b, iv), 10u);
            } else {
                EXPECT_LE(count_in_interval_exact(a, b, iv), 40u);
            }
        }
    }
}

TEST(Threshold, SlackContractHoldsOnBothBackends)
{
    std::mt19937_64 rng(5);
    int violations = 0;
    int trials = 0;
    for (auto backend : {ThresholdBackend::Sampling, ThresholdBackend::Hierarchical}) {
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const PointSeq a = random_seq(50, rng);
            const PointSeq b = random_seq(50, rng);
            std::uniform_real_distribution<double> u(0, 60);
            const double lo = u(rng);
            const HalfOpenInterval iv{lo, lo + u(rng)};
            const std::size_t L = 100;
            const std::size_t exact = count_in_interval_exact(a, b, iv);
            ThresholdOptions opts;
            opts.backend = backend;
            const auto out = threshold_count_and_sample(a, b, iv, L, seed, opts);
            ++trials;
            if (std::holds_alternative<AtMostL>(out) ? exact > 2 * L : exact < L / 2)
                ++violations;
        }
    }
    EXPECT_LE(violations, trials / 50);
}

bool one_sided_oracle(const PointSeq& a, const PointSeq& b, double d2)
{
    return oracle_decide_discrete(a, b, d2, OracleVariant::OneSidedDFDS);
}

TEST(Narrow, SmallInstanceReturnsTheStartInterval)
{
    const PointSeq a{{0, 0}, {0, 2}};
    const PointSeq b{{0, 0}, {0, 2}};
    const auto r = narrow_interval(a, b, 4, [&](double v) { return one_sided_oracle(a, b, v); }, 1);
    EXPECT_EQ(r.interval, (HalfOpenInterval{}));
    EXPECT_EQ(r.rounds, 0u);
}

TEST(Narrow, OutlierInstance)
{
    const PointSeq a{{0, 0}, {5, 5}, {0, 2}};
    const PointSeq b{{0, 0}, {0, 2}};
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto r =
            narrow_interval(a, b, 2, [&](double v) { return one_sided_oracle(a, b, v); }, seed);
        EXPECT_TRUE(r.interval.contains(4.0));
        EXPECT_LE(count_in_interval_exact(a, b, r.interval), 2u);
    }
}

TEST(Narrow, RandomInstancesContainTheOptimum)
{
    std::mt19937_64 rng(6);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const PointSeq a = random_seq(50, rng);
        const PointSeq b = random_seq(50, rng);
        const double opt = oracle_optimize_discrete(a, b, OracleVariant::OneSidedDFDS);
        const auto r =
            narrow_interval(a, b, 20, [&](double v) { return one_sided_oracle(a, b, v); }, seed);
        // The shrink boundaries are validated by the exact decision.
        ASSERT_TRUE(r.interval.contains(opt)) << "seed " << seed;
    }
}

TEST(RankSelect, Examples)
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        EXPECT_EQ(approx_rank_select(kSquareA, kSquareB, 2, 1, seed).value_sq, 1.0);
        EXPECT_EQ(approx_rank_select(kSquareA, kSquareB, 3, 1, seed).value_sq, 2.0);
    }
}

TEST(RankSelect, ParameterViolationsAreRejected)
{
    EXPECT_THROW(approx_rank_select(kSquareA, kSquareB, 0, 1, 1), std::invalid_argument);
    EXPECT_THROW(approx_rank_select(kSquareA, kSquareB, 4, 1, 1), std::invalid_argument);
    EXPECT_THROW(approx_rank_select(kSquareA, kSquareB, 2, 2, 1), std::invalid_argument);
    EXPECT_THROW(approx_rank_select(kSquareA, kSquareB, 2, 0, 1), std::invalid_argument);
}

TEST(RankSelect, RandomInstancesLandWithinTheRankWindow)
{
    std::mt19937_64 rng(7);
    int ok = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const PointSeq a = random_seq(60, rng);
        const PointSeq b = random_seq(60, rng);
        const std::size_t k = 1800;
        const std::size_t L = 360;
        const RankSelection r = approx_rank_select(a, b, k, L, seed);
        EXPECT_EQ(r.value_sq, pair_value(a, b, r.pair));
        const std::size_t below =
            count_in_interval_exact(a, b, {-1.0, std::nextafter(r.value_sq, -1.0)});
        const std::size_t upto = count_in_interval_exact(a, b, {-1.0, r.value_sq});
        // Any rank in [below+1, upto] is a consistent assignment.
        if (below + 1 < k + L && upto > k - L)
            ++ok;
    }
    EXPECT_GE(ok, 95);
}

} // namespace
} // namespace dfds
