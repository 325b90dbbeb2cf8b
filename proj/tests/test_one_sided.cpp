#include "dfds/one_sided.hpp"
#include "dfds/oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
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

const PointSeq kOutlierA{{0, 0}, {5, 5}, {0, 2}};
const PointSeq kOutlierB{{0, 0}, {0, 2}};

TEST(DecideOneSided, SinglePairAtExactlyDelta)
{
    const PointSeq a{{0, 0}};
    const PointSeq b{{3, 4}};
    const auto yes = decide_one_sided(a, b, 25);
    EXPECT_TRUE(yes.yes);
    EXPECT_EQ(yes.staircase, (Staircase{{0, 0}}));
    EXPECT_FALSE(decide_one_sided(a, b, 24).yes);
}

TEST(DecideOneSided, SkipsTheOutlier)
{
    const auto d = decide_one_sided(kOutlierA, kOutlierB, 4);
    ASSERT_TRUE(d.yes);
    EXPECT_EQ(d.staircase, (Staircase{{0, 0}, {0, 1}, {2, 1}}));
    EXPECT_TRUE(replay_one_sided(kOutlierA, kOutlierB, 4, d.staircase));
}

TEST(OptimizeOneSided, Examples)
{
    EXPECT_EQ(optimize_one_sided(PointSeq{{0, 0}}, PointSeq{{3, 4}}).delta_star_sq, 25.0);
    EXPECT_EQ(optimize_one_sided(kOutlierA, kOutlierB).delta_star_sq, 4.0);
    const PointSeq two{{0, 0}, {0, 2}};
    EXPECT_EQ(optimize_one_sided(two, two).delta_star_sq, 4.0);
}

TEST(BifurcationSearch, Examples)
{
    EXPECT_EQ(bifurcation_search(kOutlierA, kOutlierB, {1, 9}, 6), 4.0);
    EXPECT_EQ(bifurcation_search(PointSeq{{0, 0}}, PointSeq{{3, 4}}, {16, 36}, 1), 25.0);
}

TEST(BifurcationSearch, FullIntervalMatchesOracle)
{
    std::mt19937_64 rng(30);
    for (int it = 0; it < 200; ++it) {
        const PointSeq a = random_seq(30, rng);
        const PointSeq b = random_seq(30, rng);
        const double expected = oracle_optimize_discrete(a, b, OracleVariant::OneSidedDFDS);
        EXPECT_EQ(bifurcation_search(a, b, {}, 900), expected) << "instance " << it;
    }
}

TEST(DecideOneSided, MonotoneInDelta)
{
    std::mt19937_64 rng(31);
    for (int it = 0; it < 200; ++it) {
        const PointSeq a = random_seq(2 + it % 15, rng);
        const PointSeq b = random_seq(2 + it % 9, rng);
        bool seen_yes = false;
        for (double d2 = 0.5; d2 < 200; d2 *= 1.5) {
            const bool yes = decide_one_sided(a, b, d2).yes;
            EXPECT_TRUE(!seen_yes || yes) << "instance " << it << " d2 " << d2;
            seen_yes = seen_yes || yes;
        }
    }
}

TEST(DecideOneSided, CertificatesReplayAndProbesAreLinear)
{
    std::mt19937_64 rng(32);
    for (int it = 0; it < 300; ++it) {
        const std::size_t m = 1 + it % 40;
        const std::size_t n = 1 + (it * 7) % 40;
        const PointSeq a = random_seq(m, rng);
        const PointSeq b = random_seq(n, rng);
        for (double d2 : {4.0, 16.0, 36.0, 100.0}) {
            const auto d = decide_one_sided(a, b, d2);
            EXPECT_LE(d.probes, 3 * (m + n));
            EXPECT_EQ(d.yes, oracle_decide_discrete(a, b, d2, OracleVariant::OneSidedDFDS));
            if (d.yes) {
                EXPECT_TRUE(replay_one_sided(a, b, d2, d.staircase));
            }
        }
    }
}

// Lowest reachable row of every column, by exhaustive search of the move graph.
std::vector<int> lowest_reachable_rows(const PointSeq& a, const PointSeq& b, double d2)
{
    const int m = static_cast<int>(a.size());
    const int n = static_cast<int>(b.size());
    auto one = [&](int i, int j) {
        return squared_dist(a[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(j)]) <= d2;
    };
    std::vector<int> lowest(static_cast<std::size_t>(n), m);
    if (!one(0, 0))
        return lowest;
    std::vector<std::vector<char>> seen(static_cast<std::size_t>(m),
                                        std::vector<char>(static_cast<std::size_t>(n), 0));
    std::vector<Position> stack{{0, 0}};
    seen[0][0] = 1;
    while (!stack.empty()) {
        const Position p = stack.back();
        stack.pop_back();
        lowest[static_cast<std::size_t>(p.j)] = std::min(lowest[static_cast<std::size_t>(p.j)], p.i);
        std::vector<Position> next;
        if (p.j + 1 < n)
            next.push_back({p.i, p.j + 1});
        for (int i = p.i + 1; i < m; ++i)
            next.push_back({i, p.j});
        for (const Position q : next) {
            if (one(q.i, q.j) && !seen[static_cast<std::size_t>(q.i)][static_cast<std::size_t>(q.j)]) {
                seen[static_cast<std::size_t>(q.i)][static_cast<std::size_t>(q.j)] = 1;
                stack.push_back(q);
            }
        }
    }
    return lowest;
}

TEST(GreedyStaircase, IsColumnwiseLowestAndReachesTheEndWheneverPossible)
{
    std::mt19937_64 rng(33);
    std::uniform_int_distribution<int> size(1, 6);
    for (int it = 0; it < 500; ++it) {
        const PointSeq a = random_seq(static_cast<std::size_t>(size(rng)), rng, 4.0);
        const PointSeq b = random_seq(static_cast<std::size_t>(size(rng)), rng, 4.0);
        const double d2 = std::uniform_real_distribution<double>(0.5, 8.0)(rng);
        const auto lowest = lowest_reachable_rows(a, b, d2);
        const Staircase s = trace_greedy_staircase(a, b, d2);
        const int m = static_cast<int>(a.size());
        const int n = static_cast<int>(b.size());
        std::vector<int> greedy_low(static_cast<std::size_t>(n), m);
        for (const Position p : s)
            greedy_low[static_cast<std::size_t>(p.j)] =
                std::min(greedy_low[static_cast<std::size_t>(p.j)], p.i);
        for (int j = 0; j < n; ++j) {
            if (lowest[static_cast<std::size_t>(j)] < m) {
                EXPECT_EQ(greedy_low[static_cast<std::size_t>(j)],
                          lowest[static_cast<std::size_t>(j)]);
            }
        }
        const bool any = oracle_decide_discrete(a, b, d2, OracleVariant::OneSidedDFDS);
        const bool greedy_ends = !s.empty() && s.back() == Position{m - 1, n - 1};
        EXPECT_EQ(any, greedy_ends) << "instance " << it;
    }
}

TEST(OptimizeOneSided, MatchesOracleWithReplayableCertificate)
{
    std::mt19937_64 rng(34);
    std::uniform_int_distribution<int> size(2, 40);
    for (int it = 0; it < 300; ++it) {
        const PointSeq a = random_seq(static_cast<std::size_t>(size(rng)), rng);
        const PointSeq b = random_seq(static_cast<std::size_t>(size(rng)), rng);
        OptimizeConfig cfg;
        cfg.seed = static_cast<std::uint64_t>(it);
        const auto r = optimize_one_sided(a, b, cfg);
        EXPECT_EQ(r.delta_star_sq, oracle_optimize_discrete(a, b, OracleVariant::OneSidedDFDS));
        EXPECT_TRUE(replay_one_sided(a, b, r.delta_star_sq, r.certificate));
    }
}

TEST(OptimizeOneSided, SmallLForcesPhasesAndStillMatches)
{
    std::mt19937_64 rng(35);
    for (int it = 0; it < 100; ++it) {
        const PointSeq a = random_seq(25, rng);
        const PointSeq b = random_seq(25, rng);
        OptimizeConfig cfg;
        cfg.seed = static_cast<std::uint64_t>(it);
        cfg.L = 3;
        EXPECT_EQ(optimize_one_sided(a, b, cfg).delta_star_sq,
                  oracle_optimize_discrete(a, b, OracleVariant::OneSidedDFDS));
    }
}

TEST(OptimizeOneSided, DeterministicForAFixedSeed)
{
    std::mt19937_64 rng(36);
    const PointSeq a = random_seq(200, rng);
    const PointSeq b = random_seq(180, rng);
    OptimizeConfig cfg;
    cfg.seed = 99;
    const auto r1 = optimize_one_sided(a, b, cfg);
    const auto r2 = optimize_one_sided(a, b, cfg);
    EXPECT_EQ(r1.delta_star_sq, r2.delta_star_sq);
    EXPECT_EQ(r1.certificate, r2.certificate);
    EXPECT_EQ(r1.stats.probes, r2.stats.probes);
    EXPECT_EQ(r1.stats.bifurcations, r2.stats.bifurcations);
    EXPECT_EQ(r1.stats.decisions, r2.stats.decisions);
    EXPECT_EQ(r1.stats.samples_drawn, r2.stats.samples_drawn);
}

TEST(DefaultL, StaysWithinRange)
{
    EXPECT_EQ(default_one_sided_L(1, 1), 1u);
    for (std::size_t m : {2, 10, 1000})
        for (std::size_t n : {1, 7, 3000}) {
            const std::size_t L = default_one_sided_L(m, n);
            EXPECT_GE(L, 1u);
            EXPECT_LE(L, m * n);
        }
}

} // namespace
} // namespace dfds
