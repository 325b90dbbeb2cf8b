#include "dfds/semi_continuous.hpp"
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

PolyCurve random_curve(std::size_t edges, std::mt19937_64& rng, double span = 10.0)
{
    std::uniform_real_distribution<double> u(0, span);
    std::vector<Point> pts(edges + 1);
    for (auto& p : pts)
        p = {u(rng), u(rng)};
    return PolyCurve(pts);
}

double curve_pos(CurvePoint x) { return x.edge + x.t; }

const PolyCurve kLine{{-2, 0}, {2, 0}};
const PointSeq kTwoStones{{0, 0}, {2, 0}};
const PolyCurve kParallel{{0, 0.5}, {2, 0.5}};
const PointSeq kOne{{0, 0}};
const PolyCurve kVertical{{0, 1}, {0, -1}};

TEST(NextEndpoint, Examples)
{
    const CurvePoint x{0, 0.25};
    const CurvePoint e = next_endpoint(kLine, x, {0, 0}, 1);
    EXPECT_EQ(e.edge, 0);
    EXPECT_NEAR(e.t, 0.75, 1e-12);
    EXPECT_TRUE(kLine.is_finish(next_endpoint(kLine, x, {0, 0}, 9)));

    const PolyCurve bent{{0, 0}, {0.5, 0}, {0.5, 2}};
    const CurvePoint b = next_endpoint(bent, bent.start(), {0, 0}, 1);
    EXPECT_EQ(b.edge, 1);
    const Point p = bent.at(b);
    EXPECT_NEAR(p.x, 0.5, 1e-12);
    EXPECT_NEAR(p.y, std::sqrt(0.75), 1e-12);
}

TEST(NextEndpoint, MatchesDenseSampling)
{
    std::mt19937_64 rng(50);
    std::uniform_real_distribution<double> u(0, 1);
    for (int it = 0; it < 300; ++it) {
        const PolyCurve f = random_curve(4, rng, 4.0);
        const CurvePoint x{static_cast<int>(it % 4), u(rng)};
        const Point c = f.at(x);
        const Point a{c.x + u(rng) - 0.5, c.y + u(rng) - 0.5};
        const double d2 = squared_dist(a, c) + 1.5 * u(rng);
        const CurvePoint e = next_endpoint(f, x, a, d2);
        EXPECT_LE(x, e);
        // Everything between x and the endpoint is inside; just past it is not.
        const double from = curve_pos(x);
        const double to = curve_pos(e);
        for (int k = 0; k <= 200; ++k) {
            const double s = from + (to - from) * k / 200.0;
            const int edge = std::min(static_cast<int>(s), f.edge_count() - 1);
            EXPECT_LE(squared_dist(a, f.at({edge, s - edge})), inflate(d2));
        }
        if (!f.is_finish(e)) {
            const double s = to + 1e-6;
            const int edge = std::min(static_cast<int>(s), f.edge_count() - 1);
            EXPECT_GT(squared_dist(a, f.at({edge, s - edge})), d2);
        }
    }
}

TEST(NextEndpoint, RejectsStartOutsideTheDisk)
{
    EXPECT_THROW(next_endpoint(kLine, kLine.start(), {0, 0}, 1), ContractError);
}

TEST(NextDisk, Examples)
{
    const PointSeq a{{0, 0}, {2, 0}, {5, 0}};
    const PolyCurve f{{1, 0}, {1, 1}};
    EXPECT_EQ(next_disk(a, f, f.start(), 0, 1.44), std::optional<int>(1));
    EXPECT_EQ(next_disk(a, f, f.start(), 0, 0.25), std::nullopt);
    EXPECT_EQ(next_disk(a, f, f.start(), 2, 100), std::nullopt);
}

TEST(DecideSemi, Examples)
{
    EXPECT_TRUE(decide_semi(kOne, kVertical, 1).yes);
    EXPECT_FALSE(decide_semi(kOne, kVertical, 0.99).yes);

    const SemiDecision d = decide_semi(kTwoStones, kParallel, 1.25);
    ASSERT_TRUE(d.yes);
    EXPECT_TRUE(replay_semi(kTwoStones, kParallel, 1.25, d.path));
    const auto hop = std::find_if(d.path.steps.begin(), d.path.steps.end(),
                                  [](const SemiStep& s) { return s.a == 1; });
    ASSERT_NE(hop, d.path.steps.end());
    EXPECT_NEAR(kParallel.at(hop->x).x, 1.0, 1e-9);
    EXPECT_FALSE(decide_semi(kTwoStones, kParallel, 1.24).yes);
}

TEST(OptimizeSemi, Examples)
{
    EXPECT_EQ(optimize_semi(kOne, kVertical).delta_star_sq, 1.0);
    EXPECT_DOUBLE_EQ(optimize_semi(kTwoStones, kParallel).delta_star_sq, 1.25);
    // The endpoint constraint dominates the interior bisector value 1.
    EXPECT_EQ(optimize_semi(kTwoStones, PolyCurve{{1, -1}, {1, 1}}).delta_star_sq, 2.0);
}

TEST(OptimizeSemi, ReturnsAnEnumeratedCriticalValueEqualToTheOracle)
{
    std::mt19937_64 rng(51);
    std::uniform_int_distribution<int> size(1, 25);
    for (int it = 0; it < 200; ++it) {
        const PointSeq a = random_seq(static_cast<std::size_t>(size(rng)), rng);
        const PolyCurve f = random_curve(static_cast<std::size_t>(size(rng)), rng);
        OptimizeConfig cfg;
        cfg.seed = static_cast<std::uint64_t>(it);
        const SemiResult r = optimize_semi(a, f, cfg);
        EXPECT_EQ(r.delta_star_sq, oracle_optimize_semi(a, f)) << "instance " << it;
        const auto cands = enumerate_critical_values(a, f);
        EXPECT_TRUE(std::any_of(cands.begin(), cands.end(), [&](const CriticalValue& c) {
            return c.value_sq == r.delta_star_sq;
        })) << "instance " << it;
        EXPECT_TRUE(replay_semi(a, f, r.delta_star_sq, r.certificate)) << "instance " << it;
    }
}

TEST(DecideSemi, MonotoneAndReplayable)
{
    std::mt19937_64 rng(52);
    std::uniform_int_distribution<int> size(1, 15);
    for (int it = 0; it < 200; ++it) {
        const PointSeq a = random_seq(static_cast<std::size_t>(size(rng)), rng);
        const PolyCurve f = random_curve(static_cast<std::size_t>(size(rng)), rng);
        bool seen_yes = false;
        for (int k = 1; k <= 40; ++k) {
            const double d2 = 1.5 * k;
            const SemiDecision d = decide_semi(a, f, d2);
            EXPECT_EQ(d.yes, oracle_decide_semi(a, f, d2));
            if (seen_yes) {
                EXPECT_TRUE(d.yes) << "instance " << it << " delta^2 " << d2;
            }
            if (d.yes) {
                seen_yes = true;
                EXPECT_TRUE(replay_semi(a, f, d2, d.path));
            }
        }
    }
}

std::size_t critical_count(const PointSeq& a, const PolyCurve& f, HalfOpenInterval iv)
{
    std::vector<double> vals;
    for (const CriticalValue& c : enumerate_critical_values(a, f))
        vals.push_back(c.value_sq);
    std::sort(vals.begin(), vals.end());
    vals = dedupe_sorted(std::move(vals));
    return static_cast<std::size_t>(
        std::count_if(vals.begin(), vals.end(), [&](double v) { return iv.contains(v); }));
}

TEST(NarrowIntervalSemi, SmallInstancesReturnTheStartInterval)
{
    const HalfOpenInterval start{0.0, 100.0};
    EXPECT_EQ(narrow_interval_semi(kOne, kVertical, 1000, 1, start), start);
}

TEST(NarrowIntervalSemi, Example)
{
    const HalfOpenInterval iv = narrow_interval_semi(kTwoStones, kParallel, 2, 7);
    EXPECT_TRUE(iv.contains(1.25));
    EXPECT_LE(critical_count(kTwoStones, kParallel, iv), 2u);
}

TEST(NarrowIntervalSemi, ContainsOptimumAndRespectsL)
{
    std::mt19937_64 rng(53);
    std::uniform_int_distribution<int> size(2, 30);
    int contained = 0;
    int bounded = 0;
    const int runs = 100;
    for (int it = 0; it < runs; ++it) {
        const std::size_t m = static_cast<std::size_t>(size(rng));
        const std::size_t n = static_cast<std::size_t>(size(rng));
        const PointSeq a = random_seq(m, rng);
        const PolyCurve f = random_curve(n, rng);
        const auto L = static_cast<std::size_t>(std::ceil(std::sqrt(double(m * m * n))));
        const HalfOpenInterval iv = narrow_interval_semi(a, f, L, static_cast<std::uint64_t>(it));
        contained += iv.contains(oracle_optimize_semi(a, f));
        bounded += critical_count(a, f, iv) <= L;
    }
    EXPECT_GE(contained, 99);
    EXPECT_GE(bounded, 95);
}

TEST(BifurcationSearchSemi, Examples)
{
    EXPECT_DOUBLE_EQ(bifurcation_search_semi(kTwoStones, kParallel, {0.25, 4.25}, 4), 1.25);
    EXPECT_EQ(bifurcation_search_semi(kOne, kVertical, {0.5, 2}, 2), 1.0);
}

bool step_inside(const SemiDecision& d, const SemiTriple& tr)
{
    constexpr double tol = 1e-7;
    const bool point_node = tr.p == tr.q;
    return std::any_of(d.path.steps.begin(), d.path.steps.end(), [&](const SemiStep& s) {
        if (s.a != tr.a_index)
            return false;
        const double x = curve_pos(s.x);
        const double p = curve_pos(tr.p);
        const double q = curve_pos(tr.q);
        if (point_node)
            return std::abs(x - p) <= tol;
        return x > p - tol && x <= q + tol;
    });
}

TEST(BifurcationSearchSemi, TripleInvariantHoldsAtSampledDeltas)
{
    std::mt19937_64 rng(54);
    std::uniform_int_distribution<int> size(2, 8);
    std::size_t checked = 0;
    for (int it = 0; it < 60; ++it) {
        const PointSeq a = random_seq(static_cast<std::size_t>(size(rng)), rng);
        const PolyCurve f = random_curve(static_cast<std::size_t>(size(rng)), rng);
        std::vector<SemiTriple> triples;
        const double star = bifurcation_search_semi(a, f, {0.0, kInf}, 16, nullptr, 0, &triples);
        EXPECT_EQ(star, oracle_optimize_semi(a, f));
        // A node's state is exact for delta^2 strictly inside tau; at beta the
        // comparison that produced beta flips to the sibling branch.
        for (const SemiTriple& tr : triples) {
            ASSERT_TRUE(std::isfinite(tr.tau.beta_sq));
            EXPECT_LE(tr.p, tr.q);
            for (int k = 1; k <= 5; ++k) {
                const double d2 = tr.tau.alpha_sq + (tr.tau.beta_sq - tr.tau.alpha_sq) * k / 6.0;
                EXPECT_TRUE(step_inside(decide_semi(a, f, d2), tr))
                    << "instance " << it << " a " << tr.a_index << " delta^2 " << d2;
                ++checked;
            }
        }
    }
    EXPECT_GT(checked, 0u);
}

TEST(Bisector, DiskMembershipOnACircleIsAHalfplaneTest)
{
    std::mt19937_64 rng(55);
    std::uniform_real_distribution<double> u(-5, 5);
    std::uniform_real_distribution<double> ang(0, 2 * M_PI);
    int disagreements = 0;
    for (int it = 0; it < 20000; ++it) {
        const Point a{u(rng), u(rng)};
        const Point b{u(rng), u(rng)};
        const double r = std::abs(u(rng)) + 0.1;
        const double th = ang(rng);
        const Point s{a.x + r * std::cos(th), a.y + r * std::sin(th)};
        // Side of the bisector of a and b that contains b.
        const Point mid{(a.x + b.x) / 2, (a.y + b.y) / 2};
        const double side = (s.x - mid.x) * (b.x - a.x) + (s.y - mid.y) * (b.y - a.y);
        const double margin = squared_dist(s, b) - r * r;
        if (std::abs(margin) <= 1e-9)
            continue;
        disagreements += (margin < 0) != (side > 0);
    }
    EXPECT_EQ(disagreements, 0);
}

TEST(OptimizeSemi, DeterministicPerSeed)
{
    std::mt19937_64 rng(56);
    const PointSeq a = random_seq(20, rng);
    const PolyCurve f = random_curve(20, rng);
    OptimizeConfig cfg;
    cfg.seed = 9;
    const SemiResult r1 = optimize_semi(a, f, cfg);
    const SemiResult r2 = optimize_semi(a, f, cfg);
    EXPECT_EQ(r1.delta_star_sq, r2.delta_star_sq);
    EXPECT_EQ(r1.stats.probes, r2.stats.probes);
    EXPECT_EQ(r1.certificate.steps, r2.certificate.steps);
}

} // namespace
} // namespace dfds
