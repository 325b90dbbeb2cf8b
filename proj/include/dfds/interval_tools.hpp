#pragma once

// Counting pair distances inside an interval, the randomized threshold test
// with approximate-median sampling, interval narrowing, and approximate rank
// selection.

#include "dfds/config.hpp"
#include "dfds/geom.hpp"

#include <functional>
#include <optional>
#include <random>
#include <variant>
#include <vector>

namespace dfds {

using Rng = std::mt19937_64;

struct PairIndex {
    int a = 0;
    int b = 0;

    friend bool operator==(const PairIndex&, const PairIndex&) = default;
};

inline double pair_value(const PointSeq& a, const PointSeq& b, PairIndex p)
{
    return squared_dist(a[static_cast<std::size_t>(p.a)], b[static_cast<std::size_t>(p.b)]);
}

/// Exact number of pairs with squared distance in (alpha_sq, beta_sq].
std::size_t count_in_interval_exact(const PointSeq& a, const PointSeq& b, HalfOpenInterval iv);

/// All in-interval pairs, in row-major order.
std::vector<PairIndex> pairs_in_interval(const PointSeq& a, const PointSeq& b, HalfOpenInterval iv);

struct AtMostL {
    std::size_t count = 0; ///< exact when enumerated, otherwise an estimate
};

struct MoreThanL {
    std::vector<PairIndex> sample; ///< every sampled pair lies inside the interval
    bool exact = false;            ///< true when `count` was obtained by enumeration
    std::size_t count = 0;
};

using ThresholdOutcome = std::variant<AtMostL, MoreThanL>;

struct ThresholdOptions {
    ThresholdBackend backend = ThresholdBackend::Sampling;
    SamplingConstants constants{};
    std::size_t* draws = nullptr; ///< optional counter of pairs examined
};

/// Largest sample a MoreThanL outcome may carry for these sizes.
std::size_t threshold_sample_cap(std::size_t m, std::size_t n, const SamplingConstants& c);

ThresholdOutcome threshold_count_and_sample(const PointSeq& a, const PointSeq& b,
                                            HalfOpenInterval iv, std::size_t L, Rng& rng,
                                            const ThresholdOptions& opts = {});

ThresholdOutcome threshold_count_and_sample(const PointSeq& a, const PointSeq& b,
                                            HalfOpenInterval iv, std::size_t L,
                                            std::uint64_t seed, const ThresholdOptions& opts = {});

struct NarrowResult {
    HalfOpenInterval interval;
    std::optional<PairIndex> alpha_pair; ///< generator of alpha when it came from a sample
    std::optional<PairIndex> beta_pair;
    std::size_t rounds = 0;
};

using DecideFn = std::function<bool(double delta_sq)>;

/// Shrinks `start` around the flip point of the monotone predicate `decide`
/// until the threshold test reports at most L pair distances inside.
/// Throws RestartNeeded after too many rounds.
NarrowResult narrow_interval(const PointSeq& a, const PointSeq& b, std::size_t L,
                             const DecideFn& decide, Rng& rng, const ThresholdOptions& opts = {},
                             HalfOpenInterval start = {}, SearchStats* stats = nullptr);

NarrowResult narrow_interval(const PointSeq& a, const PointSeq& b, std::size_t L,
                             const DecideFn& decide, std::uint64_t seed);

struct RankSelection {
    PairIndex pair;
    double value_sq = 0.0;
};

/// A pair whose distance rank lies in (k-L, k+L) with high probability.
/// Ranks are 1-based; requires 0 < k < m*n and 0 < L < k.
RankSelection approx_rank_select(const PointSeq& a, const PointSeq& b, std::size_t k,
                                 std::size_t L, std::uint64_t seed,
                                 const ThresholdOptions& opts = {});

} // namespace dfds
