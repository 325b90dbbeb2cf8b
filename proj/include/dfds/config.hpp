#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace dfds {

/// How threshold_count_and_sample estimates the number of pair distances
/// inside an interval.
enum class ThresholdBackend {
    Sampling,     ///< uniform pair sampling
    Hierarchical, ///< quadtree blocks plus sampling at the leaves
};

/// How the two-sided decision builds its biclique cover.
enum class CoverBackend { Naive, Hierarchical };

struct SamplingConstants {
    double draw_factor = 4.0;   ///< c2: draws = c2 * (pairs / L) * ln(m+n)
    double hit_threshold = 8.0; ///< c3: MoreThanL once hits exceed c3 * ln(m+n)
    double sample_cap = 16.0;   ///< c_s: returned sample holds at most c_s * ln(m+n) pairs
};

struct OptimizeConfig {
    std::uint64_t seed = 1;
    std::size_t L = 0; ///< 0 selects the per-problem default
    int max_retries = 5;
    ThresholdBackend threshold_backend = ThresholdBackend::Sampling;
    CoverBackend cover_backend = CoverBackend::Naive;
    SamplingConstants sampling{};
    double semi_sample_factor = 4.0; ///< c in the critical-value sampling of the semi-continuous narrowing
    std::size_t full_sort_limit = 10'000'000; ///< two-sided: sort all m*n distances up to this size
};

/// Counters reported by the optimizers.
struct SearchStats {
    std::size_t probes = 0;       ///< comparisons examined by simulated decisions
    std::size_t bifurcations = 0; ///< distinct split values resolved by binary search
    std::size_t phases = 0;
    std::size_t decisions = 0;    ///< concrete decision-procedure calls
    std::size_t narrowing_rounds = 0;
    std::size_t samples_drawn = 0;
    int retries = 0;
};

/// Internal signal: a randomized step produced a state that the
/// restart policy discards. Caught by the optimizers.
class RestartNeeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The optimizer hit its retry cap.
class RetryExhausted : public std::runtime_error {
public:
    RetryExhausted(const std::string& what, SearchStats stats)
        : std::runtime_error(what), stats_(stats)
    {
    }
    const SearchStats& stats() const noexcept { return stats_; }

private:
    SearchStats stats_;
};

} // namespace dfds
