#pragma once

// One-sided discrete Frechet distance with shortcuts: only the A-frog may
// skip stones, the B-frog advances one stone at a time.

#include "dfds/config.hpp"
#include "dfds/geom.hpp"
#include "dfds/interval_tools.hpp"

#include <vector>

namespace dfds {

/// Matrix position (A index, B index).
struct Position {
    int i = 0;
    int j = 0;

    friend bool operator==(const Position&, const Position&) = default;
};

using Staircase = std::vector<Position>;

struct OneSidedDecision {
    bool yes = false;
    Staircase staircase; ///< greedy lowest staircase when yes
    std::size_t probes = 0; ///< matrix entries examined
};

/// Greedy linear-time decision: prefer right moves, otherwise climb to the
/// lowest 1-entry above in the current column.
OneSidedDecision decide_one_sided(const PointSeq& a, const PointSeq& b, double delta_sq);

/// The greedy staircase without the end-position shortcut: it runs until it
/// reaches (m-1, n-1) or gets stuck. Empty if the start pair is too far.
Staircase trace_greedy_staircase(const PointSeq& a, const PointSeq& b, double delta_sq);

/// True if `s` is a legal move sequence from (0,0) to (m-1,n-1) in the
/// one-sided graph at delta_sq.
bool replay_one_sided(const PointSeq& a, const PointSeq& b, double delta_sq, const Staircase& s);

struct OneSidedResult {
    double delta_star_sq = 0.0;
    Staircase certificate;
    SearchStats stats;
};

/// Default phase parameter L for the optimizer.
std::size_t default_one_sided_L(std::size_t m, std::size_t n);

/// Exact squared one-sided distance. Throws RetryExhausted if every attempt
/// hit a sampling failure.
OneSidedResult optimize_one_sided(const PointSeq& a, const PointSeq& b,
                                  const OptimizeConfig& cfg = {});

/// Exact squared distance given an interval (alpha, beta] known to contain
/// it. Simulates the greedy decision at the unknown optimum, branching on
/// every undetermined comparison. Throws RestartNeeded when more than
/// `max_bifurcations` distinct split values are seen (0 disables the cap).
double bifurcation_search(const PointSeq& a, const PointSeq& b, HalfOpenInterval interval,
                          std::size_t L, SearchStats* stats = nullptr,
                          std::size_t max_bifurcations = 0);

} // namespace dfds
