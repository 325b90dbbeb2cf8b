#pragma once

// Two-sided discrete Frechet distance with shortcuts: both frogs may skip.
// The decision sweeps the rows of the threshold matrix, which is given
// implicitly by an edge-disjoint cover with complete bipartite blocks.

#include "dfds/config.hpp"
#include "dfds/geom.hpp"
#include "dfds/one_sided.hpp"

#include <climits>
#include <functional>
#include <vector>

namespace dfds {

struct Biclique {
    std::vector<int> a_side; ///< strictly increasing A indices
    std::vector<int> b_side; ///< strictly increasing B indices
};

struct ColumnEntry {
    int biclique = 0;
    int position = 0; ///< index of the column inside that biclique's b_side
};

struct BicliqueCover {
    int m = 0;
    int n = 0;
    std::vector<Biclique> bicliques;
    std::vector<std::vector<int>> row_incidence;         ///< per A index: biclique ids
    std::vector<std::vector<ColumnEntry>> col_incidence; ///< per B index

    std::size_t edge_count() const;
    /// Sum of b_side sizes, the amortized bound of the sweep.
    std::size_t b_entries() const;
};

/// Sorts the sides and builds the incidence lists.
BicliqueCover make_cover(int m, int n, std::vector<Biclique> bicliques);

/// One star {a_i} x {b_j within delta} per non-isolated a_i.
BicliqueCover build_cover_naive(const PointSeq& a, const PointSeq& b, double delta_sq);

/// Quadtree over B: a cell entirely inside an A-disk joins that disk's
/// block, crossing cells are refined, small cells fall back to stars.
BicliqueCover build_cover_hierarchical(const PointSeq& a, const PointSeq& b, double delta_sq,
                                       std::size_t leaf_size = 4);

/// Throws ContractError if some (i, j) pair lies in two bicliques.
void check_edge_disjoint(const BicliqueCover& cover);

/// Throws ContractError unless the cover lists every pair within delta
/// exactly once and nothing else.
void validate_cover(const BicliqueCover& cover, const PointSeq& a, const PointSeq& b,
                    double delta_sq);

inline constexpr int kUnreached = INT_MAX;

/// Called at the start of each row with the reachability variable of every
/// biclique (kUnreached for none).
using SweepHook = std::function<void(int row, const std::vector<int>& v)>;

struct SweepOptions {
    const SweepHook* hook = nullptr;
    std::size_t* work = nullptr; ///< list traversal steps
};

/// Row sweep with per-biclique reachability variables. start_ok and end_ok
/// are the tests of the (0,0) and (m-1,n-1) entries.
bool decide_two_sided(const BicliqueCover& cover, bool start_ok, bool end_ok,
                      const SweepOptions& opts = {});

/// Builds the cover with the requested backend and runs the sweep.
bool decide_two_sided(const PointSeq& a, const PointSeq& b, double delta_sq,
                      CoverBackend backend = CoverBackend::Naive, std::size_t* work = nullptr);

/// A legal move sequence from (0,0) to (m-1,n-1) in the two-sided graph, or
/// empty if none exists. Uses O(m+n) memory.
Staircase trace_two_sided(const PointSeq& a, const PointSeq& b, double delta_sq);

/// True if `s` is a legal two-sided move sequence from (0,0) to (m-1,n-1).
bool replay_two_sided(const PointSeq& a, const PointSeq& b, double delta_sq, const Staircase& s);

struct TwoSidedResult {
    double delta_star_sq = 0.0;
    SearchStats stats;
};

/// Binary search over the sorted pair distances; for very large inputs the
/// candidates are first narrowed by sampling and only the survivors sorted.
TwoSidedResult optimize_two_sided(const PointSeq& a, const PointSeq& b,
                                  const OptimizeConfig& cfg = {});

} // namespace dfds
