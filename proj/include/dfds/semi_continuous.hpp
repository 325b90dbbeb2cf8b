#pragma once

// Semi-continuous Frechet distance with shortcuts: a frog hopping forward
// over the stones of A (skips allowed) while a person traces the whole
// polygonal curve f.

#include "dfds/config.hpp"
#include "dfds/geom.hpp"

#include <optional>
#include <vector>

namespace dfds {

/// Forward endpoint of the component of f inside the closed disk around `a`
/// that contains x; f.finish() if the rest of the curve stays inside.
/// Throws ContractError if x is outside the disk.
CurvePoint next_endpoint(const PolyCurve& f, CurvePoint x, Point a, double delta_sq);

/// Smallest j > i with x inside the disk around A[j].
std::optional<int> next_disk(const PointSeq& a, const PolyCurve& f, CurvePoint x, int i,
                             double delta_sq);

struct SemiStep {
    int a = 0;
    CurvePoint x;

    friend bool operator==(const SemiStep&, const SemiStep&) = default;
};

/// Edge (relative interior) or vertex that a curve point lies on.
struct PathFeature {
    bool vertex = false;
    int index = 0;

    friend bool operator==(const PathFeature&, const PathFeature&) = default;
};

struct SemiPath {
    std::vector<SemiStep> steps;
};

PathFeature feature_of(const PolyCurve& f, CurvePoint x);

struct SemiDecision {
    bool yes = false;
    SemiPath path; ///< positions visited, also filled when the answer is no
    std::size_t probes = 0; ///< vertex and disk tests performed
};

/// The greedy procedure: alternate NextEndpoint and NextDisk. All membership
/// tests use the tolerance band inflate(delta_sq), so the answer at an exact
/// critical value is stable under rounding.
SemiDecision decide_semi(const PointSeq& a, const PolyCurve& f, double delta_sq);

/// Checks that `path` is a legal traversal from (0, p_0) to (m-1, p_n):
/// right moves keep every sampled curve point (spacing `resolution` in arc
/// length) inside the disk, upward moves land inside the new disk.
bool replay_semi(const PointSeq& a, const PolyCurve& f, double delta_sq, const SemiPath& path,
                 double resolution = 1e-3);

/// Node annotation of the bifurcation tree: for every delta in tau some step
/// of the decision run has the frog on A[a_index] and the person inside the
/// subedge (p, q] of edge `edge`.
struct SemiTriple {
    HalfOpenInterval tau;
    int a_index = 0;
    int edge = 0;
    CurvePoint p;
    CurvePoint q;
};

std::size_t default_semi_L(std::size_t m, std::size_t n);

/// One-pass narrowing over sampled critical values (pairs and triples).
HalfOpenInterval narrow_interval_semi(const PointSeq& a, const PolyCurve& f, std::size_t L,
                                      std::uint64_t seed, HalfOpenInterval start = {},
                                      double sample_factor = 4.0, SearchStats* stats = nullptr);

/// Exact squared distance given an interval containing it. When `triples` is
/// non-null it receives the annotation of every tree node with a finite
/// upper bound.
double bifurcation_search_semi(const PointSeq& a, const PolyCurve& f, HalfOpenInterval interval,
                               std::size_t L, SearchStats* stats = nullptr,
                               std::size_t max_bifurcations = 0,
                               std::vector<SemiTriple>* triples = nullptr);

struct SemiResult {
    double delta_star_sq = 0.0;
    SemiPath certificate;
    SearchStats stats;
};

SemiResult optimize_semi(const PointSeq& a, const PolyCurve& f, const OptimizeConfig& cfg = {});

} // namespace dfds
