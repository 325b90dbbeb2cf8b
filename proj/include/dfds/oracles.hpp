#pragma once

// Brute-force reference implementations. They share only the geometry
// primitives with the fast procedures and are meant for desk-scale inputs.

#include "dfds/geom.hpp"

namespace dfds {

enum class OracleVariant { OneSidedDFDS, TwoSidedDFDS, SemiContinuous };

/// Reachability of (m-1, n-1) from (0, 0) over the position grid using the
/// variant's move rules. Throws std::invalid_argument for SemiContinuous.
bool oracle_decide_discrete(const PointSeq& a, const PointSeq& b, double delta_sq,
                            OracleVariant variant);

/// Smallest squared pair distance at which the oracle decision holds.
double oracle_optimize_discrete(const PointSeq& a, const PointSeq& b, OracleVariant variant);

/// Per-stone reachable-interval propagation along the curve. Membership uses
/// the same tolerance band inflate(delta_sq) as decide_semi.
bool oracle_decide_semi(const PointSeq& a, const PolyCurve& f, double delta_sq);

/// Smallest enumerated critical value at which the oracle decision holds.
double oracle_optimize_semi(const PointSeq& a, const PolyCurve& f);

} // namespace dfds
