#pragma once

// Planar geometry kernel shared by every decision and optimization routine.
//
// All distances are handled as squared values. Indices are 0-based: the
// stone a_1 of the usual notation is A[0], the curve vertex p_0 is vertex 0,
// and edge e_1 is edge 0.

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dfds {

/// Raised when a documented precondition of an operation does not hold.
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Relative tolerance used for squared-value equality and disk inflation.
inline constexpr double kRelTol = 1e-9;

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

/// ||p - q||^2. Every squared pair distance in the library goes through this
/// exact expression so that values computed in different places compare equal.
inline double squared_dist(Point p, Point q) noexcept
{
    const double dx = p.x - q.x;
    const double dy = p.y - q.y;
    return dx * dx + dy * dy;
}

/// Upper end of the tolerance band around a squared value.
inline double inflate(double value_sq) noexcept
{
    return value_sq + kRelTol * (value_sq > 1.0 ? value_sq : 1.0);
}

inline bool nearly_equal(double a, double b) noexcept
{
    return a <= b ? b <= inflate(a) : a <= inflate(b);
}

/// Non-empty sequence of finite points, stored as structure-of-arrays so the
/// SIMD kernels can stream coordinates directly.
class PointSeq {
public:
    PointSeq() = default;
    explicit PointSeq(std::span<const Point> points);
    PointSeq(std::initializer_list<Point> points);

    std::size_t size() const noexcept { return xs_.size(); }
    Point operator[](std::size_t i) const noexcept { return {xs_[i], ys_[i]}; }
    std::span<const double> xs() const noexcept { return xs_; }
    std::span<const double> ys() const noexcept { return ys_; }
    std::vector<Point> points() const;

private:
    std::vector<double> xs_;
    std::vector<double> ys_;
};

/// Position on a polygonal curve: edge index and parameter t in [0,1].
/// Vertex k < n is canonically (k, 0); the final vertex is (n-1, 1).
struct CurvePoint {
    int edge = 0;
    double t = 0.0;

    friend auto operator<=>(const CurvePoint&, const CurvePoint&) = default;
};

/// Polygonal curve with at least one edge; zero-length edges are rejected.
class PolyCurve {
public:
    PolyCurve() = default;
    explicit PolyCurve(std::vector<Point> vertices);
    PolyCurve(std::initializer_list<Point> vertices);

    int edge_count() const noexcept { return static_cast<int>(vertices_.size()) - 1; }
    std::size_t vertex_count() const noexcept { return vertices_.size(); }
    const std::vector<Point>& vertices() const noexcept { return vertices_; }
    Point vertex(int k) const { return vertices_[static_cast<std::size_t>(k)]; }
    Point edge_start(int e) const { return vertex(e); }
    Point edge_end(int e) const { return vertex(e + 1); }

    Point at(CurvePoint cp) const;
    CurvePoint canonical(CurvePoint cp) const;
    CurvePoint start() const { return {0, 0.0}; }
    CurvePoint finish() const { return {edge_count() - 1, 1.0}; }
    bool is_finish(CurvePoint cp) const;
    /// Vertex index if cp sits exactly on a vertex.
    std::optional<int> vertex_index(CurvePoint cp) const;

private:
    std::vector<Point> vertices_;
};

/// Candidate range (alpha, beta] of squared values.
struct HalfOpenInterval {
    double alpha_sq = 0.0;
    double beta_sq = kInf;

    bool contains(double v) const noexcept { return alpha_sq < v && v <= beta_sq; }
    friend bool operator==(const HalfOpenInterval&, const HalfOpenInterval&) = default;
};

enum class CriticalKind { PairDistance = 0, PointVertex = 1, PointPointEdge = 2 };

/// Tagged candidate value. Index meaning by kind:
///   PairDistance:   first = A index, second = B index
///   PointVertex:    first = A index, second = vertex index
///   PointPointEdge: first < second are A indices, edge = curve edge
struct CriticalValue {
    double value_sq = 0.0;
    CriticalKind kind = CriticalKind::PairDistance;
    int first = 0;
    int second = 0;
    int edge = -1;

    friend bool operator==(const CriticalValue&, const CriticalValue&) = default;
};

/// Deterministic total order: value, kind rank, then indices.
bool critical_less(const CriticalValue& a, const CriticalValue& b) noexcept;

/// Forward boundary crossing of the closed disk along one edge.
/// Returns the exit parameter, or nullopt when the rest of the edge stays
/// inside. Throws ContractError if the start point is outside the disk.
std::optional<double> disk_exit_on_edge(Point center, double delta_sq, Point seg_a, Point seg_b,
                                        double t_start);

struct BisectorHit {
    double t = 0.0;        ///< parameter on the edge
    Point point;           ///< the equidistant point
    double value_sq = 0.0; ///< ||p - point||^2
};

/// Intersection of the perpendicular bisector of p,q with the closed segment.
/// If the segment lies on the bisector, the smallest-parameter point is used.
std::optional<BisectorHit> bisector_edge_intersection(Point p, Point q, Point seg_a, Point seg_b);

/// All point-vertex values and all defined point-point-edge values, sorted
/// with critical_less.
std::vector<CriticalValue> enumerate_critical_values(const PointSeq& a, const PolyCurve& f);

/// Sorted copy of `values` with near-equal runs collapsed onto their smallest
/// member.
std::vector<double> dedupe_sorted(std::vector<double> values);

std::string to_string(CriticalKind kind);

} // namespace dfds
