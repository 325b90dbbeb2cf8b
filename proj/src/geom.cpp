#include "dfds/geom.hpp"

#include <algorithm>
#include <cmath>

namespace dfds {

namespace {

void require_finite(Point p)
{
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
        throw std::invalid_argument("point coordinates must be finite");
}

int kind_rank(CriticalKind k) { return static_cast<int>(k); }

} // namespace

PointSeq::PointSeq(std::span<const Point> points)
{
    if (points.empty())
        throw std::invalid_argument("point sequence must be non-empty");
    xs_.reserve(points.size());
    ys_.reserve(points.size());
    for (Point p : points) {
        require_finite(p);
        xs_.push_back(p.x);
        ys_.push_back(p.y);
    }
}

PointSeq::PointSeq(std::initializer_list<Point> points)
    : PointSeq(std::span<const Point>(points.begin(), points.size()))
{
}

std::vector<Point> PointSeq::points() const
{
    std::vector<Point> out(size());
    for (std::size_t i = 0; i < size(); ++i)
        out[i] = (*this)[i];
    return out;
}

PolyCurve::PolyCurve(std::vector<Point> vertices) : vertices_(std::move(vertices))
{
    if (vertices_.size() < 2)
        throw std::invalid_argument("curve needs at least one edge");
    for (Point p : vertices_)
        require_finite(p);
    for (std::size_t k = 0; k + 1 < vertices_.size(); ++k) {
        if (squared_dist(vertices_[k], vertices_[k + 1]) == 0.0)
            throw std::invalid_argument("curve edge " + std::to_string(k) + " has zero length");
    }
}

PolyCurve::PolyCurve(std::initializer_list<Point> vertices)
    : PolyCurve(std::vector<Point>(vertices))
{
}

Point PolyCurve::at(CurvePoint cp) const
{
    const Point a = edge_start(cp.edge);
    const Point b = edge_end(cp.edge);
    if (cp.t == 0.0)
        return a;
    if (cp.t == 1.0)
        return b;
    return {a.x + cp.t * (b.x - a.x), a.y + cp.t * (b.y - a.y)};
}

CurvePoint PolyCurve::canonical(CurvePoint cp) const
{
    if (cp.t >= 1.0 && cp.edge + 1 < edge_count())
        return {cp.edge + 1, 0.0};
    return cp;
}

bool PolyCurve::is_finish(CurvePoint cp) const
{
    return cp.edge == edge_count() - 1 && cp.t >= 1.0;
}

std::optional<int> PolyCurve::vertex_index(CurvePoint cp) const
{
    if (cp.t == 0.0)
        return cp.edge;
    if (cp.t == 1.0)
        return cp.edge + 1;
    return std::nullopt;
}

bool critical_less(const CriticalValue& a, const CriticalValue& b) noexcept
{
    if (a.value_sq != b.value_sq)
        return a.value_sq < b.value_sq;
    if (a.kind != b.kind)
        return kind_rank(a.kind) < kind_rank(b.kind);
    if (a.first != b.first)
        return a.first < b.first;
    if (a.second != b.second)
        return a.second < b.second;
    return a.edge < b.edge;
}

std::optional<double> disk_exit_on_edge(Point center, double delta_sq, Point seg_a, Point seg_b,
                                        double t_start)
{
    const double dx = seg_b.x - seg_a.x;
    const double dy = seg_b.y - seg_a.y;
    const Point start{seg_a.x + t_start * dx, seg_a.y + t_start * dy};
    const double start_sq = t_start == 0.0 ? squared_dist(seg_a, center) : squared_dist(start, center);
    if (start_sq > inflate(delta_sq))
        throw ContractError("disk_exit_on_edge: start point lies outside the disk");

    if (squared_dist(seg_b, center) <= delta_sq)
        return std::nullopt;

    // |seg_a + t d - c|^2 = delta_sq  <=>  A t^2 + 2 B t + C = 0
    const double ox = seg_a.x - center.x;
    const double oy = seg_a.y - center.y;
    const double qa = dx * dx + dy * dy;
    const double qb = dx * ox + dy * oy;
    const double qc = ox * ox + oy * oy - delta_sq;
    const double disc = std::max(0.0, qb * qb - qa * qc);
    const double root = std::sqrt(disc);
    double t_exit;
    if (qb <= 0.0)
        t_exit = (-qb + root) / qa;
    else
        t_exit = (root + qb) > 0.0 ? -qc / (qb + root) : 0.0;
    return std::clamp(t_exit, t_start, std::nextafter(1.0, 0.0));
}

std::optional<BisectorHit> bisector_edge_intersection(Point p, Point q, Point seg_a, Point seg_b)
{
    if (p == q)
        throw ContractError("bisector of coincident points is undefined");

    // g(t) = 2 (seg_a + t d - mid) . w  vanishes on the bisector.
    const Point mid{0.5 * (p.x + q.x), 0.5 * (p.y + q.y)};
    const double wx = q.x - p.x;
    const double wy = q.y - p.y;
    const double dx = seg_b.x - seg_a.x;
    const double dy = seg_b.y - seg_a.y;
    const double g0 = (seg_a.x - mid.x) * wx + (seg_a.y - mid.y) * wy;
    const double g1 = dx * wx + dy * wy;

    double t;
    if (g1 == 0.0) {
        const double scale = std::hypot(seg_a.x - mid.x, seg_a.y - mid.y) * std::hypot(wx, wy);
        if (std::abs(g0) > 1e-12 * std::max(1.0, scale))
            return std::nullopt;
        t = 0.0;
    } else {
        t = -g0 / g1;
        if (t < 0.0 || t > 1.0)
            return std::nullopt;
    }
    BisectorHit hit;
    hit.t = t;
    hit.point = t == 0.0 ? seg_a : t == 1.0 ? seg_b : Point{seg_a.x + t * dx, seg_a.y + t * dy};
    hit.value_sq = squared_dist(p, hit.point);
    return hit;
}

std::vector<CriticalValue> enumerate_critical_values(const PointSeq& a, const PolyCurve& f)
{
    const int m = static_cast<int>(a.size());
    const int n = f.edge_count();
    std::vector<CriticalValue> out;
    out.reserve(static_cast<std::size_t>(m) * static_cast<std::size_t>(n + 1));
    for (int i = 0; i < m; ++i) {
        for (int k = 0; k <= n; ++k)
            out.push_back({squared_dist(a[static_cast<std::size_t>(i)], f.vertex(k)),
                           CriticalKind::PointVertex, i, k, -1});
    }
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            const Point p = a[static_cast<std::size_t>(i)];
            const Point q = a[static_cast<std::size_t>(j)];
            if (p == q)
                continue;
            for (int e = 0; e < n; ++e) {
                if (auto hit = bisector_edge_intersection(p, q, f.edge_start(e), f.edge_end(e)))
                    out.push_back({hit->value_sq, CriticalKind::PointPointEdge, i, j, e});
            }
        }
    }
    std::sort(out.begin(), out.end(), critical_less);
    return out;
}

std::vector<double> dedupe_sorted(std::vector<double> values)
{
    std::sort(values.begin(), values.end());
    std::vector<double> out;
    out.reserve(values.size());
    for (double v : values) {
        if (out.empty() || v > inflate(out.back()))
            out.push_back(v);
    }
    return out;
}

std::string to_string(CriticalKind kind)
{
    switch (kind) {
    case CriticalKind::PairDistance:
        return "pair";
    case CriticalKind::PointVertex:
        return "point-vertex";
    case CriticalKind::PointPointEdge:
        return "point-point-edge";
    }
    return "unknown";
}

} // namespace dfds
