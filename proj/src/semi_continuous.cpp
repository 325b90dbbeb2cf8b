#include "dfds/semi_continuous.hpp"

#include "dfds/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace dfds {

namespace {

double point_dist(const PointSeq& a, int i, Point p)
{
    return squared_dist(a[static_cast<std::size_t>(i)], p);
}

CurvePoint endpoint_impl(const PolyCurve& f, CurvePoint x, Point a, double delta_sq,
                         std::size_t& probes)
{
    const int n = f.edge_count();
    if (f.is_finish(x))
        return f.finish();
    x = f.canonical(x);
    int e = x.edge;
    double t0 = x.t;
    while (true) {
        ++probes;
        if (squared_dist(a, f.vertex(e + 1)) <= delta_sq) {
            if (e + 1 == n)
                return f.finish();
            ++e;
            t0 = 0.0;
            continue;
        }
        const auto t = disk_exit_on_edge(a, delta_sq, f.edge_start(e), f.edge_end(e), t0);
        return {e, t.value_or(1.0)};
    }
}

// Calls visit(point) for points spaced at most `resolution` apart along f
// from x to y, both ends included.
template <class Visit>
bool sample_curve(const PolyCurve& f, CurvePoint x, CurvePoint y, double resolution, Visit&& visit)
{
    for (int e = x.edge; e <= y.edge; ++e) {
        const double t0 = e == x.edge ? x.t : 0.0;
        const double t1 = e == y.edge ? y.t : 1.0;
        if (t1 < t0)
            continue;
        const double len = std::sqrt(squared_dist(f.edge_start(e), f.edge_end(e))) * (t1 - t0);
        const auto steps = static_cast<long>(std::min(1e6, std::ceil(len / resolution)));
        for (long s = 0; s <= steps; ++s) {
            const double t = steps == 0 ? t0 : t0 + (t1 - t0) * static_cast<double>(s) /
                                                        static_cast<double>(steps);
            if (!visit(f.at({e, t})))
                return false;
        }
    }
    return true;
}

} // namespace

CurvePoint next_endpoint(const PolyCurve& f, CurvePoint x, Point a, double delta_sq)
{
    if (squared_dist(a, f.at(x)) > inflate(delta_sq))
        throw ContractError("next_endpoint: the current point lies outside the disk");
    std::size_t probes = 0;
    return endpoint_impl(f, x, a, delta_sq, probes);
}

std::optional<int> next_disk(const PointSeq& a, const PolyCurve& f, CurvePoint x, int i,
                             double delta_sq)
{
    const Point p = f.at(x);
    const std::size_t k =
        kernels::first_within(a.xs(), a.ys(), p.x, p.y, delta_sq, static_cast<std::size_t>(i + 1));
    if (k >= a.size())
        return std::nullopt;
    return static_cast<int>(k);
}

PathFeature feature_of(const PolyCurve& f, CurvePoint x)
{
    if (auto v = f.vertex_index(x))
        return {true, *v};
    return {false, x.edge};
}

SemiDecision decide_semi(const PointSeq& a, const PolyCurve& f, double delta_sq)
{
    SemiDecision res;
    const int m = static_cast<int>(a.size());
    const double r2 = inflate(delta_sq);
    res.probes = 1;
    if (point_dist(a, 0, f.vertex(0)) > r2)
        return res;

    int k = 0;
    CurvePoint x = f.start();
    res.path.steps.push_back({k, x});
    while (true) {
        x = endpoint_impl(f, x, a[static_cast<std::size_t>(k)], r2, res.probes);
        res.path.steps.push_back({k, x});
        if (k == m - 1 && f.is_finish(x)) {
            res.yes = true;
            return res;
        }
        const Point p = f.at(x);
        const std::size_t next =
            kernels::first_within(a.xs(), a.ys(), p.x, p.y, r2, static_cast<std::size_t>(k + 1));
        res.probes += std::min<std::size_t>(next + 1, a.size()) - static_cast<std::size_t>(k + 1);
        if (next >= a.size())
            return res;
        k = static_cast<int>(next);
        res.path.steps.push_back({k, x});
    }
}

bool replay_semi(const PointSeq& a, const PolyCurve& f, double delta_sq, const SemiPath& path,
                 double resolution)
{
    const auto& s = path.steps;
    const int m = static_cast<int>(a.size());
    if (s.empty() || s.front().a != 0 || f.canonical(s.front().x) != f.start())
        return false;
    if (s.back().a != m - 1 || !f.is_finish(s.back().x))
        return false;
    const double tol = delta_sq + 1e-8 * std::max(1.0, delta_sq);
    if (point_dist(a, 0, f.vertex(0)) > tol)
        return false;
    for (std::size_t k = 1; k < s.size(); ++k) {
        const SemiStep& from = s[k - 1];
        const SemiStep& to = s[k];
        if (to.a < 0 || to.a >= m)
            return false;
        if (to.a == from.a) {
            if (f.canonical(to.x) < f.canonical(from.x))
                return false;
            const Point c = a[static_cast<std::size_t>(to.a)];
            const bool inside = sample_curve(f, from.x, to.x, resolution,
                                             [&](Point p) { return squared_dist(c, p) <= tol; });
            if (!inside)
                return false;
        } else {
            if (to.a < from.a || f.canonical(to.x) != f.canonical(from.x))
                return false;
            if (point_dist(a, to.a, f.at(to.x)) > tol)
                return false;
        }
    }
    return true;
}

std::size_t default_semi_L(std::size_t m, std::size_t n)
{
    const double md = static_cast<double>(m);
    const double nd = static_cast<double>(n);
    const double L = std::ceil(std::pow(md, 4.0 / 3.0) * std::pow(nd, 2.0 / 3.0) /
                               std::pow(md + nd, 2.0 / 3.0));
    return std::max<std::size_t>(1, static_cast<std::size_t>(L));
}

} // namespace dfds
