#include "dfds/cli.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace dfds::cli {

GeneratedInstance generate(const GenParams& p)
{
    if (p.m == 0 || p.n == 0)
        throw std::invalid_argument("generate: m and n must be positive");
    if (p.sigma < 0.0 || !(p.outlier_frac >= 0.0 && p.outlier_frac <= 1.0))
        throw std::invalid_argument("generate: need sigma >= 0 and outlier_frac in [0,1]");

    std::mt19937_64 rng(p.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> turn(0.0, 0.6);

    GeneratedInstance g;
    g.vertices.reserve(p.n + 1);
    g.vertices.push_back({0.0, 0.0});
    std::vector<double> arc{0.0}; // cumulative length at each vertex
    double heading = 2.0 * M_PI * unit(rng);
    for (std::size_t e = 0; e < p.n; ++e) {
        heading += turn(rng);
        const double len = 0.5 + unit(rng);
        const Point q = g.vertices.back();
        g.vertices.push_back({q.x + len * std::cos(heading), q.y + len * std::sin(heading)});
        arc.push_back(arc.back() + len);
    }
    const double total = arc.back();

    // Arc-length positions: both ends plus sorted uniform interior samples.
    std::vector<double> pos(p.m);
    for (std::size_t k = 0; k < p.m; ++k)
        pos[k] = total * unit(rng);
    pos.front() = 0.0;
    if (p.m > 1)
        pos.back() = total;
    std::sort(pos.begin(), pos.end());

    std::normal_distribution<double> noise(0.0, 1.0);
    g.samples.reserve(p.m);
    for (double s : pos) {
        const auto it = std::upper_bound(arc.begin(), arc.end(), s);
        const std::size_t e =
            std::min<std::size_t>(static_cast<std::size_t>(it - arc.begin()) - 1, p.n - 1);
        const double t = std::clamp((s - arc[e]) / (arc[e + 1] - arc[e]), 0.0, 1.0);
        const Point a = g.vertices[e];
        const Point b = g.vertices[e + 1];
        Point q{a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
        if (p.sigma > 0.0) {
            q.x += p.sigma * noise(rng);
            q.y += p.sigma * noise(rng);
        }
        g.samples.push_back(q);
    }

    const auto count = static_cast<std::size_t>(std::llround(p.outlier_frac * static_cast<double>(p.m)));
    if (count > 0) {
        // Interior indices first so the endpoints stay on the curve when possible.
        std::vector<int> idx(p.m);
        std::iota(idx.begin(), idx.end(), 0);
        const bool keep_ends = p.m >= 3 && count <= p.m - 2;
        auto first = idx.begin();
        auto last = idx.end();
        if (keep_ends) {
            ++first;
            --last;
        }
        std::shuffle(first, last, rng);
        g.outliers.assign(first, first + static_cast<std::ptrdiff_t>(count));
        std::sort(g.outliers.begin(), g.outliers.end());

        double lo_x = kInf, lo_y = kInf, hi_x = -kInf, hi_y = -kInf;
        for (const Point& v : g.vertices) {
            lo_x = std::min(lo_x, v.x);
            lo_y = std::min(lo_y, v.y);
            hi_x = std::max(hi_x, v.x);
            hi_y = std::max(hi_y, v.y);
        }
        const Point centre{(lo_x + hi_x) / 2, (lo_y + hi_y) / 2};
        const double diag = std::max(std::hypot(hi_x - lo_x, hi_y - lo_y), 1.0);
        for (int k : g.outliers) {
            const double ang = 2.0 * M_PI * unit(rng);
            const double r = diag * (1.0 + unit(rng));
            g.samples[static_cast<std::size_t>(k)] = {centre.x + r * std::cos(ang),
                                                      centre.y + r * std::sin(ang)};
        }
    }
    return g;
}

} // namespace dfds::cli
