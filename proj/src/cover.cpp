#include "dfds/kernels.hpp"
#include "dfds/two_sided.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace dfds {

namespace {

struct Box {
    double x0, y0, x1, y1;
};

Box bounding_box(const PointSeq& pts, const std::vector<int>& idx)
{
    Box box{kInf, kInf, -kInf, -kInf};
    for (int i : idx) {
        const Point p = pts[static_cast<std::size_t>(i)];
        box.x0 = std::min(box.x0, p.x);
        box.y0 = std::min(box.y0, p.y);
        box.x1 = std::max(box.x1, p.x);
        box.y1 = std::max(box.y1, p.y);
    }
    return box;
}

// Nearest and farthest squared distance from p to the box.
void box_range(const Box& box, Point p, double& near_sq, double& far_sq)
{
    const double cx = std::clamp(p.x, box.x0, box.x1);
    const double cy = std::clamp(p.y, box.y0, box.y1);
    const double fx = std::max(std::abs(p.x - box.x0), std::abs(p.x - box.x1));
    const double fy = std::max(std::abs(p.y - box.y0), std::abs(p.y - box.y1));
    near_sq = squared_dist(p, {cx, cy});
    far_sq = fx * fx + fy * fy;
}

// Near the disk boundary the farthest-corner distance can round below a
// member's exact distance, so such cells are checked point by point.
bool all_within(const PointSeq& a, int i, const PointSeq& b, const std::vector<int>& cell,
                double delta_sq)
{
    const Point p = a[static_cast<std::size_t>(i)];
    return std::all_of(cell.begin(), cell.end(), [&](int j) {
        return squared_dist(p, b[static_cast<std::size_t>(j)]) <= delta_sq;
    });
}

void add_star(const PointSeq& a, int i, const PointSeq& b, const std::vector<int>& cell,
              double delta_sq, std::vector<Biclique>& out)
{
    Biclique star;
    star.a_side = {i};
    const Point p = a[static_cast<std::size_t>(i)];
    for (int j : cell) {
        if (squared_dist(p, b[static_cast<std::size_t>(j)]) <= delta_sq)
            star.b_side.push_back(j);
    }
    if (!star.b_side.empty())
        out.push_back(std::move(star));
}

void refine(const PointSeq& a, const PointSeq& b, double delta_sq, std::size_t leaf_size,
            const std::vector<int>& a_idx, std::vector<int> cell, int depth,
            std::vector<Biclique>& out)
{
    const Box box = bounding_box(b, cell);
    std::vector<int> full;
    std::vector<int> crossing;
    for (int i : a_idx) {
        double near_sq = 0.0;
        double far_sq = 0.0;
        box_range(box, a[static_cast<std::size_t>(i)], near_sq, far_sq);
        if (near_sq > delta_sq)
            continue;
        const bool clear_margin = far_sq < delta_sq * (1.0 - 1e-12);
        if (clear_margin || (far_sq <= delta_sq && all_within(a, i, b, cell, delta_sq)))
            full.push_back(i);
        else
            crossing.push_back(i);
    }
    if (!full.empty())
        out.push_back({std::move(full), cell});
    if (crossing.empty())
        return;
    const bool flat = box.x0 == box.x1 && box.y0 == box.y1;
    if (cell.size() <= leaf_size || depth > 48 || flat) {
        for (int i : crossing)
            add_star(a, i, b, cell, delta_sq, out);
        return;
    }
    const double mx = 0.5 * (box.x0 + box.x1);
    const double my = 0.5 * (box.y0 + box.y1);
    std::vector<int> quads[4];
    for (int j : cell) {
        const Point p = b[static_cast<std::size_t>(j)];
        quads[(p.x > mx ? 1 : 0) + (p.y > my ? 2 : 0)].push_back(j);
    }
    for (auto& q : quads) {
        if (!q.empty())
            refine(a, b, delta_sq, leaf_size, crossing, std::move(q), depth + 1, out);
    }
}

} // namespace

std::size_t BicliqueCover::edge_count() const
{
    std::size_t total = 0;
    for (const Biclique& bc : bicliques)
        total += bc.a_side.size() * bc.b_side.size();
    return total;
}

std::size_t BicliqueCover::b_entries() const
{
    std::size_t total = 0;
    for (const Biclique& bc : bicliques)
        total += bc.b_side.size();
    return total;
}

BicliqueCover make_cover(int m, int n, std::vector<Biclique> bicliques)
{
    BicliqueCover cover;
    cover.m = m;
    cover.n = n;
    cover.row_incidence.assign(static_cast<std::size_t>(m), {});
    cover.col_incidence.assign(static_cast<std::size_t>(n), {});
    for (std::size_t t = 0; t < bicliques.size(); ++t) {
        Biclique& bc = bicliques[t];
        std::sort(bc.a_side.begin(), bc.a_side.end());
        std::sort(bc.b_side.begin(), bc.b_side.end());
        if (bc.a_side.empty() || bc.b_side.empty())
            throw ContractError("biclique " + std::to_string(t) + " has an empty side");
        if (std::adjacent_find(bc.a_side.begin(), bc.a_side.end()) != bc.a_side.end() ||
            std::adjacent_find(bc.b_side.begin(), bc.b_side.end()) != bc.b_side.end())
            throw ContractError("biclique " + std::to_string(t) + " repeats an index");
        if (bc.a_side.front() < 0 || bc.a_side.back() >= m || bc.b_side.front() < 0 ||
            bc.b_side.back() >= n)
            throw ContractError("biclique " + std::to_string(t) + " index out of range");
        for (int i : bc.a_side)
            cover.row_incidence[static_cast<std::size_t>(i)].push_back(static_cast<int>(t));
        for (std::size_t p = 0; p < bc.b_side.size(); ++p)
            cover.col_incidence[static_cast<std::size_t>(bc.b_side[p])].push_back(
                {static_cast<int>(t), static_cast<int>(p)});
    }
    cover.bicliques = std::move(bicliques);
    return cover;
}

BicliqueCover build_cover_naive(const PointSeq& a, const PointSeq& b, double delta_sq)
{
    std::vector<Biclique> stars;
    std::vector<std::int32_t> hits;
    for (std::size_t i = 0; i < a.size(); ++i) {
        hits.clear();
        const Point p = a[i];
        kernels::collect_within(b.xs(), b.ys(), p.x, p.y, delta_sq, hits);
        if (hits.empty())
            continue;
        stars.push_back({{static_cast<int>(i)}, std::vector<int>(hits.begin(), hits.end())});
    }
    return make_cover(static_cast<int>(a.size()), static_cast<int>(b.size()), std::move(stars));
}

BicliqueCover build_cover_hierarchical(const PointSeq& a, const PointSeq& b, double delta_sq,
                                       std::size_t leaf_size)
{
    std::vector<int> a_idx(a.size());
    std::vector<int> cell(b.size());
    std::iota(a_idx.begin(), a_idx.end(), 0);
    std::iota(cell.begin(), cell.end(), 0);
    std::vector<Biclique> out;
    refine(a, b, delta_sq, std::max<std::size_t>(leaf_size, 1), a_idx, std::move(cell), 0, out);
    return make_cover(static_cast<int>(a.size()), static_cast<int>(b.size()), std::move(out));
}

void check_edge_disjoint(const BicliqueCover& cover)
{
    std::vector<std::pair<int, int>> edges;
    edges.reserve(cover.edge_count());
    for (const Biclique& bc : cover.bicliques)
        for (int i : bc.a_side)
            for (int j : bc.b_side)
                edges.emplace_back(i, j);
    std::sort(edges.begin(), edges.end());
    const auto dup = std::adjacent_find(edges.begin(), edges.end());
    if (dup != edges.end())
        throw ContractError("pair (" + std::to_string(dup->first) + "," +
                            std::to_string(dup->second) + ") lies in two bicliques");
}

void validate_cover(const BicliqueCover& cover, const PointSeq& a, const PointSeq& b,
                    double delta_sq)
{
    const std::size_t m = a.size();
    const std::size_t n = b.size();
    if (cover.m != static_cast<int>(m) || cover.n != static_cast<int>(n))
        throw ContractError("cover dimensions do not match the input");
    std::vector<char> seen(m * n, 0);
    for (std::size_t t = 0; t < cover.bicliques.size(); ++t) {
        const Biclique& bc = cover.bicliques[t];
        for (int i : bc.a_side) {
            for (int j : bc.b_side) {
                const std::size_t cell = static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j);
                if (seen[cell])
                    throw ContractError("pair (" + std::to_string(i) + "," + std::to_string(j) +
                                        ") is covered twice");
                seen[cell] = 1;
                if (squared_dist(a[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(j)]) > delta_sq)
                    throw ContractError("pair (" + std::to_string(i) + "," + std::to_string(j) +
                                        ") is covered but too far");
            }
        }
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (!seen[i * n + j] && squared_dist(a[i], b[j]) <= delta_sq)
                throw ContractError("pair (" + std::to_string(i) + "," + std::to_string(j) +
                                    ") is missing from the cover");
        }
    }
}

} // namespace dfds
