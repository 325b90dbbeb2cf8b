#include "dfds/two_sided.hpp"

#include "dfds/interval_tools.hpp"
#include "dfds/kernels.hpp"

#include <algorithm>

namespace dfds {

bool decide_two_sided(const BicliqueCover& cover, bool start_ok, bool end_ok,
                      const SweepOptions& opts)
{
    if (!start_ok || !end_ok)
        return false;
    const int m = cover.m;
    if (m == 1)
        return true; // (0,0) and (0,n-1) are both ones: skip right.

    const std::size_t count = cover.bicliques.size();
    std::vector<int> v(count, kUnreached);
    // alive[offset[t] + p]: entry p of biclique t's b_side not yet deleted.
    std::vector<std::size_t> offset(count + 1, 0);
    for (std::size_t t = 0; t < count; ++t)
        offset[t + 1] = offset[t] + cover.bicliques[t].b_side.size();
    std::vector<char> alive(offset[count], 1);
    std::vector<std::size_t> live_end(count);
    for (std::size_t t = 0; t < count; ++t)
        live_end[t] = cover.bicliques[t].b_side.size();

    std::size_t work = 0;
    std::vector<int> gathered;
    for (int i = 0; i < m; ++i) {
        if (opts.hook && *opts.hook)
            (*opts.hook)(i, v);
        const auto& row = cover.row_incidence[static_cast<std::size_t>(i)];
        int y = 0;
        if (i > 0) {
            y = kUnreached;
            for (int t : row)
                y = std::min(y, v[static_cast<std::size_t>(t)]);
        }
        if (i == m - 1) {
            if (opts.work)
                *opts.work += work;
            return y != kUnreached;
        }
        if (y == kUnreached)
            continue;

        // Reachable ones of row i: alive columns >= y, read backwards.
        gathered.clear();
        for (int t : row) {
            const auto& side = cover.bicliques[static_cast<std::size_t>(t)].b_side;
            const std::size_t base = offset[static_cast<std::size_t>(t)];
            std::size_t pos = live_end[static_cast<std::size_t>(t)];
            while (pos > 0) {
                ++work;
                if (!alive[base + pos - 1]) {
                    --pos;
                    continue;
                }
                const int col = side[pos - 1];
                if (col < y)
                    break;
                gathered.push_back(col);
                --pos;
            }
            live_end[static_cast<std::size_t>(t)] = pos;
        }
        for (int col : gathered) {
            for (const ColumnEntry& ce : cover.col_incidence[static_cast<std::size_t>(col)]) {
                ++work;
                const std::size_t slot = offset[static_cast<std::size_t>(ce.biclique)] +
                                         static_cast<std::size_t>(ce.position);
                if (!alive[slot])
                    continue;
                alive[slot] = 0;
                int& vt = v[static_cast<std::size_t>(ce.biclique)];
                vt = std::min(vt, col);
            }
        }
    }
    return false;
}

bool decide_two_sided(const PointSeq& a, const PointSeq& b, double delta_sq, CoverBackend backend,
                      std::size_t* work)
{
    const bool start_ok = squared_dist(a[0], b[0]) <= delta_sq;
    const bool end_ok = squared_dist(a[a.size() - 1], b[b.size() - 1]) <= delta_sq;
    if (!start_ok || !end_ok)
        return false;
    const BicliqueCover cover = backend == CoverBackend::Hierarchical
                                    ? build_cover_hierarchical(a, b, delta_sq)
                                    : build_cover_naive(a, b, delta_sq);
    SweepOptions opts;
    opts.work = work;
    return decide_two_sided(cover, start_ok, end_ok, opts);
}

Staircase trace_two_sided(const PointSeq& a, const PointSeq& b, double delta_sq)
{
    const int m = static_cast<int>(a.size());
    const int n = static_cast<int>(b.size());
    if (squared_dist(a[0], b[0]) > delta_sq)
        return {};
    // col_first[j]: smallest reachable row of column j; row_first[i]: smallest
    // reachable column of row i. Either one is a valid predecessor.
    std::vector<int> col_first(static_cast<std::size_t>(n), -1);
    std::vector<int> row_first(static_cast<std::size_t>(m), -1);
    std::vector<double> row(static_cast<std::size_t>(n));
    bool end_reached = false;
    for (int i = 0; i < m; ++i) {
        const Point p = a[static_cast<std::size_t>(i)];
        kernels::squared_dists(b.xs(), b.ys(), p.x, p.y, row);
        bool row_reached = false;
        for (int j = 0; j < n; ++j) {
            if (row[static_cast<std::size_t>(j)] > delta_sq)
                continue;
            const bool reachable = (i == 0 && j == 0) || row_reached ||
                                   (col_first[static_cast<std::size_t>(j)] >= 0 &&
                                    col_first[static_cast<std::size_t>(j)] < i);
            if (!reachable)
                continue;
            if (!row_reached)
                row_first[static_cast<std::size_t>(i)] = j;
            row_reached = true;
            if (col_first[static_cast<std::size_t>(j)] < 0)
                col_first[static_cast<std::size_t>(j)] = i;
            end_reached = i == m - 1 && j == n - 1;
        }
    }
    if (!end_reached)
        return {};

    Staircase rev{{m - 1, n - 1}};
    Position cur{m - 1, n - 1};
    while (cur != Position{0, 0}) {
        const int rf = row_first[static_cast<std::size_t>(cur.i)];
        if (rf < cur.j)
            cur = {cur.i, rf};
        else
            cur = {col_first[static_cast<std::size_t>(cur.j)], cur.j};
        rev.push_back(cur);
    }
    return {rev.rbegin(), rev.rend()};
}

bool replay_two_sided(const PointSeq& a, const PointSeq& b, double delta_sq, const Staircase& s)
{
    const int m = static_cast<int>(a.size());
    const int n = static_cast<int>(b.size());
    if (s.empty() || s.front() != Position{0, 0} || s.back() != Position{m - 1, n - 1})
        return false;
    for (std::size_t k = 0; k < s.size(); ++k) {
        const Position p = s[k];
        if (p.i < 0 || p.i >= m || p.j < 0 || p.j >= n)
            return false;
        if (squared_dist(a[static_cast<std::size_t>(p.i)], b[static_cast<std::size_t>(p.j)]) >
            delta_sq)
            return false;
        if (k == 0)
            continue;
        const Position q = s[k - 1];
        const bool right = p.i == q.i && p.j > q.j;
        const bool up = p.j == q.j && p.i > q.i;
        if (!right && !up)
            return false;
    }
    return true;
}

TwoSidedResult optimize_two_sided(const PointSeq& a, const PointSeq& b, const OptimizeConfig& cfg)
{
    TwoSidedResult res;
    SearchStats& st = res.stats;
    const std::size_t m = a.size();
    const std::size_t n = b.size();
    const double lower = std::max(squared_dist(a[0], b[0]), squared_dist(a[m - 1], b[n - 1]));
    auto decide = [&](double v) {
        ++st.decisions;
        std::size_t work = 0;
        const bool yes = decide_two_sided(a, b, v, cfg.cover_backend, &work);
        st.probes += work;
        return yes;
    };
    if (decide(lower)) {
        res.delta_star_sq = lower;
        return res;
    }

    // Candidates strictly above the lower bound, each a pair distance.
    std::vector<double> values;
    if (m * n <= cfg.full_sort_limit) {
        values.reserve(m * n);
        std::vector<double> row(n);
        for (std::size_t i = 0; i < m; ++i) {
            const Point p = a[i];
            kernels::squared_dists(b.xs(), b.ys(), p.x, p.y, row);
            for (double d : row) {
                if (d > lower)
                    values.push_back(d);
            }
        }
    } else {
        const std::size_t L = std::max<std::size_t>(cfg.L != 0 ? cfg.L : 1'000'000, 1);
        ThresholdOptions opts{cfg.threshold_backend, cfg.sampling, nullptr};
        const DecideFn narrow_decide = [&](double v) { return decide(v); };
        NarrowResult nr;
        for (int attempt = 0;; ++attempt) {
            Rng rng(cfg.seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(attempt));
            try {
                nr = narrow_interval(a, b, L, narrow_decide, rng, opts, {lower, kInf}, &st);
                break;
            } catch (const RestartNeeded&) {
                ++st.retries;
                if (attempt >= cfg.max_retries)
                    throw RetryExhausted("two-sided narrowing exhausted its retries", st);
            }
        }
        for (const PairIndex p : pairs_in_interval(a, b, nr.interval))
            values.push_back(pair_value(a, b, p));
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());

    std::size_t lo = 0;
    std::size_t hi = values.size();
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (decide(values[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    if (lo == values.size())
        throw std::logic_error("two-sided optimization: no candidate satisfies the decision");
    res.delta_star_sq = values[lo];
    return res;
}

} // namespace dfds
