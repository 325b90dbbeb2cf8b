#include "dfds/interval_tools.hpp"

#include "dfds/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dfds {

namespace {

double log_size(std::size_t m, std::size_t n)
{
    return std::log(static_cast<double>(m + n));
}

std::size_t draw_budget(std::size_t pairs, std::size_t L, double log_mn, const SamplingConstants& c)
{
    const double d = std::ceil(c.draw_factor * (static_cast<double>(pairs) / static_cast<double>(L)) * log_mn);
    return d >= static_cast<double>(pairs) ? pairs : static_cast<std::size_t>(d);
}

template <class T>
void keep_random_subset(std::vector<T>& v, std::size_t keep, Rng& rng)
{
    if (v.size() <= keep)
        return;
    for (std::size_t i = 0; i < keep; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, v.size() - 1);
        std::swap(v[i], v[pick(rng)]);
    }
    v.resize(keep);
}

ThresholdOutcome exact_outcome(const PointSeq& a, const PointSeq& b, HalfOpenInterval iv,
                               std::size_t L, std::size_t cap, Rng& rng, std::size_t* draws)
{
    auto inside = pairs_in_interval(a, b, iv);
    if (draws)
        *draws += a.size() * b.size();
    if (inside.size() <= L)
        return AtMostL{inside.size()};
    const std::size_t count = inside.size();
    keep_random_subset(inside, cap, rng);
    return MoreThanL{std::move(inside), true, count};
}

ThresholdOutcome sampling_outcome(const PointSeq& a, const PointSeq& b, HalfOpenInterval iv,
                                  std::size_t L, Rng& rng, const ThresholdOptions& opts)
{
    const std::size_t m = a.size();
    const std::size_t n = b.size();
    const std::size_t pairs = m * n;
    const double lg = log_size(m, n);
    const std::size_t cap = threshold_sample_cap(m, n, opts.constants);
    const std::size_t budget = draw_budget(pairs, L, lg, opts.constants);
    if (budget >= pairs)
        return exact_outcome(a, b, iv, L, cap, rng, opts.draws);

    const double threshold = opts.constants.hit_threshold * lg;
    std::uniform_int_distribution<int> pick_a(0, static_cast<int>(m) - 1);
    std::uniform_int_distribution<int> pick_b(0, static_cast<int>(n) - 1);
    std::vector<PairIndex> hits;
    std::size_t drawn = 0;
    while (drawn < budget) {
        ++drawn;
        const PairIndex p{pick_a(rng), pick_b(rng)};
        if (iv.contains(pair_value(a, b, p))) {
            hits.push_back(p);
            if (hits.size() >= cap && static_cast<double>(hits.size()) > threshold)
                break;
        }
    }
    if (opts.draws)
        *opts.draws += drawn;
    if (static_cast<double>(hits.size()) > threshold) {
        hits.resize(std::min(hits.size(), cap));
        return MoreThanL{std::move(hits)};
    }
    const double estimate = static_cast<double>(hits.size()) * static_cast<double>(pairs) /
                            static_cast<double>(drawn);
    return AtMostL{static_cast<std::size_t>(std::llround(estimate))};
}

// Quadtree decomposition of the in-annulus pairs into complete bipartite
// blocks (cells of B entirely inside an A-annulus) and leftover leaves.
struct Decomposition {
    struct Block {
        std::vector<int> a;
        std::vector<int> b;
    };
    std::vector<Block> blocks;
    std::vector<Block> leaves;
};

struct BoxSq {
    double min_sq;
    double max_sq;
};

struct Box {
    double x0, y0, x1, y1;
};

BoxSq box_range(Box box, Point p)
{
    const double cx = std::clamp(p.x, box.x0, box.x1);
    const double cy = std::clamp(p.y, box.y0, box.y1);
    const double fx = std::max(std::abs(p.x - box.x0), std::abs(p.x - box.x1));
    const double fy = std::max(std::abs(p.y - box.y0), std::abs(p.y - box.y1));
    return {squared_dist(p, {cx, cy}), fx * fx + fy * fy};
}

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

void decompose(const PointSeq& a, const PointSeq& b, HalfOpenInterval iv, std::size_t L,
               std::vector<int> a_idx, std::vector<int> b_idx, int depth, Decomposition& out)
{
    const Box box = bounding_box(b, b_idx);
    std::vector<int> full;
    std::vector<int> crossing;
    for (int i : a_idx) {
        const BoxSq r = box_range(box, a[static_cast<std::size_t>(i)]);
        if (r.min_sq > iv.alpha_sq && r.max_sq <= iv.beta_sq)
            full.push_back(i);
        else if (!(r.max_sq <= iv.alpha_sq || r.min_sq > iv.beta_sq))
            crossing.push_back(i);
    }
    if (!full.empty())
        out.blocks.push_back({std::move(full), b_idx});
    if (crossing.empty())
        return;
    const bool degenerate = box.x1 - box.x0 == 0.0 && box.y1 - box.y0 == 0.0;
    if (crossing.size() * b_idx.size() <= L || b_idx.size() <= 1 || depth > 40 || degenerate) {
        out.leaves.push_back({std::move(crossing), std::move(b_idx)});
        return;
    }
    const double mx = 0.5 * (box.x0 + box.x1);
    const double my = 0.5 * (box.y0 + box.y1);
    std::vector<int> quads[4];
    for (int j : b_idx) {
        const Point p = b[static_cast<std::size_t>(j)];
        quads[(p.x > mx ? 1 : 0) + (p.y > my ? 2 : 0)].push_back(j);
    }
    for (auto& q : quads) {
        if (!q.empty())
            decompose(a, b, iv, L, crossing, std::move(q), depth + 1, out);
    }
}

// Uniform draw over the union of the products a x b of the given blocks.
class BlockSampler {
public:
    explicit BlockSampler(const std::vector<Decomposition::Block>& blocks) : blocks_(blocks)
    {
        prefix_.reserve(blocks.size());
        std::size_t total = 0;
        for (const auto& blk : blocks) {
            total += blk.a.size() * blk.b.size();
            prefix_.push_back(total);
        }
    }
    std::size_t total() const { return prefix_.empty() ? 0 : prefix_.back(); }
    PairIndex draw(Rng& rng) const
    {
        std::uniform_int_distribution<std::size_t> pick(0, total() - 1);
        const std::size_t r = pick(rng);
        const auto it = std::upper_bound(prefix_.begin(), prefix_.end(), r);
        const std::size_t blk = static_cast<std::size_t>(it - prefix_.begin());
        const std::size_t offset = r - (blk == 0 ? 0 : prefix_[blk - 1]);
        const auto& block = blocks_[blk];
        return {block.a[offset / block.b.size()], block.b[offset % block.b.size()]};
    }

private:
    const std::vector<Decomposition::Block>& blocks_;
    std::vector<std::size_t> prefix_;
};

ThresholdOutcome hierarchical_outcome(const PointSeq& a, const PointSeq& b, HalfOpenInterval iv,
                                      std::size_t L, Rng& rng, const ThresholdOptions& opts)
{
    const std::size_t m = a.size();
    const std::size_t n = b.size();
    const double lg = log_size(m, n);
    const std::size_t cap = threshold_sample_cap(m, n, opts.constants);

    std::vector<int> a_idx(m);
    std::vector<int> b_idx(n);
    std::iota(a_idx.begin(), a_idx.end(), 0);
    std::iota(b_idx.begin(), b_idx.end(), 0);
    Decomposition dec;
    decompose(a, b, iv, L, std::move(a_idx), std::move(b_idx), 0, dec);

    const BlockSampler block_sampler(dec.blocks);
    const BlockSampler leaf_sampler(dec.leaves);
    const std::size_t n1 = block_sampler.total();
    const std::size_t leaf_pairs = leaf_sampler.total();

    std::vector<PairIndex> sample;
    if (2 * n1 > L) {
        const std::size_t r1 = (cap + 1) / 2;
        for (std::size_t k = 0; k < r1; ++k)
            sample.push_back(block_sampler.draw(rng));
        if (opts.draws)
            *opts.draws += r1;
    }

    // Leaf pairs: estimate how many fall inside the interval.
    std::vector<PairIndex> hits;
    double n2_estimate = 0.0;
    bool n2_large = false;
    if (leaf_pairs > 0) {
        const std::size_t budget = draw_budget(leaf_pairs, L, lg, opts.constants);
        if (budget >= leaf_pairs) {
            for (const auto& leaf : dec.leaves)
                for (int i : leaf.a)
                    for (int j : leaf.b)
                        if (iv.contains(pair_value(a, b, {i, j})))
                            hits.push_back({i, j});
            if (opts.draws)
                *opts.draws += leaf_pairs;
            n2_estimate = static_cast<double>(hits.size());
            n2_large = 2 * hits.size() > L;
            keep_random_subset(hits, cap, rng);
        } else {
            for (std::size_t d = 0; d < budget; ++d) {
                const PairIndex p = leaf_sampler.draw(rng);
                if (iv.contains(pair_value(a, b, p)))
                    hits.push_back(p);
            }
            if (opts.draws)
                *opts.draws += budget;
            n2_estimate = static_cast<double>(hits.size()) * static_cast<double>(leaf_pairs) /
                          static_cast<double>(budget);
            // hits ~ c2 * N2 * ln / L, so N2 > L/2 shows up as more than c2/2 * ln hits.
            n2_large = static_cast<double>(hits.size()) > 0.5 * opts.constants.draw_factor * lg;
        }
    }

    if (2 * n1 <= L && !n2_large)
        return AtMostL{n1 + static_cast<std::size_t>(std::llround(n2_estimate))};
    const std::size_t room = cap > sample.size() ? cap - sample.size() : 0;
    keep_random_subset(hits, room, rng);
    sample.insert(sample.end(), hits.begin(), hits.end());
    if (sample.empty())
        return AtMostL{n1 + static_cast<std::size_t>(std::llround(n2_estimate))};
    return MoreThanL{std::move(sample)};
}

struct SampleValue {
    double value;
    PairIndex pair;
};

} // namespace

std::size_t count_in_interval_exact(const PointSeq& a, const PointSeq& b, HalfOpenInterval iv)
{
    std::size_t count = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Point p = a[i];
        count += kernels::count_in_range(b.xs(), b.ys(), p.x, p.y, iv.alpha_sq, iv.beta_sq);
    }
    return count;
}

std::vector<PairIndex> pairs_in_interval(const PointSeq& a, const PointSeq& b, HalfOpenInterval iv)
{
    std::vector<PairIndex> out;
    std::vector<double> row(b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Point p = a[i];
        kernels::squared_dists(b.xs(), b.ys(), p.x, p.y, row);
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (iv.contains(row[j]))
                out.push_back({static_cast<int>(i), static_cast<int>(j)});
        }
    }
    return out;
}

std::size_t threshold_sample_cap(std::size_t m, std::size_t n, const SamplingConstants& c)
{
    const double cap = std::floor(c.sample_cap * log_size(m, n));
    return cap < 1.0 ? 1 : static_cast<std::size_t>(cap);
}

ThresholdOutcome threshold_count_and_sample(const PointSeq& a, const PointSeq& b,
                                            HalfOpenInterval iv, std::size_t L, Rng& rng,
                                            const ThresholdOptions& opts)
{
    if (L == 0 || L > a.size() * b.size())
        throw std::invalid_argument("threshold L must satisfy 0 < L <= m*n");
    if (opts.backend == ThresholdBackend::Hierarchical)
        return hierarchical_outcome(a, b, iv, L, rng, opts);
    return sampling_outcome(a, b, iv, L, rng, opts);
}

ThresholdOutcome threshold_count_and_sample(const PointSeq& a, const PointSeq& b,
                                            HalfOpenInterval iv, std::size_t L,
                                            std::uint64_t seed, const ThresholdOptions& opts)
{
    Rng rng(seed);
    return threshold_count_and_sample(a, b, iv, L, rng, opts);
}

NarrowResult narrow_interval(const PointSeq& a, const PointSeq& b, std::size_t L,
                             const DecideFn& decide, Rng& rng, const ThresholdOptions& opts,
                             HalfOpenInterval start, SearchStats* stats)
{
    const std::size_t pairs = a.size() * b.size();
    L = std::clamp<std::size_t>(L, 1, pairs);
    // Each successful round keeps at most 7/8 of the in-interval distances.
    const std::size_t max_rounds =
        8 + static_cast<std::size_t>(std::ceil(std::log(static_cast<double>(pairs) + 1.0) /
                                               std::log(8.0 / 7.0)));
    NarrowResult res;
    res.interval = start;
    if (pairs <= L)
        return res;
    // The threshold test answers AtMostL up to roughly twice its argument;
    // aiming at L/4 keeps the final count below L with high probability.
    const std::size_t target = std::max<std::size_t>(1, L / 4);
    ThresholdOptions local = opts;
    std::size_t draws = 0;
    local.draws = &draws;
    auto flush = [&] {
        if (stats) {
            stats->samples_drawn += draws;
            stats->narrowing_rounds += res.rounds;
        }
        if (opts.draws)
            *opts.draws += draws;
    };

    while (true) {
        ThresholdOutcome out = threshold_count_and_sample(a, b, res.interval, target, rng, local);
        if (std::holds_alternative<AtMostL>(out))
            break;
        if (const auto& more = std::get<MoreThanL>(out); more.exact && more.count <= L)
            break;
        if (++res.rounds > max_rounds) {
            flush();
            throw RestartNeeded("interval narrowing exceeded its round budget");
        }

        std::vector<SampleValue> values;
        for (PairIndex p : std::get<MoreThanL>(out).sample) {
            const double v = pair_value(a, b, p);
            if (v < res.interval.beta_sq)
                values.push_back({v, p});
        }
        std::sort(values.begin(), values.end(), [](const SampleValue& x, const SampleValue& y) {
            return x.value < y.value;
        });
        values.erase(std::unique(values.begin(), values.end(),
                                 [](const SampleValue& x, const SampleValue& y) {
                                     return x.value == y.value;
                                 }),
                     values.end());
        if (values.empty())
            break;

        std::size_t lo = 0;
        std::size_t hi = values.size();
        while (lo < hi) {
            const std::size_t mid = lo + (hi - lo) / 2;
            if (stats)
                ++stats->decisions;
            if (decide(values[mid].value))
                hi = mid;
            else
                lo = mid + 1;
        }
        const HalfOpenInterval before = res.interval;
        if (lo > 0) {
            res.interval.alpha_sq = values[lo - 1].value;
            res.alpha_pair = values[lo - 1].pair;
        }
        if (lo < values.size()) {
            res.interval.beta_sq = values[lo].value;
            res.beta_pair = values[lo].pair;
        }
        if (res.interval == before)
            break;
    }
    flush();
    return res;
}

NarrowResult narrow_interval(const PointSeq& a, const PointSeq& b, std::size_t L,
                             const DecideFn& decide, std::uint64_t seed)
{
    Rng rng(seed);
    return narrow_interval(a, b, L, decide, rng);
}

RankSelection approx_rank_select(const PointSeq& a, const PointSeq& b, std::size_t k,
                                 std::size_t L, std::uint64_t seed, const ThresholdOptions& opts)
{
    const std::size_t pairs = a.size() * b.size();
    if (k == 0 || k >= pairs)
        throw std::invalid_argument("rank k must satisfy 0 < k < m*n");
    if (L == 0 || L >= k)
        throw std::invalid_argument("rank slack L must satisfy 0 < L < k");

    // at_least_k(d) holds iff the k-th smallest squared distance is <= d.
    const DecideFn at_least_k = [&](double d) {
        return count_in_interval_exact(a, b, {-1.0, d}) >= k;
    };
    Rng rng(seed);
    const NarrowResult res =
        narrow_interval(a, b, L, at_least_k, rng, opts, HalfOpenInterval{-1.0, kInf});
    if (res.beta_pair)
        return {*res.beta_pair, res.interval.beta_sq};
    if (res.alpha_pair)
        return {*res.alpha_pair, res.interval.alpha_sq};

    // Only reachable when no sample was ever drawn; fall back to exact selection.
    std::vector<SampleValue> all;
    all.reserve(pairs);
    for (int i = 0; i < static_cast<int>(a.size()); ++i)
        for (int j = 0; j < static_cast<int>(b.size()); ++j)
            all.push_back({pair_value(a, b, {i, j}), {i, j}});
    std::nth_element(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k - 1), all.end(),
                     [](const SampleValue& x, const SampleValue& y) { return x.value < y.value; });
    return {all[k - 1].pair, all[k - 1].value};
}

} // namespace dfds
