#include "dfds/one_sided.hpp"

#include "bifurcation.hpp"
#include "dfds/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace dfds {

namespace {

double dist(const PointSeq& a, const PointSeq& b, int i, int j)
{
    return squared_dist(a[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(j)]);
}

// Greedy walk shared by the decision and the trace. Stops at (m-1, n-1) or
// when no move is possible.
bool greedy_walk(const PointSeq& a, const PointSeq& b, double delta_sq, Staircase* out,
                 std::size_t& probes)
{
    const int m = static_cast<int>(a.size());
    const int n = static_cast<int>(b.size());
    int i = 0;
    int j = 0;
    if (out)
        out->push_back({0, 0});
    while (i < m - 1 || j < n - 1) {
        if (j + 1 < n) {
            ++probes;
            if (dist(a, b, i, j + 1) <= delta_sq) {
                ++j;
                if (out)
                    out->push_back({i, j});
                continue;
            }
        }
        const Point bj = b[static_cast<std::size_t>(j)];
        const std::size_t k = kernels::first_within(a.xs(), a.ys(), bj.x, bj.y, delta_sq,
                                                    static_cast<std::size_t>(i + 1));
        probes += std::min<std::size_t>(k, a.size() - 1) - static_cast<std::size_t>(i);
        if (k >= a.size())
            return false;
        i = static_cast<int>(k);
        if (out)
            out->push_back({i, j});
    }
    return true;
}

// Greedy decision simulated at an unknown delta inside (lo, hi).
class OneSidedCursor {
public:
    OneSidedCursor(const PointSeq& a, const PointSeq& b)
        : a_(&a), b_(&b), m_(static_cast<int>(a.size())), n_(static_cast<int>(b.size()))
    {
    }

    detail::Advance advance(double lo, double hi)
    {
        double v = 0.0;
        switch (mode_) {
        case Mode::Dead:
            return {detail::StepKind::Failed};
        case Mode::StartPair:
            v = dist(*a_, *b_, 0, 0);
            break;
        case Mode::EndPair:
            v = dist(*a_, *b_, m_ - 1, n_ - 1);
            break;
        case Mode::Right:
            if (i_ == m_ - 1 && j_ == n_ - 1)
                return {detail::StepKind::Succeeded};
            if (j_ + 1 < n_) {
                v = dist(*a_, *b_, i_, j_ + 1);
                break;
            }
            mode_ = Mode::Climb;
            k_ = i_ + 1;
            [[fallthrough]];
        case Mode::Climb:
            if (k_ >= m_) {
                mode_ = Mode::Dead;
                return {detail::StepKind::Failed};
            }
            v = dist(*a_, *b_, k_, j_);
            break;
        }
        if (v <= lo) {
            resolve(true);
            return {detail::StepKind::Known};
        }
        if (v >= hi) {
            resolve(false);
            return {detail::StepKind::Known};
        }
        return {detail::StepKind::Split, v};
    }

    void resolve(bool within)
    {
        switch (mode_) {
        case Mode::StartPair:
            mode_ = within ? Mode::EndPair : Mode::Dead;
            break;
        case Mode::EndPair:
            mode_ = within ? Mode::Right : Mode::Dead;
            break;
        case Mode::Right:
            if (within) {
                ++j_;
            } else {
                mode_ = Mode::Climb;
                k_ = i_ + 1;
            }
            break;
        case Mode::Climb:
            if (within) {
                i_ = k_;
                mode_ = Mode::Right;
            } else {
                ++k_;
            }
            break;
        case Mode::Dead:
            break;
        }
    }

private:
    enum class Mode { StartPair, EndPair, Right, Climb, Dead };

    const PointSeq* a_;
    const PointSeq* b_;
    int m_;
    int n_;
    int i_ = 0;
    int j_ = 0;
    int k_ = 0;
    Mode mode_ = Mode::StartPair;
};

} // namespace

OneSidedDecision decide_one_sided(const PointSeq& a, const PointSeq& b, double delta_sq)
{
    OneSidedDecision res;
    const int m = static_cast<int>(a.size());
    const int n = static_cast<int>(b.size());
    res.probes = 2;
    if (dist(a, b, 0, 0) > delta_sq || dist(a, b, m - 1, n - 1) > delta_sq)
        return res;
    res.yes = greedy_walk(a, b, delta_sq, &res.staircase, res.probes);
    if (!res.yes)
        res.staircase.clear();
    return res;
}

Staircase trace_greedy_staircase(const PointSeq& a, const PointSeq& b, double delta_sq)
{
    Staircase s;
    if (dist(a, b, 0, 0) > delta_sq)
        return s;
    std::size_t probes = 0;
    greedy_walk(a, b, delta_sq, &s, probes);
    return s;
}

bool replay_one_sided(const PointSeq& a, const PointSeq& b, double delta_sq, const Staircase& s)
{
    const int m = static_cast<int>(a.size());
    const int n = static_cast<int>(b.size());
    if (s.empty() || s.front() != Position{0, 0} || s.back() != Position{m - 1, n - 1})
        return false;
    for (std::size_t k = 0; k < s.size(); ++k) {
        const Position p = s[k];
        if (p.i < 0 || p.i >= m || p.j < 0 || p.j >= n || dist(a, b, p.i, p.j) > delta_sq)
            return false;
        if (k == 0)
            continue;
        const Position q = s[k - 1];
        const bool right = p.i == q.i && p.j == q.j + 1;
        const bool up = p.j == q.j && p.i > q.i;
        if (!right && !up)
            return false;
    }
    return true;
}

std::size_t default_one_sided_L(std::size_t m, std::size_t n)
{
    // The greedy search rarely branches, so its cost stays close to a few
    // decisions; a large L keeps the sampling cost mn*log/L near linear too.
    const double mn = static_cast<double>(m) * static_cast<double>(n);
    const double sum = static_cast<double>(m + n);
    const double L = std::ceil(mn / sum * std::log(sum + 1.0));
    return std::clamp<std::size_t>(static_cast<std::size_t>(L), 1, m * n);
}

double bifurcation_search(const PointSeq& a, const PointSeq& b, HalfOpenInterval interval,
                          std::size_t L, SearchStats* stats, std::size_t max_bifurcations)
{
    const std::size_t sum = a.size() + b.size();
    auto decide = [&](double v) { return decide_one_sided(a, b, v).yes; };
    return detail::bifurcation_run(OneSidedCursor(a, b), interval, sum,
                                   detail::branch_step_limit(sum, L), decide, stats,
                                   max_bifurcations);
}

OneSidedResult optimize_one_sided(const PointSeq& a, const PointSeq& b, const OptimizeConfig& cfg)
{
    OneSidedResult res;
    SearchStats& st = res.stats;
    const std::size_t m = a.size();
    const std::size_t n = b.size();
    const double lower = std::max(dist(a, b, 0, 0),
                                  dist(a, b, static_cast<int>(m) - 1, static_cast<int>(n) - 1));
    auto decide = [&](double v) {
        OneSidedDecision d = decide_one_sided(a, b, v);
        ++st.decisions;
        return d;
    };

    OneSidedDecision at_lower = decide(lower);
    if (at_lower.yes) {
        res.delta_star_sq = lower;
        res.certificate = std::move(at_lower.staircase);
        return res;
    }

    const std::size_t L = cfg.L != 0 ? std::min(cfg.L, m * n) : default_one_sided_L(m, n);
    ThresholdOptions opts{cfg.threshold_backend, cfg.sampling, nullptr};
    const DecideFn narrow_decide = [&](double v) { return decide_one_sided(a, b, v).yes; };
    for (int attempt = 0; attempt <= cfg.max_retries; ++attempt) {
        Rng rng(cfg.seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(attempt));
        try {
            const NarrowResult nr =
                narrow_interval(a, b, L, narrow_decide, rng, opts, {lower, kInf}, &st);
            const double value = bifurcation_search(a, b, nr.interval, L, &st, 2 * L);
            OneSidedDecision cert = decide(value);
            res.delta_star_sq = value;
            res.certificate = std::move(cert.staircase);
            return res;
        } catch (const RestartNeeded&) {
            ++st.retries;
        }
    }
    throw RetryExhausted("one-sided optimization exhausted its retries", st);
}

} // namespace dfds
