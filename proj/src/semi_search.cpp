#include "bifurcation.hpp"
#include "dfds/interval_tools.hpp"
#include "dfds/semi_continuous.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace dfds {

namespace {

// Larger root of |s + t d - c|^2 = delta_sq on the edge, clamped to [0, 1].
double exit_parameter(const PolyCurve& f, int edge, Point c, double delta_sq)
{
    const Point s = f.edge_start(edge);
    const Point e = f.edge_end(edge);
    const double dx = e.x - s.x;
    const double dy = e.y - s.y;
    const double ox = s.x - c.x;
    const double oy = s.y - c.y;
    const double qa = dx * dx + dy * dy;
    const double qb = dx * ox + dy * oy;
    const double qc = ox * ox + oy * oy - delta_sq;
    const double disc = std::max(0.0, qb * qb - qa * qc);
    return std::clamp((-qb + std::sqrt(disc)) / qa, 0.0, 1.0);
}

// Decision procedure simulated at an unknown delta inside (lo, hi).
class SemiCursor {
public:
    SemiCursor(const PointSeq& a, const PolyCurve& f)
        : a_(&a), f_(&f), m_(static_cast<int>(a.size())), n_(f.edge_count())
    {
    }

    detail::Advance advance(double lo, double hi)
    {
        double v = 0.0;
        flip_ = false;
        switch (mode_) {
        case Mode::Dead:
            return {detail::StepKind::Failed};
        case Mode::Done:
            return {detail::StepKind::Succeeded};
        case Mode::Start:
            v = stone_to(0, f_->vertex(0));
            break;
        case Mode::Vertex:
            v = stone_to(k_, f_->vertex(e_ + 1));
            break;
        case Mode::Disk:
            if (l_ >= m_) {
                mode_ = Mode::Dead;
                return {detail::StepKind::Failed};
            }
            if (pos_ == Pos::Finish) {
                v = stone_to(l_, f_->vertex(n_));
                break;
            }
            switch (classify_disk()) {
            case Membership::In:
                resolve(true);
                return {detail::StepKind::Known};
            case Membership::Out:
                resolve(false);
                return {detail::StepKind::Known};
            case Membership::Compare:
                v = compare_value_;
                break;
            }
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

    /// `within` is the outcome of "value <= delta" for the pending test.
    void resolve(bool within)
    {
        switch (mode_) {
        case Mode::Start:
            if (within) {
                mode_ = Mode::Vertex;
                fresh_ = true;
            } else {
                mode_ = Mode::Dead;
            }
            break;
        case Mode::Vertex:
            if (within) {
                if (e_ + 1 == n_) {
                    pos_ = Pos::Finish;
                    finish_disk();
                } else {
                    ++e_;
                }
            } else {
                pos_ = Pos::Exit;
                exit_disk_ = k_;
                mode_ = Mode::Disk;
                l_ = k_ + 1;
            }
            break;
        case Mode::Disk: {
            const bool in = flip_ ? !within : within;
            if (!in) {
                ++l_;
                break;
            }
            k_ = l_;
            fresh_ = true;
            if (pos_ == Pos::Finish)
                finish_disk();
            else
                mode_ = Mode::Vertex;
            break;
        }
        case Mode::Dead:
        case Mode::Done:
            break;
        }
    }

    /// Annotation of a newly reached (stone, position) pair, once.
    std::optional<SemiTriple> take_triple(double lo, double hi)
    {
        if (!fresh_)
            return std::nullopt;
        fresh_ = false;
        SemiTriple t;
        t.tau = {lo, hi};
        t.a_index = k_;
        if (pos_ == Pos::Origin) {
            t.edge = 0;
            t.p = t.q = f_->start();
        } else if (pos_ == Pos::Finish) {
            t.edge = n_ - 1;
            t.p = t.q = f_->finish();
        } else {
            const Point c = (*a_)[static_cast<std::size_t>(exit_disk_)];
            t.edge = e_;
            t.p = {e_, exit_parameter(*f_, e_, c, lo)};
            t.q = {e_, exit_parameter(*f_, e_, c, hi)};
        }
        return t;
    }

private:
    enum class Mode { Start, Vertex, Disk, Done, Dead };
    enum class Pos { Origin, Exit, Finish };
    enum class Membership { In, Out, Compare };

    double stone_to(int i, Point p) const { return squared_dist((*a_)[static_cast<std::size_t>(i)], p); }

    // At p_n the endpoint step is trivial: done on the last stone, otherwise
    // look for the next disk containing p_n.
    void finish_disk()
    {
        if (k_ == m_ - 1) {
            mode_ = Mode::Done;
        } else {
            mode_ = Mode::Disk;
            l_ = k_ + 1;
        }
    }

    // Is the exit point of disk k on edge e inside disk l? The difference of
    // the two squared distances is linear along the edge and vanishes on the
    // bisector, so the answer is either fixed or flips where delta^2 equals
    // the bisector value.
    Membership classify_disk()
    {
        const Point pk = (*a_)[static_cast<std::size_t>(exit_disk_)];
        const Point pl = (*a_)[static_cast<std::size_t>(l_)];
        if (pk == pl)
            return Membership::In;
        const Point s = f_->edge_start(e_);
        const Point e = f_->edge_end(e_);
        const double dx = e.x - s.x;
        const double dy = e.y - s.y;
        const double sigma = dx * (pl.x - pk.x) + dy * (pl.y - pk.y);
        const auto hit = bisector_edge_intersection(pk, pl, s, e);
        if (!hit || sigma == 0.0) {
            const Point mid{0.5 * (s.x + e.x), 0.5 * (s.y + e.y)};
            const double h = squared_dist(pl, mid) - squared_dist(pk, mid);
            if (hit && sigma == 0.0)
                return Membership::In;
            return h <= 0.0 ? Membership::In : Membership::Out;
        }
        const double t_min = ((pk.x - s.x) * dx + (pk.y - s.y) * dy) / (dx * dx + dy * dy);
        if (hit->t < t_min)
            return sigma > 0.0 ? Membership::In : Membership::Out;
        compare_value_ = hit->value_sq;
        flip_ = sigma < 0.0;
        return Membership::Compare;
    }

    const PointSeq* a_;
    const PolyCurve* f_;
    int m_;
    int n_;
    Mode mode_ = Mode::Start;
    Pos pos_ = Pos::Origin;
    int k_ = 0;         // current stone
    int e_ = 0;         // edge holding the person
    int l_ = 0;         // candidate stone in the disk scan
    int exit_disk_ = 0; // stone whose disk boundary defines the position
    bool flip_ = false;
    bool fresh_ = false;
    double compare_value_ = 0.0;
};

} // namespace

HalfOpenInterval narrow_interval_semi(const PointSeq& a, const PolyCurve& f, std::size_t L,
                                      std::uint64_t seed, HalfOpenInterval start,
                                      double sample_factor, SearchStats* stats)
{
    if (L == 0)
        throw std::invalid_argument("L must be positive");
    const std::size_t m = a.size();
    const std::size_t n = static_cast<std::size_t>(f.edge_count());
    const double pair_total = static_cast<double>(m * (n + 1));
    const double triple_total = static_cast<double>(m * (m - 1) / 2 * n);
    const double z = pair_total + triple_total;
    if (z <= static_cast<double>(L))
        return start;

    const double x = z * std::log(static_cast<double>(m + n)) / static_cast<double>(L);
    const double draws = std::ceil(sample_factor * x);
    Rng rng(seed);
    std::vector<double> values;
    auto keep = [&](double v) {
        if (start.contains(v) && v < start.beta_sq)
            values.push_back(v);
    };
    auto pair_value_at = [&](std::size_t i, int k) {
        return squared_dist(a[i], f.vertex(k));
    };
    auto triple_value_at = [&](std::size_t i, std::size_t j, int e) {
        const Point p = a[i];
        const Point q = a[j];
        if (p == q)
            return;
        if (auto hit = bisector_edge_intersection(p, q, f.edge_start(e), f.edge_end(e)))
            keep(hit->value_sq);
    };

    if (draws >= pair_total) {
        for (std::size_t i = 0; i < m; ++i)
            for (int k = 0; k <= static_cast<int>(n); ++k)
                keep(pair_value_at(i, k));
    } else {
        std::uniform_int_distribution<std::size_t> pick_a(0, m - 1);
        std::uniform_int_distribution<int> pick_v(0, static_cast<int>(n));
        for (double d = 0; d < draws; ++d) {
            const std::size_t i = pick_a(rng);
            keep(pair_value_at(i, pick_v(rng)));
        }
    }
    if (m >= 2) {
        if (draws >= triple_total) {
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = i + 1; j < m; ++j)
                    for (int e = 0; e < static_cast<int>(n); ++e)
                        triple_value_at(i, j, e);
        } else {
            std::uniform_int_distribution<std::size_t> pick_a(0, m - 1);
            std::uniform_int_distribution<std::size_t> pick_b(0, m - 2);
            std::uniform_int_distribution<int> pick_e(0, static_cast<int>(n) - 1);
            for (double d = 0; d < draws; ++d) {
                const std::size_t i = pick_a(rng);
                std::size_t j = pick_b(rng);
                if (j >= i)
                    ++j;
                triple_value_at(std::min(i, j), std::max(i, j), pick_e(rng));
            }
        }
    }
    if (stats) {
        stats->samples_drawn += static_cast<std::size_t>(std::min(draws, pair_total) +
                                                         std::min(draws, triple_total));
        ++stats->narrowing_rounds;
    }

    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    std::size_t first_yes = 0;
    std::size_t count = values.size();
    while (count > 0) {
        const std::size_t half = count / 2;
        if (stats)
            ++stats->decisions;
        if (decide_semi(a, f, values[first_yes + half]).yes) {
            count = half;
        } else {
            first_yes += half + 1;
            count -= half + 1;
        }
    }
    HalfOpenInterval out = start;
    if (first_yes > 0)
        out.alpha_sq = values[first_yes - 1];
    if (first_yes < values.size())
        out.beta_sq = values[first_yes];
    return out;
}

double bifurcation_search_semi(const PointSeq& a, const PolyCurve& f, HalfOpenInterval interval,
                               std::size_t L, SearchStats* stats, std::size_t max_bifurcations,
                               std::vector<SemiTriple>* triples)
{
    const std::size_t sum = a.size() + static_cast<std::size_t>(f.edge_count());
    auto decide = [&](double v) { return decide_semi(a, f, v).yes; };
    auto observe = [&](SemiCursor& cursor, double lo, double hi) {
        auto t = cursor.take_triple(lo, hi);
        if (t && triples && hi < kInf)
            triples->push_back(*t);
    };
    return detail::bifurcation_run(SemiCursor(a, f), interval, sum,
                                   detail::branch_step_limit(sum, L), decide, stats,
                                   max_bifurcations, observe);
}

SemiResult optimize_semi(const PointSeq& a, const PolyCurve& f, const OptimizeConfig& cfg)
{
    SemiResult res;
    SearchStats& st = res.stats;
    const std::size_t m = a.size();
    const std::size_t n = static_cast<std::size_t>(f.edge_count());
    const double lower = std::max(squared_dist(a[0], f.vertex(0)),
                                  squared_dist(a[m - 1], f.vertex(static_cast<int>(n))));
    ++st.decisions;
    SemiDecision at_lower = decide_semi(a, f, lower);
    if (at_lower.yes) {
        res.delta_star_sq = lower;
        res.certificate = std::move(at_lower.path);
        return res;
    }

    const std::size_t L = cfg.L != 0 ? cfg.L : default_semi_L(m, n);
    for (int attempt = 0; attempt <= cfg.max_retries; ++attempt) {
        const std::uint64_t seed = cfg.seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(attempt);
        try {
            const HalfOpenInterval iv = narrow_interval_semi(a, f, L, seed, {lower, kInf},
                                                             cfg.semi_sample_factor, &st);
            const double value = bifurcation_search_semi(a, f, iv, L, &st, 4 * L);
            ++st.decisions;
            SemiDecision cert = decide_semi(a, f, value);
            res.delta_star_sq = value;
            res.certificate = std::move(cert.path);
            return res;
        } catch (const RestartNeeded&) {
            ++st.retries;
        }
    }
    throw RetryExhausted("semi-continuous optimization exhausted its retries", st);
}

} // namespace dfds
