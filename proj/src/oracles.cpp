#include "dfds/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace dfds {

namespace {

template <class Pred>
double first_true(const std::vector<double>& sorted, Pred&& pred)
{
    std::size_t lo = 0;
    std::size_t hi = sorted.size();
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (pred(sorted[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    if (lo == sorted.size())
        throw std::logic_error("oracle: decision fails at every candidate");
    return sorted[lo];
}

// Closed interval of global curve positions u = edge + t.
struct Span {
    double lo;
    double hi;
};

// f intersected with the closed disk, as maximal connected spans in curve order.
std::vector<Span> disk_components(const PolyCurve& f, Point c, double r2)
{
    std::vector<Span> out;
    const int n = f.edge_count();
    for (int e = 0; e < n; ++e) {
        const Point s = f.edge_start(e);
        const Point t = f.edge_end(e);
        const bool in_s = squared_dist(c, s) <= r2;
        const bool in_t = squared_dist(c, t) <= r2;
        double t0;
        double t1;
        if (in_s && in_t) {
            t0 = 0.0;
            t1 = 1.0;
        } else {
            const double dx = t.x - s.x;
            const double dy = t.y - s.y;
            const double ox = s.x - c.x;
            const double oy = s.y - c.y;
            const double qa = dx * dx + dy * dy;
            const double qb = dx * ox + dy * oy;
            const double qc = ox * ox + oy * oy - r2;
            const double disc = qb * qb - qa * qc;
            if (disc < 0.0 && !in_s && !in_t)
                continue;
            const double root = std::sqrt(std::max(0.0, disc));
            t0 = in_s ? 0.0 : std::max(0.0, (-qb - root) / qa);
            t1 = in_t ? 1.0 : std::min(1.0, (-qb + root) / qa);
            if (!in_t && t0 <= t1) {
                // Forward endpoint from the shared primitive.
                try {
                    if (auto exit = disk_exit_on_edge(c, r2, s, t, t0))
                        t1 = *exit;
                } catch (const ContractError&) {
                }
            }
            if (t0 > t1)
                continue;
        }
        const Span span{e + t0, e + t1};
        if (!out.empty() && in_s && out.back().hi == static_cast<double>(e))
            out.back().hi = span.hi;
        else
            out.push_back(span);
    }
    return out;
}

void merge_into(std::vector<Span>& all, const std::vector<Span>& add)
{
    all.insert(all.end(), add.begin(), add.end());
    std::sort(all.begin(), all.end(), [](const Span& x, const Span& y) { return x.lo < y.lo; });
    std::vector<Span> merged;
    for (const Span& s : all) {
        if (!merged.empty() && s.lo <= merged.back().hi)
            merged.back().hi = std::max(merged.back().hi, s.hi);
        else
            merged.push_back(s);
    }
    all = std::move(merged);
}

} // namespace

bool oracle_decide_discrete(const PointSeq& a, const PointSeq& b, double delta_sq,
                            OracleVariant variant)
{
    if (variant == OracleVariant::SemiContinuous)
        throw std::invalid_argument("oracle_decide_discrete needs a discrete variant");
    const bool two_sided = variant == OracleVariant::TwoSidedDFDS;
    const std::size_t m = a.size();
    const std::size_t n = b.size();
    // col_reached[j]: some (k, j) with k below the current row is reachable.
    std::vector<char> col_reached(n, 0);
    std::vector<char> row(n, 0);
    for (std::size_t i = 0; i < m; ++i) {
        bool row_reached = false; // two-sided: some (i, l), l < j, reachable
        for (std::size_t j = 0; j < n; ++j) {
            const bool one = squared_dist(a[i], b[j]) <= delta_sq;
            bool from = i == 0 && j == 0;
            from = from || col_reached[j] != 0;
            if (j > 0)
                from = from || (two_sided ? row_reached : row[j - 1] != 0);
            row[j] = one && from ? 1 : 0;
            row_reached = row_reached || row[j] != 0;
        }
        if (i + 1 == m)
            return row[n - 1] != 0;
        for (std::size_t j = 0; j < n; ++j)
            col_reached[j] = static_cast<char>(col_reached[j] | row[j]);
    }
    return false;
}

double oracle_optimize_discrete(const PointSeq& a, const PointSeq& b, OracleVariant variant)
{
    std::vector<double> values;
    values.reserve(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            values.push_back(squared_dist(a[i], b[j]));
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    return first_true(values, [&](double v) { return oracle_decide_discrete(a, b, v, variant); });
}

bool oracle_decide_semi(const PointSeq& a, const PolyCurve& f, double delta_sq)
{
    const double r2 = inflate(delta_sq);
    const std::size_t m = a.size();
    const double finish = static_cast<double>(f.edge_count());
    std::vector<Span> reached; // union of reachable spans over earlier stones
    std::vector<Span> last;
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<Span> own;
        for (const Span& comp : disk_components(f, a[i], r2)) {
            double entry = kInf;
            if (i == 0 && comp.lo == 0.0)
                entry = 0.0;
            for (const Span& r : reached) {
                if (r.hi >= comp.lo && r.lo <= comp.hi)
                    entry = std::min(entry, std::max(r.lo, comp.lo));
            }
            if (entry < kInf)
                own.push_back({entry, comp.hi});
        }
        if (i + 1 == m)
            last = own;
        merge_into(reached, own);
    }
    for (const Span& s : last) {
        if (s.hi == finish)
            return true;
    }
    return false;
}

double oracle_optimize_semi(const PointSeq& a, const PolyCurve& f)
{
    std::vector<double> values;
    for (const CriticalValue& c : enumerate_critical_values(a, f))
        values.push_back(c.value_sq);
    values = dedupe_sorted(std::move(values));
    return first_true(values, [&](double v) { return oracle_decide_semi(a, f, v); });
}

} // namespace dfds
