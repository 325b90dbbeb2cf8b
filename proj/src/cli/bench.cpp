#include "dfds/cli.hpp"

#include "dfds/one_sided.hpp"
#include "dfds/oracles.hpp"
#include "dfds/semi_continuous.hpp"
#include "dfds/two_sided.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace dfds::cli {

namespace {

// Squared radius for the fixed-delta decision benchmarks: longer than any
// generated edge, so every answer is yes and the whole instance is walked.
constexpr double kDecideDeltaSq = 4.0;

std::uint64_t trial_seed(std::uint64_t master, std::size_t m, std::size_t trial)
{
    std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                      static_cast<std::uint32_t>(m), static_cast<std::uint32_t>(trial)};
    std::uint32_t out[2];
    seq.generate(out, out + 2);
    return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

template <class F>
double time_ms(F&& body)
{
    const auto t0 = std::chrono::steady_clock::now();
    body();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

BenchRow run_one(const std::string& variant, std::size_t m, std::uint64_t seed,
                 const BenchParams& p)
{
    GenParams gp;
    gp.m = m;
    gp.n = std::max<std::size_t>(m, 2) - 1; // m curve vertices
    gp.sigma = p.sigma;
    gp.outlier_frac = p.outlier_frac;
    gp.seed = seed;
    const GeneratedInstance g = generate(gp);
    const PointSeq a(g.samples);
    const PointSeq b(g.vertices);
    const PolyCurve f(g.vertices);

    BenchRow row;
    row.variant = variant;
    row.m = a.size();
    row.n = variant.rfind("semi", 0) == 0 ? static_cast<std::size_t>(f.edge_count()) : b.size();
    row.seed = seed;
    OptimizeConfig cfg;
    cfg.seed = seed;
    auto take = [&row](const SearchStats& s) {
        row.probes = s.probes;
        row.bifurcations = s.bifurcations;
        row.retries = s.retries;
    };

    if (variant == "one-sided") {
        OneSidedResult r;
        row.time_ms = time_ms([&] { r = optimize_one_sided(a, b, cfg); });
        take(r.stats);
    } else if (variant == "one-sided-oracle") {
        row.time_ms =
            time_ms([&] { (void)oracle_optimize_discrete(a, b, OracleVariant::OneSidedDFDS); });
    } else if (variant == "one-sided-decide") {
        OneSidedDecision d;
        row.time_ms = time_ms([&] { d = decide_one_sided(a, b, kDecideDeltaSq); });
        row.probes = d.probes;
    } else if (variant == "two-sided") {
        TwoSidedResult r;
        row.time_ms = time_ms([&] { r = optimize_two_sided(a, b, cfg); });
        take(r.stats);
    } else if (variant == "two-sided-oracle") {
        row.time_ms =
            time_ms([&] { (void)oracle_optimize_discrete(a, b, OracleVariant::TwoSidedDFDS); });
    } else if (variant == "two-sided-decide") {
        std::size_t work = 0;
        row.time_ms = time_ms([&] {
            (void)decide_two_sided(a, b, kDecideDeltaSq, CoverBackend::Hierarchical, &work);
        });
        row.probes = work;
    } else if (variant == "semi") {
        SemiResult r;
        row.time_ms = time_ms([&] { r = optimize_semi(a, f, cfg); });
        take(r.stats);
    } else if (variant == "semi-oracle") {
        row.time_ms = time_ms([&] { (void)oracle_optimize_semi(a, f); });
    } else if (variant == "semi-decide") {
        SemiDecision d;
        row.time_ms = time_ms([&] { d = decide_semi(a, f, kDecideDeltaSq); });
        row.probes = d.probes;
    } else {
        throw std::invalid_argument("unknown bench variant: " + variant);
    }
    return row;
}

} // namespace

std::vector<std::string> bench_variants()
{
    return {"one-sided",        "one-sided-oracle", "one-sided-decide",
            "two-sided",        "two-sided-oracle", "two-sided-decide",
            "semi",             "semi-oracle",      "semi-decide"};
}

std::vector<BenchRow> run_bench(const BenchParams& p)
{
    const auto known = bench_variants();
    for (const std::string& v : p.variants) {
        if (std::find(known.begin(), known.end(), v) == known.end())
            throw std::invalid_argument("unknown bench variant: " + v);
    }
    std::vector<BenchRow> rows;
    for (const std::string& v : p.variants) {
        for (std::size_t m : p.ladder) {
            for (std::size_t t = 0; t < p.trials; ++t)
                rows.push_back(run_one(v, m, trial_seed(p.seed, m, t), p));
        }
    }
    return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows)
{
    std::ostringstream out;
    out << "variant,m,n,seed,time_ms,probes,bifurcations,retries\n";
    for (const BenchRow& r : rows) {
        out << r.variant << ',' << r.m << ',' << r.n << ',' << r.seed << ',' << std::fixed
            << std::setprecision(3) << r.time_ms << std::defaultfloat << ',' << r.probes << ','
            << r.bifurcations << ',' << r.retries << '\n';
    }
    return out.str();
}

std::vector<BenchRow> parse_bench_csv(const std::string& text)
{
    std::vector<BenchRow> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || line[0] == '#' || line.rfind("variant,", 0) == 0)
            continue;
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ','))
            cells.push_back(cell);
        if (cells.size() != 8)
            throw std::invalid_argument("bench csv: expected 8 columns in \"" + line + "\"");
        BenchRow r;
        try {
            r.variant = cells[0];
            r.m = std::stoull(cells[1]);
            r.n = std::stoull(cells[2]);
            r.seed = std::stoull(cells[3]);
            r.time_ms = std::stod(cells[4]);
            r.probes = std::stoull(cells[5]);
            r.bifurcations = std::stoull(cells[6]);
            r.retries = std::stoi(cells[7]);
        } catch (const std::logic_error&) {
            throw std::invalid_argument("bench csv: bad number in \"" + line + "\"");
        }
        rows.push_back(r);
    }
    return rows;
}

double fit_slope(const std::vector<BenchRow>& rows, const std::string& variant, BenchField field)
{
    std::vector<double> xs;
    std::vector<double> ys;
    std::set<std::size_t> sizes;
    for (const BenchRow& r : rows) {
        if (r.variant != variant)
            continue;
        const double y = field == BenchField::TimeMs ? r.time_ms : static_cast<double>(r.probes);
        if (!(y > 0.0))
            continue;
        xs.push_back(std::log(static_cast<double>(r.m)));
        ys.push_back(std::log(y));
        sizes.insert(r.m);
    }
    if (sizes.size() < 2)
        return std::nan("");
    const double k = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

} // namespace dfds::cli
