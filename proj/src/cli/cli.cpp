#include "dfds/cli.hpp"

#include "dfds/interval_tools.hpp"
#include "dfds/one_sided.hpp"
#include "dfds/oracles.hpp"
#include "dfds/semi_continuous.hpp"
#include "dfds/two_sided.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <variant>

namespace dfds::cli {

namespace {

using nlohmann::json;

// A typed --delta is a rounded decimal root; its square is widened by this
// relative amount so a value printed to about nine digits decides like the
// exact one. --delta-sq is used as given.
constexpr double kDeltaInputTol = 1e-8;

// Oracle verification limits for --verify.
constexpr std::size_t kVerifyDiscretePairs = 1'000'000;
constexpr std::size_t kVerifySemiSize = 60;

enum class Variant { OneSided, TwoSided, Semi };

const std::map<std::string, Variant> kVariants{
    {"one-sided", Variant::OneSided}, {"two-sided", Variant::TwoSided}, {"semi", Variant::Semi}};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::uint64_t seed = 1;
    std::string format = "json";
    bool verify = false;
    std::string backend = "sampling";
    std::size_t L = 0;
    int retries = 5;
    std::string variant = "one-sided";
    std::string a_path;
    std::string b_path;
    std::string f_path;
    std::string out_path;
};

// Twelve significant digits, as a JSON number.
json human(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return json::parse(buf);
}

json certificate_json(const Staircase& s)
{
    json out = json::array();
    for (const Position& p : s)
        out.push_back({p.i, p.j});
    return out;
}

json certificate_json(const SemiPath& path)
{
    json out = json::array();
    for (const SemiStep& s : path.steps)
        out.push_back({s.a, s.x.edge, s.x.t});
    return out;
}

OptimizeConfig make_config(const Common& c)
{
    OptimizeConfig cfg;
    cfg.seed = c.seed;
    cfg.L = c.L;
    cfg.max_retries = c.retries;
    if (c.backend == "hierarchical") {
        cfg.threshold_backend = ThresholdBackend::Hierarchical;
        cfg.cover_backend = CoverBackend::Hierarchical;
    } else {
        cfg.threshold_backend = ThresholdBackend::Sampling;
        cfg.cover_backend = CoverBackend::Naive;
    }
    return cfg;
}

struct Inputs {
    PointSeq a;
    PointSeq b;
    std::optional<PolyCurve> f;
};

Inputs load_inputs(const Common& c, Variant v)
{
    if (c.a_path.empty())
        throw UsageError("-a is required");
    Inputs in;
    in.a = PointSeq(load_instance(c.a_path, InstanceKind::PointSequence).points);
    if (v == Variant::Semi) {
        if (c.f_path.empty())
            throw UsageError("the semi variant needs -f");
        in.f.emplace(load_instance(c.f_path, InstanceKind::Curve).points);
    } else {
        if (c.b_path.empty())
            throw UsageError("discrete variants need -b");
        in.b = PointSeq(load_instance(c.b_path, InstanceKind::PointSequence).points);
    }
    return in;
}

void emit(std::ostream& out, const Common& c, const json& record)
{
    std::ostringstream text;
    if (c.format == "csv") {
        std::string keys;
        std::string values;
        for (auto it = record.begin(); it != record.end(); ++it) {
            if (it.value().is_array() || it.value().is_object())
                continue;
            keys += (keys.empty() ? "" : ",") + it.key();
            const std::string v =
                it.value().is_string() ? it.value().get<std::string>() : it.value().dump();
            values += (values.empty() ? "" : ",") + v;
        }
        text << keys << '\n' << values << '\n';
    } else {
        text << record.dump() << '\n';
    }
    if (c.out_path.empty()) {
        out << text.str();
    } else {
        std::ofstream file(c.out_path, std::ios::binary);
        if (!file)
            throw InputError("cannot write " + c.out_path);
        file << text.str();
    }
}

int cmd_decide(const Common& c, std::optional<double> delta, std::optional<double> delta_sq,
               std::ostream& out)
{
    const Variant v = kVariants.at(c.variant);
    if (delta.has_value() == delta_sq.has_value())
        throw UsageError("give exactly one of --delta and --delta-sq");
    const double d2 = delta ? *delta * *delta * (1.0 + kDeltaInputTol) : *delta_sq;
    if (!(d2 > 0.0) || !std::isfinite(d2))
        throw UsageError("delta must be positive and finite");
    const Inputs in = load_inputs(c, v);

    json rec;
    rec["problem"] = c.variant;
    bool yes = false;
    if (v == Variant::OneSided) {
        const OneSidedDecision d = decide_one_sided(in.a, in.b, d2);
        yes = d.yes;
        rec["certificate"] = yes ? certificate_json(d.staircase) : json(nullptr);
        rec["probes"] = d.probes;
    } else if (v == Variant::TwoSided) {
        std::size_t work = 0;
        const CoverBackend backend =
            c.backend == "hierarchical" ? CoverBackend::Hierarchical : CoverBackend::Naive;
        yes = decide_two_sided(in.a, in.b, d2, backend, &work);
        rec["certificate"] = yes ? certificate_json(trace_two_sided(in.a, in.b, d2)) : json(nullptr);
        rec["probes"] = work;
    } else {
        const SemiDecision d = decide_semi(in.a, *in.f, d2);
        yes = d.yes;
        rec["certificate"] = yes ? certificate_json(d.path) : json(nullptr);
        rec["probes"] = d.probes;
    }
    rec["answer"] = yes ? "yes" : "no";
    rec["delta"] = delta ? human(*delta) : human(std::sqrt(d2));
    rec["delta_squared"] = delta ? *delta * *delta : d2;
    emit(out, c, rec);
    return yes ? kExitYes : kExitNo;
}

int cmd_optimize(const Common& c, std::ostream& out)
{
    const Variant v = kVariants.at(c.variant);
    const Inputs in = load_inputs(c, v);
    const OptimizeConfig cfg = make_config(c);

    json rec;
    rec["problem"] = c.variant;
    double value = 0.0;
    SearchStats stats;
    json cert;
    const auto t0 = std::chrono::steady_clock::now();
    if (v == Variant::OneSided) {
        const OneSidedResult r = optimize_one_sided(in.a, in.b, cfg);
        value = r.delta_star_sq;
        stats = r.stats;
        cert = certificate_json(r.certificate);
    } else if (v == Variant::TwoSided) {
        const TwoSidedResult r = optimize_two_sided(in.a, in.b, cfg);
        value = r.delta_star_sq;
        stats = r.stats;
        cert = certificate_json(trace_two_sided(in.a, in.b, value));
    } else {
        const SemiResult r = optimize_semi(in.a, *in.f, cfg);
        value = r.delta_star_sq;
        stats = r.stats;
        cert = certificate_json(r.certificate);
    }
    const auto t1 = std::chrono::steady_clock::now();

    rec["delta_star"] = human(std::sqrt(value));
    rec["delta_star_squared"] = value;
    rec["certificate"] = cert;
    rec["seed"] = c.seed;
    rec["retry_count"] = stats.retries;
    rec["probes"] = stats.probes;
    rec["bifurcations"] = stats.bifurcations;
    rec["decisions"] = stats.decisions;
    rec["time_ms"] = std::chrono::duration<double, std::milli>(t1 - t0).count();

    int code = kExitYes;
    if (c.verify) {
        std::optional<double> expected;
        if (v == Variant::Semi) {
            if (in.a.size() <= kVerifySemiSize &&
                static_cast<std::size_t>(in.f->edge_count()) <= kVerifySemiSize)
                expected = oracle_optimize_semi(in.a, *in.f);
        } else if (in.a.size() * in.b.size() <= kVerifyDiscretePairs) {
            expected = oracle_optimize_discrete(in.a, in.b,
                                                v == Variant::OneSided
                                                    ? OracleVariant::OneSidedDFDS
                                                    : OracleVariant::TwoSidedDFDS);
        }
        if (expected) {
            rec["verified"] = *expected == value;
            if (*expected != value) {
                rec["oracle_squared"] = *expected;
                code = kExitNo;
            }
        } else {
            rec["verified"] = nullptr;
        }
    }
    emit(out, c, rec);
    return code;
}

ThresholdOptions threshold_options(const Common& c)
{
    ThresholdOptions o;
    o.backend = c.backend == "hierarchical" ? ThresholdBackend::Hierarchical
                                            : ThresholdBackend::Sampling;
    return o;
}

int cmd_select(const Common& c, std::size_t k, std::ostream& out)
{
    const Inputs in = load_inputs(c, Variant::OneSided);
    const std::size_t total = in.a.size() * in.b.size();
    if (k == 0 || k >= total)
        throw UsageError("-k must lie in [1, m*n)");
    const std::size_t L = c.L != 0 ? c.L : std::max<std::size_t>(1, total / 10);
    if (L >= k)
        throw UsageError("-L must be smaller than -k");
    const RankSelection r = approx_rank_select(in.a, in.b, k, L, c.seed, threshold_options(c));
    json rec;
    rec["pair"] = {r.pair.a, r.pair.b};
    rec["value_squared"] = r.value_sq;
    rec["distance"] = human(std::sqrt(r.value_sq));
    rec["k"] = k;
    rec["L"] = L;
    rec["seed"] = c.seed;
    emit(out, c, rec);
    return kExitYes;
}

int cmd_count(const Common& c, std::optional<double> alpha, std::optional<double> beta,
              std::optional<std::size_t> threshold, std::ostream& out)
{
    const Inputs in = load_inputs(c, Variant::OneSided);
    HalfOpenInterval iv{alpha ? *alpha * *alpha : -1.0, beta ? *beta * *beta : kInf};
    if (alpha && beta && !(*alpha < *beta))
        throw UsageError("need alpha < beta");
    json rec;
    rec["alpha_squared"] = alpha ? json(iv.alpha_sq) : json(nullptr);
    rec["beta_squared"] = beta ? json(iv.beta_sq) : json(nullptr);
    rec["exact_count"] = count_in_interval_exact(in.a, in.b, iv);
    if (threshold) {
        if (*threshold == 0)
            throw UsageError("--threshold must be positive");
        const ThresholdOutcome o =
            threshold_count_and_sample(in.a, in.b, iv, *threshold, c.seed, threshold_options(c));
        json t;
        t["L"] = *threshold;
        if (const auto* at = std::get_if<AtMostL>(&o)) {
            t["outcome"] = "at_most_L";
            t["count"] = at->count;
        } else {
            const auto& more = std::get<MoreThanL>(o);
            t["outcome"] = "more_than_L";
            json sample = json::array();
            for (const PairIndex& p : more.sample)
                sample.push_back({p.a, p.b});
            t["sample"] = std::move(sample);
        }
        rec["threshold"] = std::move(t);
        rec["seed"] = c.seed;
    }
    emit(out, c, rec);
    return kExitYes;
}

int cmd_gen(const Common& c, const GenParams& gp, std::ostream& out)
{
    const GeneratedInstance g = generate(gp);
    InstanceFile a{InstanceKind::PointSequence, g.samples, g.outliers, true};
    InstanceFile b{InstanceKind::PointSequence, g.vertices, {}, false};
    InstanceFile f{InstanceKind::Curve, g.vertices, {}, false};
    const bool csv = c.format == "csv";
    if (c.out_path.empty()) {
        if (csv)
            throw UsageError("gen --format csv needs -o DIR");
        json doc;
        doc["a"] = json::parse(format_instance(a, false));
        doc["b"] = json::parse(format_instance(b, false));
        doc["f"] = json::parse(format_instance(f, false));
        doc["seed"] = gp.seed;
        out << doc.dump() << '\n';
        return kExitYes;
    }
    namespace fs = std::filesystem;
    const fs::path dir(c.out_path);
    fs::create_directories(dir);
    const std::string ext = csv ? ".csv" : ".json";
    save_instance((dir / ("a" + ext)).string(), a, csv);
    save_instance((dir / ("b" + ext)).string(), b, csv);
    save_instance((dir / ("f" + ext)).string(), f, csv);
    out << "wrote " << (dir / ("a" + ext)).string() << ' ' << (dir / ("b" + ext)).string() << ' '
        << (dir / ("f" + ext)).string() << '\n';
    return kExitYes;
}

std::string slope_lines(const std::vector<BenchRow>& rows)
{
    std::vector<std::string> seen;
    for (const BenchRow& r : rows) {
        if (std::find(seen.begin(), seen.end(), r.variant) == seen.end())
            seen.push_back(r.variant);
    }
    std::ostringstream text;
    text << std::setprecision(4);
    for (const std::string& v : seen) {
        text << "# slope," << v << ",time=" << fit_slope(rows, v, BenchField::TimeMs)
             << ",probes=" << fit_slope(rows, v, BenchField::Probes) << '\n';
    }
    return text.str();
}

int cmd_bench(const Common& c, BenchParams bp, const std::string& report, std::ostream& out)
{
    if (!report.empty()) {
        std::ifstream in(report, std::ios::binary);
        if (!in)
            throw InputError("cannot open " + report);
        std::ostringstream buf;
        buf << in.rdbuf();
        out << slope_lines(parse_bench_csv(buf.str()));
        return kExitYes;
    }
    bp.seed = c.seed;
    if (bp.variants.empty())
        bp.variants = {"one-sided", "one-sided-oracle"};
    const auto rows = run_bench(bp);
    const std::string text = bench_csv(rows) + slope_lines(rows);
    if (c.out_path.empty()) {
        out << text;
    } else {
        std::ofstream file(c.out_path, std::ios::binary);
        if (!file)
            throw InputError("cannot write " + c.out_path);
        file << text;
    }
    return kExitYes;
}

void add_common(CLI::App* sub, Common& c, bool inputs)
{
    sub->add_option("--seed", c.seed, "random seed");
    sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("-o", c.out_path, "output file (directory for gen)");
    if (!inputs)
        return;
    sub->add_option("-a", c.a_path, "point sequence A");
    sub->add_option("-b", c.b_path, "point sequence B");
    sub->add_option("-f", c.f_path, "polygonal curve f");
    sub->add_option("--backend", c.backend, "sampling | hierarchical | naive-cover")
        ->check(CLI::IsMember({"sampling", "hierarchical", "naive-cover"}));
    sub->add_option("-L,--L", c.L, "phase, threshold or rank-slack parameter (0 = default)");
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Discrete and semi-continuous Frechet distance with shortcuts", "dfds"};
    app.require_subcommand(1);
    Common c;

    auto* decide = app.add_subcommand("decide", "decide whether the distance is at most delta");
    add_common(decide, c, true);
    std::optional<double> delta;
    std::optional<double> delta_sq;
    decide->add_option("--variant", c.variant)->check(CLI::IsMember({"one-sided", "two-sided", "semi"}));
    decide->add_option("--delta", delta, "distance threshold");
    decide->add_option("--delta-sq", delta_sq, "squared distance threshold");

    auto* optimize = app.add_subcommand("optimize", "compute the exact distance");
    add_common(optimize, c, true);
    optimize->add_option("--variant", c.variant)->check(CLI::IsMember({"one-sided", "two-sided", "semi"}));
    optimize->add_option("--retries", c.retries, "retry cap")->check(CLI::NonNegativeNumber);
    optimize->add_flag("--verify", c.verify, "compare with the brute-force oracle");

    auto* select = app.add_subcommand("select", "approximate k-th smallest pair distance");
    add_common(select, c, true);
    std::size_t k = 0;
    select->add_option("-k", k, "rank (1-based)")->required();

    auto* count = app.add_subcommand("count", "pair distances in (alpha, beta]");
    add_common(count, c, true);
    std::optional<double> alpha;
    std::optional<double> beta;
    std::optional<std::size_t> threshold;
    count->add_option("--alpha", alpha, "lower distance bound (exclusive)");
    count->add_option("--beta", beta, "upper distance bound (inclusive)");
    count->add_option("--threshold", threshold, "also run the randomized threshold test with L");

    auto* gen = app.add_subcommand("gen", "generate a noisy sampled instance");
    add_common(gen, c, false);
    GenParams gp;
    gen->add_option("--m", gp.m, "sample points")->check(CLI::PositiveNumber);
    gen->add_option("--n", gp.n, "curve edges")->check(CLI::PositiveNumber);
    gen->add_option("--sigma", gp.sigma, "noise level")->check(CLI::NonNegativeNumber);
    gen->add_option("--outlier-frac", gp.outlier_frac, "outlier fraction")->check(CLI::Range(0.0, 1.0));

    auto* bench = app.add_subcommand("bench", "scaling benchmark");
    add_common(bench, c, false);
    BenchParams bp;
    std::string report;
    bench->add_option("--variant", bp.variants, "variants (comma separated)")
        ->delimiter(',')
        ->check(CLI::IsMember(bench_variants()));
    bench->add_option("--ladder", bp.ladder, "sizes m=n (comma separated)")->delimiter(',');
    bench->add_option("--trials", bp.trials, "trials per size")->check(CLI::PositiveNumber);
    bench->add_option("--sigma", bp.sigma, "noise level")->check(CLI::NonNegativeNumber);
    bench->add_option("--outlier-frac", bp.outlier_frac)->check(CLI::Range(0.0, 1.0));
    bench->add_option("--report", report, "print slopes of an existing CSV report");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitYes;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitYes;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        for (auto* sub : app.get_subcommands())
            err << sub->help();
        return kExitUsage;
    }

    try {
        if (decide->parsed())
            return cmd_decide(c, delta, delta_sq, out);
        if (optimize->parsed())
            return cmd_optimize(c, out);
        if (select->parsed())
            return cmd_select(c, k, out);
        if (count->parsed())
            return cmd_count(c, alpha, beta, threshold, out);
        if (gen->parsed())
            return cmd_gen(c, gp, out);
        if (bench->parsed())
            return cmd_bench(c, bp, report, out);
    } catch (const RetryExhausted& e) {
        err << "error: " << e.what() << " after " << e.stats().retries << " retries\n";
        return kExitRetries;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ContractError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

} // namespace dfds::cli
