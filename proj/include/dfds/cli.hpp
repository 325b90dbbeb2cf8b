#pragma once

// Command-line front end: instance files, the synthetic generator, the
// benchmark harness and the verb dispatcher used by the dfds executable.

#include "dfds/geom.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace dfds::cli {

// ---- instance files ------------------------------------------------------

enum class InstanceKind { PointSequence, Curve };

struct InstanceFile {
    InstanceKind kind = InstanceKind::PointSequence;
    std::vector<Point> points;
    std::vector<int> outliers; ///< generator metadata
    bool has_outliers = false; ///< write the "outliers" field even when empty
};

/// Thrown for unreadable or malformed instance files.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// JSON ({"kind":...,"points"|"vertices":[[x,y],...]}) or CSV (one "x,y" per
/// line). For CSV the kind is `expected`; for JSON it must match it.
InstanceFile parse_instance(const std::string& text, InstanceKind expected);
InstanceFile load_instance(const std::string& path, InstanceKind expected);

std::string format_instance(const InstanceFile& inst, bool csv);
void save_instance(const std::string& path, const InstanceFile& inst, bool csv);

// ---- generator -----------------------------------------------------------

struct GenParams {
    std::size_t m = 100;   ///< sample points
    std::size_t n = 50;    ///< curve edges
    double sigma = 0.1;    ///< Gaussian noise
    double outlier_frac = 0.0;
    std::uint64_t seed = 1;
};

struct GeneratedInstance {
    std::vector<Point> samples;  ///< the point sequence A
    std::vector<Point> vertices; ///< the base polyline, n+1 vertices
    std::vector<int> outliers;   ///< indices into samples, increasing
};

/// Random walk polyline, m noisy samples in arc-length order along it, and
/// round(outlier_frac*m) of them replaced by far random points.
GeneratedInstance generate(const GenParams& p);

// ---- benchmark -----------------------------------------------------------

struct BenchRow {
    std::string variant;
    std::size_t m = 0;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    double time_ms = 0.0;
    std::size_t probes = 0;
    std::size_t bifurcations = 0;
    int retries = 0;
};

struct BenchParams {
    std::vector<std::string> variants; ///< see bench_variants()
    std::vector<std::size_t> ladder{250, 500, 1000, 2000, 4000};
    std::uint64_t seed = 1;
    std::size_t trials = 1;
    double sigma = 0.1;
    double outlier_frac = 0.1;
};

/// Names accepted by run_bench.
std::vector<std::string> bench_variants();

/// One row per variant, rung and trial. Trial t of rung m uses a seed
/// derived from the master seed, m and t only.
std::vector<BenchRow> run_bench(const BenchParams& p);

std::string bench_csv(const std::vector<BenchRow>& rows);
std::vector<BenchRow> parse_bench_csv(const std::string& text);

enum class BenchField { TimeMs, Probes };

/// Least-squares slope of log(field) against log(m) over the rows of one
/// variant. NaN with fewer than two distinct sizes.
double fit_slope(const std::vector<BenchRow>& rows, const std::string& variant, BenchField field);

// ---- dispatcher ----------------------------------------------------------

inline constexpr int kExitYes = 0;
inline constexpr int kExitNo = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitRetries = 3;

/// Runs one verb; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace dfds::cli
