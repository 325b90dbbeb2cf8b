#pragma once

// Data-parallel inner loops over structure-of-arrays point coordinates.
//
// Each kernel has a scalar reference and vectorized variants (AVX2 on x86-64,
// NEON on AArch64). The active variant is picked once at startup from the
// CPU's capabilities and can be overridden for testing. All variants evaluate
// dx*dx + dy*dy with the same operation order and no fused multiply-add, so
// their results are bit-identical.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace dfds::kernels {

enum class Isa { Scalar, Avx2, Neon };

std::string_view isa_name(Isa isa);

/// Variants usable on this machine, Scalar first.
std::vector<Isa> available_isas();

/// Variant currently used by the dispatching entry points.
Isa active_isa();

/// Force a variant; throws std::invalid_argument if it is not available.
void set_active_isa(Isa isa);

/// out[k] = (xs[k]-px)^2 + (ys[k]-py)^2
void squared_dists(std::span<const double> xs, std::span<const double> ys, double px, double py,
                   std::span<double> out);

/// Number of k with lo < d_k <= hi.
std::size_t count_in_range(std::span<const double> xs, std::span<const double> ys, double px,
                           double py, double lo, double hi);

/// Smallest k >= begin with d_k <= r2, or xs.size() if none.
std::size_t first_within(std::span<const double> xs, std::span<const double> ys, double px,
                         double py, double r2, std::size_t begin);

/// Appends every k with d_k <= r2 to out, in increasing order.
void collect_within(std::span<const double> xs, std::span<const double> ys, double px, double py,
                    double r2, std::vector<std::int32_t>& out);

/// Per-variant function table. Exposed so the equivalence tests can call a
/// specific implementation directly.
struct Table {
    void (*squared_dists)(const double*, const double*, std::size_t, double, double, double*);
    std::size_t (*count_in_range)(const double*, const double*, std::size_t, double, double,
                                  double, double);
    std::size_t (*first_within)(const double*, const double*, std::size_t, double, double, double,
                                std::size_t);
    void (*collect_within)(const double*, const double*, std::size_t, double, double, double,
                           std::vector<std::int32_t>&);
};

const Table& table_for(Isa isa);

namespace detail {
extern const Table scalar_table;
#if defined(__x86_64__) || defined(_M_X64)
extern const Table avx2_table;
#endif
#if defined(__aarch64__)
extern const Table neon_table;
#endif
} // namespace detail

} // namespace dfds::kernels
