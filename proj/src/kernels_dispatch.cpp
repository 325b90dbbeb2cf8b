#include "dfds/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace dfds::kernels {

namespace {

bool cpu_has_avx2()
{
#if (defined(__x86_64__) || defined(_M_X64)) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

Isa best_isa()
{
    // DFDS_ISA=scalar pins the reference path, e.g. for A/B timing.
    if (const char* env = std::getenv("DFDS_ISA")) {
        const std::string want(env);
        for (Isa isa : available_isas()) {
            if (isa_name(isa) == want)
                return isa;
        }
    }
    const auto all = available_isas();
    return all.back();
}

std::atomic<const Table*>& active_table()
{
    static std::atomic<const Table*> table{&table_for(best_isa())};
    return table;
}

std::atomic<Isa>& active_tag()
{
    static std::atomic<Isa> tag{best_isa()};
    return tag;
}

const Table& current() { return *active_table().load(std::memory_order_relaxed); }

} // namespace

std::string_view isa_name(Isa isa)
{
    switch (isa) {
    case Isa::Scalar:
        return "scalar";
    case Isa::Avx2:
        return "avx2";
    case Isa::Neon:
        return "neon";
    }
    return "unknown";
}

std::vector<Isa> available_isas()
{
    std::vector<Isa> out{Isa::Scalar};
#if defined(__x86_64__) || defined(_M_X64)
    if (cpu_has_avx2())
        out.push_back(Isa::Avx2);
#endif
#if defined(__aarch64__)
    out.push_back(Isa::Neon);
#endif
    return out;
}

const Table& table_for(Isa isa)
{
    switch (isa) {
    case Isa::Scalar:
        return detail::scalar_table;
    case Isa::Avx2:
#if defined(__x86_64__) || defined(_M_X64)
        if (cpu_has_avx2())
            return detail::avx2_table;
#endif
        break;
    case Isa::Neon:
#if defined(__aarch64__)
        return detail::neon_table;
#endif
        break;
    }
    throw std::invalid_argument("kernel variant " + std::string(isa_name(isa)) +
                                " is not available on this machine");
}

Isa active_isa() { return active_tag().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa)
{
    const Table& t = table_for(isa);
    active_table().store(&t, std::memory_order_relaxed);
    active_tag().store(isa, std::memory_order_relaxed);
}

void squared_dists(std::span<const double> xs, std::span<const double> ys, double px, double py,
                   std::span<double> out)
{
    current().squared_dists(xs.data(), ys.data(), xs.size(), px, py, out.data());
}

std::size_t count_in_range(std::span<const double> xs, std::span<const double> ys, double px,
                           double py, double lo, double hi)
{
    return current().count_in_range(xs.data(), ys.data(), xs.size(), px, py, lo, hi);
}

std::size_t first_within(std::span<const double> xs, std::span<const double> ys, double px,
                         double py, double r2, std::size_t begin)
{
    if (begin >= xs.size())
        return xs.size();
    return current().first_within(xs.data(), ys.data(), xs.size(), px, py, r2, begin);
}

void collect_within(std::span<const double> xs, std::span<const double> ys, double px, double py,
                    double r2, std::vector<std::int32_t>& out)
{
    current().collect_within(xs.data(), ys.data(), xs.size(), px, py, r2, out);
}

} // namespace dfds::kernels
