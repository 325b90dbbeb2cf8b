#include "dfds/kernels.hpp"

namespace dfds::kernels::detail {

namespace {

inline double sq(const double* xs, const double* ys, std::size_t k, double px, double py)
{
    const double dx = xs[k] - px;
    const double dy = ys[k] - py;
    return dx * dx + dy * dy;
}

void squared_dists_scalar(const double* xs, const double* ys, std::size_t n, double px, double py,
                          double* out)
{
    for (std::size_t k = 0; k < n; ++k)
        out[k] = sq(xs, ys, k, px, py);
}

std::size_t count_in_range_scalar(const double* xs, const double* ys, std::size_t n, double px,
                                  double py, double lo, double hi)
{
    std::size_t count = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const double d = sq(xs, ys, k, px, py);
        count += (d > lo && d <= hi) ? 1 : 0;
    }
    return count;
}

std::size_t first_within_scalar(const double* xs, const double* ys, std::size_t n, double px,
                                double py, double r2, std::size_t begin)
{
    for (std::size_t k = begin; k < n; ++k) {
        if (sq(xs, ys, k, px, py) <= r2)
            return k;
    }
    return n;
}

void collect_within_scalar(const double* xs, const double* ys, std::size_t n, double px, double py,
                           double r2, std::vector<std::int32_t>& out)
{
    for (std::size_t k = 0; k < n; ++k) {
        if (sq(xs, ys, k, px, py) <= r2)
            out.push_back(static_cast<std::int32_t>(k));
    }
}

} // namespace

const Table scalar_table{squared_dists_scalar, count_in_range_scalar, first_within_scalar,
                         collect_within_scalar};

} // namespace dfds::kernels::detail
