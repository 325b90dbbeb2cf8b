// Compiled with -mavx2 (and without -mfma). Only reached after the runtime
// CPU check in kernels_dispatch.cpp.

#include "dfds/kernels.hpp"

#include <immintrin.h>

namespace dfds::kernels::detail {

namespace {

inline double sq1(const double* xs, const double* ys, std::size_t k, double px, double py)
{
    const double dx = xs[k] - px;
    const double dy = ys[k] - py;
    return dx * dx + dy * dy;
}

inline __m256d sq4(const double* xs, const double* ys, std::size_t k, __m256d px, __m256d py)
{
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs + k), px);
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys + k), py);
    return _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
}

void squared_dists_avx2(const double* xs, const double* ys, std::size_t n, double px, double py,
                        double* out)
{
    const __m256d vx = _mm256_set1_pd(px);
    const __m256d vy = _mm256_set1_pd(py);
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4)
        _mm256_storeu_pd(out + k, sq4(xs, ys, k, vx, vy));
    for (; k < n; ++k)
        out[k] = sq1(xs, ys, k, px, py);
}

std::size_t count_in_range_avx2(const double* xs, const double* ys, std::size_t n, double px,
                                double py, double lo, double hi)
{
    const __m256d vx = _mm256_set1_pd(px);
    const __m256d vy = _mm256_set1_pd(py);
    const __m256d vlo = _mm256_set1_pd(lo);
    const __m256d vhi = _mm256_set1_pd(hi);
    std::size_t count = 0;
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m256d d = sq4(xs, ys, k, vx, vy);
        const __m256d in = _mm256_and_pd(_mm256_cmp_pd(d, vlo, _CMP_GT_OQ),
                                         _mm256_cmp_pd(d, vhi, _CMP_LE_OQ));
        count += static_cast<std::size_t>(__builtin_popcount(
            static_cast<unsigned>(_mm256_movemask_pd(in))));
    }
    for (; k < n; ++k) {
        const double d = sq1(xs, ys, k, px, py);
        count += (d > lo && d <= hi) ? 1 : 0;
    }
    return count;
}

std::size_t first_within_avx2(const double* xs, const double* ys, std::size_t n, double px,
                              double py, double r2, std::size_t begin)
{
    std::size_t k = begin;
    // Short scans are common in the greedy climb; check a few lanes scalar first.
    for (std::size_t stop = begin + 4 < n ? begin + 4 : n; k < stop; ++k) {
        if (sq1(xs, ys, k, px, py) <= r2)
            return k;
    }
    const __m256d vx = _mm256_set1_pd(px);
    const __m256d vy = _mm256_set1_pd(py);
    const __m256d vr = _mm256_set1_pd(r2);
    for (; k + 4 <= n; k += 4) {
        const int mask =
            _mm256_movemask_pd(_mm256_cmp_pd(sq4(xs, ys, k, vx, vy), vr, _CMP_LE_OQ));
        if (mask != 0)
            return k + static_cast<std::size_t>(__builtin_ctz(static_cast<unsigned>(mask)));
    }
    for (; k < n; ++k) {
        if (sq1(xs, ys, k, px, py) <= r2)
            return k;
    }
    return n;
}

void collect_within_avx2(const double* xs, const double* ys, std::size_t n, double px, double py,
                         double r2, std::vector<std::int32_t>& out)
{
    const __m256d vx = _mm256_set1_pd(px);
    const __m256d vy = _mm256_set1_pd(py);
    const __m256d vr = _mm256_set1_pd(r2);
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        unsigned mask = static_cast<unsigned>(
            _mm256_movemask_pd(_mm256_cmp_pd(sq4(xs, ys, k, vx, vy), vr, _CMP_LE_OQ)));
        while (mask != 0) {
            out.push_back(static_cast<std::int32_t>(k + static_cast<std::size_t>(__builtin_ctz(mask))));
            mask &= mask - 1;
        }
    }
    for (; k < n; ++k) {
        if (sq1(xs, ys, k, px, py) <= r2)
            out.push_back(static_cast<std::int32_t>(k));
    }
}

} // namespace

const Table avx2_table{squared_dists_avx2, count_in_range_avx2, first_within_avx2,
                       collect_within_avx2};

} // namespace dfds::kernels::detail
