// AArch64 variant. Built only on aarch64 targets; NEON is part of the base ISA
// there, so no runtime check is needed.

#include "dfds/kernels.hpp"

#include <arm_neon.h>

namespace dfds::kernels::detail {

namespace {

inline double sq1(const double* xs, const double* ys, std::size_t k, double px, double py)
{
    const double dx = xs[k] - px;
    const double dy = ys[k] - py;
    return dx * dx + dy * dy;
}

inline float64x2_t sq2(const double* xs, const double* ys, std::size_t k, float64x2_t px,
                       float64x2_t py)
{
    const float64x2_t dx = vsubq_f64(vld1q_f64(xs + k), px);
    const float64x2_t dy = vsubq_f64(vld1q_f64(ys + k), py);
    // Separate multiply and add: vfmaq would round differently from scalar.
    return vaddq_f64(vmulq_f64(dx, dx), vmulq_f64(dy, dy));
}

void squared_dists_neon(const double* xs, const double* ys, std::size_t n, double px, double py,
                        double* out)
{
    const float64x2_t vx = vdupq_n_f64(px);
    const float64x2_t vy = vdupq_n_f64(py);
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2)
        vst1q_f64(out + k, sq2(xs, ys, k, vx, vy));
    for (; k < n; ++k)
        out[k] = sq1(xs, ys, k, px, py);
}

std::size_t count_in_range_neon(const double* xs, const double* ys, std::size_t n, double px,
                                double py, double lo, double hi)
{
    const float64x2_t vx = vdupq_n_f64(px);
    const float64x2_t vy = vdupq_n_f64(py);
    const float64x2_t vlo = vdupq_n_f64(lo);
    const float64x2_t vhi = vdupq_n_f64(hi);
    std::size_t count = 0;
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) {
        const float64x2_t d = sq2(xs, ys, k, vx, vy);
        const uint64x2_t in = vandq_u64(vcgtq_f64(d, vlo), vcleq_f64(d, vhi));
        count += static_cast<std::size_t>((vgetq_lane_u64(in, 0) & 1u) + (vgetq_lane_u64(in, 1) & 1u));
    }
    for (; k < n; ++k) {
        const double d = sq1(xs, ys, k, px, py);
        count += (d > lo && d <= hi) ? 1 : 0;
    }
    return count;
}

std::size_t first_within_neon(const double* xs, const double* ys, std::size_t n, double px,
                              double py, double r2, std::size_t begin)
{
    const float64x2_t vx = vdupq_n_f64(px);
    const float64x2_t vy = vdupq_n_f64(py);
    const float64x2_t vr = vdupq_n_f64(r2);
    std::size_t k = begin;
    for (; k + 2 <= n; k += 2) {
        const uint64x2_t le = vcleq_f64(sq2(xs, ys, k, vx, vy), vr);
        if (vgetq_lane_u64(le, 0) != 0)
            return k;
        if (vgetq_lane_u64(le, 1) != 0)
            return k + 1;
    }
    for (; k < n; ++k) {
        if (sq1(xs, ys, k, px, py) <= r2)
            return k;
    }
    return n;
}

void collect_within_neon(const double* xs, const double* ys, std::size_t n, double px, double py,
                         double r2, std::vector<std::int32_t>& out)
{
    const float64x2_t vx = vdupq_n_f64(px);
    const float64x2_t vy = vdupq_n_f64(py);
    const float64x2_t vr = vdupq_n_f64(r2);
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) {
        const uint64x2_t le = vcleq_f64(sq2(xs, ys, k, vx, vy), vr);
        if (vgetq_lane_u64(le, 0) != 0)
            out.push_back(static_cast<std::int32_t>(k));
        if (vgetq_lane_u64(le, 1) != 0)
            out.push_back(static_cast<std::int32_t>(k + 1));
    }
    for (; k < n; ++k) {
        if (sq1(xs, ys, k, px, py) <= r2)
            out.push_back(static_cast<std::int32_t>(k));
    }
}

} // namespace

const Table neon_table{squared_dists_neon, count_in_range_neon, first_within_neon,
                       collect_within_neon};

} // namespace dfds::kernels::detail
