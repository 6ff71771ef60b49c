#include "k3lat/kernels.hpp"
#include "kernels_detail.hpp"

#if defined(__aarch64__)
#include <arm_neon.h>
#endif

namespace k3lat::kernels {

#if defined(__aarch64__)

void evaluate_neon(const BatchArgs& a) {
  const std::size_t n = a.dim;
  const std::size_t full = a.count - a.count % 4;
  int32x4_t x[kMaxDim];
  for (std::size_t p = 0; p < full; p += 4) {
    for (std::size_t i = 0; i < n; ++i) x[i] = vld1q_s32(a.points + i * a.count + p);
    int64x2_t q_lo = vdupq_n_s64(0);
    int64x2_t q_hi = vdupq_n_s64(0);
    for (std::size_t i = 0; i < n; ++i) {
      int32x4_t y = vdupq_n_s32(0);
      for (std::size_t j = 0; j < n; ++j) y = vmlaq_n_s32(y, x[j], a.gram[i * n + j]);
      q_lo = vmlal_s32(q_lo, vget_low_s32(x[i]), vget_low_s32(y));
      q_hi = vmlal_s32(q_hi, vget_high_s32(x[i]), vget_high_s32(y));
    }
    vst1q_s64(a.squares + p, q_lo);
    vst1q_s64(a.squares + p + 2, q_hi);
    for (std::size_t l = 0; l < a.n_linear; ++l) {
      int64x2_t s_lo = vdupq_n_s64(0);
      int64x2_t s_hi = vdupq_n_s64(0);
      for (std::size_t i = 0; i < n; ++i) {
        const int32x2_t c = vdup_n_s32(a.linear[l * n + i]);
        s_lo = vmlal_s32(s_lo, vget_low_s32(x[i]), c);
        s_hi = vmlal_s32(s_hi, vget_high_s32(x[i]), c);
      }
      vst1q_s64(a.pairings + l * a.count + p, s_lo);
      vst1q_s64(a.pairings + l * a.count + p + 2, s_hi);
    }
  }
  detail::evaluate_range(a, full, a.count);
}

#else

void evaluate_neon(const BatchArgs& a) { detail::evaluate_range(a, 0, a.count); }

#endif

}  // namespace k3lat::kernels
