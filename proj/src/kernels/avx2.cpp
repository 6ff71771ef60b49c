#include <immintrin.h>

#include "k3lat/kernels.hpp"
#include "kernels_detail.hpp"

namespace k3lat::kernels {

namespace {

// 8 int32 lanes -> sum into two int64x4 accumulators of a*b.
inline void widen_mul_add(__m256i a, __m256i b, __m256i& lo, __m256i& hi) {
  const __m256i a_lo = _mm256_cvtepi32_epi64(_mm256_castsi256_si128(a));
  const __m256i a_hi = _mm256_cvtepi32_epi64(_mm256_extracti128_si256(a, 1));
  const __m256i b_lo = _mm256_cvtepi32_epi64(_mm256_castsi256_si128(b));
  const __m256i b_hi = _mm256_cvtepi32_epi64(_mm256_extracti128_si256(b, 1));
  lo = _mm256_add_epi64(lo, _mm256_mul_epi32(a_lo, b_lo));
  hi = _mm256_add_epi64(hi, _mm256_mul_epi32(a_hi, b_hi));
}

inline void store_pair(std::int64_t* out, __m256i lo, __m256i hi) {
  _mm256_storeu_si256(reinterpret_cast<__m256i*>(out), lo);
  _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + 4), hi);
}

}  // namespace

void evaluate_avx2(const BatchArgs& a) {
  const std::size_t n = a.dim;
  const std::size_t full = a.count - a.count % 8;
  __m256i x[kMaxDim];
  for (std::size_t p = 0; p < full; p += 8) {
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a.points + i * a.count + p));
    }
    __m256i q_lo = _mm256_setzero_si256();
    __m256i q_hi = _mm256_setzero_si256();
    for (std::size_t i = 0; i < n; ++i) {
      __m256i y = _mm256_setzero_si256();
      for (std::size_t j = 0; j < n; ++j) {
        y = _mm256_add_epi32(y, _mm256_mullo_epi32(_mm256_set1_epi32(a.gram[i * n + j]), x[j]));
      }
      widen_mul_add(x[i], y, q_lo, q_hi);
    }
    store_pair(a.squares + p, q_lo, q_hi);
    for (std::size_t l = 0; l < a.n_linear; ++l) {
      __m256i s_lo = _mm256_setzero_si256();
      __m256i s_hi = _mm256_setzero_si256();
      for (std::size_t i = 0; i < n; ++i) widen_mul_add(_mm256_set1_epi32(a.linear[l * n + i]), x[i], s_lo, s_hi);
      store_pair(a.pairings + l * a.count + p, s_lo, s_hi);
    }
  }
  detail::evaluate_range(a, full, a.count);
}

}  // namespace k3lat::kernels
