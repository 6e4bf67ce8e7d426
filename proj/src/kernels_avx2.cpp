// Compiled with -mavx2 -mpopcnt; only reached after a CPUID check.

#include <immintrin.h>

#include <bit>
#include <limits>

#include "bbmis/kernels.hpp"

namespace bbmis::kernels::avx2 {

namespace {

// Per-byte popcount by nibble lookup, horizontally summed into 4 x u64.
inline __m256i popcount_epi64(__m256i v) {
  const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                       0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low = _mm256_set1_epi8(0x0f);
  const __m256i lo = _mm256_and_si256(v, low);
  const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low);
  const __m256i cnt = _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo), _mm256_shuffle_epi8(lut, hi));
  return _mm256_sad_epu8(cnt, _mm256_setzero_si256());
}

inline std::size_t hsum_epi64(__m256i v) {
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), v);
  return static_cast<std::size_t>(lanes[0] + lanes[1] + lanes[2] + lanes[3]);
}

inline __m256i load(const std::uint64_t* p) {
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}

}  // namespace

bool intersects(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
  std::size_t i = 0;
  for (; i + 4 <= words; i += 4)
    if (!_mm256_testz_si256(load(a + i), load(b + i))) return true;
  for (; i < words; ++i)
    if (a[i] & b[i]) return true;
  return false;
}

std::size_t and_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= words; i += 4)
    acc = _mm256_add_epi64(acc, popcount_epi64(_mm256_and_si256(load(a + i), load(b + i))));
  std::size_t total = hsum_epi64(acc);
  for (; i < words; ++i) total += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
  return total;
}

std::size_t popcount(const std::uint64_t* a, std::size_t words) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= words; i += 4) acc = _mm256_add_epi64(acc, popcount_epi64(load(a + i)));
  std::size_t total = hsum_epi64(acc);
  for (; i < words; ++i) total += static_cast<std::size_t>(std::popcount(a[i]));
  return total;
}

void or_into(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
  std::size_t i = 0;
  for (; i + 4 <= words; i += 4) {
    auto* d = reinterpret_cast<__m256i*>(dst + i);
    _mm256_storeu_si256(d, _mm256_or_si256(_mm256_loadu_si256(d), load(src + i)));
  }
  for (; i < words; ++i) dst[i] |= src[i];
}

void andnot_into(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
  std::size_t i = 0;
  for (; i + 4 <= words; i += 4) {
    auto* d = reinterpret_cast<__m256i*>(dst + i);
    // andnot(x, y) = ~x & y
    _mm256_storeu_si256(d, _mm256_andnot_si256(load(src + i), _mm256_loadu_si256(d)));
  }
  for (; i < words; ++i) dst[i] &= ~src[i];
}

MaxMin max_of_min(const double* a, const double* b, std::size_t count) {
  const double neg_inf = -std::numeric_limits<double>::infinity();
  __m256d best = _mm256_set1_pd(neg_inf);
  __m256d best_idx = _mm256_setzero_pd();
  __m256d idx = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);
  const __m256d step = _mm256_set1_pd(4.0);
  const __m256d ninf = _mm256_set1_pd(neg_inf);

  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const __m256d va = _mm256_loadu_pd(a + i);
    const __m256d vb = _mm256_loadu_pd(b + i);
    const __m256d ordered = _mm256_cmp_pd(va, vb, _CMP_ORD_Q);
    const __m256d v = _mm256_blendv_pd(ninf, _mm256_min_pd(va, vb), ordered);
    const __m256d gt = _mm256_cmp_pd(v, best, _CMP_GT_OQ);
    best = _mm256_blendv_pd(best, v, gt);
    best_idx = _mm256_blendv_pd(best_idx, idx, gt);
    idx = _mm256_add_pd(idx, step);
  }

  alignas(32) double lane_val[4];
  alignas(32) double lane_idx[4];
  _mm256_store_pd(lane_val, best);
  _mm256_store_pd(lane_idx, best_idx);

  MaxMin out{neg_inf, 0};
  bool have = false;
  for (int l = 0; l < 4; ++l) {
    const auto li = static_cast<std::size_t>(lane_idx[l]);
    if (!have || lane_val[l] > out.value || (lane_val[l] == out.value && li < out.index)) {
      out = {lane_val[l], li};
      have = true;
    }
  }
  if (out.value == neg_inf) out.index = 0;

  for (; i < count; ++i) {
    if (a[i] != a[i] || b[i] != b[i]) continue;
    const double v = a[i] < b[i] ? a[i] : b[i];
    if (v > out.value) out = {v, i};
  }
  return out;
}

}  // namespace bbmis::kernels::avx2
