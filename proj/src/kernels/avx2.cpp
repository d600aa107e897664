// AVX2 variants. This translation unit alone is compiled with -mavx2; the
// dispatcher only hands these out after a runtime CPU check.

#include "spreadlab/kernels.hpp"

#if defined(SPREADLAB_BUILD_AVX2) && defined(__AVX2__)
#include <immintrin.h>

#include <bit>

namespace spreadlab::kernels {
namespace {

inline __m256i load(const std::uint64_t* p) { return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p)); }
inline void store(std::uint64_t* p, __m256i v) { _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v); }

void avx2_or_into(Words dst, ConstWords src) {
  std::size_t i = 0;
  const std::size_t n = dst.size();
  for (; i + 4 <= n; i += 4) store(dst.data() + i, _mm256_or_si256(load(dst.data() + i), load(src.data() + i)));
  for (; i < n; ++i) dst[i] |= src[i];
}

void avx2_and_into(Words dst, ConstWords src) {
  std::size_t i = 0;
  const std::size_t n = dst.size();
  for (; i + 4 <= n; i += 4) store(dst.data() + i, _mm256_and_si256(load(dst.data() + i), load(src.data() + i)));
  for (; i < n; ++i) dst[i] &= src[i];
}

bool avx2_intersects(ConstWords a, ConstWords b) {
  std::size_t i = 0;
  const std::size_t n = a.size();
  for (; i + 4 <= n; i += 4)
    if (!_mm256_testz_si256(load(a.data() + i), load(b.data() + i))) return true;
  for (; i < n; ++i)
    if (a[i] & b[i]) return true;
  return false;
}

bool avx2_is_subset(ConstWords a, ConstWords b) {
  std::size_t i = 0;
  const std::size_t n = a.size();
  // testc(b, a) == 1  <=>  (~b & a) == 0
  for (; i + 4 <= n; i += 4)
    if (!_mm256_testc_si256(load(b.data() + i), load(a.data() + i))) return false;
  for (; i < n; ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

// Nibble-LUT popcount, summed per 64-bit lane with SAD.
inline __m256i popcount_epi64(__m256i v) {
  const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4, 0, 1, 1, 2, 1, 2, 2, 3, 1,
                                       2, 2, 3, 2, 3, 3, 4);
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

std::size_t avx2_popcount(ConstWords a) {
  std::size_t i = 0;
  const std::size_t n = a.size();
  __m256i acc = _mm256_setzero_si256();
  for (; i + 4 <= n; i += 4) acc = _mm256_add_epi64(acc, popcount_epi64(load(a.data() + i)));
  std::size_t total = hsum_epi64(acc);
  for (; i < n; ++i) total += static_cast<std::size_t>(std::popcount(a[i]));
  return total;
}

std::size_t avx2_and_popcount(ConstWords a, ConstWords b) {
  std::size_t i = 0;
  const std::size_t n = a.size();
  __m256i acc = _mm256_setzero_si256();
  for (; i + 4 <= n; i += 4)
    acc = _mm256_add_epi64(acc, popcount_epi64(_mm256_and_si256(load(a.data() + i), load(b.data() + i))));
  std::size_t total = hsum_epi64(acc);
  for (; i < n; ++i) total += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
  return total;
}

// Fields with q <= 16 fit the multiply-by-c row in one pshufb table. Addition
// is XOR for p = 2 and a conditional subtract for prime q; other q fall back.
void avx2_row_axpy(const FieldTables& t, std::span<std::uint8_t> dst, std::span<const std::uint8_t> src,
              std::uint8_t c) {
  if (c == 0) return;
  const std::uint8_t* mrow = t.mul + static_cast<std::size_t>(c) * t.q;
  const bool vector_add = t.q <= 16 && (t.p == 2 || t.h == 1);
  std::size_t i = 0;
  const std::size_t n = dst.size();
  if (vector_add) {
    alignas(16) std::uint8_t lut_bytes[16] = {};
    for (std::uint32_t k = 0; k < t.q; ++k) lut_bytes[k] = mrow[k];
    const __m128i lut128 = _mm_load_si128(reinterpret_cast<const __m128i*>(lut_bytes));
    const __m256i lut = _mm256_broadcastsi128_si256(lut128);
    const __m256i pv = _mm256_set1_epi8(static_cast<char>(t.p));
    const __m128i pv128 = _mm_set1_epi8(static_cast<char>(t.p));
    for (; i + 32 <= n; i += 32) {
      const __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src.data() + i));
      const __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst.data() + i));
      const __m256i prod = _mm256_shuffle_epi8(lut, s);
      __m256i r;
      if (t.p == 2) {
        r = _mm256_xor_si256(d, prod);
      } else {
        const __m256i sum = _mm256_add_epi8(d, prod);
        r = _mm256_min_epu8(sum, _mm256_sub_epi8(sum, pv));
      }
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst.data() + i), r);
    }
    for (; i + 16 <= n; i += 16) {
      const __m128i s = _mm_loadu_si128(reinterpret_cast<const __m128i*>(src.data() + i));
      const __m128i d = _mm_loadu_si128(reinterpret_cast<const __m128i*>(dst.data() + i));
      const __m128i prod = _mm_shuffle_epi8(lut128, s);
      __m128i r;
      if (t.p == 2) {
        r = _mm_xor_si128(d, prod);
      } else {
        const __m128i sum = _mm_add_epi8(d, prod);
        r = _mm_min_epu8(sum, _mm_sub_epi8(sum, pv128));
      }
      _mm_storeu_si128(reinterpret_cast<__m128i*>(dst.data() + i), r);
    }
  }
  for (; i < n; ++i) dst[i] = t.add[static_cast<std::size_t>(dst[i]) * t.q + mrow[src[i]]];
}

}  // namespace

const Ops* avx2_ops_compiled() {
  static const Ops table{avx2_or_into, avx2_and_into, avx2_intersects, avx2_is_subset, avx2_popcount, avx2_and_popcount, avx2_row_axpy};
  return &table;
}

}  // namespace spreadlab::kernels

#else

namespace spreadlab::kernels {
const Ops* avx2_ops_compiled() { return nullptr; }
}  // namespace spreadlab::kernels

#endif
