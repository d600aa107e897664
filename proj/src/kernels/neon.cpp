// NEON variants of the bitset kernels (aarch64 only). Field row operations
// stay on the scalar path here.

#include "spreadlab/kernels.hpp"

#if defined(__aarch64__) && defined(__ARM_NEON)
#include <arm_neon.h>

#include <bit>

namespace spreadlab::kernels {
namespace {

void neon_or_into(Words dst, ConstWords src) {
  std::size_t i = 0;
  for (; i + 2 <= dst.size(); i += 2)
    vst1q_u64(dst.data() + i, vorrq_u64(vld1q_u64(dst.data() + i), vld1q_u64(src.data() + i)));
  for (; i < dst.size(); ++i) dst[i] |= src[i];
}

void neon_and_into(Words dst, ConstWords src) {
  std::size_t i = 0;
  for (; i + 2 <= dst.size(); i += 2)
    vst1q_u64(dst.data() + i, vandq_u64(vld1q_u64(dst.data() + i), vld1q_u64(src.data() + i)));
  for (; i < dst.size(); ++i) dst[i] &= src[i];
}

bool neon_intersects(ConstWords a, ConstWords b) {
  std::size_t i = 0;
  for (; i + 2 <= a.size(); i += 2) {
    const uint64x2_t v = vandq_u64(vld1q_u64(a.data() + i), vld1q_u64(b.data() + i));
    if (vgetq_lane_u64(v, 0) | vgetq_lane_u64(v, 1)) return true;
  }
  for (; i < a.size(); ++i)
    if (a[i] & b[i]) return true;
  return false;
}

bool neon_is_subset(ConstWords a, ConstWords b) {
  std::size_t i = 0;
  for (; i + 2 <= a.size(); i += 2) {
    const uint64x2_t v = vbicq_u64(vld1q_u64(a.data() + i), vld1q_u64(b.data() + i));
    if (vgetq_lane_u64(v, 0) | vgetq_lane_u64(v, 1)) return false;
  }
  for (; i < a.size(); ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

std::size_t neon_popcount(ConstWords a) {
  std::size_t i = 0, total = 0;
  for (; i + 2 <= a.size(); i += 2)
    total += vaddvq_u8(vcntq_u8(vreinterpretq_u8_u64(vld1q_u64(a.data() + i))));
  for (; i < a.size(); ++i) total += static_cast<std::size_t>(std::popcount(a[i]));
  return total;
}

std::size_t neon_and_popcount(ConstWords a, ConstWords b) {
  std::size_t i = 0, total = 0;
  for (; i + 2 <= a.size(); i += 2) {
    const uint64x2_t v = vandq_u64(vld1q_u64(a.data() + i), vld1q_u64(b.data() + i));
    total += vaddvq_u8(vcntq_u8(vreinterpretq_u8_u64(v)));
  }
  for (; i < a.size(); ++i) total += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
  return total;
}

}  // namespace

const Ops* neon_ops_compiled() {
  static const Ops table{neon_or_into, neon_and_into, neon_intersects, neon_is_subset, neon_popcount, neon_and_popcount, scalar_ops().row_axpy};
  return &table;
}

}  // namespace spreadlab::kernels

#else

namespace spreadlab::kernels {
const Ops* neon_ops_compiled() { return nullptr; }
}  // namespace spreadlab::kernels

#endif
