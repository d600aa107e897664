#include <bit>

#include "spreadlab/kernels.hpp"

namespace spreadlab::kernels {
namespace {

void ref_or_into(Words dst, ConstWords src) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] |= src[i];
}

void ref_and_into(Words dst, ConstWords src) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] &= src[i];
}

bool ref_intersects(ConstWords a, ConstWords b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] & b[i]) return true;
  return false;
}

bool ref_is_subset(ConstWords a, ConstWords b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

std::size_t ref_popcount(ConstWords a) {
  std::size_t n = 0;
  for (auto w : a) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::size_t ref_and_popcount(ConstWords a, ConstWords b) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) n += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
  return n;
}

void ref_row_axpy(const FieldTables& t, std::span<std::uint8_t> dst, std::span<const std::uint8_t> src,
              std::uint8_t c) {
  if (c == 0) return;
  const std::uint8_t* mrow = t.mul + static_cast<std::size_t>(c) * t.q;
  for (std::size_t i = 0; i < dst.size(); ++i) {
    dst[i] = t.add[static_cast<std::size_t>(dst[i]) * t.q + mrow[src[i]]];
  }
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops table{ref_or_into, ref_and_into, ref_intersects, ref_is_subset,
                         ref_popcount, ref_and_popcount, ref_row_axpy};
  return table;
}

}  // namespace spreadlab::kernels
