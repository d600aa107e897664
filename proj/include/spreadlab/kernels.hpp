#pragma once
// Data-parallel inner loops: word bitsets over point/element indices and
// row operations over small finite fields. Every routine has a scalar
// reference version; vector versions are picked once at startup.

#include <cstddef>
#include <cstdint>
#include <span>

namespace spreadlab::kernels {

enum class Isa { scalar, avx2, neon };

const char* isa_name(Isa isa);

/// Best instruction set compiled in and supported by this CPU.
Isa detected_isa();
/// Instruction set currently used by the dispatching entry points.
Isa active_isa();
/// Pin the dispatch target; returns false if `isa` is unavailable here.
bool set_active_isa(Isa isa);
bool isa_available(Isa isa);

/// Flat arithmetic tables for a field of order q <= 256, elements coded 0..q-1.
/// Codes are little-endian base-p digit strings, so for p = 2 addition is XOR
/// and for q = p addition is integer addition mod p.
struct FieldTables {
  std::uint32_t p = 0;
  std::uint32_t q = 0;
  unsigned h = 0;
  const std::uint8_t* add = nullptr;  // q*q
  const std::uint8_t* mul = nullptr;  // q*q
};

using Words = std::span<std::uint64_t>;
using ConstWords = std::span<const std::uint64_t>;

struct Ops {
  void (*or_into)(Words dst, ConstWords src);
  void (*and_into)(Words dst, ConstWords src);
  bool (*intersects)(ConstWords a, ConstWords b);
  bool (*is_subset)(ConstWords a, ConstWords b);
  std::size_t (*popcount)(ConstWords a);
  std::size_t (*and_popcount)(ConstWords a, ConstWords b);
  // dst[i] += c * src[i] over the field described by t
  void (*row_axpy)(const FieldTables& t, std::span<std::uint8_t> dst, std::span<const std::uint8_t> src,
                   std::uint8_t c);
};

const Ops& scalar_ops();
/// nullptr when the variant is not compiled in or not supported at runtime.
const Ops* avx2_ops();
const Ops* neon_ops();

const Ops& ops();

inline void or_into(Words dst, ConstWords src) { ops().or_into(dst, src); }
inline void and_into(Words dst, ConstWords src) { ops().and_into(dst, src); }
inline bool intersects(ConstWords a, ConstWords b) { return ops().intersects(a, b); }
/// true iff every bit of a is set in b
inline bool is_subset(ConstWords a, ConstWords b) { return ops().is_subset(a, b); }
inline std::size_t popcount(ConstWords a) { return ops().popcount(a); }
inline std::size_t and_popcount(ConstWords a, ConstWords b) { return ops().and_popcount(a, b); }
inline void row_axpy(const FieldTables& t, std::span<std::uint8_t> dst, std::span<const std::uint8_t> src,
                     std::uint8_t c) {
  ops().row_axpy(t, dst, src, c);
}

}  // namespace spreadlab::kernels
