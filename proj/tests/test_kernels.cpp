#include <random>
#include <vector>

#include "doctest.h"
#include "spreadlab/gf/field.hpp"
#include "spreadlab/kernels.hpp"

using namespace spreadlab;
using kernels::Ops;

namespace {

std::vector<std::uint64_t> random_words(std::mt19937_64& rng, std::size_t n, int density) {
  std::vector<std::uint64_t> w(n);
  for (auto& x : w) {
    x = rng();
    for (int i = 0; i < density; ++i) x &= rng();
  }
  return w;
}

std::vector<const Ops*> vector_variants() {
  std::vector<const Ops*> out;
  if (auto* o = kernels::avx2_ops()) out.push_back(o);
  if (auto* o = kernels::neon_ops()) out.push_back(o);
  return out;
}

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("bitset kernels agree with the scalar reference") {
    const Ops& ref = kernels::scalar_ops();
    std::mt19937_64 rng(7);
    for (const Ops* v : vector_variants()) {
      for (std::size_t n : {0, 1, 3, 4, 5, 7, 8, 9, 16, 33, 100}) {
        for (int density = 0; density < 3; ++density) {
          auto a = random_words(rng, n, density);
          auto b = random_words(rng, n, density);
          CHECK(v->popcount(a) == ref.popcount(a));
          CHECK(v->and_popcount(a, b) == ref.and_popcount(a, b));
          CHECK(v->intersects(a, b) == ref.intersects(a, b));
          CHECK(v->is_subset(a, b) == ref.is_subset(a, b));
          auto sub = a;
          ref.and_into(sub, b);
          CHECK(v->is_subset(sub, b));
          CHECK(v->is_subset(sub, b) == ref.is_subset(sub, b));
          auto x1 = a, x2 = a;
          ref.or_into(x1, b);
          v->or_into(x2, b);
          CHECK(x1 == x2);
          x1 = a;
          x2 = a;
          ref.and_into(x1, b);
          v->and_into(x2, b);
          CHECK(x1 == x2);
        }
      }
    }
  }

  TEST_CASE("row_axpy agrees with the scalar reference") {
    const Ops& ref = kernels::scalar_ops();
    std::mt19937_64 rng(11);
    for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 16u, 25u, 27u, 64u}) {
      const auto f = gf::Field::of_order(q);
      const auto t = f.tables();
      for (const Ops* v : vector_variants()) {
        for (std::size_t n : {1, 15, 16, 17, 31, 32, 33, 70}) {
          std::vector<std::uint8_t> src(n), dst(n);
          for (auto& x : src) x = static_cast<std::uint8_t>(rng() % q);
          for (auto& x : dst) x = static_cast<std::uint8_t>(rng() % q);
          for (std::uint32_t c = 0; c < q; ++c) {
            auto d1 = dst, d2 = dst;
            ref.row_axpy(t, d1, src, static_cast<std::uint8_t>(c));
            v->row_axpy(t, d2, src, static_cast<std::uint8_t>(c));
            CHECK(d1 == d2);
          }
        }
      }
    }
  }

  TEST_CASE("dispatch can be pinned to scalar and restored") {
    const auto before = kernels::active_isa();
    CHECK(kernels::set_active_isa(kernels::Isa::scalar));
    CHECK(kernels::active_isa() == kernels::Isa::scalar);
    CHECK(kernels::set_active_isa(before));
    CHECK(kernels::isa_available(kernels::Isa::scalar));
  }
}
