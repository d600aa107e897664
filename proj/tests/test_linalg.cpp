#include <algorithm>
#include <random>

#include "doctest.h"
#include "spreadlab/linalg.hpp"

using namespace spreadlab;
using linalg::Matrix;

namespace {

Matrix random_matrix(const gf::Field& f, std::mt19937_64& rng, int r, int c) {
  Matrix m(r, c);
  for (auto& x : m.data()) x = static_cast<linalg::Entry>(rng() % f.order());
  return m;
}

Matrix random_invertible(const gf::Field& f, std::mt19937_64& rng, int n) {
  while (true) {
    auto m = random_matrix(f, rng, n, n);
    if (linalg::is_invertible(f, m)) return m;
  }
}

}  // namespace

TEST_SUITE("linalg") {
  TEST_CASE("worked examples over F_3") {
    const auto f = gf::Field::of_order(3);
    const Matrix a{{1, 2}, {2, 1}};
    CHECK(linalg::rank(f, a) == 1);
    CHECK(linalg::det(f, a) == 0);
    CHECK_THROWS_AS(linalg::inverse(f, a), linalg::SingularMatrix);
    try {
      linalg::inverse(f, a);
    } catch (const linalg::SingularMatrix& e) {
      CHECK(std::count(e.witness.begin(), e.witness.end(), 0) < 2);
      auto z = linalg::vec_mul(f, e.witness, a);
      CHECK(std::all_of(z.begin(), z.end(), [](auto x) { return x == 0; }));
    }
    const auto i3 = Matrix::identity(3);
    auto e = linalg::rref(f, i3);
    CHECK(e.reduced == i3);
    CHECK(e.rank == 3);
    CHECK(linalg::rank(f, Matrix(3, 3)) == 0);
    CHECK(linalg::inverse(f, i3) == i3);
    CHECK(linalg::kernel(f, Matrix(4, 4)).rows() == 4);
  }

  TEST_CASE("rref is canonical under row operations") {
    std::mt19937_64 rng(5);
    for (std::uint32_t q : {2u, 3u, 4u, 9u}) {
      const auto f = gf::Field::of_order(q);
      for (int it = 0; it < 30; ++it) {
        auto m = random_matrix(f, rng, 3, 5);
        auto p = random_invertible(f, rng, 3);
        auto e1 = linalg::rref(f, m);
        auto e2 = linalg::rref(f, linalg::mul(f, p, m));
        CHECK(e1.reduced == e2.reduced);
        CHECK(linalg::rref(f, e1.reduced).reduced == e1.reduced);
      }
    }
  }

  TEST_CASE("inverse and kernel contracts") {
    std::mt19937_64 rng(9);
    for (std::uint32_t q : {2u, 3u, 5u, 8u, 9u}) {
      const auto f = gf::Field::of_order(q);
      for (int it = 0; it < 20; ++it) {
        auto a = random_invertible(f, rng, 4);
        auto b = random_invertible(f, rng, 4);
        CHECK(linalg::mul(f, linalg::inverse(f, a), a) == Matrix::identity(4));
        CHECK(linalg::inverse(f, linalg::mul(f, a, b)) ==
              linalg::mul(f, linalg::inverse(f, b), linalg::inverse(f, a)));
        CHECK(linalg::det(f, linalg::mul(f, a, b)) == f.mul(linalg::det(f, a), linalg::det(f, b)));
        auto m = random_matrix(f, rng, 5, 3);
        auto k = linalg::kernel(f, m);
        CHECK(k.rows() == 5 - linalg::rank(f, m));
        CHECK(linalg::mul(f, k, m).is_zero());
      }
    }
  }

  TEST_CASE("stacking and blocks") {
    const auto f = gf::Field::of_order(2);
    const Matrix a{{1, 0}, {0, 1}}, b{{1, 1}, {0, 1}};
    const Matrix parts[] = {a, b};
    auto h = linalg::hstack(parts);
    CHECK(h.cols() == 4);
    CHECK(linalg::block(h, 0, 2, 2, 2) == b);
    auto v = linalg::vstack(parts);
    CHECK(v.rows() == 4);
    CHECK(linalg::block(v, 2, 0, 2, 2) == b);
    CHECK(linalg::transpose(b) == Matrix{{1, 0}, {1, 1}});
    CHECK(linalg::sub(f, b, a) == Matrix{{0, 1}, {0, 0}});
  }
}
