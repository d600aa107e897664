#include <random>
#include <set>

#include "doctest.h"
#include "spreadlab/errors.hpp"
#include "spreadlab/fieldreduction.hpp"

using namespace spreadlab;
using geom::Subspace;
using linalg::Matrix;

TEST_SUITE("fieldreduction") {
  TEST_CASE("field reduction of points") {
    const auto t = gf::FieldTower::for_orders(3, 2);
    const auto& f = t.base();
    const Matrix i = Matrix::identity(2), z(2, 2);
    const gf::Elem p100[] = {1, 0, 0}, p111[] = {1, 1, 1};
    CHECK(fieldred::field_reduce_point(t, p100) == geom::block_subspace(f, std::vector{i, z, z}));
    CHECK(fieldred::field_reduce_point(t, p111) == geom::block_subspace(f, std::vector{i, i, i}));
    std::mt19937 rng(2);
    for (int it = 0; it < 30; ++it) {
      std::vector<gf::Elem> p(3), lp(3);
      do {
        for (auto& x : p) x = rng() % 9;
      } while (p == std::vector<gf::Elem>{0, 0, 0});
      const gf::Elem lambda = 1 + rng() % 8;
      for (int k = 0; k < 3; ++k) lp[k] = t.extension().mul(lambda, p[k]);
      CHECK(fieldred::field_reduce_point(t, p) == fieldred::field_reduce_point(t, lp));
    }
  }

  TEST_CASE("Desarguesian spread counts") {
    const auto t33 = gf::FieldTower::for_orders(3, 2);
    const auto s = fieldred::desarguesian_spread(t33, 3);
    CHECK(s.elements.size() == 91);
    CHECK(spreads::validate_spread(t33.base(), s).ok);
    const auto t22 = gf::FieldTower::for_orders(2, 2);
    const auto s2 = fieldred::desarguesian_spread(t22, 3);
    CHECK(s2.elements.size() == 21);
    CHECK(spreads::validate_spread(t22.base(), s2).ok);
    CHECK(spreads::normal_elements(t22.base(), s2).size() == 21);
  }

  TEST_CASE("reguli") {
    const auto t = gf::FieldTower::for_orders(9, 2);
    const auto& f = t.base();
    const auto s = fieldred::desarguesian_spread(t, 2);
    const auto& e = s.elements;
    REQUIRE(e.size() == 82);
    const auto rq = fieldred::regulus(f, e[0], e[5], e[17], 9);
    CHECK(rq.size() == 10);
    for (const auto& x : rq) CHECK(s.contains(x));
    const auto r3 = fieldred::regulus(f, e[0], e[5], e[17], 3);
    CHECK(r3.size() == 4);
    for (const auto& x : r3) CHECK(std::find(rq.begin(), rq.end(), x) != rq.end());
    for (const auto& x : {e[0], e[5], e[17]}) CHECK(std::find(r3.begin(), r3.end(), x) != r3.end());
    CHECK_THROWS_AS(fieldred::regulus(f, e[0], e[0], e[17], 3), DomainError);
    CHECK_THROWS_AS(fieldred::regulus(f, e[0], e[5], e[17], 27), DomainError);
  }

  TEST_CASE("regulus over F_3 in PG(3,3)") {
    const auto f = gf::Field::of_order(3);
    const Matrix i = Matrix::identity(2), z(2, 2), m{{0, 1}, {2, 0}};
    const auto a = geom::block_subspace(f, std::vector{i, z});
    const auto b = geom::block_subspace(f, std::vector{z, i});
    const auto c = geom::block_subspace(f, std::vector{i, m});
    const auto r = fieldred::regulus(f, a, b, c, 3);
    CHECK(r.size() == 4);
    for (const auto& x : r)
      for (const auto& y : r)
        if (x != y) CHECK(geom::meet(f, x, y).empty());
  }

  TEST_CASE("subplanes V_q0") {
    const auto f = gf::Field::of_order(3);
    const Matrix i = Matrix::identity(2), z(2, 2);
    std::vector<Subspace> frame{geom::block_subspace(f, std::vector{i, z, z}),
                                geom::block_subspace(f, std::vector{z, i, z}),
                                geom::block_subspace(f, std::vector{z, z, i}),
                                geom::block_subspace(f, std::vector{i, i, i})};
    const auto v = fieldred::subplane_V(f, frame[0], frame[1], frame[2], frame[3], 3);
    CHECK(v.size() == 13);
    for (const auto& x : frame) CHECK(std::find(v.begin(), v.end(), x) != v.end());
    // coplanar triples have their regulus inside V
    int triples = 0;
    for (std::size_t a = 0; a < v.size(); ++a)
      for (std::size_t b = a + 1; b < v.size(); ++b) {
        const auto sp = geom::span(f, v[a], v[b]);
        for (std::size_t c = b + 1; c < v.size(); ++c) {
          if (!geom::contains(f, sp, v[c])) continue;
          ++triples;
          for (const auto& x : fieldred::regulus(f, v[a], v[b], v[c], 3))
            CHECK(std::find(v.begin(), v.end(), x) != v.end());
        }
      }
    CHECK(triples == 13 * 4);
    const auto t = gf::FieldTower::for_orders(3, 2);
    const auto d = fieldred::desarguesian_spread(t, 3);
    for (const auto& x : v) CHECK(d.contains(x));
  }
}
