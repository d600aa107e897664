#include <algorithm>

#include "doctest.h"
#include "spreadlab/closure.hpp"
#include "spreadlab/errors.hpp"
#include "spreadlab/fieldreduction.hpp"

using namespace spreadlab;
using closure::Point;
using closure::PointSet;
using linalg::Matrix;

namespace {

const PointSet kFrame{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}};

// Index of the first pair R1, R2 with <R1,R2> n <S1,S2> = S3.
std::pair<int, int> find_r_pair(const gf::Field& f, const spreads::Spread& s, int s1, int s2, int s3) {
  const auto pi0 = geom::span(f, s.elements[s1], s.elements[s2]);
  const int m = static_cast<int>(s.elements.size());
  for (int a = 0; a < m; ++a) {
    if (geom::contains(f, pi0, s.elements[a])) continue;
    for (int b = a + 1; b < m; ++b)
      if (!geom::contains(f, pi0, s.elements[b]) &&
          geom::meet(f, geom::span(f, s.elements[a], s.elements[b]), pi0) == s.elements[s3]) return {a, b};
  }
  return {-1, -1};
}

}  // namespace

TEST_SUITE("closure") {
  TEST_CASE("closure of a frame over a prime field is the whole plane") {
    for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
      const auto f = gf::Field::of_order(p);
      const closure::Plane plane(f);
      CHECK(closure::closure(plane, kFrame).size() == p * p + p + 1);
    }
  }

  TEST_CASE("closure of the standard frame in PG(2,9) is the F_3-subplane") {
    const auto f = gf::Field::of_order(9);
    const closure::Plane plane(f);
    const auto c = closure::closure(plane, kFrame);
    CHECK(c.size() == 13);
    for (const auto& x : c)
      for (auto v : x) CHECK(f.is_in_subfield(v, 3));
    CHECK(closure::closure(plane, c) == c);
    CHECK(closure::restricted_closure(plane, c, c) == c);
    const auto fixed = closure::restricted_closure(plane, kFrame, kFrame);
    CHECK(std::includes(c.begin(), c.end(), fixed.begin(), fixed.end()));
    CHECK(closure::restricted_closure(plane, kFrame, {{1, 0, 0}}).size() <= c.size());
  }

  TEST_CASE("closure errors") {
    const auto f = gf::Field::of_order(9);
    const closure::Plane plane(f);
    const PointSet line{{1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {1, 2, 0}};
    CHECK_THROWS_AS(closure::closure(plane, line), DomainError);
    CHECK_THROWS_AS(closure::restricted_closure(plane, kFrame, {{1, 2, 0}}), DomainError);
    const PointSet two{{1, 0, 0}, {0, 1, 0}};
    CHECK(closure::restricted_closure(plane, two, {{1, 0, 0}}) == two);
  }

  TEST_CASE("restricted closure trials") {
    for (std::uint32_t q : {9u, 25u}) {
      const auto f = gf::Field::of_order(q);
      const closure::Plane plane(f);
      const auto p = f.characteristic();
      for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto t = closure::lemma53_trial(plane, seed);
        CHECK(t.restricted_off_line == p * p);
        CHECK(t.equal);
        const auto& [p1, p2, q1, q2] = t.frame;
        CHECK(plane.incident(t.p3, plane.join(p1, p2)));
        CHECK(plane.incident(t.p3, plane.join(q1, q2)));
      }
      CHECK(closure::lemma53_trial(plane, 3).frame == closure::lemma53_trial(plane, 3).frame);
    }
  }

  TEST_CASE("V_p members off pi_0 on Desarguesian and T_3 spreads") {
    const auto t = gf::FieldTower::for_orders(3, 2);
    const auto& f = t.base();
    const Matrix i = Matrix::identity(2), z(2, 2);
    const auto field = sets::desarguesian_spread_set(t);
    const auto dickson = sets::dickson_nearfield(t).set;
    for (const auto& s : {fieldred::desarguesian_spread(t, 3), spreads::construct_T_3(f, field, dickson)}) {
      const int s1 = s.index_of(geom::block_subspace(f, std::vector{i, z, z}));
      const int s2 = s.index_of(geom::block_subspace(f, std::vector{z, i, z}));
      const int s3 = s.index_of(geom::block_subspace(f, std::vector{i, i, z}));
      const auto [r1, r2] = find_r_pair(f, s, s1, s2, s3);
      REQUIRE(r1 >= 0);
      const auto res = closure::verify_lemma_5_4(f, s, s1, s2, s3, r1, r2);
      CHECK(res.holds);
      CHECK(res.checked == 13 - 4);
      CHECK_THROWS_AS(closure::verify_lemma_5_4(f, s, s1, s2, s3, r1, r1), PreconditionError);
      CHECK_THROWS_AS(closure::verify_lemma_5_4(f, s, s1, s2, s3, s1, r2), PreconditionError);
    }
  }

  TEST_CASE("a missing V_p member is reported") {
    const auto t = gf::FieldTower::for_orders(3, 2);
    const auto& f = t.base();
    const Matrix i = Matrix::identity(2), z(2, 2);
    auto s = fieldred::desarguesian_spread(t, 3);
    const auto e1 = geom::block_subspace(f, std::vector{i, z, z});
    const auto e2 = geom::block_subspace(f, std::vector{z, i, z});
    const auto e3 = geom::block_subspace(f, std::vector{i, i, z});
    const auto [r1, r2] = find_r_pair(f, s, s.index_of(e1), s.index_of(e2), s.index_of(e3));
    const auto rr1 = s.elements[r1], rr2 = s.elements[r2];
    const auto v = fieldred::subplane_V(f, e1, e2, rr1, rr2, 3);
    const auto pi0 = geom::span(f, e1, e2);
    const auto victim = *std::find_if(v.begin(), v.end(), [&](const auto& x) {
      return !geom::contains(f, pi0, x) && x != rr1 && x != rr2;
    });
    auto& el = s.elements;
    el.erase(std::find(el.begin(), el.end(), victim));
    const auto res = closure::verify_lemma_5_4(f, s, s.index_of(e1), s.index_of(e2), s.index_of(e3), s.index_of(rr1),
                                               s.index_of(rr2));
    CHECK_FALSE(res.holds);
    REQUIRE(res.witness.has_value());
    CHECK(*res.witness == victim);
  }
}
