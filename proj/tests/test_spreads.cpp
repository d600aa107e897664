#include <algorithm>
#include <optional>

#include "doctest.h"
#include "spreadlab/errors.hpp"
#include "spreadlab/fieldreduction.hpp"
#include "spreadlab/spreads.hpp"

using namespace spreadlab;
using geom::Subspace;
using linalg::Matrix;

namespace {

Subspace blocks(const gf::Field& f, std::vector<Matrix> b) { return geom::block_subspace(f, b); }

}  // namespace

TEST_SUITE("spreads") {
  TEST_CASE("validation witnesses") {
    const auto t = gf::FieldTower::for_orders(3, 2);
    const auto& f = t.base();
    auto s = fieldred::desarguesian_spread(t, 3);
    CHECK(spreads::validate_spread(f, s).ok);
    auto dropped = s;
    dropped.elements.pop_back();
    const auto c1 = spreads::validate_spread(f, dropped);
    CHECK_FALSE(c1.ok);
    CHECK(c1.uncovered_point.has_value());
    auto meeting = s;
    meeting.elements[0] = geom::make_subspace(f, Matrix{{1, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 1, 0}});
    if (s.contains(meeting.elements[0])) meeting.elements[0] = geom::make_subspace(f, Matrix{{1, 0, 0, 0, 0, 0}, {0, 0, 0, 1, 1, 0}});
    const auto c2 = spreads::validate_spread(f, meeting);
    CHECK_FALSE(c2.ok);
    CHECK(c2.meeting_pair.has_value());
  }

  TEST_CASE("S_r from the field set is Desarguesian") {
    const auto t = gf::FieldTower::for_orders(3, 2);
    const auto& f = t.base();
    const auto m = sets::desarguesian_spread_set(t);
    const auto s3 = spreads::construct_S_r(f, m, 3);
    const auto d = fieldred::desarguesian_spread(t, 3);
    CHECK(s3.elements == d.elements);
    CHECK(spreads::is_desarguesian(f, d) == spreads::Verdict::yes);
    const auto all = spreads::normal_elements(f, d);
    CHECK(all.size() == 91);
    CHECK(spreads::max_normal_general_position(f, d, all).k == 4);
    const auto s2 = spreads::construct_S_r(f, m, 2);
    CHECK(s2.elements == fieldred::desarguesian_spread(t, 2).elements);
    CHECK(spreads::is_desarguesian(f, s2) == spreads::Verdict::yes);
  }

  TEST_CASE("S_3 of the Dickson set") {
    const auto t = gf::FieldTower::for_orders(3, 2);
    const auto& f = t.base();
    const auto d = sets::dickson_nearfield(t);
    const auto s = spreads::construct_S_r(f, d.set, 3);
    CHECK(s.elements.size() == 91);
    CHECK(spreads::validate_spread(f, s).ok);
    const auto normals = spreads::normal_elements(f, s, 4);
    CHECK(normals == spreads::normal_elements(f, s, 1));
    for (int i = 0; i < 3; ++i) {
      const auto e = geom::standard_element(f, 2, 3, i);
      const int idx = s.index_of(e);
      REQUIRE(idx >= 0);
      CHECK(std::binary_search(normals.begin(), normals.end(), idx));
      CHECK(spreads::is_normal_element(f, s, e));
    }
    CHECK(normals.size() < 91);
    CHECK(spreads::is_desarguesian(f, s) == spreads::Verdict::no);
    const auto gp = spreads::max_normal_general_position(f, s, normals);
    CHECK(gp.k == 3);
    CHECK(gp.witness.size() == 3);
  }

  TEST_CASE("T_3 normal elements") {
    const auto t = gf::FieldTower::for_orders(3, 2);
    const auto& f = t.base();
    const auto field = sets::desarguesian_spread_set(t);
    const auto d = sets::dickson_nearfield(t).set;
    const auto des = spreads::construct_T_3(f, field, field);
    CHECK(des.elements == fieldred::desarguesian_spread(t, 3).elements);
    const auto s = spreads::construct_T_3(f, field, d);
    CHECK(spreads::validate_spread(f, s).ok);
    const Matrix i = Matrix::identity(2), z(2, 2);
    for (const auto& e : {blocks(f, {i, z, z}), blocks(f, {i, i, z}), blocks(f, {z, i, z})})
      CHECK(spreads::is_normal_element(f, s, e));
  }

  TEST_CASE("U_3 and its designated normal elements") {
    const auto t = gf::FieldTower::for_orders(3, 2);
    const auto& f = t.base();
    const auto field = sets::desarguesian_spread_set(t);
    const auto d = sets::dickson_nearfield(t).set;
    CHECK(spreads::construct_U_r(f, field, {field, field}).elements == fieldred::desarguesian_spread(t, 3).elements);
    const auto u = spreads::construct_U_r(f, field, {d, d});
    CHECK(u.elements.size() == 91);
    CHECK(spreads::validate_spread(f, u).ok);
    const Matrix i = Matrix::identity(2), z(2, 2);
    CHECK(spreads::is_normal_element(f, u, blocks(f, {z, i, z})));
    CHECK(spreads::is_normal_element(f, u, blocks(f, {z, z, i})));
    const auto hall = spreads::construct_S_r(f, d, 2);
    std::optional<sets::SpreadSet> other;
    for (int c = 2; c < 10 && !other; ++c) {
      auto m = spreads::coordinatize(f, hall, 0, c, 1);
      CHECK(sets::validate_spread_set(f, m).ok);
      CHECK(m.contains_zero);
      CHECK(m.contains_identity);
      if (!sets::is_nearfield_set(f, m)) other = m;
    }
    REQUIRE(other.has_value());
    CHECK_THROWS_AS(spreads::construct_U_r(f, *other, {d, d}), DomainError);
    const auto u2 = spreads::construct_U_r(f, field, {*other, d});
    CHECK(spreads::validate_spread(f, u2).ok);
    CHECK(spreads::is_normal_element(f, u2, blocks(f, {z, i, z})));
    CHECK(spreads::is_normal_element(f, u2, blocks(f, {z, z, i})));
  }

  TEST_CASE("regulus closure") {
    const auto t = gf::FieldTower::for_orders(4, 2);
    const auto& f = t.base();
    const auto des = fieldred::desarguesian_spread(t, 2);
    CHECK(spreads::regulus_closure_at(f, des, 0, 4).holds);
    CHECK(spreads::regulus_closure_at(f, des, 7, 2 * 2).holds);
    CHECK_THROWS_AS(spreads::regulus_closure_at(f, des, 0, 2), DomainError);
    const auto t3 = gf::FieldTower::for_orders(3, 2);
    const auto& f3 = t3.base();
    const auto s = spreads::construct_S_r(f3, sets::dickson_nearfield(t3).set, 2);
    const Matrix i = Matrix::identity(2), z(2, 2);
    const int e = s.index_of(blocks(f3, {z, i}));
    const auto rc = spreads::regulus_closure_at(f3, s, e, 3);
    CHECK_FALSE(rc.holds);
    REQUIRE(rc.witness.has_value());
    CHECK(spreads::is_desarguesian(f3, s) == spreads::Verdict::no);
    const auto t2 = gf::FieldTower::for_orders(2, 2);
    CHECK(spreads::is_desarguesian(t2.base(), fieldred::desarguesian_spread(t2, 2)) == spreads::Verdict::unknown);
  }

  TEST_CASE("collineation images of spreads are spreads") {
    const auto t = gf::FieldTower::for_orders(2, 2);
    const auto& f = t.base();
    const auto s = fieldred::desarguesian_spread(t, 3);
    Matrix p = Matrix::identity(6);
    p(0, 3) = 1;
    p(5, 1) = 1;
    std::vector<Subspace> img;
    for (const auto& e : s.elements) img.push_back(geom::apply_collineation(f, p, e));
    const auto moved = spreads::make_spread(3, 2, 2, img, "image");
    CHECK(spreads::validate_spread(f, moved).ok);
    CHECK(spreads::spread_hash(moved) != spreads::spread_hash(s));
    CHECK(spreads::spread_hash(s) == spreads::spread_hash(fieldred::desarguesian_spread(t, 3)));
  }
}
