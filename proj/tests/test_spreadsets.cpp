#include <algorithm>

#include "doctest.h"
#include "spreadlab/errors.hpp"
#include "spreadlab/projgeom.hpp"
#include "spreadlab/spreadsets.hpp"

using namespace spreadlab;
using linalg::Matrix;
using sets::SpreadSet;

namespace {

std::uint32_t code_of(const gf::FieldTower& t, gf::Elem a) {
  const geom::Coder c(t.q(), static_cast<int>(t.n()));
  const auto v = t.coords(a);
  return static_cast<std::uint32_t>(c.encode(v));
}

void check_correspondence(const gf::Field& f, const SpreadSet& m) {
  const auto qf = sets::quasifield_from_spread_set(f, m);
  const auto rep = sets::check_quasifield_axioms(f, qf);
  CHECK(rep.quasifield());
  CHECK(sets::is_nearfield_set(f, m) == sets::is_associative(qf));
  CHECK(sets::is_semifield_set(f, m) == sets::is_left_distributive(qf));
  CHECK(rep.get("associativity").pass == sets::is_associative(qf));
}

}  // namespace

TEST_SUITE("spreadsets") {
  TEST_CASE("validation examples") {
    const auto f2 = gf::Field::of_order(2);
    const Matrix z(2, 2), i = Matrix::identity(2), a{{0, 1}, {1, 1}};
    const auto f4 = sets::make_spread_set(2, 2, {z, i, a, linalg::add(f2, a, i)});
    CHECK(sets::validate_spread_set(f2, f4).ok);
    CHECK(f4.contains_zero);
    CHECK(f4.contains_identity);
    const auto dup = sets::make_spread_set(2, 2, {z, i, a, a});
    const auto chk = sets::validate_spread_set(f2, dup);
    CHECK_FALSE(chk.ok);
    CHECK(chk.pair.has_value());
    const auto t = gf::FieldTower::for_orders(3, 2);
    CHECK(sets::validate_spread_set(t.base(), sets::desarguesian_spread_set(t)).ok);
  }

  TEST_CASE("field quasifield") {
    const auto t = gf::FieldTower::for_orders(3, 2);
    const auto& f = t.base();
    const auto m = sets::desarguesian_spread_set(t);
    const auto qf = sets::quasifield_from_spread_set(f, m);
    const auto rep = sets::check_quasifield_axioms(f, qf);
    for (const auto& a : rep.axioms) CHECK_MESSAGE(a.pass, a.name);
    CHECK(sets::kernel_of(qf).size() == 9);
    for (std::uint32_t x = 0; x < 9; ++x) {
      CHECK(qf.mul(x, qf.unit) == x);
      CHECK(qf.mul(qf.unit, x) == x);
    }
    for (gf::Elem a = 0; a < 9; ++a)
      for (gf::Elem b = 0; b < 9; ++b) CHECK(qf.mul(code_of(t, a), code_of(t, b)) == code_of(t, t.extension().mul(a, b)));
    const auto back = sets::spread_set_from_quasifield(f, qf);
    CHECK(back == m);
    CHECK(sets::is_nearfield_set(f, m));
    CHECK(sets::is_semifield_set(f, m));
    CHECK(sets::right_nucleus(f, m) == m.matrices);
    CHECK(sets::middle_nucleus(f, m) == m.matrices);
    CHECK(sets::center(f, m) == m.matrices);
  }

  TEST_CASE("Dickson nearfield of order 9") {
    const auto t = gf::FieldTower::for_orders(3, 2);
    const auto& f = t.base();
    const auto& e = t.extension();
    const auto d = sets::dickson_nearfield(t);
    CHECK_FALSE(d.from_search);
    const auto rep = sets::check_quasifield_axioms(f, d.quasifield);
    CHECK(rep.quasifield());
    CHECK(rep.get("associativity").pass);
    CHECK_FALSE(rep.get("left distributivity").pass);
    CHECK(sets::kernel_of(d.quasifield).size() == 3);
    CHECK(sets::is_nearfield_set(f, d.set));
    CHECK_FALSE(sets::is_semifield_set(f, d.set));
    // t o (t+1) = 2t+1, while the field product is t+2
    const gf::Elem tt = 3, t1 = 4;
    CHECK(d.quasifield.mul(code_of(t, tt), code_of(t, t1)) == code_of(t, 7));
    CHECK(e.mul(tt, t1) == 5);
    for (gf::Elem x = 0; x < 9; ++x)
      for (gf::Elem y = 1; y < 9; ++y) {
        const gf::Elem expect = e.dlog(y) % 2 == 0 ? e.mul(x, y) : e.mul(e.pow(x, 3), y);
        CHECK(d.quasifield.mul(code_of(t, x), code_of(t, y)) == code_of(t, expect));
      }
    CHECK(sets::spread_set_from_quasifield(f, d.quasifield) == d.set);
    CHECK(sets::right_nucleus(f, d.set) == d.set.matrices);
    const auto z = sets::center(f, d.set);
    CHECK(z == std::vector<Matrix>{Matrix(2, 2), Matrix::identity(2), Matrix::scalar(2, 2)});
    check_correspondence(f, d.set);
  }

  TEST_CASE("Dickson pairs") {
    CHECK(sets::is_dickson_pair(3, 2));
    CHECK_FALSE(sets::is_dickson_pair(2, 2));
    CHECK(sets::is_dickson_pair(5, 2));
    CHECK_FALSE(sets::is_dickson_pair(3, 4));
    CHECK(sets::is_dickson_pair(5, 4));
    CHECK(sets::is_dickson_pair(4, 3));
    CHECK(sets::is_dickson_pair(7, 3));
    CHECK_FALSE(sets::is_dickson_pair(2, 3));
    CHECK(sets::is_dickson_pair(4, 1));
    CHECK_FALSE(sets::admits_proper_regular_nearfield(2, 2));
    CHECK_FALSE(sets::admits_proper_regular_nearfield(4, 1));
    CHECK(sets::admits_proper_regular_nearfield(3, 2));
    CHECK(sets::exceptional_nearfield_parameters().size() == 7);
    const auto t = gf::FieldTower::for_orders(2, 2);
    CHECK_THROWS_AS(sets::dickson_nearfield(t), DomainError);
    const auto t1 = gf::FieldTower::for_orders(5, 1);
    const auto d1 = sets::dickson_nearfield(t1);
    CHECK(sets::is_semifield_set(t1.base(), d1.set));
  }

  TEST_CASE("Dickson nearfields of other orders pass the axioms") {
    for (auto [q, n] : {std::pair{5u, 2u}, {7u, 2u}, {4u, 3u}, {3u, 2u}}) {
      const auto t = gf::FieldTower::for_orders(q, n);
      const auto d = sets::dickson_nearfield(t);
      CHECK_FALSE(d.from_search);
      const auto rep = sets::check_quasifield_axioms(t.base(), d.quasifield);
      CHECK(rep.quasifield());
      CHECK(rep.get("associativity").pass);
      CHECK_FALSE(rep.get("left distributivity").pass);
      CHECK(sets::kernel_of(d.quasifield).size() == q);
    }
  }

  TEST_CASE("multiplication-closed search") {
    const auto f2 = gf::Field::of_order(2);
    const auto r22 = sets::search_closed_spread_sets(f2, 2, sets::Closure::multiplication);
    REQUIRE(r22.size() == 1);
    const auto t22 = gf::FieldTower::for_orders(2, 2);
    CHECK(r22[0] == sets::desarguesian_spread_set(t22));
    const auto a22 = sets::search_closed_spread_sets(f2, 2, sets::Closure::addition);
    REQUIRE(a22.size() == 1);
    CHECK(a22[0] == r22[0]);

    const auto t = gf::FieldTower::for_orders(3, 2);
    const auto f3 = gf::Field::of_order(3);
    const auto r32 = sets::search_closed_spread_sets(f3, 2, sets::Closure::multiplication);
    const auto d = sets::dickson_nearfield(t);
    CHECK(std::find(r32.begin(), r32.end(), d.set) != r32.end());
    CHECK(std::find(r32.begin(), r32.end(), sets::desarguesian_spread_set(t)) != r32.end());
    for (const auto& m : r32) {
      CHECK(sets::validate_spread_set(f3, m).ok);
      CHECK(sets::is_nearfield_set(f3, m));
      check_correspondence(f3, m);
    }
    sets::SearchOptions opt;
    opt.threads = 4;
    CHECK(sets::search_closed_spread_sets(f3, 2, sets::Closure::multiplication, opt) == r32);
    opt.budget = 10;
    CHECK_THROWS_AS(sets::search_closed_spread_sets(f3, 2, sets::Closure::multiplication, opt), BudgetExceeded);
  }

  TEST_CASE("addition-closed search at order 9 and 16") {
    const auto f3 = gf::Field::of_order(3);
    const auto s9 = sets::search_closed_spread_sets(f3, 2, sets::Closure::addition);
    CHECK_FALSE(s9.empty());
    for (const auto& m : s9) {
      CHECK(sets::is_semifield_set(f3, m));
      check_correspondence(f3, m);
    }
    const auto f2 = gf::Field::of_order(2);
    const auto s16 = sets::search_closed_spread_sets(f2, 4, sets::Closure::addition);
    bool proper = false;
    for (const auto& m : s16) {
      CHECK(sets::is_semifield_set(f2, m));
      if (!sets::is_nearfield_set(f2, m)) proper = true;
    }
    CHECK(proper);
    check_correspondence(f2, s16.back());
  }

  TEST_CASE("random transforms keep the structure") {
    const auto t = gf::FieldTower::for_orders(3, 2);
    const auto& f = t.base();
    const auto d = sets::dickson_nearfield(t);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto m = sets::random_transform(f, d.set, seed);
      CHECK(sets::validate_spread_set(f, m).ok);
      CHECK(m.contains_identity);
      check_correspondence(f, m);
    }
  }

  TEST_CASE("broken multiplication fails axiom (ii)") {
    const auto t = gf::FieldTower::for_orders(2, 2);
    const auto& f = t.base();
    auto qf = sets::quasifield_from_spread_set(f, sets::desarguesian_spread_set(t));
    for (std::uint32_t x = 0; x < qf.order; ++x) qf.mul_table[x * qf.order + 2] = 0;
    const auto rep = sets::check_quasifield_axioms(f, qf);
    CHECK_FALSE(rep.get("(ii) multiplicative loop").pass);
    CHECK_FALSE(rep.quasifield());
  }
}
