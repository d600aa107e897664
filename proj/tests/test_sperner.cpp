#include <algorithm>
#include "doctest.h"
#include "spreadlab/errors.hpp"
#include "spreadlab/fieldreduction.hpp"
#include "spreadlab/sperner.hpp"

#include <sstream>

using namespace spreadlab;
using linalg::Matrix;

namespace {

sperner::Bits bits_of(const sperner::SpernerSpace& t, std::initializer_list<std::uint32_t> pts) {
  sperner::Bits b(t.words(), 0);
  for (auto x : pts) b[x / 64] |= 1ull << (x % 64);
  return b;
}

}  // namespace

TEST_SUITE("sperner") {
  TEST_CASE("Desarguesian T(S) of PG(5,2)") {
    const auto tw = gf::FieldTower::for_orders(2, 2);
    const auto& f = tw.base();
    const auto s = fieldred::desarguesian_spread(tw, 3);
    const auto t = sperner::SpernerSpace::build(f, s);
    CHECK(t.num_points() == 64);
    CHECK(t.num_lines() == 336);
    CHECK(t.design().num_classes == 21);
    CHECK(t.line_size() == 4);
    for (const auto& l : t.design().lines) CHECK(l.size() == 4);
    CHECK(sperner::validate_design(t.design()).ok);
    for (std::size_t l = 0; l < t.num_lines(); ++l) CHECK(t.is_normal_line(l).normal);
    const auto m = t.pseudo_plane(0, 1, 4);
    CHECK(m.size == 16);
  }

  TEST_CASE("design validation witnesses") {
    const auto tw = gf::FieldTower::for_orders(2, 2);
    const auto s = fieldred::desarguesian_spread(tw, 2);
    const auto t = sperner::SpernerSpace::build(tw.base(), s);
    auto d = t.design();
    d.lines.pop_back();
    d.line_class.pop_back();
    const auto r1 = sperner::validate_design(d);
    CHECK_FALSE(r1.pair_coverage);
    CHECK(r1.bad_pair.has_value());
    auto d2 = t.design();
    for (auto& c : d2.line_class)
      if (c == 1) c = 0;
    const auto r2 = sperner::validate_design(d2);
    CHECK(r2.pair_coverage);
    CHECK_FALSE(r2.parallelism);
    CHECK(r2.bad_class.has_value());
  }

  TEST_CASE("linear manifolds") {
    const auto tw = gf::FieldTower::for_orders(3, 2);
    const auto& f = tw.base();
    const auto s = fieldred::desarguesian_spread(tw, 3);
    const auto t = sperner::SpernerSpace::build(f, s);
    const auto l = t.line_joining(0, 5);
    CHECK(t.linear_manifold(bits_of(t, {0, 5})).size == 9);
    const auto& pts = t.design().lines[l];
    CHECK(t.linear_manifold(bits_of(t, {pts[0], pts[1], pts[2]})).size == 9);
    CHECK(t.linear_manifold(bits_of(t, {7})).size == 1);
    std::uint32_t off = 0;
    while (std::find(pts.begin(), pts.end(), off) != pts.end()) ++off;
    CHECK(t.pseudo_plane(pts[0], pts[1], off).size == 81);
    CHECK_THROWS_AS(t.pseudo_plane(pts[0], pts[1], pts[2]), DomainError);
    CHECK(t.origin_line(0) == t.line_through(0, 0));
  }

  TEST_CASE("normal lines match normal elements for S_3(Dickson-9)") {
    const auto tw = gf::FieldTower::for_orders(3, 2);
    const auto& f = tw.base();
    const auto s = spreads::construct_S_r(f, sets::dickson_nearfield(tw).set, 3);
    const auto t = sperner::SpernerSpace::build(f, s);
    const auto normals = spreads::normal_elements(f, s);
    int non_normal = -1;
    for (int e = 0; e < static_cast<int>(s.elements.size()); ++e) {
      const bool is_normal = std::binary_search(normals.begin(), normals.end(), e);
      if (!is_normal && non_normal < 0) non_normal = e;
      if (e % 10 == 0 || !is_normal) CHECK(t.is_normal_line(t.origin_line(e)).normal == is_normal);
    }
    REQUIRE(non_normal >= 0);
    const auto res = t.is_normal_line(t.origin_line(non_normal));
    CHECK_FALSE(res.normal);
    CHECK(res.witness_point.has_value());
    CHECK(res.witness_size > 81);
    const auto oracle = t.is_normal_line(t.origin_line(non_normal), true);
    CHECK_FALSE(oracle.normal);
    const int e0 = s.index_of(geom::standard_element(f, 2, 3, 0));
    const auto fast = t.is_normal_line(t.origin_line(e0));
    const auto slow = t.is_normal_line(t.origin_line(e0), true);
    CHECK(fast.normal);
    CHECK(slow.normal);
    CHECK(fast.planes_built < slow.planes_built);
  }

  TEST_CASE("CSV export") {
    const auto tw = gf::FieldTower::for_orders(2, 2);
    const auto s = fieldred::desarguesian_spread(tw, 2);
    const auto t = sperner::SpernerSpace::build(tw.base(), s);
    std::ostringstream out;
    t.export_csv(out);
    const auto text = out.str();
    CHECK(text.rfind("# spreadlab design q=2 n=2 r=2 spread_hash=", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 2 + 20 * 4);
  }

  TEST_CASE("invalid spreads are rejected") {
    const auto tw = gf::FieldTower::for_orders(2, 2);
    auto s = fieldred::desarguesian_spread(tw, 2);
    s.elements.pop_back();
    CHECK_THROWS_AS(sperner::SpernerSpace::build(tw.base(), s), DomainError);
  }
}
