#pragma once
// Closure and restricted closure of point sets of PG(2,q).

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "spreadlab/gf/field.hpp"
#include "spreadlab/spreads.hpp"

namespace spreadlab::closure {

using Point = std::array<std::uint8_t, 3>;  // first nonzero coordinate 1
using PointSet = std::set<Point>;

class Plane {
 public:
  explicit Plane(const gf::Field& f) : f_(f) {}
  const gf::Field& field() const { return f_; }
  Point normalize(const Point& v) const;
  /// Line through two distinct points (as dual coordinates), or meet of two
  /// distinct lines.
  Point join(const Point& a, const Point& b) const;
  bool incident(const Point& point, const Point& line) const;
  bool collinear(const Point& a, const Point& b, const Point& c) const;
  /// Four points, no three collinear, inside s (first in iteration order).
  std::optional<std::array<Point, 4>> find_frame(const PointSet& s) const;

 private:
  const gf::Field& f_;
};

/// Iterates: lines through two points of S, then all intersections of two
/// distinct such lines, united with S, until nothing changes.
/// Throws DomainError when S contains no frame.
PointSet closure(const Plane& plane, const PointSet& s);

/// As closure(), but step (i) only uses lines <P_i, Q>, Q in S.
/// Throws DomainError when a pivot lies outside S.
PointSet restricted_closure(const Plane& plane, const PointSet& s, const PointSet& pivots);

struct Lemma53Trial {
  std::array<Point, 4> frame;  // P1, P2, Q1, Q2
  Point p3;
  std::size_t restricted_off_line = 0;
  std::size_t closure_off_line = 0;
  bool equal = false;  // restricted closure and closure agree off P1P2
};

/// Seeded random frame P1,P2,Q1,Q2 of PG(2,q); P3 = P1P2 n Q1Q2.
Lemma53Trial lemma53_trial(const Plane& plane, std::uint64_t seed);

struct Lemma54Result {
  bool holds = false;
  std::size_t checked = 0;                   // members of V_p off <S1,S2>
  std::optional<spreads::Subspace> witness;  // member missing from the spread
};

/// For S1,S2,S3 normal with S3 in <S1,S2> and R1,R2 in S with
/// <R1,R2> n <S1,S2> = S3: every member of V_p(S1,S2,R1,R2) off <S1,S2> lies
/// in the spread. Throws PreconditionError naming the failed hypothesis.
Lemma54Result verify_lemma_5_4(const gf::Field& f, const spreads::Spread& s, int s1, int s2, int s3, int r1, int r2);

}  // namespace spreadlab::closure
