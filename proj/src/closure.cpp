#include "spreadlab/closure.hpp"

#include <random>

#include "spreadlab/errors.hpp"
#include "spreadlab/fieldreduction.hpp"

namespace spreadlab::closure {
namespace {

using geom::Subspace;

std::vector<Point> as_vector(const PointSet& s) { return {s.begin(), s.end()}; }

PointSet pair_intersections(const Plane& plane, const std::set<Point>& lines, const PointSet& base) {
  PointSet out = base;
  const auto ls = as_vector(lines);
  for (std::size_t i = 0; i < ls.size(); ++i)
    for (std::size_t j = i + 1; j < ls.size(); ++j) out.insert(plane.join(ls[i], ls[j]));
  return out;
}

// Every element meeting <E,F> lies inside it, for all F != E.
bool normal_by_meets(const gf::Field& f, const spreads::Spread& s, int e) {
  const auto& el = s.elements;
  for (std::size_t i = 0; i < el.size(); ++i) {
    if (static_cast<int>(i) == e) continue;
    const Subspace sp = geom::span(f, el[e], el[i]);
    for (const auto& g : el) {
      const linalg::Matrix both[2] = {sp.basis, g.basis};
      const int grow = linalg::rank(f, linalg::vstack(both)) - sp.rank();
      if (grow != 0 && grow != g.rank()) return false;
    }
  }
  return true;
}

}  // namespace

Point Plane::normalize(const Point& v) const {
  std::size_t lead = 0;
  while (lead < 3 && v[lead] == 0) ++lead;
  if (lead == 3) throw DomainError("the zero vector is not a point");
  const gf::Elem s = f_.inv(v[lead]);
  Point out;
  for (int i = 0; i < 3; ++i) out[i] = static_cast<std::uint8_t>(f_.mul(v[i], s));
  return out;
}

Point Plane::join(const Point& a, const Point& b) const {
  auto minor = [&](int i, int j) { return f_.sub(f_.mul(a[i], b[j]), f_.mul(a[j], b[i])); };
  const Point c{static_cast<std::uint8_t>(minor(1, 2)), static_cast<std::uint8_t>(minor(2, 0)),
                static_cast<std::uint8_t>(minor(0, 1))};
  if (c[0] == 0 && c[1] == 0 && c[2] == 0) throw DomainError("join of coincident points or lines");
  return normalize(c);
}

bool Plane::incident(const Point& point, const Point& line) const {
  gf::Elem s = 0;
  for (int i = 0; i < 3; ++i) s = f_.add(s, f_.mul(point[i], line[i]));
  return s == 0;
}

bool Plane::collinear(const Point& a, const Point& b, const Point& c) const {
  if (a == b || a == c || b == c) return true;
  return incident(c, join(a, b));
}

std::optional<std::array<Point, 4>> Plane::find_frame(const PointSet& s) const {
  const auto v = as_vector(s);
  const std::size_t m = v.size();
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b)
      for (std::size_t c = b + 1; c < m; ++c) {
        if (collinear(v[a], v[b], v[c])) continue;
        for (std::size_t d = c + 1; d < m; ++d)
          if (!collinear(v[a], v[b], v[d]) && !collinear(v[a], v[c], v[d]) && !collinear(v[b], v[c], v[d]))
            return std::array<Point, 4>{v[a], v[b], v[c], v[d]};
      }
  return std::nullopt;
}

PointSet closure(const Plane& plane, const PointSet& s) {
  if (!plane.find_frame(s)) throw DomainError("closure needs a point set containing a frame");
  PointSet cur = s;
  while (true) {
    std::set<Point> lines;
    const auto pts = as_vector(cur);
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j) lines.insert(plane.join(pts[i], pts[j]));
    PointSet next = pair_intersections(plane, lines, cur);
    if (next == cur) return cur;
    cur = std::move(next);
  }
}

PointSet restricted_closure(const Plane& plane, const PointSet& s, const PointSet& pivots) {
  for (const auto& p : pivots)
    if (!s.count(p)) throw DomainError("pivot point outside the point set");
  PointSet cur = s;
  while (true) {
    std::set<Point> lines;
    for (const auto& p : pivots)
      for (const auto& q : cur)
        if (q != p) lines.insert(plane.join(p, q));
    PointSet next = pair_intersections(plane, lines, cur);
    if (next == cur) return cur;
    cur = std::move(next);
  }
}

Lemma53Trial lemma53_trial(const Plane& plane, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto q = plane.field().order();
  auto random_point = [&] {
    Point v;
    do {
      for (auto& x : v) x = static_cast<std::uint8_t>(rng() % q);
    } while (v[0] == 0 && v[1] == 0 && v[2] == 0);
    return plane.normalize(v);
  };
  Lemma53Trial t;
  while (true) {
    for (auto& p : t.frame) p = random_point();
    const auto& [p1, p2, q1, q2] = t.frame;
    if (!plane.collinear(p1, p2, q1) && !plane.collinear(p1, p2, q2) && !plane.collinear(p1, q1, q2) &&
        !plane.collinear(p2, q1, q2))
      break;
  }
  const auto& [p1, p2, q1, q2] = t.frame;
  const Point l12 = plane.join(p1, p2);
  t.p3 = plane.join(l12, plane.join(q1, q2));
  const PointSet s{p1, p2, q1, q2, t.p3};
  const PointSet restricted = restricted_closure(plane, s, {p1, p2, t.p3});
  const PointSet full = closure(plane, s);
  PointSet r_off, c_off;
  for (const auto& x : restricted)
    if (!plane.incident(x, l12)) r_off.insert(x);
  for (const auto& x : full)
    if (!plane.incident(x, l12)) c_off.insert(x);
  t.restricted_off_line = r_off.size();
  t.closure_off_line = c_off.size();
  t.equal = r_off == c_off;
  return t;
}

Lemma54Result verify_lemma_5_4(const gf::Field& f, const spreads::Spread& s, int s1, int s2, int s3, int r1, int r2) {
  const int m = static_cast<int>(s.elements.size());
  for (int i : {s1, s2, s3, r1, r2})
    if (i < 0 || i >= m) throw PreconditionError("element index out of range");
  if (s.r != 3) throw PreconditionError("spread must live in PG(3n-1,q)");
  if (s1 == s2 || s1 == s3 || s2 == s3) throw PreconditionError("S1, S2, S3 must be distinct");
  if (r1 == r2) throw PreconditionError("R1 and R2 must be distinct");
  for (int i : {s1, s2, s3})
    if (!normal_by_meets(f, s, i)) throw PreconditionError("S1, S2, S3 must be normal elements");
  const auto& e = s.elements;
  const Subspace pi0 = geom::span(f, e[s1], e[s2]);
  if (!geom::contains(f, pi0, e[s3])) throw PreconditionError("S3 must lie in <S1,S2>");
  if (geom::meet(f, geom::span(f, e[r1], e[r2]), pi0) != e[s3])
    throw PreconditionError("<R1,R2> must meet <S1,S2> exactly in S3");
  const Subspace frame[4] = {e[s1], e[s2], e[r1], e[r2]};
  if (!geom::in_general_position(f, frame, 3)) throw PreconditionError("S1, S2, R1, R2 must be in general position");

  Lemma54Result out;
  for (const auto& x : fieldred::subplane_V(f, e[s1], e[s2], e[r1], e[r2], f.characteristic())) {
    if (geom::contains(f, pi0, x)) continue;
    ++out.checked;
    if (!s.contains(x)) {
      out.witness = x;
      return out;
    }
  }
  out.holds = true;
  return out;
}

}  // namespace spreadlab::closure
