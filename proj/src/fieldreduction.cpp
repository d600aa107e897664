#include "spreadlab/fieldreduction.hpp"

#include <algorithm>
#include <string>

#include "spreadlab/errors.hpp"

namespace spreadlab::fieldred {
namespace {

using linalg::Matrix;

// Canonical points of PG(k-1, F) for F = `elems`, first nonzero coordinate 1.
std::vector<std::vector<gf::Elem>> normalized_points(const std::vector<gf::Elem>& elems, int k) {
  std::vector<std::vector<gf::Elem>> out;
  for (int lead = 0; lead < k; ++lead) {
    const int free = k - 1 - lead;
    std::vector<std::size_t> idx(free, 0);
    while (true) {
      std::vector<gf::Elem> p(k, 0);
      p[lead] = 1;
      for (int i = 0; i < free; ++i) p[lead + 1 + i] = elems[idx[i]];
      out.push_back(std::move(p));
      int i = free - 1;
      while (i >= 0 && ++idx[i] == elems.size()) idx[i--] = 0;
      if (i < 0) break;
    }
  }
  return out;
}

std::vector<Subspace> scalar_pattern(const gf::Field& f, std::span<const Subspace> frame, std::uint32_t q0) {
  if (!f.is_subfield_order(q0))
    throw DomainError(std::to_string(q0) + " is not a subfield order of GF(" + std::to_string(f.order()) + ")");
  const Matrix t = geom::frame_normalization(f, frame);
  const Matrix t_inv = linalg::inverse(f, t);
  const int k = static_cast<int>(frame.size()) - 1;
  const int n = frame.front().rank();
  std::vector<Subspace> out;
  for (const auto& p : normalized_points(f.subfield(q0), k)) {
    std::vector<Matrix> blocks;
    for (auto a : p) blocks.push_back(Matrix::scalar(n, static_cast<linalg::Entry>(a)));
    out.push_back(geom::apply_collineation(f, t_inv, geom::block_subspace(f, blocks)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Subspace field_reduce_point(const gf::FieldTower& tower, std::span<const gf::Elem> point) {
  if (std::all_of(point.begin(), point.end(), [](gf::Elem a) { return a == 0; }))
    throw DomainError("the zero vector is not a projective point");
  std::vector<Matrix> blocks;
  for (auto a : point) blocks.push_back(tower.mult_matrix(a));
  return geom::block_subspace(tower.base(), blocks);
}

spreads::Spread desarguesian_spread(const gf::FieldTower& tower, int r) {
  if (r < 1) throw DomainError("r must be positive");
  std::vector<gf::Elem> elems(tower.extension().order());
  for (gf::Elem a = 0; a < elems.size(); ++a) elems[a] = a;
  std::vector<Subspace> out;
  for (const auto& p : normalized_points(elems, r)) out.push_back(field_reduce_point(tower, p));
  return spreads::make_spread(r, static_cast<int>(tower.n()), tower.q(), std::move(out), "desarguesian");
}

std::vector<Subspace> regulus(const gf::Field& f, const Subspace& a, const Subspace& b, const Subspace& c,
                              std::uint32_t q0) {
  const int n = a.rank();
  if (a.vector_dim() == 2 * n) {
    const Subspace frame[3] = {a, b, c};
    return scalar_pattern(f, frame, q0);
  }
  // work in coordinates of <A,B>, basis rows of A then B
  const Matrix w = linalg::vstack(std::vector{a.basis, b.basis});
  const auto ech = linalg::rref(f, w);
  if (ech.rank != 2 * n) throw DomainError("regulus members must be pairwise disjoint");
  Matrix wp(2 * n, 2 * n);
  for (int r = 0; r < 2 * n; ++r)
    for (int i = 0; i < 2 * n; ++i) wp(r, i) = w(r, ech.pivots[i]);
  const Matrix wp_inv = linalg::inverse(f, wp);
  auto local = [&](const Subspace& s) {
    if (!geom::contains(f, geom::make_subspace(f, w), s))
      throw DomainError("regulus members must lie in a common (2n-1)-space");
    Matrix cols(s.rank(), 2 * n);
    for (int r = 0; r < s.rank(); ++r)
      for (int i = 0; i < 2 * n; ++i) cols(r, i) = s.basis(r, ech.pivots[i]);
    return geom::make_subspace(f, linalg::mul(f, cols, wp_inv));
  };
  const Subspace frame[3] = {local(a), local(b), local(c)};
  std::vector<Subspace> out;
  for (const auto& x : scalar_pattern(f, frame, q0)) out.push_back(geom::make_subspace(f, linalg::mul(f, x.basis, w)));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Subspace> subplane_V(const gf::Field& f, const Subspace& a, const Subspace& b, const Subspace& c,
                                 const Subspace& d, std::uint32_t q0) {
  const Subspace frame[4] = {a, b, c, d};
  return scalar_pattern(f, frame, q0);
}

}  // namespace spreadlab::fieldred
