#include "spreadlab/projgeom.hpp"

#include <algorithm>

#include "spreadlab/errors.hpp"
#include "spreadlab/kernels.hpp"

namespace spreadlab::geom {

Subspace make_subspace(const gf::Field& f, Matrix rows) {
  auto e = linalg::rref(f, std::move(rows));
  e.reduced.truncate_rows(e.rank);
  return Subspace{std::move(e.reduced)};
}

Subspace empty_subspace(int vector_dim) { return Subspace{Matrix(0, vector_dim)}; }

Subspace full_space(int vector_dim) { return Subspace{Matrix::identity(vector_dim)}; }

Subspace span(const gf::Field& f, const Subspace& a, const Subspace& b) {
  if (a.vector_dim() != b.vector_dim()) throw DomainError("span of subspaces in different spaces");
  const Matrix parts[2] = {a.basis, b.basis};
  return make_subspace(f, linalg::vstack(parts));
}

Subspace span(const gf::Field& f, std::span<const Subspace> parts) {
  if (parts.empty()) throw DomainError("span of an empty list");
  std::vector<Matrix> bases;
  for (const auto& s : parts) {
    if (s.vector_dim() != parts.front().vector_dim()) throw DomainError("span of subspaces in different spaces");
    bases.push_back(s.basis);
  }
  return make_subspace(f, linalg::vstack(bases));
}

Subspace meet(const gf::Field& f, const Subspace& a, const Subspace& b) {
  if (a.vector_dim() != b.vector_dim()) throw DomainError("meet of subspaces in different spaces");
  if (a.empty() || b.empty()) return empty_subspace(a.vector_dim());
  // u A = v B  <=>  (u, v) [A; -B] = 0
  const Matrix parts[2] = {a.basis, linalg::scale(f, b.basis, static_cast<Entry>(f.neg(1)))};
  const Matrix k = linalg::kernel(f, linalg::vstack(parts));
  if (k.rows() == 0) return empty_subspace(a.vector_dim());
  const Matrix u = linalg::block(k, 0, 0, k.rows(), a.rank());
  return make_subspace(f, linalg::mul(f, u, a.basis));
}

bool contains_vector(const gf::Field& f, const Subspace& a, std::span<const Entry> v) {
  if (static_cast<int>(v.size()) != a.vector_dim()) throw DomainError("vector length mismatch");
  std::vector<Entry> r(v.begin(), v.end());
  const auto t = f.tables();
  // basis is reduced: clear each pivot column with its row
  int row = 0;
  for (int c = 0; c < a.vector_dim() && row < a.rank(); ++c) {
    if (a.basis(row, c) == 0) continue;
    if (r[c]) kernels::row_axpy(t, r, a.basis.row(row), static_cast<Entry>(f.neg(r[c])));
    ++row;
  }
  return std::all_of(r.begin(), r.end(), [](Entry x) { return x == 0; });
}

bool contains(const gf::Field& f, const Subspace& a, const Subspace& b) {
  if (a.vector_dim() != b.vector_dim()) return false;
  for (int i = 0; i < b.rank(); ++i)
    if (!contains_vector(f, a, b.basis.row(i))) return false;
  return true;
}

Subspace block_subspace(const gf::Field& f, std::span<const Matrix> blocks) {
  return make_subspace(f, linalg::hstack(blocks));
}

Subspace standard_element(const gf::Field& f, int n, int r, int i) {
  std::vector<Matrix> blocks(r, Matrix(n, n));
  blocks[i] = Matrix::identity(n);
  return block_subspace(f, blocks);
}

Coder::Coder(std::uint32_t q, int len) : q_(q), len_(len), count_(gf::ipow(q, static_cast<unsigned>(len))) {}

std::uint64_t Coder::encode(std::span<const Entry> v) const {
  std::uint64_t c = 0;
  for (Entry x : v) c = c * q_ + x;
  return c;
}

void Coder::decode(std::uint64_t code, std::span<Entry> out) const {
  for (int i = len_ - 1; i >= 0; --i) {
    out[i] = static_cast<Entry>(code % q_);
    code /= q_;
  }
}

std::vector<Entry> Coder::decode(std::uint64_t code) const {
  std::vector<Entry> v(len_);
  decode(code, v);
  return v;
}

std::vector<std::uint64_t> span_vectors(const gf::Field& f, const Matrix& basis, const Coder& coder) {
  const auto t = f.tables();
  const std::size_t len = basis.cols();
  const std::uint32_t q = f.order();
  std::vector<Entry> vecs(len, 0);  // flat list of vectors
  std::size_t count = 1;
  for (int r = 0; r < basis.rows(); ++r) {
    vecs.resize(count * q * len);
    for (std::uint32_t c = 1; c < q; ++c) {
      for (std::size_t i = 0; i < count; ++i) {
        std::span<Entry> dst(vecs.data() + (c * count + i) * len, len);
        std::copy_n(vecs.data() + i * len, len, dst.begin());
        kernels::row_axpy(t, dst, basis.row(r), static_cast<Entry>(c));
      }
    }
    count *= q;
  }
  std::vector<std::uint64_t> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = coder.encode({vecs.data() + i * len, len});
  return out;
}

std::vector<Entry> normalize_point(const gf::Field& f, std::span<const Entry> v) {
  std::vector<Entry> out(v.begin(), v.end());
  auto it = std::find_if(out.begin(), out.end(), [](Entry x) { return x != 0; });
  if (it == out.end()) throw DomainError("the zero vector is not a projective point");
  const gf::Elem s = f.inv(*it);
  for (auto& x : out) x = static_cast<Entry>(f.mul(x, s));
  return out;
}

std::vector<std::vector<Entry>> points_of(const gf::Field& f, const Subspace& s) {
  const Coder coder(f.order(), s.vector_dim());
  auto codes = span_vectors(f, s.basis, coder);
  std::sort(codes.begin(), codes.end());
  std::vector<std::vector<Entry>> out;
  for (auto c : codes) {
    if (c == 0) continue;
    auto v = coder.decode(c);
    const auto first = *std::find_if(v.begin(), v.end(), [](Entry x) { return x != 0; });
    if (first == 1) out.push_back(std::move(v));
  }
  return out;
}

std::uint64_t gaussian_point_count(std::uint64_t q, int rank) {
  if (rank <= 0) return 0;
  return (gf::ipow(q, static_cast<unsigned>(rank)) - 1) / (q - 1);
}

bool in_general_position(const gf::Field& f, std::span<const Subspace> list, int k) {
  if (list.empty() || k <= 0) return false;
  const int n = list.front().rank();
  for (const auto& s : list)
    if (s.rank() != n || s.vector_dim() != k * n) return false;
  const int m = static_cast<int>(list.size());
  if (m < k) {
    // fewer than k members: require them to be independent
    return span(f, list).rank() == m * n;
  }
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    std::vector<Matrix> bases;
    for (int i : idx) bases.push_back(list[i].basis);
    if (linalg::rank(f, linalg::vstack(bases)) != k * n) return false;
    int i = k - 1;
    while (i >= 0 && idx[i] == m - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return true;
}

Matrix frame_normalization(const gf::Field& f, std::span<const Subspace> list) {
  if (list.size() < 2) throw DomainError("a frame needs at least two members");
  const int k = static_cast<int>(list.size()) - 1;
  const int n = list.front().rank();
  if (!in_general_position(f, list, k)) throw DomainError("subspaces are not in general position");
  std::vector<Matrix> bases;
  for (int i = 0; i < k; ++i) bases.push_back(list[i].basis);
  const Matrix b_inv = linalg::inverse(f, linalg::vstack(bases));
  const Matrix s0 = linalg::mul(f, list[k].basis, b_inv);
  Matrix t(k * n, k * n);
  for (int i = 0; i < k; ++i) {
    const Matrix d_inv = linalg::inverse(f, linalg::block(s0, 0, i * n, n, n));
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) t(i * n + r, i * n + c) = d_inv(r, c);
  }
  return linalg::mul(f, b_inv, t);
}

Subspace apply_collineation(const gf::Field& f, const Matrix& t, const Subspace& s) {
  if (!t.square() || t.rows() != s.vector_dim()) throw DomainError("collineation has the wrong shape");
  if (!linalg::is_invertible(f, t)) throw DomainError("collineation matrix is singular");
  if (s.empty()) return s;
  return make_subspace(f, linalg::mul(f, s.basis, t));
}

}  // namespace spreadlab::geom
