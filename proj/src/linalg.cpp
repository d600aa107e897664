#include "spreadlab/linalg.hpp"

#include <algorithm>
#include <string>

#include "spreadlab/kernels.hpp"

namespace spreadlab::linalg {
namespace {

void require_tables(const gf::Field& f) {
  if (!f.has_tables()) throw DomainError("linear algebra requires a field of order <= 256");
}

void require_same_shape(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DomainError("matrix shape mismatch");
}

}  // namespace

Matrix::Matrix(std::initializer_list<std::initializer_list<int>> rows) {
  rows_ = static_cast<int>(rows.size());
  cols_ = rows_ ? static_cast<int>(rows.begin()->size()) : 0;
  data_.reserve(static_cast<std::size_t>(rows_) * cols_);
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != cols_) throw DomainError("ragged matrix literal");
    for (int v : r) data_.push_back(static_cast<Entry>(v));
  }
}

Matrix Matrix::identity(int n) { return scalar(n, 1); }

Matrix Matrix::scalar(int n, Entry lambda) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = lambda;
  return m;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Entry e) { return e == 0; });
}

void Matrix::swap_rows(int a, int b) {
  if (a == b) return;
  auto ra = row(a), rb = row(b);
  std::swap_ranges(ra.begin(), ra.end(), rb.begin());
}

void Matrix::truncate_rows(int k) {
  rows_ = k;
  data_.resize(static_cast<std::size_t>(k) * cols_);
}

Echelon rref(const gf::Field& f, Matrix m) {
  require_tables(f);
  const auto t = f.tables();
  Echelon e;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int piv = -1;
    for (int i = r; i < m.rows(); ++i) {
      if (m(i, c)) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    m.swap_rows(r, piv);
    const Entry s = static_cast<Entry>(f.inv(m(r, c)));
    if (s != 1) {
      for (auto& x : m.row(r)) x = static_cast<Entry>(f.mul(x, s));
    }
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      const auto factor = static_cast<Entry>(f.neg(m(i, c)));
      kernels::row_axpy(t, m.row(i), m.row(r), factor);
    }
    e.pivots.push_back(c);
    ++r;
  }
  e.rank = r;
  e.reduced = std::move(m);
  return e;
}

int rank(const gf::Field& f, const Matrix& m) { return rref(f, m).rank; }

Matrix mul(const gf::Field& f, const Matrix& a, const Matrix& b) {
  require_tables(f);
  if (a.cols() != b.rows()) throw DomainError("matrix product shape mismatch");
  const auto t = f.tables();
  Matrix out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k)
      if (a(i, k)) kernels::row_axpy(t, out.row(i), b.row(k), a(i, k));
  return out;
}

Matrix add(const gf::Field& f, const Matrix& a, const Matrix& b) {
  require_same_shape(a, b);
  Matrix out = a;
  auto& d = out.data();
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = static_cast<Entry>(f.add(d[i], b.data()[i]));
  return out;
}

Matrix sub(const gf::Field& f, const Matrix& a, const Matrix& b) {
  require_same_shape(a, b);
  Matrix out = a;
  auto& d = out.data();
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = static_cast<Entry>(f.sub(d[i], b.data()[i]));
  return out;
}

Matrix scale(const gf::Field& f, const Matrix& a, Entry lambda) {
  Matrix out = a;
  for (auto& x : out.data()) x = static_cast<Entry>(f.mul(x, lambda));
  return out;
}

Matrix transpose(const Matrix& a) {
  Matrix out(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  return out;
}

Matrix hstack(std::span<const Matrix> blocks) {
  if (blocks.empty()) return {};
  const int rows = blocks.front().rows();
  int cols = 0;
  for (const auto& b : blocks) {
    if (b.rows() != rows) throw DomainError("hstack row mismatch");
    cols += b.cols();
  }
  Matrix out(rows, cols);
  int c0 = 0;
  for (const auto& b : blocks) {
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < b.cols(); ++j) out(i, c0 + j) = b(i, j);
    c0 += b.cols();
  }
  return out;
}

Matrix vstack(std::span<const Matrix> blocks) {
  if (blocks.empty()) return {};
  const int cols = blocks.front().cols();
  int rows = 0;
  for (const auto& b : blocks) {
    if (b.cols() != cols) throw DomainError("vstack column mismatch");
    rows += b.rows();
  }
  Matrix out(rows, cols);
  auto it = out.data().begin();
  for (const auto& b : blocks) it = std::copy(b.data().begin(), b.data().end(), it);
  return out;
}

Matrix block(const Matrix& a, int row0, int col0, int rows, int cols) {
  Matrix out(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) out(i, j) = a(row0 + i, col0 + j);
  return out;
}

Entry det(const gf::Field& f, const Matrix& m) {
  require_tables(f);
  if (!m.square()) throw DomainError("determinant of a non-square matrix");
  const auto t = f.tables();
  Matrix a = m;
  const int n = a.rows();
  gf::Elem d = 1;
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int i = c; i < n; ++i) {
      if (a(i, c)) {
        piv = i;
        break;
      }
    }
    if (piv < 0) return 0;
    if (piv != c) {
      a.swap_rows(c, piv);
      d = f.neg(d);
    }
    d = f.mul(d, a(c, c));
    const gf::Elem pinv = f.inv(a(c, c));
    for (int i = c + 1; i < n; ++i) {
      if (!a(i, c)) continue;
      const auto factor = static_cast<Entry>(f.neg(f.mul(a(i, c), pinv)));
      kernels::row_axpy(t, a.row(i), a.row(c), factor);
    }
  }
  return static_cast<Entry>(d);
}

bool is_invertible(const gf::Field& f, const Matrix& m) { return m.square() && det(f, m) != 0; }

Matrix inverse(const gf::Field& f, const Matrix& m) {
  if (!m.square()) throw DomainError("inverse of a non-square matrix");
  const int n = m.rows();
  const Matrix blocks[2] = {m, Matrix::identity(n)};
  const Echelon e = rref(f, hstack(blocks));
  if (e.rank < n || (n > 0 && e.pivots[n - 1] >= n)) {
    const Matrix k = kernel(f, m);
    std::vector<Entry> w(k.row(0).begin(), k.row(0).end());
    throw SingularMatrix("matrix is singular", std::move(w));
  }
  return block(e.reduced, 0, n, n, n);
}

Matrix kernel(const gf::Field& f, const Matrix& m) {
  // x m = 0  <=>  m^T x^T = 0; solve via rref of m^T.
  const Echelon e = rref(f, transpose(m));
  const int n = m.rows();
  std::vector<bool> is_pivot(n, false);
  for (int c : e.pivots) is_pivot[c] = true;
  std::vector<int> free_cols;
  for (int c = 0; c < n; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Matrix out(static_cast<int>(free_cols.size()), n);
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const int fc = free_cols[k];
    out(static_cast<int>(k), fc) = 1;
    for (int r = 0; r < e.rank; ++r) {
      out(static_cast<int>(k), e.pivots[r]) = static_cast<Entry>(f.neg(e.reduced(r, fc)));
    }
  }
  return out;
}

std::vector<Entry> vec_mul(const gf::Field& f, std::span<const Entry> x, const Matrix& m) {
  require_tables(f);
  if (static_cast<int>(x.size()) != m.rows()) throw DomainError("vector/matrix shape mismatch");
  std::vector<Entry> out(m.cols(), 0);
  const auto t = f.tables();
  for (int k = 0; k < m.rows(); ++k)
    if (x[k]) kernels::row_axpy(t, out, m.row(k), x[k]);
  return out;
}

}  // namespace spreadlab::linalg
