#pragma once
// Dense exact linear algebra over a small field F_q (q <= 256). Vectors are
// rows and matrices act from the right, x -> x A.

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "spreadlab/errors.hpp"
#include "spreadlab/gf/field.hpp"

namespace spreadlab::linalg {

using Entry = std::uint8_t;

class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, 0) {}
  Matrix(std::initializer_list<std::initializer_list<int>> rows);

  static Matrix identity(int n);
  static Matrix scalar(int n, Entry lambda);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  bool empty() const { return rows_ == 0; }

  Entry operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  Entry& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  std::span<Entry> row(int r) { return {data_.data() + static_cast<std::size_t>(r) * cols_, static_cast<std::size_t>(cols_)}; }
  std::span<const Entry> row(int r) const {
    return {data_.data() + static_cast<std::size_t>(r) * cols_, static_cast<std::size_t>(cols_)};
  }
  const std::vector<Entry>& data() const { return data_; }
  std::vector<Entry>& data() { return data_; }

  bool is_zero() const;
  void swap_rows(int a, int b);
  /// Keep the first k rows.
  void truncate_rows(int k);

  friend bool operator==(const Matrix&, const Matrix&) = default;
  friend std::strong_ordering operator<=>(const Matrix&, const Matrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Entry> data_;
};

/// Thrown by inverse() on singular input; `witness` is a nonzero x with x A = 0.
class SingularMatrix : public DomainError {
 public:
  SingularMatrix(const char* what, std::vector<Entry> witness) : DomainError(what), witness(std::move(witness)) {}
  std::vector<Entry> witness;
};

struct Echelon {
  Matrix reduced;  // same shape as input, zero rows last
  int rank = 0;
  std::vector<int> pivots;
};

Echelon rref(const gf::Field& f, Matrix m);
int rank(const gf::Field& f, const Matrix& m);

Matrix mul(const gf::Field& f, const Matrix& a, const Matrix& b);
Matrix add(const gf::Field& f, const Matrix& a, const Matrix& b);
Matrix sub(const gf::Field& f, const Matrix& a, const Matrix& b);
Matrix scale(const gf::Field& f, const Matrix& a, Entry lambda);
Matrix transpose(const Matrix& a);
Matrix hstack(std::span<const Matrix> blocks);
Matrix vstack(std::span<const Matrix> blocks);
Matrix block(const Matrix& a, int row0, int col0, int rows, int cols);

Entry det(const gf::Field& f, const Matrix& m);
bool is_invertible(const gf::Field& f, const Matrix& m);
Matrix inverse(const gf::Field& f, const Matrix& m);
/// Basis (as rows) of the left kernel {x : x m = 0}; 0 rows if trivial.
Matrix kernel(const gf::Field& f, const Matrix& m);

std::vector<Entry> vec_mul(const gf::Field& f, std::span<const Entry> x, const Matrix& m);

}  // namespace spreadlab::linalg
