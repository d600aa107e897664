#pragma once
// Subspaces of PG(m,q) as canonical RREF bases of rank k in F_q^{m+1}.

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "spreadlab/gf/field.hpp"
#include "spreadlab/linalg.hpp"

namespace spreadlab::geom {

using linalg::Entry;
using linalg::Matrix;

struct Subspace {
  Matrix basis;  // RREF, no zero rows; 0 x (m+1) for the empty subspace

  int rank() const { return basis.rows(); }
  int vector_dim() const { return basis.cols(); }
  /// Projective dimension; -1 for the empty subspace.
  int dim() const { return basis.rows() - 1; }
  bool empty() const { return basis.rows() == 0; }

  friend bool operator==(const Subspace&, const Subspace&) = default;
  friend std::strong_ordering operator<=>(const Subspace&, const Subspace&) = default;
};

/// Row space of `rows` in canonical form.
Subspace make_subspace(const gf::Field& f, Matrix rows);
Subspace empty_subspace(int vector_dim);
Subspace full_space(int vector_dim);

Subspace span(const gf::Field& f, const Subspace& a, const Subspace& b);
Subspace span(const gf::Field& f, std::span<const Subspace> parts);
Subspace meet(const gf::Field& f, const Subspace& a, const Subspace& b);
/// b is contained in a.
bool contains(const gf::Field& f, const Subspace& a, const Subspace& b);
bool contains_vector(const gf::Field& f, const Subspace& a, std::span<const Entry> v);

/// The n-1 space {(x A_1, ..., x A_r)} for n x n blocks A_i.
Subspace block_subspace(const gf::Field& f, std::span<const Matrix> blocks);
/// (0,...,I,...,0) with I in block i of r.
Subspace standard_element(const gf::Field& f, int n, int r, int i);

/// Big-endian mixed-radix code of a vector of F_q^len: sum v_i q^(len-1-i).
class Coder {
 public:
  Coder(std::uint32_t q, int len);
  std::uint32_t q() const { return q_; }
  int len() const { return len_; }
  std::uint64_t count() const { return count_; }
  std::uint64_t encode(std::span<const Entry> v) const;
  void decode(std::uint64_t code, std::span<Entry> out) const;
  std::vector<Entry> decode(std::uint64_t code) const;

 private:
  std::uint32_t q_;
  int len_;
  std::uint64_t count_;
};

/// Codes of all q^k vectors in the row space of `basis` (k rows), zero included.
std::vector<std::uint64_t> span_vectors(const gf::Field& f, const Matrix& basis, const Coder& coder);

/// Scale v so that its first nonzero entry is 1. v must be nonzero.
std::vector<Entry> normalize_point(const gf::Field& f, std::span<const Entry> v);
/// Canonical representatives of the points of s, in increasing code order.
std::vector<std::vector<Entry>> points_of(const gf::Field& f, const Subspace& s);
std::uint64_t gaussian_point_count(std::uint64_t q, int rank);

/// Every k-subset of `list` spans F_q^{kn}; all members must have rank n.
bool in_general_position(const gf::Field& f, std::span<const Subspace> list, int k);

/// For S_1..S_k, S_0 in general position in PG(kn-1,q): an invertible T with
/// S_i T = standard_element(i) and S_0 T = (I,...,I). Throws DomainError if
/// the input is not in general position.
Matrix frame_normalization(const gf::Field& f, std::span<const Subspace> list);

/// Image {x T : x in s}. Throws DomainError if T is singular.
Subspace apply_collineation(const gf::Field& f, const Matrix& t, const Subspace& s);

}  // namespace spreadlab::geom
