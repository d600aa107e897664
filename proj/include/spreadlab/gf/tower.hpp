#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "spreadlab/gf/field.hpp"
#include "spreadlab/linalg.hpp"

namespace spreadlab::gf {

/// The chain F_p <= F_q <= F_{q^n}, q = p^h.
///
/// The extension F_{q^n} is Field::make(p, h*n). Inside it, F_q is the fixed
/// field of x -> x^q, generated by w = g^((q^n-1)/(q-1)) for the generator g;
/// base-field codes are coordinates in the power basis 1, w, ..., w^(h-1), with
/// the minimal polynomial of w as that field's modulus. F_{q^n} is identified
/// with F_q^n through the basis 1, g, ..., g^(n-1); the minimal polynomial of g
/// over F_q is available as basis_polynomial().
class FieldTower {
 public:
  FieldTower(std::uint32_t p, unsigned h, unsigned n, std::uint32_t order_cap = kDefaultOrderCap);
  /// q must be a prime power with q <= 256.
  static FieldTower for_orders(std::uint64_t q, unsigned n, std::uint32_t order_cap = kDefaultOrderCap);

  const Field& extension() const { return ext_; }
  const Field& base() const { return base_; }
  std::uint32_t p() const { return ext_.characteristic(); }
  unsigned h() const { return h_; }
  unsigned n() const { return n_; }
  std::uint32_t q() const { return base_.order(); }

  Elem embed(Elem base_elem) const { return embed_[base_elem]; }
  std::optional<Elem> restrict_to_base(Elem a) const;

  /// Coordinates of a over F_q w.r.t. 1, g, ..., g^(n-1) (base codes).
  std::span<const linalg::Entry> coords(Elem a) const {
    return {coords_.data() + static_cast<std::size_t>(a) * n_, n_};
  }
  Elem from_coords(std::span<const linalg::Entry> c) const;
  Elem basis_element(unsigned j) const { return ext_.exp(j); }
  /// Matrix of x -> x a on row coordinate vectors.
  linalg::Matrix mult_matrix(Elem a) const;
  /// Monic minimal polynomial of g over F_q, little-endian base codes.
  std::vector<Elem> basis_polynomial() const;

 private:
  unsigned h_;
  unsigned n_;
  Field ext_;
  Field base_;
  std::vector<Elem> embed_;                // base code -> extension code
  std::vector<std::int64_t> restrict_;     // extension code -> base code or -1
  std::vector<linalg::Entry> coords_;      // q^n * n
};

}  // namespace spreadlab::gf
