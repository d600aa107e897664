#pragma once
// Finite fields GF(p^d) with elements coded as integers 0..p^d-1: the code of
// c_0 + c_1 t + ... + c_{d-1} t^{d-1} is sum c_i p^i (little-endian digits in
// the power basis of the modulus).

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "spreadlab/kernels.hpp"

namespace spreadlab::gf {

using Elem = std::uint32_t;

inline constexpr std::uint32_t kDefaultOrderCap = 1u << 20;
/// Largest order for which flat add/mul tables are kept (and linalg works).
inline constexpr std::uint32_t kTableOrderLimit = 256;

bool is_prime(std::uint64_t x);
/// (p, d) with q = p^d, or nullopt if q is not a prime power.
std::optional<std::pair<std::uint32_t, unsigned>> prime_power(std::uint64_t q);
std::vector<std::uint64_t> prime_factors(std::uint64_t x);
std::uint64_t ipow(std::uint64_t base, unsigned exp);

/// Monic polynomial over F_p, little-endian coefficients; trial division by
/// every monic polynomial of degree <= deg/2.
bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> poly);

class Field {
 public:
  /// Field of order p^degree whose modulus is the monic irreducible polynomial
  /// of that degree with the smallest coefficient code.
  static Field make(std::uint32_t p, unsigned degree, std::uint32_t order_cap = kDefaultOrderCap);
  static Field of_order(std::uint64_t q, std::uint32_t order_cap = kDefaultOrderCap);

  /// `modulus` is monic, little-endian, and must be irreducible over F_p.
  Field(std::uint32_t p, std::vector<std::uint32_t> modulus, std::uint32_t order_cap = kDefaultOrderCap);

  std::uint32_t characteristic() const { return p_; }
  unsigned degree() const { return degree_; }
  std::uint32_t order() const { return order_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  /// Primitive element with the smallest code.
  Elem generator() const { return generator_; }

  Elem add(Elem a, Elem b) const {
    if (small_) return add_[a * order_ + b];
    return add_digits(a, b, false);
  }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const {
    if (small_) return mul_[a * order_ + b];
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  /// Throws DomainError for a == 0.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;

  /// Exponent k in [0, order-2] with generator^k == a. Throws for a == 0.
  std::uint32_t dlog(Elem a) const;
  Elem exp(std::uint64_t k) const { return exp_[k % (order_ - 1)]; }

  bool is_subfield_order(std::uint64_t order) const;
  /// a^order == a. Throws DomainError if `order` is not a subfield order.
  bool is_in_subfield(Elem a, std::uint64_t order) const;
  /// Sorted codes of the subfield of the given order.
  std::vector<Elem> subfield(std::uint64_t order) const;

  std::vector<std::uint32_t> coefficients(Elem a) const;
  Elem from_coefficients(std::span<const std::uint32_t> c) const;

  bool has_tables() const { return small_; }
  /// Flat tables view; requires has_tables().
  kernels::FieldTables tables() const {
    return kernels::FieldTables{p_, order_, degree_, add_.data(), mul_.data()};
  }

 private:
  Elem add_digits(Elem a, Elem b, bool subtract) const;
  Elem poly_mul(Elem a, Elem b) const;
  Elem poly_pow(Elem a, std::uint64_t e) const;

  std::uint32_t p_ = 2;
  unsigned degree_ = 1;
  std::uint32_t order_ = 2;
  std::vector<std::uint32_t> modulus_;
  Elem generator_ = 1;
  std::vector<Elem> exp_;            // 2*(order-1) entries
  std::vector<std::uint32_t> log_;   // log_[0] unused
  bool small_ = false;
  std::vector<std::uint8_t> add_;    // small fields only
  std::vector<std::uint8_t> mul_;
  std::vector<std::uint8_t> neg_tab_;
};

}  // namespace spreadlab::gf
