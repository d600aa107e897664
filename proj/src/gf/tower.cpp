#include "spreadlab/gf/tower.hpp"

#include <string>

#include "spreadlab/errors.hpp"

namespace spreadlab::gf {
namespace {

// Monic product of (t - c) over the given roots, coefficients in `f`.
std::vector<Elem> product_of_linear_factors(const Field& f, std::span<const Elem> roots) {
  std::vector<Elem> poly{1};
  for (Elem c : roots) {
    std::vector<Elem> next(poly.size() + 1, 0);
    const Elem minus_c = f.neg(c);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] = f.add(next[i + 1], poly[i]);
      next[i] = f.add(next[i], f.mul(poly[i], minus_c));
    }
    poly = std::move(next);
  }
  return poly;
}

std::vector<Elem> frobenius_orbit(const Field& f, Elem a, std::uint64_t step_order, unsigned length) {
  std::vector<Elem> out;
  Elem x = a;
  for (unsigned i = 0; i < length; ++i) {
    out.push_back(x);
    x = f.pow(x, step_order);
  }
  return out;
}

Field make_extension(std::uint32_t p, unsigned h, unsigned n, std::uint32_t cap) {
  if (h == 0 || n == 0) throw DomainError("tower degrees must be positive");
  if (ipow(p, h) > kTableOrderLimit) throw DomainError("base field order must be <= 256");
  return Field::make(p, h * n, cap);
}

Field make_base(const Field& ext, unsigned h, unsigned n) {
  const std::uint32_t p = ext.characteristic();
  const std::uint64_t q = ipow(p, h);
  const Elem omega = ext.exp((ext.order() - 1) / (q - 1));
  (void)n;
  const auto roots = frobenius_orbit(ext, omega, p, h);
  const auto poly = product_of_linear_factors(ext, roots);
  std::vector<std::uint32_t> modulus;
  for (Elem c : poly) {
    if (c >= p) throw DomainError("minimal polynomial has coefficients outside F_p");
    modulus.push_back(c);
  }
  return Field(p, std::move(modulus));
}

}  // namespace

FieldTower::FieldTower(std::uint32_t p, unsigned h, unsigned n, std::uint32_t order_cap)
    : h_(h), n_(n), ext_(make_extension(p, h, n, order_cap)), base_(make_base(ext_, h, n)) {
  const std::uint32_t q = base_.order();
  const Elem omega = ext_.exp((ext_.order() - 1) / (q - 1));

  embed_.assign(q, 0);
  restrict_.assign(ext_.order(), -1);
  for (Elem c = 0; c < q; ++c) {
    const auto digits = base_.coefficients(c);
    Elem x = 0;
    for (unsigned i = 0; i < h_; ++i) x = ext_.add(x, ext_.mul(digits[i], ext_.pow(omega, i)));
    embed_[c] = x;
    restrict_[x] = c;
  }

  // F_p-basis w^i g^j of F_{q^n}, index j*h + i.
  const Field fp = Field::make(p, 1);
  const int dim = static_cast<int>(h_ * n_);
  linalg::Matrix basis(dim, dim);
  for (unsigned j = 0; j < n_; ++j) {
    for (unsigned i = 0; i < h_; ++i) {
      const Elem b = ext_.mul(ext_.pow(omega, i), ext_.exp(j));
      const auto c = ext_.coefficients(b);
      for (int k = 0; k < dim; ++k) basis(static_cast<int>(j * h_ + i), k) = static_cast<linalg::Entry>(c[k]);
    }
  }
  const linalg::Matrix to_basis = linalg::inverse(fp, basis);

  coords_.assign(static_cast<std::size_t>(ext_.order()) * n_, 0);
  std::vector<linalg::Entry> lambda(dim);
  const auto tp = fp.tables();
  for (Elem x = 0; x < ext_.order(); ++x) {
    std::fill(lambda.begin(), lambda.end(), 0);
    const auto cx = ext_.coefficients(x);
    for (int k = 0; k < dim; ++k)
      if (cx[k]) kernels::row_axpy(tp, lambda, to_basis.row(k), static_cast<linalg::Entry>(cx[k]));
    for (unsigned j = 0; j < n_; ++j) {
      Elem a = 0, scale = 1;
      for (unsigned i = 0; i < h_; ++i) {
        a += lambda[j * h_ + i] * scale;
        scale *= p;
      }
      coords_[static_cast<std::size_t>(x) * n_ + j] = static_cast<linalg::Entry>(a);
    }
  }
}

FieldTower FieldTower::for_orders(std::uint64_t q, unsigned n, std::uint32_t order_cap) {
  const auto pp = prime_power(q);
  if (!pp) throw DomainError(std::to_string(q) + " is not a prime power");
  return FieldTower(pp->first, pp->second, n, order_cap);
}

std::optional<Elem> FieldTower::restrict_to_base(Elem a) const {
  const auto r = restrict_[a];
  if (r < 0) return std::nullopt;
  return static_cast<Elem>(r);
}

Elem FieldTower::from_coords(std::span<const linalg::Entry> c) const {
  if (c.size() != n_) throw DomainError("coordinate vector has wrong length");
  Elem x = 0;
  for (unsigned j = 0; j < n_; ++j) x = ext_.add(x, ext_.mul(embed_[c[j]], ext_.exp(j)));
  return x;
}

linalg::Matrix FieldTower::mult_matrix(Elem a) const {
  const int n = static_cast<int>(n_);
  linalg::Matrix m(n, n);
  for (int j = 0; j < n; ++j) {
    const auto c = coords(ext_.mul(ext_.exp(static_cast<std::uint64_t>(j)), a));
    for (int k = 0; k < n; ++k) m(j, k) = c[k];
  }
  return m;
}

std::vector<Elem> FieldTower::basis_polynomial() const {
  const auto roots = frobenius_orbit(ext_, ext_.generator(), q(), n_);
  const auto poly = product_of_linear_factors(ext_, roots);
  std::vector<Elem> out;
  for (Elem c : poly) {
    const auto r = restrict_to_base(c);
    if (!r) throw DomainError("basis polynomial coefficient outside F_q");
    out.push_back(*r);
  }
  return out;
}

}  // namespace spreadlab::gf
