#include "spreadlab/gf/field.hpp"

#include <algorithm>
#include <string>

#include "spreadlab/errors.hpp"

namespace spreadlab::gf {

bool is_prime(std::uint64_t x) {
  if (x < 2) return false;
  for (std::uint64_t d = 2; d * d <= x; ++d)
    if (x % d == 0) return false;
  return true;
}

std::optional<std::pair<std::uint32_t, unsigned>> prime_power(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  std::uint64_t p = 0;
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) return std::make_pair(static_cast<std::uint32_t>(q), 1u);
  unsigned e = 0;
  while (q % p == 0) {
    q /= p;
    ++e;
  }
  if (q != 1) return std::nullopt;
  return std::make_pair(static_cast<std::uint32_t>(p), e);
}

std::vector<std::uint64_t> prime_factors(std::uint64_t x) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= x; ++d) {
    if (x % d == 0) {
      out.push_back(d);
      while (x % d == 0) x /= d;
    }
  }
  if (x > 1) out.push_back(x);
  return out;
}

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  while (exp--) r *= base;
  return r;
}

namespace {

using Poly = std::vector<std::uint32_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  // p is prime and small; Fermat.
  std::uint64_t r = 1, b = a % p;
  std::uint32_t e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

// Remainder of a modulo b over F_p (b nonzero).
Poly poly_rem(Poly a, const Poly& b, std::uint32_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  const std::uint32_t lead_inv = inv_mod(b.back(), p);
  while (a.size() >= b.size()) {
    const std::uint64_t f = static_cast<std::uint64_t>(a.back()) * lead_inv % p;
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) {
      const std::uint64_t sub = f * b[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

}  // namespace

bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> poly) {
  Poly f(poly.begin(), poly.end());
  trim(f);
  if (f.size() < 2) return false;
  const unsigned deg = static_cast<unsigned>(f.size() - 1);
  for (unsigned d = 1; d <= deg / 2; ++d) {
    const std::uint64_t count = ipow(p, d);
    for (std::uint64_t code = 0; code < count; ++code) {
      Poly g(d + 1);
      std::uint64_t c = code;
      for (unsigned i = 0; i < d; ++i) {
        g[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      g[d] = 1;
      if (poly_rem(f, g, p).empty()) return false;
    }
  }
  return true;
}

Field Field::make(std::uint32_t p, unsigned degree, std::uint32_t order_cap) {
  if (!is_prime(p)) throw DomainError("characteristic " + std::to_string(p) + " is not prime");
  if (degree == 0) throw DomainError("field degree must be positive");
  const std::uint64_t count = ipow(p, degree);
  if (count > order_cap) throw DomainError("field order exceeds the configured cap");
  for (std::uint64_t code = 0; code < count; ++code) {
    std::vector<std::uint32_t> f(degree + 1);
    std::uint64_t c = code;
    for (unsigned i = 0; i < degree; ++i) {
      f[i] = static_cast<std::uint32_t>(c % p);
      c /= p;
    }
    f[degree] = 1;
    if (is_irreducible(p, f)) return Field(p, std::move(f), order_cap);
  }
  throw DomainError("no irreducible polynomial found");  // unreachable
}

Field Field::of_order(std::uint64_t q, std::uint32_t order_cap) {
  const auto pp = prime_power(q);
  if (!pp) throw DomainError(std::to_string(q) + " is not a prime power");
  return make(pp->first, pp->second, order_cap);
}

Field::Field(std::uint32_t p, std::vector<std::uint32_t> modulus, std::uint32_t order_cap)
    : p_(p), modulus_(std::move(modulus)) {
  if (!is_prime(p_)) throw DomainError("characteristic " + std::to_string(p_) + " is not prime");
  trim(modulus_);
  if (modulus_.size() < 2 || modulus_.back() != 1) throw DomainError("modulus must be monic of positive degree");
  for (auto c : modulus_)
    if (c >= p_) throw DomainError("modulus coefficient not reduced mod p");
  if (!is_irreducible(p_, modulus_)) throw DomainError("modulus is not irreducible");
  degree_ = static_cast<unsigned>(modulus_.size() - 1);
  const std::uint64_t order = ipow(p_, degree_);
  if (order > order_cap) throw DomainError("field order exceeds the configured cap");
  order_ = static_cast<std::uint32_t>(order);

  const std::uint32_t m = order_ - 1;
  const auto factors = prime_factors(m);
  generator_ = 0;
  for (Elem cand = 1; cand < order_; ++cand) {
    if (poly_pow(cand, m) != 1) continue;
    bool primitive = true;
    for (auto l : factors) {
      if (poly_pow(cand, m / l) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      generator_ = cand;
      break;
    }
  }
  if (generator_ == 0) throw DomainError("no primitive element found");

  exp_.assign(2 * static_cast<std::size_t>(m), 0);
  log_.assign(order_, 0);
  Elem x = 1;
  for (std::uint32_t k = 0; k < m; ++k) {
    exp_[k] = x;
    exp_[k + m] = x;
    log_[x] = k;
    x = poly_mul(x, generator_);
  }
  if (x != 1) throw DomainError("generator order check failed");
  for (Elem a = 1; a < order_; ++a)
    if (a != 1 && log_[a] == 0) throw DomainError("generator does not reach every nonzero element");

  if (order_ <= kTableOrderLimit) {
    small_ = true;
    add_.resize(static_cast<std::size_t>(order_) * order_);
    mul_.resize(static_cast<std::size_t>(order_) * order_);
    neg_tab_.resize(order_);
    for (Elem a = 0; a < order_; ++a) {
      neg_tab_[a] = static_cast<std::uint8_t>(add_digits(0, a, true));
      for (Elem b = 0; b < order_; ++b) {
        add_[a * order_ + b] = static_cast<std::uint8_t>(add_digits(a, b, false));
        mul_[a * order_ + b] =
            static_cast<std::uint8_t>((a == 0 || b == 0) ? 0 : exp_[log_[a] + log_[b]]);
      }
    }
  }
}

Elem Field::add_digits(Elem a, Elem b, bool subtract) const {
  if (p_ == 2) return a ^ b;
  Elem r = 0, scale = 1;
  while (a || b) {
    const Elem da = a % p_, db = b % p_;
    const Elem d = subtract ? (da + p_ - db) % p_ : (da + db) % p_;
    r += d * scale;
    scale *= p_;
    a /= p_;
    b /= p_;
  }
  return r;
}

Elem Field::neg(Elem a) const {
  if (small_) return neg_tab_[a];
  return add_digits(0, a, true);
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw DomainError("inverse of zero");
  const std::uint32_t m = order_ - 1;
  return exp_[(m - log_[a]) % m];
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  const std::uint64_t m = order_ - 1;
  return exp_[(static_cast<std::uint64_t>(log_[a]) * (e % m)) % m];
}

std::uint32_t Field::dlog(Elem a) const {
  if (a == 0) throw DomainError("discrete log of zero");
  return log_[a];
}

bool Field::is_subfield_order(std::uint64_t order) const {
  const auto pp = prime_power(order);
  return pp && pp->first == p_ && degree_ % pp->second == 0;
}

bool Field::is_in_subfield(Elem a, std::uint64_t order) const {
  if (!is_subfield_order(order))
    throw DomainError(std::to_string(order) + " is not a subfield order of GF(" + std::to_string(order_) + ")");
  return pow(a, order) == a;
}

std::vector<Elem> Field::subfield(std::uint64_t order) const {
  if (!is_subfield_order(order))
    throw DomainError(std::to_string(order) + " is not a subfield order of GF(" + std::to_string(order_) + ")");
  std::vector<Elem> out{0};
  const std::uint64_t step = (order_ - 1) / (order - 1);
  for (std::uint64_t j = 0; j + 1 < order; ++j) out.push_back(exp_[j * step]);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint32_t> Field::coefficients(Elem a) const {
  std::vector<std::uint32_t> c(degree_);
  for (unsigned i = 0; i < degree_; ++i) {
    c[i] = a % p_;
    a /= p_;
  }
  return c;
}

Elem Field::from_coefficients(std::span<const std::uint32_t> c) const {
  if (c.size() > degree_) throw DomainError("too many coefficients for field degree");
  Elem r = 0, scale = 1;
  for (auto ci : c) {
    r += (ci % p_) * scale;
    scale *= p_;
  }
  return r;
}

Elem Field::poly_mul(Elem a, Elem b) const {
  const auto ca = coefficients(a), cb = coefficients(b);
  Poly prod(2 * degree_, 0);
  for (unsigned i = 0; i < degree_; ++i) {
    if (!ca[i]) continue;
    for (unsigned j = 0; j < degree_; ++j)
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + static_cast<std::uint64_t>(ca[i]) * cb[j]) % p_);
  }
  const Poly r = poly_rem(std::move(prod), modulus_, p_);
  return from_coefficients(r);
}

Elem Field::poly_pow(Elem a, std::uint64_t e) const {
  Elem r = 1, b = a;
  while (e) {
    if (e & 1) r = poly_mul(r, b);
    b = poly_mul(b, b);
    e >>= 1;
  }
  return r;
}

}  // namespace spreadlab::gf
