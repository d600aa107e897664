#include "spreadlab/spreadsets.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "spreadlab/errors.hpp"
#include "spreadlab/projgeom.hpp"

namespace spreadlab::sets {
namespace {

using geom::Coder;

std::vector<Entry> unit_vector(int n, int i) {
  std::vector<Entry> v(n, 0);
  v[i] = 1;
  return v;
}

// Vector-code arithmetic of F_q^n for the quasifield tables.
std::vector<std::uint32_t> vector_add_table(const gf::Field& f, int n) {
  const Coder coder(f.order(), n);
  const auto order = static_cast<std::uint32_t>(coder.count());
  std::vector<std::uint32_t> t(std::size_t(order) * order);
  std::vector<Entry> a(n), b(n);
  for (std::uint32_t x = 0; x < order; ++x) {
    coder.decode(x, a);
    for (std::uint32_t y = 0; y < order; ++y) {
      coder.decode(y, b);
      std::vector<Entry> s(n);
      for (int i = 0; i < n; ++i) s[i] = static_cast<Entry>(f.add(a[i], b[i]));
      t[std::size_t(x) * order + y] = static_cast<std::uint32_t>(coder.encode(s));
    }
  }
  return t;
}

std::vector<std::uint32_t> negation(const Quasifield& qf) {
  std::vector<std::uint32_t> neg(qf.order);
  for (std::uint32_t x = 0; x < qf.order; ++x)
    for (std::uint32_t y = 0; y < qf.order; ++y)
      if (qf.add(x, y) == 0) neg[x] = y;
  return neg;
}

}  // namespace

bool SpreadSet::contains(const Matrix& m) const { return index_of(m) >= 0; }

int SpreadSet::index_of(const Matrix& m) const {
  auto it = std::lower_bound(matrices.begin(), matrices.end(), m);
  if (it == matrices.end() || *it != m) return -1;
  return static_cast<int>(it - matrices.begin());
}

SpreadSet make_spread_set(std::uint32_t q, int n, std::vector<Matrix> matrices) {
  for (const auto& m : matrices)
    if (m.rows() != n || m.cols() != n) throw DomainError("spread set member has the wrong shape");
  SpreadSet s;
  s.q = q;
  s.n = n;
  std::sort(matrices.begin(), matrices.end());
  s.matrices = std::move(matrices);
  s.contains_zero = s.contains(Matrix(n, n));
  s.contains_identity = s.contains(Matrix::identity(n));
  return s;
}

SpreadSetCheck validate_spread_set(const gf::Field& f, const SpreadSet& m) {
  SpreadSetCheck r;
  const auto expected = gf::ipow(m.q, static_cast<unsigned>(m.n));
  if (m.matrices.size() != expected) {
    r.reason = "expected " + std::to_string(expected) + " matrices, found " + std::to_string(m.matrices.size());
    return r;
  }
  for (std::size_t i = 0; i < m.matrices.size(); ++i) {
    for (std::size_t j = i + 1; j < m.matrices.size(); ++j) {
      if (m.matrices[i] == m.matrices[j]) {
        r.reason = "repeated matrix";
        r.pair = {static_cast<int>(i), static_cast<int>(j)};
        return r;
      }
      if (linalg::det(f, linalg::sub(f, m.matrices[i], m.matrices[j])) == 0) {
        r.reason = "singular difference";
        r.pair = {static_cast<int>(i), static_cast<int>(j)};
        return r;
      }
    }
  }
  r.ok = true;
  return r;
}

void require_standard(const gf::Field& f, const SpreadSet& m, const char* what) {
  const auto check = validate_spread_set(f, m);
  if (!check.ok) throw DomainError(std::string(what) + ": invalid spread set (" + check.reason + ")");
  if (!m.contains_zero || !m.contains_identity) throw DomainError(std::string(what) + ": spread set must contain 0 and I");
}

SpreadSet desarguesian_spread_set(const gf::FieldTower& tower) {
  std::vector<Matrix> ms;
  for (gf::Elem a = 0; a < tower.extension().order(); ++a) ms.push_back(tower.mult_matrix(a));
  return make_spread_set(tower.q(), static_cast<int>(tower.n()), std::move(ms));
}

Quasifield quasifield_from_spread_set(const gf::Field& f, const SpreadSet& m, std::optional<std::vector<Entry>> e) {
  const int n = m.n;
  const Coder coder(f.order(), n);
  if (coder.count() > kMaxQuasifieldOrder) throw DomainError("quasifield order too large");
  if (m.matrices.size() != coder.count()) throw DomainError("spread set has the wrong size");
  const std::vector<Entry> ev = e ? *e : unit_vector(n, 0);
  if (static_cast<int>(ev.size()) != n || std::all_of(ev.begin(), ev.end(), [](Entry x) { return x == 0; }))
    throw DomainError("e must be a nonzero vector of length n");

  Quasifield qf;
  qf.q = f.order();
  qf.n = n;
  qf.order = static_cast<std::uint32_t>(coder.count());
  qf.unit = static_cast<std::uint32_t>(coder.encode(ev));
  qf.add_table = vector_add_table(f, n);

  std::vector<int> by_y(qf.order, -1);
  for (std::size_t i = 0; i < m.matrices.size(); ++i) {
    const auto y = coder.encode(linalg::vec_mul(f, ev, m.matrices[i]));
    if (by_y[y] >= 0) throw DomainError("two matrices share e M; not a spread set");
    by_y[y] = static_cast<int>(i);
  }
  qf.mul_table.assign(std::size_t(qf.order) * qf.order, 0);
  std::vector<Entry> x(n);
  for (std::uint32_t xc = 0; xc < qf.order; ++xc) {
    coder.decode(xc, x);
    for (std::uint32_t y = 0; y < qf.order; ++y)
      qf.mul_table[std::size_t(xc) * qf.order + y] =
          static_cast<std::uint32_t>(coder.encode(linalg::vec_mul(f, x, m.matrices[by_y[y]])));
  }
  return qf;
}

SpreadSet spread_set_from_quasifield(const gf::Field& f, const Quasifield& qf) {
  const int n = qf.n;
  const Coder coder(f.order(), n);
  std::vector<Entry> x(n), sx(n);
  // x -> x * y must be F_q-linear for every y
  for (std::uint32_t y = 0; y < qf.order; ++y) {
    for (std::uint32_t a = 0; a < qf.order; ++a) {
      for (std::uint32_t b = 0; b < qf.order; ++b)
        if (qf.mul(qf.add(a, b), y) != qf.add(qf.mul(a, y), qf.mul(b, y)))
          throw DomainError("multiplication is not additive in the left argument");
      coder.decode(a, x);
      for (gf::Elem l = 2; l < f.order(); ++l) {
        for (int i = 0; i < n; ++i) sx[i] = static_cast<Entry>(f.mul(l, x[i]));
        const auto lhs = qf.mul(static_cast<std::uint32_t>(coder.encode(sx)), y);
        coder.decode(qf.mul(a, y), x);
        for (int i = 0; i < n; ++i) x[i] = static_cast<Entry>(f.mul(l, x[i]));
        if (lhs != coder.encode(x)) throw DomainError("F_q is not in the kernel");
        coder.decode(a, x);
      }
    }
  }
  std::vector<Matrix> ms;
  for (std::uint32_t y = 0; y < qf.order; ++y) {
    Matrix my(n, n);
    for (int i = 0; i < n; ++i) {
      const auto row = coder.decode(qf.mul(static_cast<std::uint32_t>(coder.encode(unit_vector(n, i))), y));
      for (int j = 0; j < n; ++j) my(i, j) = row[j];
    }
    ms.push_back(std::move(my));
  }
  return make_spread_set(f.order(), n, std::move(ms));
}

bool AxiomReport::quasifield() const {
  for (const auto& a : axioms)
    if (a.name.rfind("(", 0) == 0 && !a.pass) return false;
  return true;
}

const AxiomResult& AxiomReport::get(const std::string& name) const {
  for (const auto& a : axioms)
    if (a.name == name) return a;
  throw DomainError("no axiom named " + name);
}

bool is_associative(const Quasifield& qf) {
  const auto o = qf.order;
  for (std::uint32_t a = 0; a < o; ++a)
    for (std::uint32_t b = 0; b < o; ++b) {
      const auto ab = qf.mul(a, b);
      for (std::uint32_t c = 0; c < o; ++c)
        if (qf.mul(ab, c) != qf.mul(a, qf.mul(b, c))) return false;
    }
  return true;
}

bool is_left_distributive(const Quasifield& qf) {
  const auto o = qf.order;
  for (std::uint32_t a = 0; a < o; ++a)
    for (std::uint32_t b = 0; b < o; ++b)
      for (std::uint32_t c = 0; c < o; ++c)
        if (qf.mul(a, qf.add(b, c)) != qf.add(qf.mul(a, b), qf.mul(a, c))) return false;
  return true;
}

AxiomReport check_quasifield_axioms(const gf::Field&, const Quasifield& qf) {
  const auto o = qf.order;
  const auto one = qf.unit;
  AxiomReport rep;
  auto add_result = [&](std::string name, std::optional<std::vector<std::uint32_t>> w) {
    rep.axioms.push_back({std::move(name), !w.has_value(), w.value_or(std::vector<std::uint32_t>{})});
  };
  using W = std::optional<std::vector<std::uint32_t>>;

  // (i) additive group with identity 0
  W w;
  for (std::uint32_t a = 0; a < o && !w; ++a) {
    if (qf.add(0, a) != a || qf.add(a, 0) != a) w = std::vector<std::uint32_t>{a};
    bool has_inv = false;
    for (std::uint32_t b = 0; b < o && !w; ++b) {
      if (qf.add(a, b) == 0 && qf.add(b, a) == 0) has_inv = true;
      for (std::uint32_t c = 0; c < o; ++c)
        if (qf.add(qf.add(a, b), c) != qf.add(a, qf.add(b, c))) {
          w = std::vector<std::uint32_t>{a, b, c};
          break;
        }
    }
    if (!w && !has_inv) w = std::vector<std::uint32_t>{a};
  }
  add_result("(i) additive group", w);

  // (ii) loop on Q \ {0} with identity 1
  w.reset();
  for (std::uint32_t a = 0; a < o && !w; ++a)
    if (qf.mul(one, a) != a || qf.mul(a, one) != a) w = std::vector<std::uint32_t>{a};
  for (std::uint32_t a = 1; a < o && !w; ++a) {
    std::vector<char> row(o, 0), col(o, 0);
    for (std::uint32_t x = 0; x < o; ++x) {
      const auto r = qf.mul(a, x), c = qf.mul(x, a);
      if ((x != 0 && (r == 0 || c == 0)) || row[r]++ || col[c]++) {
        w = std::vector<std::uint32_t>{a, x};
        break;
      }
    }
  }
  add_result("(ii) multiplicative loop", w);

  // (iii) right distributivity
  w.reset();
  for (std::uint32_t a = 0; a < o && !w; ++a)
    for (std::uint32_t b = 0; b < o && !w; ++b)
      for (std::uint32_t c = 0; c < o; ++c)
        if (qf.mul(qf.add(a, b), c) != qf.add(qf.mul(a, c), qf.mul(b, c))) {
          w = std::vector<std::uint32_t>{a, b, c};
          break;
        }
  add_result("(iii) right distributivity", w);

  // (iv) x*a = x*b + c uniquely solvable for a != b
  w.reset();
  const auto neg = negation(qf);
  for (std::uint32_t a = 0; a < o && !w; ++a)
    for (std::uint32_t b = 0; b < o && !w; ++b) {
      if (a == b) continue;
      std::vector<char> seen(o, 0);
      for (std::uint32_t x = 0; x < o; ++x) {
        const auto c = qf.add(qf.mul(x, a), neg[qf.mul(x, b)]);
        if (seen[c]++) {
          w = std::vector<std::uint32_t>{a, b, c};
          break;
        }
      }
    }
  add_result("(iv) unique solutions", w);

  w.reset();
  for (std::uint32_t a = 0; a < o && !w; ++a)
    for (std::uint32_t b = 0; b < o && !w; ++b)
      for (std::uint32_t c = 0; c < o; ++c)
        if (qf.mul(qf.mul(a, b), c) != qf.mul(a, qf.mul(b, c))) {
          w = std::vector<std::uint32_t>{a, b, c};
          break;
        }
  add_result("associativity", w);

  w.reset();
  for (std::uint32_t a = 0; a < o && !w; ++a)
    for (std::uint32_t b = 0; b < o && !w; ++b)
      for (std::uint32_t c = 0; c < o; ++c)
        if (qf.mul(a, qf.add(b, c)) != qf.add(qf.mul(a, b), qf.mul(a, c))) {
          w = std::vector<std::uint32_t>{a, b, c};
          break;
        }
  add_result("left distributivity", w);

  w.reset();
  for (std::uint32_t a = 0; a < o && !w; ++a)
    for (std::uint32_t b = a + 1; b < o; ++b)
      if (qf.mul(a, b) != qf.mul(b, a)) {
        w = std::vector<std::uint32_t>{a, b};
        break;
      }
  add_result("commutativity", w);
  return rep;
}

std::vector<std::uint32_t> kernel_of(const Quasifield& qf) {
  std::vector<std::uint32_t> out;
  const auto o = qf.order;
  for (std::uint32_t k = 0; k < o; ++k) {
    bool ok = true;
    for (std::uint32_t x = 0; x < o && ok; ++x) {
      const auto kx = qf.mul(k, x);
      for (std::uint32_t y = 0; y < o; ++y) {
        if (qf.mul(k, qf.mul(x, y)) != qf.mul(kx, y) || qf.mul(k, qf.add(x, y)) != qf.add(kx, qf.mul(k, y))) {
          ok = false;
          break;
        }
      }
    }
    if (ok) out.push_back(k);
  }
  return out;
}

bool is_nearfield_set(const gf::Field& f, const SpreadSet& m) {
  for (const auto& a : m.matrices)
    for (const auto& b : m.matrices)
      if (!m.contains(linalg::mul(f, a, b))) return false;
  return true;
}

bool is_semifield_set(const gf::Field& f, const SpreadSet& m) {
  for (std::size_t i = 0; i < m.matrices.size(); ++i)
    for (std::size_t j = i; j < m.matrices.size(); ++j)
      if (!m.contains(linalg::add(f, m.matrices[i], m.matrices[j]))) return false;
  return true;
}

bool is_dickson_pair(std::uint64_t q, unsigned n) {
  if (!gf::prime_power(q) || n == 0) return false;
  for (auto l : gf::prime_factors(n))
    if ((q - 1) % l != 0) return false;
  if (q % 4 == 3 && n % 4 == 0) return false;
  return true;
}

const std::vector<std::pair<std::uint32_t, unsigned>>& exceptional_nearfield_parameters() {
  static const std::vector<std::pair<std::uint32_t, unsigned>> table = {
      {5, 2}, {7, 2}, {11, 2}, {11, 2}, {23, 2}, {29, 2}, {59, 2}};
  return table;
}

bool admits_proper_regular_nearfield(std::uint64_t q, unsigned n) {
  for (unsigned k = 1; k < n; ++k) {
    if (n % k) continue;
    const auto qk = gf::ipow(q, k);
    if (is_dickson_pair(qk, n / k)) return true;
    for (auto [eq, en] : exceptional_nearfield_parameters())
      if (eq == qk && en == n / k) return true;
  }
  return false;
}

std::vector<Matrix> right_nucleus(const gf::Field& f, const SpreadSet& m) {
  std::vector<Matrix> out;
  for (const auto& x : m.matrices) {
    bool ok = x.is_zero() || linalg::is_invertible(f, x);
    for (std::size_t i = 0; ok && !x.is_zero() && i < m.matrices.size(); ++i)
      ok = m.contains(linalg::mul(f, m.matrices[i], x));
    if (ok) out.push_back(x);
  }
  return out;
}

std::vector<Matrix> middle_nucleus(const gf::Field& f, const SpreadSet& m) {
  std::vector<Matrix> out;
  for (const auto& x : m.matrices) {
    bool ok = x.is_zero() || linalg::is_invertible(f, x);
    for (std::size_t i = 0; ok && !x.is_zero() && i < m.matrices.size(); ++i)
      ok = m.contains(linalg::mul(f, x, m.matrices[i]));
    if (ok) out.push_back(x);
  }
  return out;
}

std::vector<Matrix> center(const gf::Field& f, const SpreadSet& m) {
  const auto nr = right_nucleus(f, m);
  const auto nm = middle_nucleus(f, m);
  std::vector<Matrix> both;
  std::set_intersection(nr.begin(), nr.end(), nm.begin(), nm.end(), std::back_inserter(both));
  std::vector<Matrix> out;
  for (const auto& x : both) {
    bool ok = true;
    for (const auto& y : m.matrices)
      if (linalg::mul(f, x, y) != linalg::mul(f, y, x)) {
        ok = false;
        break;
      }
    if (ok) out.push_back(x);
  }
  return out;
}

DicksonNearfield dickson_nearfield(const gf::FieldTower& tower) {
  const std::uint64_t q = tower.q();
  const unsigned n = tower.n();
  if (!is_dickson_pair(q, n))
    throw DomainError("(" + std::to_string(q) + ", " + std::to_string(n) + ") is not a Dickson pair");
  const auto& ext = tower.extension();
  const gf::Field& fq = tower.base();

  // residue of (q^j - 1)/(q - 1) mod n -> j
  std::vector<int> j_of(n, -1);
  bool labelled = true;
  std::uint64_t qj = 1;
  for (unsigned j = 0; j < n; ++j) {
    const auto res = ((qj - 1) / (q - 1)) % n;
    if (j_of[res] >= 0) labelled = false;
    j_of[res] = static_cast<int>(j);
    qj *= q;
  }

  DicksonNearfield out;
  bool valid = labelled;
  if (valid) {
    std::vector<Matrix> ms;
    for (gf::Elem y = 0; y < ext.order(); ++y) {
      Matrix my(static_cast<int>(n), static_cast<int>(n));
      if (y != 0) {
        const int j = j_of[ext.dlog(y) % n];
        const auto power = gf::ipow(q, static_cast<unsigned>(j));
        for (unsigned i = 0; i < n; ++i) {
          const auto c = tower.coords(ext.mul(ext.pow(tower.basis_element(i), power), y));
          for (unsigned k = 0; k < n; ++k) my(static_cast<int>(i), static_cast<int>(k)) = c[k];
        }
      }
      ms.push_back(std::move(my));
    }
    out.set = make_spread_set(fq.order(), static_cast<int>(n), std::move(ms));
    valid = validate_spread_set(fq, out.set).ok && out.set.contains_identity;
    if (valid) {
      out.quasifield = quasifield_from_spread_set(fq, out.set);
      const auto rep = check_quasifield_axioms(fq, out.quasifield);
      valid = rep.quasifield() && rep.get("associativity").pass;
    }
    if (valid && gf::ipow(q, n) <= 81) {
      const auto found = search_closed_spread_sets(fq, static_cast<int>(n), Closure::multiplication);
      valid = std::find(found.begin(), found.end(), out.set) != found.end();
    }
  }
  if (!valid) {
    const auto found = search_closed_spread_sets(fq, static_cast<int>(n), Closure::multiplication);
    auto it = std::find_if(found.begin(), found.end(), [&](const SpreadSet& s) { return !is_semifield_set(fq, s); });
    if (it == found.end() && !found.empty()) it = found.begin();
    if (it == found.end()) throw DomainError("no multiplication-closed spread set found");
    out.set = *it;
    out.quasifield = quasifield_from_spread_set(fq, out.set);
    out.from_search = true;
  }
  return out;
}

const char* closure_name(Closure c) { return c == Closure::multiplication ? "multiplication" : "addition"; }

SpreadSet random_transform(const gf::Field& f, const SpreadSet& m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int n = m.n;
  Matrix p(n, n);
  do {
    for (auto& x : p.data()) x = static_cast<Entry>(rng() % f.order());
  } while (!linalg::is_invertible(f, p));
  Matrix x;
  do {
    x = m.matrices[rng() % m.matrices.size()];
  } while (x.is_zero());
  const Matrix p_inv = linalg::inverse(f, p);
  const Matrix x_inv = linalg::inverse(f, x);
  std::vector<Matrix> out;
  for (const auto& a : m.matrices) out.push_back(linalg::mul(f, linalg::mul(f, p_inv, linalg::mul(f, a, x_inv)), p));
  return make_spread_set(m.q, n, std::move(out));
}

}  // namespace spreadlab::sets
