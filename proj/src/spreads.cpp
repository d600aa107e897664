#include "spreadlab/spreads.hpp"

#include <algorithm>
#include <atomic>

#include "spreadlab/errors.hpp"
#include "spreadlab/fieldreduction.hpp"
#include "spreadlab/kernels.hpp"
#include "spreadlab/parallel.hpp"

namespace spreadlab::spreads {
namespace {

std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

// Iterate over all tuples of `len` members of m.
template <class Fn>
void for_each_tuple(const sets::SpreadSet& m, int len, Fn&& fn) {
  std::vector<std::size_t> idx(len, 0);
  std::vector<const Matrix*> cur(len);
  while (true) {
    for (int i = 0; i < len; ++i) cur[i] = &m.matrices[idx[i]];
    fn(cur);
    int i = len - 1;
    while (i >= 0 && ++idx[i] == m.matrices.size()) idx[i--] = 0;
    if (i < 0) return;
  }
}

// Elements with zero blocks before `lead`, I at `lead`, members of m after.
void add_lead_family(const gf::Field& f, const sets::SpreadSet& m, int r, int lead, int offset,
                     std::vector<Matrix> prefix, std::vector<Subspace>& out) {
  const int n = m.n;
  for (int i = offset; i < lead; ++i) prefix.push_back(Matrix(n, n));
  prefix.push_back(Matrix::identity(n));
  for_each_tuple(m, r - 1 - lead, [&](const std::vector<const Matrix*>& tail) {
    std::vector<Matrix> blocks = prefix;
    for (auto* t : tail) blocks.push_back(*t);
    out.push_back(geom::block_subspace(f, blocks));
  });
}

}  // namespace

std::uint64_t Spread::expected_size() const {
  const auto qn = gf::ipow(q, static_cast<unsigned>(n));
  return (gf::ipow(q, static_cast<unsigned>(r * n)) - 1) / (qn - 1);
}

int Spread::index_of(const Subspace& s) const {
  auto it = std::lower_bound(elements.begin(), elements.end(), s);
  if (it == elements.end() || *it != s) return -1;
  return static_cast<int>(it - elements.begin());
}

Spread make_spread(int r, int n, std::uint32_t q, std::vector<Subspace> elements, std::string provenance) {
  std::sort(elements.begin(), elements.end());
  return Spread{r, n, q, std::move(elements), std::move(provenance)};
}

SpreadCheck validate_spread(const gf::Field& f, const Spread& s) {
  SpreadCheck out;
  const int len = s.r * s.n;
  for (const auto& e : s.elements) {
    if (e.rank() != s.n || e.vector_dim() != len) {
      out.reason = "element of the wrong dimension";
      return out;
    }
  }
  const geom::Coder coder(s.q, len);
  std::vector<int> owner(coder.count(), -1);
  for (std::size_t i = 0; i < s.elements.size(); ++i) {
    for (auto c : geom::span_vectors(f, s.elements[i].basis, coder)) {
      if (c == 0) continue;
      if (owner[c] >= 0) {
        out.reason = "elements meet";
        out.meeting_pair = {owner[c], static_cast<int>(i)};
        return out;
      }
      owner[c] = static_cast<int>(i);
    }
  }
  for (std::uint64_t c = 1; c < coder.count(); ++c) {
    if (owner[c] < 0) {
      out.reason = "point not covered";
      out.uncovered_point = geom::normalize_point(f, coder.decode(c));
      return out;
    }
  }
  if (s.elements.size() != s.expected_size()) {
    out.reason = "wrong number of elements";
    return out;
  }
  out.ok = true;
  return out;
}

SpreadIndex::SpreadIndex(const gf::Field& f, const Spread& s) : coder_(s.q, s.r * s.n), owner_(coder_.count(), -1) {
  vectors_.reserve(s.elements.size());
  for (std::size_t i = 0; i < s.elements.size(); ++i) {
    vectors_.push_back(geom::span_vectors(f, s.elements[i].basis, coder_));
    for (auto c : vectors_.back())
      if (c) owner_[c] = static_cast<int>(i);
  }
}

bool is_normal_element(const gf::Field& f, const Spread& s, const SpreadIndex& idx, int e) {
  const std::size_t words = words_for(s.elements.size());
  std::vector<std::uint64_t> done(words, 0), hit(words);
  done[e / 64] |= 1ull << (e % 64);
  const auto target = gf::ipow(s.q, static_cast<unsigned>(s.n)) + 1;
  for (int other = 0; other < static_cast<int>(s.elements.size()); ++other) {
    if (done[other / 64] >> (other % 64) & 1) continue;
    const Matrix parts[2] = {s.elements[e].basis, s.elements[other].basis};
    std::fill(hit.begin(), hit.end(), 0);
    for (auto c : geom::span_vectors(f, linalg::vstack(parts), idx.coder())) {
      if (c == 0) continue;
      const int o = idx.owner(c);
      if (o < 0) return false;
      hit[o / 64] |= 1ull << (o % 64);
    }
    if (kernels::popcount(hit) != target) return false;
    kernels::or_into(done, hit);
  }
  return true;
}

bool is_normal_element(const gf::Field& f, const Spread& s, const Subspace& e) {
  const int i = s.index_of(e);
  if (i < 0) throw DomainError("subspace is not an element of the spread");
  const SpreadIndex idx(f, s);
  return is_normal_element(f, s, idx, i);
}

std::vector<int> normal_elements(const gf::Field& f, const Spread& s, unsigned threads) {
  const SpreadIndex idx(f, s);
  std::vector<char> normal(s.elements.size(), 0);
  parallel_for(s.elements.size(), threads,
               [&](std::size_t i) { normal[i] = is_normal_element(f, s, idx, static_cast<int>(i)); });
  std::vector<int> out;
  for (std::size_t i = 0; i < normal.size(); ++i)
    if (normal[i]) out.push_back(static_cast<int>(i));
  return out;
}

Spread construct_S_r(const gf::Field& f, const sets::SpreadSet& m, int r) {
  sets::require_standard(f, m, "S_r");
  if (r < 2) throw DomainError("S_r needs r >= 2");
  std::vector<Subspace> out;
  for (int lead = 0; lead < r; ++lead) add_lead_family(f, m, r, lead, 0, {}, out);
  return make_spread(r, m.n, m.q, std::move(out), "S_" + std::to_string(r));
}

Spread construct_T_3(const gf::Field& f, const sets::SpreadSet& m, const sets::SpreadSet& m0) {
  sets::require_standard(f, m, "T_3");
  sets::require_standard(f, m0, "T_3");
  if (m.n != m0.n || m.q != m0.q) throw DomainError("T_3: spread sets of different shape");
  const int n = m.n;
  const Matrix id = Matrix::identity(n), zero(n, n);
  std::vector<Subspace> out;
  for (const auto& a : m.matrices)
    for (const auto& b : m.matrices) {
      const Matrix blocks[3] = {a, b, id};
      out.push_back(geom::block_subspace(f, blocks));
    }
  for (const auto& c : m0.matrices) {
    const Matrix blocks[3] = {id, c, zero};
    out.push_back(geom::block_subspace(f, blocks));
  }
  const Matrix last[3] = {zero, id, zero};
  out.push_back(geom::block_subspace(f, last));
  return make_spread(3, n, m.q, std::move(out), "T_3");
}

Spread construct_U_r(const gf::Field& f, const sets::SpreadSet& m, const std::vector<sets::SpreadSet>& mi) {
  sets::require_standard(f, m, "U_r");
  if (!sets::is_nearfield_set(f, m)) throw DomainError("U_r: M must be closed under multiplication");
  const int r = static_cast<int>(mi.size()) + 1;
  if (r < 2) throw DomainError("U_r needs at least one spread set M_i");
  for (const auto& s : mi) {
    const auto check = sets::validate_spread_set(f, s);
    if (!check.ok) throw DomainError("U_r: invalid spread set M_i (" + check.reason + ")");
    if (!s.contains_zero) throw DomainError("U_r: every M_i must contain 0");
    if (s.n != m.n || s.q != m.q) throw DomainError("U_r: spread sets of different shape");
  }
  const int n = m.n;
  std::vector<Subspace> out;
  for (int lead = 1; lead < r; ++lead) add_lead_family(f, m, r, lead, 0, {}, out);
  std::vector<std::size_t> idx(r - 1, 0);
  while (true) {
    std::vector<Matrix> blocks{Matrix::identity(n)};
    for (int i = 0; i < r - 1; ++i) blocks.push_back(mi[i].matrices[idx[i]]);
    out.push_back(geom::block_subspace(f, blocks));
    int i = r - 2;
    while (i >= 0 && ++idx[i] == mi[i].matrices.size()) idx[i--] = 0;
    if (i < 0) break;
  }
  return make_spread(r, n, m.q, std::move(out), "U_" + std::to_string(r));
}

sets::SpreadSet coordinatize(const gf::Field& f, const Spread& s, int a, int b, int c) {
  if (s.r != 2) throw DomainError("coordinatize needs a spread of PG(2n-1,q)");
  const int m = static_cast<int>(s.elements.size());
  for (int i : {a, b, c})
    if (i < 0 || i >= m) throw DomainError("element index out of range");
  const Subspace frame[3] = {s.elements[a], s.elements[b], s.elements[c]};
  const Matrix t = geom::frame_normalization(f, frame);
  const int n = s.n;
  std::vector<Matrix> out;
  for (int i = 0; i < m; ++i) {
    if (i == b) continue;
    const auto img = geom::apply_collineation(f, t, s.elements[i]);
    out.push_back(linalg::block(img.basis, 0, n, n, n));
  }
  return sets::make_spread_set(s.q, n, std::move(out));
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::yes: return "true";
    case Verdict::no: return "false";
    default: return "unknown";
  }
}

Verdict is_desarguesian(const gf::Field& f, const Spread& s, unsigned threads) {
  if (s.r == 1 || s.n == 1) return Verdict::yes;
  if (s.r > 2) return normal_elements(f, s, threads).size() == s.elements.size() ? Verdict::yes : Verdict::no;
  if (s.q == 2) return Verdict::unknown;
  const int m = static_cast<int>(s.elements.size());
  std::atomic<bool> regular{true};
  parallel_for(static_cast<std::size_t>(m), threads, [&](std::size_t i) {
    for (int j = static_cast<int>(i) + 1; j < m && regular; ++j)
      for (int k = j + 1; k < m && regular; ++k)
        for (const auto& x : fieldred::regulus(f, s.elements[i], s.elements[j], s.elements[k], s.q))
          if (!s.contains(x)) {
            regular = false;
            break;
          }
  });
  return regular ? Verdict::yes : Verdict::no;
}

RegulusCheck regulus_closure_at(const gf::Field& f, const Spread& s, int e, std::uint32_t q0) {
  if (s.r != 2) throw DomainError("regulus closure needs a spread of PG(2n-1,q)");
  if (q0 <= 2 || !f.is_subfield_order(q0)) throw DomainError("q0 must be a subfield order of q greater than 2");
  if (e < 0 || e >= static_cast<int>(s.elements.size())) throw DomainError("element index out of range");
  const int m = static_cast<int>(s.elements.size());
  RegulusCheck out;
  for (int i = 0; i < m; ++i) {
    if (i == e) continue;
    for (int j = i + 1; j < m; ++j) {
      if (j == e) continue;
      for (const auto& x : fieldred::regulus(f, s.elements[e], s.elements[i], s.elements[j], q0)) {
        if (!s.contains(x)) {
          out.witness = {i, j};
          return out;
        }
      }
    }
  }
  out.holds = true;
  return out;
}

GeneralPositionResult max_normal_general_position(const gf::Field& f, const Spread& s,
                                                  const std::vector<int>& normals) {
  GeneralPositionResult best;
  const int r = s.r, n = s.n;
  const int count = static_cast<int>(normals.size());
  std::vector<int> chosen;
  bool done = false;

  auto rank_of = [&](const std::vector<int>& idx) {
    std::vector<Matrix> bases;
    for (int i : idx) bases.push_back(s.elements[normals[i]].basis);
    return linalg::rank(f, linalg::vstack(bases));
  };
  auto record = [&] {
    if (static_cast<int>(chosen.size()) > best.k) {
      best.k = static_cast<int>(chosen.size());
      best.witness.clear();
      for (int i : chosen) best.witness.push_back(normals[i]);
    }
  };

  auto dfs = [&](auto&& self, int start) -> void {
    if (done) return;
    record();
    const int size = static_cast<int>(chosen.size());
    if (size == r + 1) {
      done = true;
      return;
    }
    for (int i = start; i < count && !done; ++i) {
      chosen.push_back(i);
      bool ok;
      if (size < r) {
        ok = rank_of(chosen) == (size + 1) * n;
      } else {
        // r+1 members: every r of them span the space
        ok = true;
        for (int drop = 0; drop < r && ok; ++drop) {
          std::vector<int> sub;
          for (int j = 0; j <= r; ++j)
            if (j != drop) sub.push_back(chosen[j]);
          ok = rank_of(sub) == r * n;
        }
      }
      if (ok) self(self, i + 1);
      chosen.pop_back();
    }
  };
  dfs(dfs, 0);
  return best;
}

std::uint64_t spread_hash(const Spread& s) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](std::uint64_t byte) {
    h ^= byte & 0xff;
    h *= 1099511628211ull;
  };
  for (int v : {s.r, s.n, static_cast<int>(s.q)}) mix(static_cast<std::uint64_t>(v));
  for (const auto& e : s.elements)
    for (auto x : e.basis.data()) mix(x);
  return h;
}

}  // namespace spreadlab::spreads
