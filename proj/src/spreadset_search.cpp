#include <algorithm>
#include <map>
#include <set>

#include "spreadlab/errors.hpp"
#include "spreadlab/parallel.hpp"
#include "spreadlab/projgeom.hpp"
#include "spreadlab/spreadsets.hpp"

namespace spreadlab::sets {
namespace {

Matrix matrix_from_code(std::uint64_t code, int n, std::uint32_t q) {
  Matrix m(n, n);
  auto& d = m.data();
  for (int i = n * n - 1; i >= 0; --i) {
    d[i] = static_cast<Entry>(code % q);
    code /= q;
  }
  return m;
}

std::uint64_t first_row_code(const Matrix& m, const geom::Coder& coder) { return coder.encode(m.row(0)); }

// Subgroups of GL(n,q) of order q^n - 1 acting regularly on nonzero vectors.
class MultiplicativeSearch {
 public:
  MultiplicativeSearch(const gf::Field& f, int n) : f_(f), n_(n), coder_(f.order(), n) {
    group_order_ = coder_.count() - 1;
    candidates_.resize(coder_.count());
    const Matrix id = Matrix::identity(n);
    const std::uint64_t total = gf::ipow(f.order(), static_cast<unsigned>(n * n));
    for (std::uint64_t c = 0; c < total; ++c) {
      Matrix m = matrix_from_code(c, n, f.order());
      if (!linalg::is_invertible(f, m)) continue;
      if (m != id && !linalg::is_invertible(f, linalg::sub(f, m, id))) continue;
      candidates_[first_row_code(m, coder_)].push_back(std::move(m));
    }
  }

  // Top-level branches: candidates for the first vector not reached by {I}.
  std::vector<Matrix> top_branches() const {
    const auto y = next_unreached({Matrix::identity(n_)});
    if (!y) return {};
    return candidates_[*y];
  }

  void run_branch(const Matrix& x, std::set<std::vector<Matrix>>& found) const {
    std::set<std::vector<Matrix>> visited;
    const std::vector<Matrix> start{Matrix::identity(n_)};
    extend(start, {}, x, visited, found);
  }

  // Whole group {I} when q^n = 2.
  bool trivial() const { return group_order_ == 1; }

 private:
  std::optional<std::uint64_t> next_unreached(const std::vector<Matrix>& h) const {
    std::vector<char> reached(coder_.count(), 0);
    for (const auto& m : h) reached[first_row_code(m, coder_)] = 1;
    for (std::uint64_t y = 1; y < coder_.count(); ++y)
      if (!reached[y]) return y;
    return std::nullopt;
  }

  bool fixed_point_free(const Matrix& m) const {
    const Matrix id = Matrix::identity(n_);
    return m == id || linalg::is_invertible(f_, linalg::sub(f_, m, id));
  }

  // <H, x> if it stays a fixed-point-free group of order dividing q^n - 1.
  std::optional<std::vector<Matrix>> generate(const std::vector<Matrix>& h, const std::vector<Matrix>& gens,
                                              const Matrix& x) const {
    std::set<Matrix> elems(h.begin(), h.end());
    std::vector<Matrix> all_gens = gens;
    all_gens.push_back(x);
    std::vector<Matrix> queue(h.begin(), h.end());
    for (std::size_t i = 0; i < queue.size(); ++i) {
      for (const auto& g : all_gens) {
        Matrix p = linalg::mul(f_, queue[i], g);
        if (elems.count(p)) continue;
        if (!fixed_point_free(p) || elems.size() + 1 > group_order_) return std::nullopt;
        elems.insert(p);
        queue.push_back(std::move(p));
      }
    }
    if (group_order_ % elems.size() != 0) return std::nullopt;
    return std::vector<Matrix>(elems.begin(), elems.end());
  }

  void extend(const std::vector<Matrix>& h, const std::vector<Matrix>& gens, const Matrix& x,
              std::set<std::vector<Matrix>>& visited, std::set<std::vector<Matrix>>& found) const {
    auto g = generate(h, gens, x);
    if (!g || !visited.insert(*g).second) return;
    if (g->size() == group_order_) {
      found.insert(*g);
      return;
    }
    std::vector<Matrix> next_gens = gens;
    next_gens.push_back(x);
    const auto y = next_unreached(*g);
    for (const auto& cand : candidates_[*y]) extend(*g, next_gens, cand, visited, found);
  }

  const gf::Field& f_;
  int n_;
  geom::Coder coder_;
  std::uint64_t group_order_;
  std::vector<std::vector<Matrix>> candidates_;  // by first row
};

// F_p-subspaces of matrices, all nonzero members invertible, containing I.
class AdditiveSearch {
 public:
  AdditiveSearch(const gf::Field& f, int n) : f_(f), n_(n), coder_(f.order(), n) {
    const std::uint32_t p = f.characteristic();
    const unsigned h = f.degree();
    for (int pos = 0; pos < n; ++pos)
      for (unsigned i = 0; i < h; ++i) {
        std::vector<Entry> v(n, 0);
        v[pos] = static_cast<Entry>(gf::ipow(p, i));
        basis_rows_.push_back(coder_.encode(v));
      }
    std::map<std::uint64_t, std::size_t> level_of;
    for (std::size_t k = 1; k < basis_rows_.size(); ++k) level_of[basis_rows_[k]] = k;
    candidates_.resize(basis_rows_.size());
    const std::uint64_t total = gf::ipow(f.order(), static_cast<unsigned>(n * n));
    for (std::uint64_t c = 0; c < total; ++c) {
      Matrix m = matrix_from_code(c, n, f.order());
      auto it = level_of.find(first_row_code(m, coder_));
      if (it == level_of.end() || !linalg::is_invertible(f, m)) continue;
      candidates_[it->second].push_back(std::move(m));
    }
  }

  std::size_t levels() const { return basis_rows_.size(); }
  const std::vector<Matrix>& top_branches() const {
    static const std::vector<Matrix> none;
    return levels() > 1 ? candidates_[1] : none;
  }

  void run_branch(const Matrix* b1, std::vector<std::vector<Matrix>>& found) const {
    std::vector<Matrix> span{Matrix(n_, n_)};
    add_direction(span, Matrix::identity(n_));
    if (b1 == nullptr) {
      found.push_back(span);
      return;
    }
    if (!try_add(span, *b1)) return;
    descend(span, 2, found);
  }

 private:
  void add_direction(std::vector<Matrix>& span, const Matrix& b) const {
    const std::size_t base = span.size();
    for (std::uint32_t c = 1; c < f_.characteristic(); ++c) {
      const Matrix cb = linalg::scale(f_, b, static_cast<Entry>(c));
      for (std::size_t i = 0; i < base; ++i) span.push_back(linalg::add(f_, span[i], cb));
    }
  }

  bool try_add(std::vector<Matrix>& span, const Matrix& b) const {
    const std::size_t base = span.size();
    for (std::uint32_t c = 1; c < f_.characteristic(); ++c) {
      const Matrix cb = linalg::scale(f_, b, static_cast<Entry>(c));
      for (std::size_t i = 0; i < base; ++i) {
        Matrix s = linalg::add(f_, span[i], cb);
        if (!linalg::is_invertible(f_, s)) {
          span.resize(base);
          return false;
        }
        span.push_back(std::move(s));
      }
    }
    return true;
  }

  void descend(std::vector<Matrix>& span, std::size_t level, std::vector<std::vector<Matrix>>& found) const {
    if (level == levels()) {
      found.push_back(span);
      return;
    }
    for (const auto& b : candidates_[level]) {
      const std::size_t base = span.size();
      if (try_add(span, b)) {
        descend(span, level + 1, found);
        span.resize(base);
      }
    }
  }

  const gf::Field& f_;
  int n_;
  geom::Coder coder_;
  std::vector<std::uint64_t> basis_rows_;         // F_p-basis of F_q^n, first = e
  std::vector<std::vector<Matrix>> candidates_;   // by basis index
};

}  // namespace

std::vector<SpreadSet> search_closed_spread_sets(const gf::Field& f, int n, Closure closure,
                                                 const SearchOptions& opt) {
  if (n < 1) throw DomainError("n must be positive");
  if (!f.has_tables()) throw DomainError("search needs q <= 256");
  const std::uint64_t total = gf::ipow(f.order(), static_cast<unsigned>(n * n));
  if (n * n > 40 || total > opt.budget)
    throw BudgetExceeded("q^(n^2) = " + std::to_string(total) + " matrices exceeds the search budget");
  const Matrix zero(n, n);
  std::vector<std::vector<Matrix>> groups;

  if (closure == Closure::multiplication) {
    const MultiplicativeSearch search(f, n);
    if (search.trivial()) {
      groups.push_back({Matrix::identity(n)});
    } else {
      const auto branches = search.top_branches();
      std::vector<std::set<std::vector<Matrix>>> slots(branches.size());
      parallel_for(branches.size(), opt.threads, [&](std::size_t i) { search.run_branch(branches[i], slots[i]); });
      std::set<std::vector<Matrix>> merged;
      for (auto& s : slots) merged.insert(s.begin(), s.end());
      groups.assign(merged.begin(), merged.end());
    }
    for (auto& g : groups) g.push_back(zero);
  } else {
    const AdditiveSearch search(f, n);
    if (search.levels() == 1) {
      search.run_branch(nullptr, groups);
    } else {
      const auto& branches = search.top_branches();
      std::vector<std::vector<std::vector<Matrix>>> slots(branches.size());
      parallel_for(branches.size(), opt.threads, [&](std::size_t i) { search.run_branch(&branches[i], slots[i]); });
      for (auto& s : slots)
        for (auto& g : s) groups.push_back(std::move(g));
    }
  }

  std::vector<SpreadSet> out;
  for (auto& g : groups) out.push_back(make_spread_set(f.order(), n, std::move(g)));
  std::sort(out.begin(), out.end(), [](const SpreadSet& a, const SpreadSet& b) { return a.matrices < b.matrices; });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace spreadlab::sets
