#pragma once
// Matrix spread sets over F_q and the quasifields they coordinatize.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spreadlab/gf/field.hpp"
#include "spreadlab/gf/tower.hpp"
#include "spreadlab/linalg.hpp"

namespace spreadlab::sets {

using linalg::Entry;
using linalg::Matrix;

struct SpreadSet {
  std::uint32_t q = 0;
  int n = 0;
  std::vector<Matrix> matrices;  // sorted
  bool contains_zero = false;
  bool contains_identity = false;

  bool contains(const Matrix& m) const;
  /// Index of m in `matrices`, or -1.
  int index_of(const Matrix& m) const;
  friend bool operator==(const SpreadSet& a, const SpreadSet& b) { return a.matrices == b.matrices; }
};

SpreadSet make_spread_set(std::uint32_t q, int n, std::vector<Matrix> matrices);

struct SpreadSetCheck {
  bool ok = false;
  std::string reason;
  std::optional<std::pair<int, int>> pair;  // indices with A - B singular (or equal)
};

SpreadSetCheck validate_spread_set(const gf::Field& f, const SpreadSet& m);

/// {mult_matrix(a) : a in F_{q^n}}.
SpreadSet desarguesian_spread_set(const gf::FieldTower& tower);

/// Throws DomainError unless m is a valid spread set containing 0 and I.
void require_standard(const gf::Field& f, const SpreadSet& m, const char* what);

/// Quasifield on V = F_q^n; elements are vector codes (geom::Coder order).
struct Quasifield {
  std::uint32_t q = 0;
  int n = 0;
  std::uint32_t order = 0;
  std::uint32_t unit = 0;
  std::vector<std::uint32_t> add_table;  // order * order
  std::vector<std::uint32_t> mul_table;  // order * order, x * y at x*order + y

  std::uint32_t add(std::uint32_t x, std::uint32_t y) const { return add_table[std::size_t(x) * order + y]; }
  std::uint32_t mul(std::uint32_t x, std::uint32_t y) const { return mul_table[std::size_t(x) * order + y]; }
};

inline constexpr std::uint32_t kMaxQuasifieldOrder = 4096;

/// x * y = x M_y with e M_y = y. `e` defaults to the first unit vector.
Quasifield quasifield_from_spread_set(const gf::Field& f, const SpreadSet& m, std::optional<std::vector<Entry>> e = {});
/// Requires F_q in the kernel; M_y is read off from x -> x * y.
SpreadSet spread_set_from_quasifield(const gf::Field& f, const Quasifield& qf);

struct AxiomResult {
  std::string name;
  bool pass = false;
  std::vector<std::uint32_t> witness;
};

struct AxiomReport {
  std::vector<AxiomResult> axioms;  // (i)..(iv) then the optional laws
  bool quasifield() const;
  const AxiomResult& get(const std::string& name) const;
};

/// Exhaustive check of the quasifield axioms plus associativity, left
/// distributivity and commutativity of the multiplication.
AxiomReport check_quasifield_axioms(const gf::Field& f, const Quasifield& qf);
bool is_associative(const Quasifield& qf);
bool is_left_distributive(const Quasifield& qf);
std::vector<std::uint32_t> kernel_of(const Quasifield& qf);

bool is_nearfield_set(const gf::Field& f, const SpreadSet& m);
bool is_semifield_set(const gf::Field& f, const SpreadSet& m);

bool is_dickson_pair(std::uint64_t q, unsigned n);
/// Orders q^n of the exceptional nearfields, as (q, n) with multiplicity.
const std::vector<std::pair<std::uint32_t, unsigned>>& exceptional_nearfield_parameters();
/// Some divisor k < n of n makes (q^k, n/k) a Dickson pair, i.e. a proper
/// nearfield of order q^n with kernel F_{q^k} can exist.
bool admits_proper_regular_nearfield(std::uint64_t q, unsigned n);

struct DicksonNearfield {
  SpreadSet set;
  Quasifield quasifield;
  bool from_search = false;  // construction failed validation, search result used
};

/// x o y = x^(q^j) y, where dlog(y) = (q^j - 1)/(q - 1) mod n.
/// Throws DomainError when (q, n) is not a Dickson pair.
DicksonNearfield dickson_nearfield(const gf::FieldTower& tower);

std::vector<Matrix> right_nucleus(const gf::Field& f, const SpreadSet& m);
std::vector<Matrix> middle_nucleus(const gf::Field& f, const SpreadSet& m);
std::vector<Matrix> center(const gf::Field& f, const SpreadSet& m);

enum class Closure { multiplication, addition };
const char* closure_name(Closure c);

struct SearchOptions {
  std::uint64_t budget = 1ull << 22;  // max matrices examined per level
  unsigned threads = 1;
};

/// All spread sets containing 0 and I closed under the operation, sorted.
/// Throws BudgetExceeded when q^(n*n) exceeds the budget.
std::vector<SpreadSet> search_closed_spread_sets(const gf::Field& f, int n, Closure closure,
                                                 const SearchOptions& opt = {});

/// {P^-1 A X^-1 P : A in m} for seeded random invertible P and nonzero X in m.
SpreadSet random_transform(const gf::Field& f, const SpreadSet& m, std::uint64_t seed);

}  // namespace spreadlab::sets
