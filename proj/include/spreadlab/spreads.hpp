#pragma once
// (n-1)-spreads of PG(rn-1,q): validation, normal elements, and the
// S_r, T_3 and U_r constructions from matrix spread sets.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spreadlab/gf/field.hpp"
#include "spreadlab/projgeom.hpp"
#include "spreadlab/spreadsets.hpp"

namespace spreadlab::spreads {

using geom::Subspace;
using linalg::Entry;
using linalg::Matrix;

struct Spread {
  int r = 0;
  int n = 0;
  std::uint32_t q = 0;
  std::vector<Subspace> elements;  // sorted by basis bytes
  std::string provenance;

  std::uint64_t expected_size() const;
  int index_of(const Subspace& s) const;
  bool contains(const Subspace& s) const { return index_of(s) >= 0; }
};

Spread make_spread(int r, int n, std::uint32_t q, std::vector<Subspace> elements, std::string provenance);

struct SpreadCheck {
  bool ok = false;
  std::string reason;
  std::optional<std::pair<int, int>> meeting_pair;
  std::optional<std::vector<Entry>> uncovered_point;
};

SpreadCheck validate_spread(const gf::Field& f, const Spread& s);

/// Point (vector code) -> index of the spread element containing it.
class SpreadIndex {
 public:
  SpreadIndex(const gf::Field& f, const Spread& s);
  const geom::Coder& coder() const { return coder_; }
  int owner(std::uint64_t code) const { return owner_[code]; }
  /// Vector codes of element i, zero included.
  const std::vector<std::uint64_t>& vectors(int i) const { return vectors_[i]; }

 private:
  geom::Coder coder_;
  std::vector<int> owner_;
  std::vector<std::vector<std::uint64_t>> vectors_;
};

/// Every <E,F>, F != E, is partitioned by spread elements. Needs a valid spread.
bool is_normal_element(const gf::Field& f, const Spread& s, const SpreadIndex& idx, int e);
bool is_normal_element(const gf::Field& f, const Spread& s, const Subspace& e);
/// Indices of the normal elements, increasing.
std::vector<int> normal_elements(const gf::Field& f, const Spread& s, unsigned threads = 1);

/// Spread of PG(rn-1,q) from the blocks {(A_1..A_r) : first nonzero A_k = I}.
/// r >= 2; r = 2 gives {(I,A)} u {(0,I)}.
Spread construct_S_r(const gf::Field& f, const sets::SpreadSet& m, int r);
Spread construct_T_3(const gf::Field& f, const sets::SpreadSet& m, const sets::SpreadSet& m0);
/// {(0, X) : X in S_{r-1}(M)} u {(I, B_1, ..., B_{r-1}) : B_i in M_i}.
Spread construct_U_r(const gf::Field& f, const sets::SpreadSet& m, const std::vector<sets::SpreadSet>& mi);

/// Spread set of an r = 2 spread in the frame a -> (I,0), b -> (0,I),
/// c -> (I,I): {X : (I,X) in the image}. Contains 0 and I.
sets::SpreadSet coordinatize(const gf::Field& f, const Spread& s, int a, int b, int c);

enum class Verdict { yes, no, unknown };
const char* verdict_name(Verdict v);

/// r > 2: all elements normal. r = 2, q > 2: regular. r = 2, q = 2: unknown.
Verdict is_desarguesian(const gf::Field& f, const Spread& s, unsigned threads = 1);

struct RegulusCheck {
  bool holds = false;
  std::optional<std::pair<int, int>> witness;  // E1, E2 whose regulus leaves the spread
};

/// r = 2: every R_{q0}(E,E1,E2) lies in the spread.
RegulusCheck regulus_closure_at(const gf::Field& f, const Spread& s, int e, std::uint32_t q0);

struct GeneralPositionResult {
  int k = 0;
  std::vector<int> witness;  // spread indices
};

/// Largest k <= r+1 such that k of the given normal elements are in general
/// position (k <= r: independent; k = r+1: any r span the space).
GeneralPositionResult max_normal_general_position(const gf::Field& f, const Spread& s, const std::vector<int>& normals);

/// FNV-1a of the canonical element bases, for file headers.
std::uint64_t spread_hash(const Spread& s);

}  // namespace spreadlab::spreads
