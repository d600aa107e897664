#pragma once
// The translation Sperner space T(S) of a spread: affine points F_q^{rn},
// lines x + E for spread elements E, one parallel class per element.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "spreadlab/gf/field.hpp"
#include "spreadlab/spreads.hpp"

namespace spreadlab::sperner {

using Bits = std::vector<std::uint64_t>;

struct Design {
  std::uint32_t num_points = 0;
  std::vector<std::vector<std::uint32_t>> lines;  // sorted point lists
  std::vector<int> line_class;
  int num_classes = 0;
};

struct DesignReport {
  bool ok = false;
  bool pair_coverage = false;
  bool parallelism = false;
  std::optional<std::pair<std::uint32_t, std::uint32_t>> bad_pair;  // covered 0 or 2+ times
  std::optional<std::pair<int, std::uint32_t>> bad_class;           // class, point covered 0 or 2+ times
};

DesignReport validate_design(const Design& d);

struct ManifoldResult {
  Bits points;
  std::size_t size = 0;
  bool truncated = false;  // stopped after exceeding the limit
};

struct NormalLineResult {
  bool normal = false;
  std::size_t planes_built = 0;
  std::optional<std::uint32_t> witness_point;  // Q whose pseudo-plane is not an affine plane
  std::size_t witness_size = 0;
};

class SpernerSpace {
 public:
  static SpernerSpace build(const gf::Field& f, const spreads::Spread& s);

  const spreads::Spread& spread() const { return spread_; }
  const Design& design() const { return design_; }
  std::uint32_t num_points() const { return design_.num_points; }
  std::size_t num_lines() const { return design_.lines.size(); }
  std::size_t words() const { return words_; }
  std::uint64_t line_size() const { return line_size_; }
  std::uint64_t plane_size() const { return line_size_ * line_size_; }

  const Bits& line_bits(std::size_t line) const { return line_bits_[line]; }
  /// The line of class c through point x.
  std::uint32_t line_through(int c, std::uint32_t x) const { return line_of_[std::size_t(c) * num_points() + x]; }
  /// Line through two distinct points.
  std::uint32_t line_joining(std::uint32_t a, std::uint32_t b) const;
  /// Line through the origin in the class of spread element e.
  std::uint32_t origin_line(int e) const { return line_through(e, 0); }

  /// Smallest superset closed under joining two of its points; stops once
  /// the size exceeds `limit` (0 = no limit).
  ManifoldResult linear_manifold(const Bits& pts, std::size_t limit = 0) const;
  /// Throws DomainError for collinear points.
  ManifoldResult pseudo_plane(std::uint32_t a, std::uint32_t b, std::uint32_t c, std::size_t limit = 0) const;
  /// Every pseudo-plane through the line is an affine plane of order q^n.
  /// The default mode builds one pseudo-plane per point not yet covered by
  /// an earlier affine plane; oracle mode builds one for every point off the line.
  NormalLineResult is_normal_line(std::size_t line, bool oracle = false) const;

  void export_csv(std::ostream& out) const;

 private:
  spreads::Spread spread_;
  Design design_;
  std::size_t words_ = 0;
  std::uint64_t line_size_ = 0;
  int len_ = 0;
  std::uint32_t q_ = 0;
  std::vector<Bits> line_bits_;
  std::vector<std::uint32_t> line_of_;  // class * points + point
  std::vector<int> direction_;          // vector code -> spread element (-1 for 0)
  std::vector<std::uint8_t> sub_;       // F_q subtraction table
};

}  // namespace spreadlab::sperner
