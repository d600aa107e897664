#include "spreadlab/sperner.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>

#include "spreadlab/errors.hpp"
#include "spreadlab/kernels.hpp"

namespace spreadlab::sperner {
namespace {

constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();

bool test(const Bits& b, std::uint32_t i) { return b[i / 64] >> (i % 64) & 1; }
void set(Bits& b, std::uint32_t i) { b[i / 64] |= 1ull << (i % 64); }

}  // namespace

DesignReport validate_design(const Design& d) {
  DesignReport rep;
  const std::uint32_t v = d.num_points;
  std::vector<std::uint8_t> cover(std::size_t(v) * v, 0);
  for (const auto& line : d.lines)
    for (std::size_t i = 0; i < line.size(); ++i)
      for (std::size_t j = i + 1; j < line.size(); ++j) {
        auto& c = cover[std::size_t(line[i]) * v + line[j]];
        if (c < 2) ++c;
      }
  rep.pair_coverage = true;
  for (std::uint32_t a = 0; a < v && rep.pair_coverage; ++a)
    for (std::uint32_t b = a + 1; b < v; ++b)
      if (cover[std::size_t(a) * v + b] != 1) {
        rep.pair_coverage = false;
        rep.bad_pair = {a, b};
        break;
      }

  rep.parallelism = true;
  std::vector<std::vector<std::uint32_t>> hits(d.num_classes, std::vector<std::uint32_t>(v, 0));
  for (std::size_t l = 0; l < d.lines.size(); ++l)
    for (auto x : d.lines[l]) ++hits[d.line_class[l]][x];
  for (int c = 0; c < d.num_classes && rep.parallelism; ++c)
    for (std::uint32_t x = 0; x < v; ++x)
      if (hits[c][x] != 1) {
        rep.parallelism = false;
        rep.bad_class = {c, x};
        break;
      }
  rep.ok = rep.pair_coverage && rep.parallelism;
  return rep;
}

SpernerSpace SpernerSpace::build(const gf::Field& f, const spreads::Spread& s) {
  const auto check = spreads::validate_spread(f, s);
  if (!check.ok) throw DomainError("T(S) needs a valid spread: " + check.reason);
  SpernerSpace t;
  t.spread_ = s;
  t.q_ = s.q;
  t.len_ = s.r * s.n;
  const spreads::SpreadIndex idx(f, s);
  const auto& coder = idx.coder();
  const auto v = static_cast<std::uint32_t>(coder.count());
  t.design_.num_points = v;
  t.design_.num_classes = static_cast<int>(s.elements.size());
  t.words_ = (v + 63) / 64;
  t.line_size_ = gf::ipow(s.q, static_cast<unsigned>(s.n));
  t.direction_.resize(v);
  for (std::uint32_t x = 0; x < v; ++x) t.direction_[x] = x == 0 ? -1 : idx.owner(x);
  t.sub_.resize(std::size_t(s.q) * s.q);
  for (gf::Elem a = 0; a < s.q; ++a)
    for (gf::Elem b = 0; b < s.q; ++b) t.sub_[a * s.q + b] = static_cast<std::uint8_t>(f.sub(a, b));

  std::vector<std::uint8_t> digits(std::size_t(v) * t.len_);
  for (std::uint32_t x = 0; x < v; ++x) coder.decode(x, {digits.data() + std::size_t(x) * t.len_, std::size_t(t.len_)});

  t.line_of_.assign(std::size_t(t.design_.num_classes) * v, kUnset);
  std::vector<std::uint8_t> sum(t.len_);
  for (int c = 0; c < t.design_.num_classes; ++c) {
    const auto& dir = idx.vectors(c);
    for (std::uint32_t x = 0; x < v; ++x) {
      if (t.line_of_[std::size_t(c) * v + x] != kUnset) continue;
      const auto line_id = static_cast<std::uint32_t>(t.design_.lines.size());
      std::vector<std::uint32_t> pts;
      for (auto d : dir) {
        for (int i = 0; i < t.len_; ++i)
          sum[i] = static_cast<std::uint8_t>(f.add(digits[std::size_t(x) * t.len_ + i], digits[std::size_t(d) * t.len_ + i]));
        const auto y = static_cast<std::uint32_t>(coder.encode(sum));
        pts.push_back(y);
        t.line_of_[std::size_t(c) * v + y] = line_id;
      }
      std::sort(pts.begin(), pts.end());
      Bits bits(t.words_, 0);
      for (auto y : pts) set(bits, y);
      t.line_bits_.push_back(std::move(bits));
      t.design_.lines.push_back(std::move(pts));
      t.design_.line_class.push_back(c);
    }
  }
  return t;
}

std::uint32_t SpernerSpace::line_joining(std::uint32_t a, std::uint32_t b) const {
  if (a == b) throw DomainError("line through a single point");
  std::uint32_t d = 0, ra = a, rb = b, scale = 1;
  for (int i = 0; i < len_; ++i) {
    d += sub_[(rb % q_) * q_ + ra % q_] * scale;
    ra /= q_;
    rb /= q_;
    scale *= q_;
  }
  return line_through(direction_[d], a);
}

ManifoldResult SpernerSpace::linear_manifold(const Bits& pts, std::size_t limit) const {
  ManifoldResult r;
  r.points = pts;
  std::vector<std::uint32_t> queue;
  for (std::uint32_t x = 0; x < num_points(); ++x)
    if (test(pts, x)) queue.push_back(x);
  r.size = queue.size();
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const auto a = queue[qi];
    for (int c = 0; c < design_.num_classes; ++c) {
      const auto line = line_through(c, a);
      const Bits& lb = line_bits_[line];
      if (kernels::is_subset(lb, r.points) || kernels::and_popcount(lb, r.points) < 2) continue;
      for (auto y : design_.lines[line])
        if (!test(r.points, y)) queue.push_back(y);
      kernels::or_into(r.points, lb);
      r.size = queue.size();
      if (limit && r.size > limit) {
        r.truncated = true;
        return r;
      }
    }
  }
  return r;
}

ManifoldResult SpernerSpace::pseudo_plane(std::uint32_t a, std::uint32_t b, std::uint32_t c, std::size_t limit) const {
  if (a == b || a == c || b == c || test(line_bits_[line_joining(a, b)], c))
    throw DomainError("pseudo-plane needs three non-collinear points");
  Bits start(words_, 0);
  set(start, a);
  set(start, b);
  set(start, c);
  return linear_manifold(start, limit);
}

NormalLineResult SpernerSpace::is_normal_line(std::size_t line, bool oracle) const {
  if (line >= num_lines()) throw DomainError("line index out of range");
  NormalLineResult res;
  const Bits& l = line_bits_[line];
  Bits covered = l;
  const auto k = line_size_;
  const auto plane = plane_size();
  for (std::uint32_t x = 0; x < num_points(); ++x) {
    if (test(l, x) || (!oracle && test(covered, x))) continue;
    Bits start = l;
    set(start, x);
    const auto m = linear_manifold(start, plane);
    ++res.planes_built;
    bool affine = !m.truncated && m.size == plane;
    if (affine) {
      // induced structure: k(k+1) lines of size k inside the k^2 points
      std::vector<char> seen(num_lines(), 0);
      std::size_t inside = 0;
      for (std::uint32_t y = 0; y < num_points(); ++y) {
        if (!test(m.points, y)) continue;
        for (int c = 0; c < design_.num_classes; ++c) {
          const auto ly = line_through(c, y);
          if (!seen[ly] && kernels::is_subset(line_bits_[ly], m.points)) {
            seen[ly] = 1;
            ++inside;
          }
        }
      }
      affine = inside == k * (k + 1);
    }
    if (!affine) {
      res.witness_point = x;
      res.witness_size = m.size;
      return res;
    }
    if (!oracle) kernels::or_into(covered, m.points);
  }
  res.normal = true;
  return res;
}

void SpernerSpace::export_csv(std::ostream& out) const {
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(spreads::spread_hash(spread_)));
  out << "# spreadlab design q=" << spread_.q << " n=" << spread_.n << " r=" << spread_.r << " spread_hash=" << hash
      << "\n";
  out << "point,line,class\n";
  for (std::size_t l = 0; l < design_.lines.size(); ++l)
    for (auto x : design_.lines[l]) out << x << ',' << l << ',' << design_.line_class[l] << '\n';
}

}  // namespace spreadlab::sperner
