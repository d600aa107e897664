#include "spreadlab/scenarios.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <random>

#include "spreadlab/closure.hpp"
#include "spreadlab/errors.hpp"
#include "spreadlab/fieldreduction.hpp"
#include "spreadlab/parallel.hpp"
#include "spreadlab/sperner.hpp"

namespace spreadlab::scenarios {
namespace {

using geom::Subspace;
using io::Json;
using linalg::Matrix;
using sets::SpreadSet;
using spreads::Spread;

struct Ctx {
  gf::FieldTower tower;
  SpreadSet field;
  std::optional<SpreadSet> dickson;

  explicit Ctx(const Params& p)
      : tower(gf::FieldTower::for_orders(p.q, p.n)), field(sets::desarguesian_spread_set(tower)) {
    if (p.n > 1 && sets::is_dickson_pair(p.q, p.n)) dickson = sets::dickson_nearfield(tower).set;
  }
  const gf::Field& f() const { return tower.base(); }
};

Json params_json(const Params& p) {
  Json j;
  j["q"] = p.q;
  j["n"] = p.n;
  j["r"] = p.r;
  j["q0"] = p.q0;
  j["seed"] = p.seed;
  j["oracle"] = p.oracle;
  j["trials"] = p.trials;
  j["samples"] = p.samples;
  return j;
}

Json start(const std::string& name, const Params& p) {
  Json j = io::report("scenario run");
  j["scenario"] = name;
  j["params"] = params_json(p);
  return j;
}

Outcome finish(Json j, bool pass) {
  j["pass"] = pass;
  return {std::move(j), pass};
}

sets::SearchOptions search_options(const Params& p) {
  sets::SearchOptions o;
  if (p.budget) o.budget = p.budget;
  o.threads = std::max(1u, p.threads);
  return o;
}

void require_r(const Params& p, int min) {
  if (p.r < min) throw DomainError("r must be at least " + std::to_string(min));
}

Subspace blocks(const gf::Field& f, std::vector<Matrix> b) { return geom::block_subspace(f, b); }

// A valid spread set with 0 and I that is not closed under multiplication,
// read off the Dickson plane in a frame that breaks the nearfield structure.
std::optional<SpreadSet> non_nearfield_from(const gf::Field& f, const SpreadSet& dickson) {
  const auto plane = spreads::construct_S_r(f, dickson, 2);
  for (int b = 2; b < static_cast<int>(plane.elements.size()); ++b) {
    auto m = spreads::coordinatize(f, plane, 0, b, 1);
    if (!sets::is_nearfield_set(f, m)) return m;
  }
  return std::nullopt;
}

std::optional<SpreadSet> non_nearfield_set(const Ctx& c) {
  if (!c.dickson) return std::nullopt;
  return non_nearfield_from(c.f(), *c.dickson);
}

std::vector<int> designated(const gf::Field& f, const Spread& s, int first, int last) {
  std::vector<int> out;
  for (int i = first; i < last; ++i) out.push_back(s.index_of(geom::standard_element(f, s.n, s.r, i)));
  return out;
}

bool all_in(const std::vector<int>& sorted, const std::vector<int>& xs) {
  return std::all_of(xs.begin(), xs.end(), [&](int x) { return x >= 0 && std::binary_search(sorted.begin(), sorted.end(), x); });
}

template <class Fn>
void for_each_subset(int m, int k, Fn&& fn) {
  if (k > m || k <= 0) return;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (!fn(idx)) return;
    int i = k - 1;
    while (i >= 0 && idx[i] == m - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Coordinates of subspaces of <W> relative to the rows of W.
class LocalCoords {
 public:
  LocalCoords(const gf::Field& f, Matrix w) : f_(f), w_(std::move(w)) {
    const auto e = linalg::rref(f, w_);
    if (e.rank != w_.rows()) throw DomainError("local coordinates need independent rows");
    pivots_ = e.pivots;
    Matrix wp(w_.rows(), w_.rows());
    for (int r = 0; r < w_.rows(); ++r)
      for (int i = 0; i < w_.rows(); ++i) wp(r, i) = w_(r, pivots_[i]);
    wp_inv_ = linalg::inverse(f, wp);
  }
  Subspace operator()(const Subspace& s) const {
    Matrix cols(s.rank(), w_.rows());
    for (int r = 0; r < s.rank(); ++r)
      for (int i = 0; i < w_.rows(); ++i) cols(r, i) = s.basis(r, pivots_[i]);
    return geom::make_subspace(f_, linalg::mul(f_, cols, wp_inv_));
  }

 private:
  const gf::Field& f_;
  Matrix w_;
  std::vector<int> pivots_;
  Matrix wp_inv_;
};

// ---------------------------------------------------------------------------

Outcome thm_3_1(const Params& p) {
  require_r(p, 3);
  Ctx c(p);
  const auto& f = c.f();
  const auto found = sets::search_closed_spread_sets(f, static_cast<int>(p.n), sets::Closure::multiplication,
                                                     search_options(p));
  Json j = start("thm-3.1", p);
  Json arr = Json::array();
  bool pass = !found.empty();
  for (std::size_t i = 0; i < found.size(); ++i) {
    const auto& m = found[i];
    const auto s = spreads::construct_S_r(f, m, p.r);
    const bool valid = spreads::validate_spread(f, s).ok;
    const auto normals = valid ? spreads::normal_elements(f, s, p.threads) : std::vector<int>{};
    const auto des = designated(f, s, 0, p.r);
    const bool designated_normal = valid && all_in(normals, des);
    std::vector<int> extra;
    for (int x : normals)
      if (std::find(des.begin(), des.end(), x) == des.end()) extra.push_back(x);
    Json e;
    e["index"] = i;
    e["field"] = sets::is_semifield_set(f, m);
    e["valid"] = valid;
    e["normal_count"] = normals.size();
    e["designated_normal"] = designated_normal;
    e["extra_normal"] = extra;
    arr.push_back(std::move(e));
    pass = pass && valid && designated_normal;
  }
  j["sets_found"] = found.size();
  if (c.dickson) {
    const bool has = std::find(found.begin(), found.end(), *c.dickson) != found.end();
    j["dickson_found"] = has;
    pass = pass && has;
  }
  j["sets"] = std::move(arr);
  return finish(std::move(j), pass);
}

Outcome thm_4_2(const Params& p) {
  require_r(p, 3);
  Ctx c(p);
  const auto& f = c.f();
  Json divs = Json::array();
  bool literal = true;
  for (unsigned k = 1; k <= p.n; ++k) {
    if (p.n % k) continue;
    const auto qk = gf::ipow(p.q, k);
    const bool dickson = sets::is_dickson_pair(qk, p.n / k);
    bool exceptional = false;
    for (auto [eq, en] : sets::exceptional_nearfield_parameters()) exceptional |= eq == qk && en == p.n / k;
    literal = literal && !dickson && !exceptional;
    divs.push_back({{"k", k}, {"q_k", qk}, {"m", p.n / k}, {"dickson_pair", dickson}, {"exceptional", exceptional}});
  }
  const bool applies = !sets::admits_proper_regular_nearfield(p.q, p.n);
  const auto found = sets::search_closed_spread_sets(f, static_cast<int>(p.n), sets::Closure::multiplication,
                                                     search_options(p));
  Json arr = Json::array();
  bool all_des = true, consistent = true;
  for (std::size_t i = 0; i < found.size(); ++i) {
    const auto s = spreads::construct_S_r(f, found[i], p.r);
    const auto v = spreads::is_desarguesian(f, s, p.threads);
    const bool field = sets::is_semifield_set(f, found[i]);
    all_des = all_des && v == spreads::Verdict::yes;
    consistent = consistent && (v == spreads::Verdict::yes) == field;
    arr.push_back({{"index", i}, {"field", field}, {"desarguesian", spreads::verdict_name(v)}});
  }
  Json j = start("thm-4.2", p);
  j["divisors"] = std::move(divs);
  j["literal_hypothesis"] = literal;
  j["theorem_applies"] = applies;
  j["sets_found"] = found.size();
  j["sets"] = std::move(arr);
  j["all_desarguesian"] = all_des;
  j["desarguesian_iff_field_set"] = consistent;
  return finish(std::move(j), !found.empty() && consistent && (!applies || all_des));
}

Outcome thm_4_5(const Params& p) {
  require_r(p, 3);
  Ctx c(p);
  const auto& f = c.f();
  Json j = start("thm-4.5", p);
  const auto des = fieldred::desarguesian_spread(c.tower, p.r);
  const auto des_normals = spreads::normal_elements(f, des, p.threads);
  const auto des_gp = spreads::max_normal_general_position(f, des, des_normals);
  j["desarguesian"] = {{"size", des.elements.size()},
                       {"normal_count", des_normals.size()},
                       {"max_general_position", des_gp.k},
                       {"witness", des_gp.witness}};
  bool pass = des_normals.size() == des.elements.size() && des_gp.k == p.r + 1;

  const auto found = sets::search_closed_spread_sets(f, static_cast<int>(p.n), sets::Closure::multiplication,
                                                     search_options(p));
  Json arr = Json::array();
  for (std::size_t i = 0; i < found.size(); ++i) {
    const auto s = spreads::construct_S_r(f, found[i], p.r);
    const auto normals = spreads::normal_elements(f, s, p.threads);
    const auto gp = spreads::max_normal_general_position(f, s, normals);
    const bool field = sets::is_semifield_set(f, found[i]);
    const bool all_normal = normals.size() == s.elements.size();
    // r+1 normal elements in general position force a Desarguesian spread
    const bool consistent = gp.k <= p.r || all_normal;
    const bool proper_capped = field || gp.k == p.r;
    pass = pass && consistent && proper_capped;
    arr.push_back({{"index", i},
                   {"field", field},
                   {"normal_count", normals.size()},
                   {"max_general_position", gp.k},
                   {"consistent", consistent && proper_capped}});
  }
  j["sets"] = std::move(arr);
  if (c.dickson) {
    const auto s = spreads::construct_S_r(f, *c.dickson, p.r);
    const auto normals = spreads::normal_elements(f, s, p.threads);
    const auto gp = spreads::max_normal_general_position(f, s, normals);
    const auto v = spreads::is_desarguesian(f, s, p.threads);
    j["dickson"] = {{"normal_count", normals.size()},
                    {"max_general_position", gp.k},
                    {"witness", gp.witness},
                    {"desarguesian", spreads::verdict_name(v)}};
    pass = pass && gp.k == p.r && v == spreads::Verdict::no;
  }
  return finish(std::move(j), pass);
}

Outcome lemma_5_3(const Params& p) {
  const auto f = gf::Field::of_order(p.q);
  const closure::Plane plane(f);
  const std::uint64_t pp = f.characteristic();
  std::size_t passed = 0;
  std::map<std::size_t, std::size_t> sizes;
  Json failures = Json::array();
  for (int t = 0; t < p.trials; ++t) {
    const std::uint64_t seed = p.seed + static_cast<std::uint64_t>(t);
    const auto tr = closure::lemma53_trial(plane, seed);
    ++sizes[tr.restricted_off_line];
    const bool ok = tr.equal && tr.restricted_off_line == pp * pp;
    if (ok) {
      ++passed;
    } else if (failures.size() < 5) {
      Json fr = Json::array();
      for (const auto& x : tr.frame) fr.push_back(io::point(x));
      failures.push_back({{"seed", seed},
                          {"frame", fr},
                          {"p3", io::point(tr.p3)},
                          {"restricted_off_line", tr.restricted_off_line},
                          {"closure_off_line", tr.closure_off_line}});
    }
  }
  Json j = start("lemma-5.3", p);
  j["p"] = pp;
  j["expected_off_line"] = pp * pp;
  j["passed"] = passed;
  Json hist = Json::object();
  for (auto [k, v] : sizes) hist[std::to_string(k)] = v;
  j["restricted_off_line_sizes"] = std::move(hist);
  j["failures"] = std::move(failures);
  return finish(std::move(j), p.trials > 0 && passed == static_cast<std::size_t>(p.trials));
}

std::vector<std::pair<int, int>> admissible_pairs(const gf::Field& f, const Spread& s, const Subspace& pi0,
                                                  const Subspace& s3) {
  std::vector<int> off;
  for (int i = 0; i < static_cast<int>(s.elements.size()); ++i)
    if (!geom::contains(f, pi0, s.elements[i])) off.push_back(i);
  std::vector<std::pair<int, int>> out;
  for (std::size_t a = 0; a < off.size(); ++a)
    for (std::size_t b = a + 1; b < off.size(); ++b)
      if (geom::meet(f, geom::span(f, s.elements[off[a]], s.elements[off[b]]), pi0) == s3)
        out.emplace_back(off[a], off[b]);
  return out;
}

Outcome lemma_5_4(const Params& p) {
  Ctx c(p);
  const auto& f = c.f();
  const int n = static_cast<int>(p.n);
  const Matrix i = Matrix::identity(n), z(n, n);
  const auto e1 = blocks(f, {i, z, z}), e2 = blocks(f, {z, i, z}), e3 = blocks(f, {i, i, z});
  const auto pi0 = geom::span(f, e1, e2);
  std::vector<std::pair<std::string, Spread>> cases;
  cases.emplace_back("desarguesian", fieldred::desarguesian_spread(c.tower, 3));
  if (c.dickson) cases.emplace_back("T_3(field,dickson)", spreads::construct_T_3(f, c.field, *c.dickson));
  if (auto other = non_nearfield_set(c)) cases.emplace_back("T_3(field,non-nearfield)", spreads::construct_T_3(f, c.field, *other));

  Json j = start("lemma-5.4", p);
  Json arr = Json::array();
  bool pass = true;
  for (const auto& [name, s] : cases) {
    auto pairs = admissible_pairs(f, s, pi0, e3);
    const std::size_t total = pairs.size();
    std::mt19937_64 rng(p.seed);
    std::shuffle(pairs.begin(), pairs.end(), rng);
    if (pairs.size() > static_cast<std::size_t>(p.samples)) pairs.resize(p.samples);
    std::sort(pairs.begin(), pairs.end());
    std::vector<closure::Lemma54Result> res(pairs.size());
    const int s1 = s.index_of(e1), s2 = s.index_of(e2), s3 = s.index_of(e3);
    parallel_for(pairs.size(), p.threads, [&](std::size_t k) {
      res[k] = closure::verify_lemma_5_4(f, s, s1, s2, s3, pairs[k].first, pairs[k].second);
    });
    std::size_t held = 0, checked = 0;
    for (const auto& r : res) {
      held += r.holds;
      checked += r.checked;
    }
    pass = pass && total > 0 && held == res.size();
    arr.push_back({{"spread", name},
                   {"admissible_pairs", total},
                   {"verified", res.size()},
                   {"held", held},
                   {"members_checked", checked}});
  }
  j["cases"] = std::move(arr);

  // a spread with one member of V_p removed must be caught
  auto s = fieldred::desarguesian_spread(c.tower, 3);
  const auto pairs = admissible_pairs(f, s, pi0, e3);
  if (!pairs.empty()) {
    const auto r1 = s.elements[pairs[0].first], r2 = s.elements[pairs[0].second];
    const auto v = fieldred::subplane_V(f, e1, e2, r1, r2, f.characteristic());
    const auto victim = *std::find_if(v.begin(), v.end(), [&](const Subspace& x) {
      return !geom::contains(f, pi0, x) && x != r1 && x != r2;
    });
    s.elements.erase(std::find(s.elements.begin(), s.elements.end(), victim));
    const auto r = closure::verify_lemma_5_4(f, s, s.index_of(e1), s.index_of(e2), s.index_of(e3), s.index_of(r1),
                                             s.index_of(r2));
    const bool caught = !r.holds && r.witness && *r.witness == victim;
    j["corrupted"] = {{"removed", io::matrix(victim.basis, s.q)}, {"detected", caught}};
    pass = pass && caught;
  }
  return finish(std::move(j), pass);
}

Outcome thm_5_4(const Params& p) {
  if (p.q0 <= 2) throw DomainError("q0 must exceed 2");
  Ctx c(p);
  const auto& f = c.f();
  if (!f.is_subfield_order(p.q0)) throw DomainError("q0 is not a subfield order of q");
  const int n = static_cast<int>(p.n);
  const auto found = sets::search_closed_spread_sets(f, n, sets::Closure::addition, search_options(p));
  std::vector<char> closed(found.size()), predicted(found.size()), proper(found.size());
  std::vector<std::size_t> center_size(found.size());
  parallel_for(found.size(), p.threads, [&](std::size_t k) {
    const auto& m = found[k];
    const auto s = spreads::construct_S_r(f, m, 2);
    const int e = s.index_of(blocks(f, {Matrix(n, n), Matrix::identity(n)}));
    closed[k] = spreads::regulus_closure_at(f, s, e, p.q0).holds;
    const auto z = sets::center(f, m);
    center_size[k] = z.size();
    bool scalars = true;
    for (auto lambda : f.subfield(p.q0))
      scalars = scalars && std::binary_search(z.begin(), z.end(), Matrix::scalar(n, static_cast<linalg::Entry>(lambda)));
    predicted[k] = scalars;
    proper[k] = !sets::is_nearfield_set(f, m);
  });
  std::size_t n_proper = 0, n_closed = 0, n_proper_closed = 0;
  bool equivalence = true;
  std::map<std::size_t, std::size_t> centers, proper_centers;
  for (std::size_t k = 0; k < found.size(); ++k) {
    n_proper += proper[k];
    n_closed += closed[k];
    n_proper_closed += proper[k] && closed[k];
    equivalence = equivalence && closed[k] == predicted[k];
    ++centers[center_size[k]];
    if (proper[k]) ++proper_centers[center_size[k]];
  }
  auto hist = [](const std::map<std::size_t, std::size_t>& h) {
    Json o = Json::object();
    for (auto [k, v] : h) o[std::to_string(k)] = v;
    return o;
  };
  Json j = start("thm-5.4", p);
  j["sets_found"] = found.size();
  j["proper_semifields"] = n_proper;
  j["regulus_closed"] = n_closed;
  j["proper_regulus_closed"] = n_proper_closed;
  j["center_sizes"] = hist(centers);
  j["proper_center_sizes"] = hist(proper_centers);
  j["all_regulus_closed"] = n_closed == found.size();
  j["closed_iff_scalars_in_center"] = equivalence;

  // the order-9 nearfield spread is not regulus-closed at its shears position
  const auto t9 = gf::FieldTower::for_orders(3, 2);
  const auto& f9 = t9.base();
  const auto d = sets::dickson_nearfield(t9);
  const auto s9 = spreads::construct_S_r(f9, d.set, 2);
  const int e9 = s9.index_of(blocks(f9, {Matrix(2, 2), Matrix::identity(2)}));
  const auto rc = spreads::regulus_closure_at(f9, s9, e9, 3);
  Json ctl{{"spread", "S(dickson-9)"}, {"q0", 3}, {"holds", rc.holds}};
  if (rc.witness) {
    ctl["witness_pair"] = {rc.witness->first, rc.witness->second};
    ctl["witness_elements"] = {io::matrix(s9.elements[rc.witness->first].basis, 3),
                               io::matrix(s9.elements[rc.witness->second].basis, 3)};
  }
  j["control"] = std::move(ctl);
  const bool control_ok = !rc.holds && rc.witness.has_value();
  return finish(std::move(j), !found.empty() && equivalence && control_ok);
}

Outcome thm_5_5(const Params& p) {
  Ctx c(p);
  const auto& f = c.f();
  const int n = static_cast<int>(p.n);
  const Matrix i = Matrix::identity(n), z(n, n);
  const auto pi0 = geom::span(f, blocks(f, {i, z, z}), blocks(f, {z, i, z}));
  std::vector<std::pair<std::string, SpreadSet>> m0s;
  if (c.dickson) m0s.emplace_back("dickson", *c.dickson);
  if (auto other = non_nearfield_set(c)) m0s.emplace_back("non-nearfield", *other);
  m0s.emplace_back("field", c.field);
  const auto nr = sets::right_nucleus(f, c.field);

  Json j = start("thm-5.5", p);
  j["q_odd"] = p.q % 2 == 1;
  Json arr = Json::array();
  bool all_equal = true;
  for (const auto& [name, m0] : m0s) {
    const auto s = spreads::construct_T_3(f, c.field, m0);
    const auto normals = spreads::normal_elements(f, s, p.threads);
    std::vector<Subspace> scanned, predicted;
    for (int x : normals)
      if (geom::contains(f, pi0, s.elements[x])) scanned.push_back(s.elements[x]);
    for (const auto& cm : m0.matrices)
      if (std::binary_search(nr.begin(), nr.end(), cm)) predicted.push_back(blocks(f, {i, cm, z}));
    predicted.push_back(blocks(f, {z, i, z}));
    std::sort(scanned.begin(), scanned.end());
    std::sort(predicted.begin(), predicted.end());
    const bool equal = scanned == predicted;
    all_equal = all_equal && equal;
    arr.push_back({{"M", "field"},
                   {"M0", name},
                   {"normal_count", normals.size()},
                   {"scanned_in_pi0", scanned.size()},
                   {"predicted_in_pi0", predicted.size()},
                   {"equal", equal}});
  }
  j["cases"] = std::move(arr);
  j["observational"] = p.q % 2 == 0;
  return finish(std::move(j), p.q % 2 == 0 || all_equal);
}

std::vector<std::pair<std::string, Spread>> constructed_spreads(const Ctx& c, int r) {
  const auto& f = c.f();
  std::vector<std::pair<std::string, Spread>> out;
  const auto other = non_nearfield_set(c);
  if (c.dickson) out.emplace_back("S_r(dickson)", spreads::construct_S_r(f, *c.dickson, r));
  if (r == 3 && c.dickson) out.emplace_back("T_3(field,dickson)", spreads::construct_T_3(f, c.field, *c.dickson));
  if (r == 3 && other) out.emplace_back("T_3(field,non-nearfield)", spreads::construct_T_3(f, c.field, *other));
  if (c.dickson) {
    out.emplace_back("U_r(field,dickson...)",
                     spreads::construct_U_r(f, c.field, std::vector<SpreadSet>(r - 1, *c.dickson)));
    out.emplace_back("U_r(dickson,dickson...)",
                     spreads::construct_U_r(f, *c.dickson, std::vector<SpreadSet>(r - 1, *c.dickson)));
  }
  if (other) {
    std::vector<SpreadSet> mi(r - 1, c.field);
    mi[0] = *other;
    out.emplace_back("U_r(field,non-nearfield,field...)", spreads::construct_U_r(f, c.field, mi));
  }
  return out;
}

Outcome cor_5_6(const Params& p) {
  Ctx c(p);
  const auto& f = c.f();
  const int n = static_cast<int>(p.n);
  Json j = start("cor-5.6", p);
  j["q_odd"] = p.q % 2 == 1;
  Json arr = Json::array();
  bool ok = true;
  for (const auto& [name, s] : constructed_spreads(c, 3)) {
    const auto normals = spreads::normal_elements(f, s, p.threads);
    const bool des = normals.size() == s.elements.size();
    Json e{{"spread", name}, {"desarguesian", des}, {"normal_count", normals.size()}};
    if (!des) {
      std::size_t checked = 0;
      std::optional<std::vector<int>> violation;
      for_each_subset(static_cast<int>(normals.size()), 4, [&](const std::vector<int>& idx) {
        ++checked;
        std::vector<Subspace> four;
        for (int k : idx) four.push_back(s.elements[normals[k]]);
        if (geom::span(f, four).rank() > 2 * n) {
          violation = std::vector<int>{normals[idx[0]], normals[idx[1]], normals[idx[2]], normals[idx[3]]};
          return false;
        }
        return true;
      });
      e["subsets_checked"] = checked;
      if (violation) e["violation"] = *violation;
      ok = ok && !violation;
    }
    arr.push_back(std::move(e));
  }
  j["spreads"] = std::move(arr);
  j["observational"] = p.q % 2 == 0;
  return finish(std::move(j), p.q % 2 == 0 || ok);
}

Outcome thm_5_7(const Params& p) {
  require_r(p, 3);
  Ctx c(p);
  const auto& f = c.f();
  const int full = p.r * static_cast<int>(p.n);
  Json j = start("thm-5.7", p);
  j["q_odd"] = p.q % 2 == 1;
  Json arr = Json::array();
  bool ok = true;
  for (const auto& [name, s] : constructed_spreads(c, p.r)) {
    const auto normals = spreads::normal_elements(f, s, p.threads);
    const bool des = normals.size() == s.elements.size();
    Json e{{"spread", name}, {"desarguesian", des}, {"normal_count", normals.size()}};
    if (!des) {
      std::optional<std::vector<int>> violation;
      if (normals.size() >= static_cast<std::size_t>(p.r) + 1)
        for_each_subset(static_cast<int>(normals.size()), p.r, [&](const std::vector<int>& idx) {
          std::vector<Subspace> part;
          for (int k : idx) part.push_back(s.elements[normals[k]]);
          if (geom::span(f, part).rank() == full) {
            std::vector<int> v;
            for (int k : idx) v.push_back(normals[k]);
            violation = v;
            return false;
          }
          return true;
        });
      if (violation) e["violation"] = *violation;
      ok = ok && !violation;
    }
    arr.push_back(std::move(e));
  }
  j["spreads"] = std::move(arr);
  j["observational"] = p.q % 2 == 0;
  return finish(std::move(j), p.q % 2 == 0 || ok);
}

struct UCase {
  std::string name;
  SpreadSet m;
  std::vector<SpreadSet> mi;
};

std::vector<UCase> u_cases(const Ctx& c, int r) {
  std::vector<UCase> out;
  const auto other = non_nearfield_set(c);
  if (c.dickson) out.push_back({"M=field, M_i=dickson", c.field, std::vector<SpreadSet>(r - 1, *c.dickson)});
  if (other) {
    std::vector<SpreadSet> mi(r - 1, c.dickson ? *c.dickson : c.field);
    mi[0] = *other;
    out.push_back({"M=field, M_1=non-nearfield", c.field, mi});
    out.push_back({"M=field, M_i=non-nearfield", c.field, std::vector<SpreadSet>(r - 1, *other)});
  }
  if (c.dickson && other) {
    std::vector<SpreadSet> mi(r - 1, *c.dickson);
    mi.back() = *other;
    out.push_back({"M=dickson, M_r-1=non-nearfield", *c.dickson, mi});
  }
  out.push_back({"M=field, M_i=field", c.field, std::vector<SpreadSet>(r - 1, c.field)});
  return out;
}

Outcome thm_6_1(const Params& p) {
  require_r(p, 3);
  Ctx c(p);
  const auto& f = c.f();
  Json j = start("thm-6.1", p);
  Json arr = Json::array();
  bool pass = true;
  std::size_t non_field_cases = 0;
  for (const auto& uc : u_cases(c, p.r)) {
    const auto s = spreads::construct_U_r(f, uc.m, uc.mi);
    const bool valid = spreads::validate_spread(f, s).ok;
    const auto normals = valid ? spreads::normal_elements(f, s, p.threads) : std::vector<int>{};
    const auto des = designated(f, s, 1, p.r);
    const bool confirmed = valid && all_in(normals, des);
    bool non_field = false;
    for (const auto& m : uc.mi) non_field |= !sets::is_semifield_set(f, m);
    non_field_cases += non_field;
    pass = pass && confirmed && s.elements.size() == s.expected_size();
    arr.push_back({{"case", uc.name},
                   {"valid", valid},
                   {"size", s.elements.size()},
                   {"designated", des},
                   {"designated_normal", confirmed},
                   {"normal_count", normals.size()},
                   {"desarguesian", normals.size() == s.elements.size()}});
  }
  j["cases"] = std::move(arr);
  j["non_field_cases"] = non_field_cases;
  return finish(std::move(j), pass && non_field_cases >= 2);
}

Outcome cor_6_2(const Params& p) {
  require_r(p, 3);
  Ctx c(p);
  const auto& f = c.f();
  const int n = static_cast<int>(p.n);
  const int r = p.r;
  const auto qn = gf::ipow(p.q, p.n);
  Json j = start("cor-6.2", p);
  Json arr = Json::array();
  bool pass = true;
  for (const auto& uc : u_cases(c, r)) {
    const auto s = spreads::construct_U_r(f, uc.m, uc.mi);
    const auto des = designated(f, s, 1, r);
    const int k = r - 1;
    std::vector<Subspace> des_el;
    for (int x : des) des_el.push_back(s.elements[x]);
    const auto pi = geom::span(f, des_el);
    std::vector<Subspace> induced;
    for (const auto& e : s.elements)
      if (geom::contains(f, pi, e)) induced.push_back(e);
    const bool count_ok = induced.size() == (gf::ipow(p.q, k * p.n) - 1) / (qn - 1);
    // S_0 = (0, I, ..., I) completes the frame of <S_1..S_k>
    std::vector<Matrix> ones(r, Matrix::identity(n));
    ones[0] = Matrix(n, n);
    const auto s0 = geom::block_subspace(f, ones);
    bool equivalent = false;
    if (s.contains(s0)) {
      const LocalCoords local(f, pi.basis);
      std::vector<Subspace> frame;
      for (const auto& e : des_el) frame.push_back(local(e));
      frame.push_back(local(s0));
      const auto t = geom::frame_normalization(f, frame);
      std::vector<Subspace> image;
      for (const auto& e : induced) image.push_back(geom::apply_collineation(f, t, local(e)));
      std::sort(image.begin(), image.end());
      equivalent = image == spreads::construct_S_r(f, uc.m, k).elements;
    }

    // spaces through one designated normal element (k = 1 < r - 1)
    const auto& s1 = des_el.front();
    std::vector<Subspace> big;
    for (const auto& e : s.elements)
      if (e != s1) big.push_back(geom::span(f, s1, e));
    std::sort(big.begin(), big.end());
    big.erase(std::unique(big.begin(), big.end()), big.end());
    bool meet_ok = true, partitioned = true;
    for (std::size_t a = 0; a < big.size(); ++a)
      for (std::size_t b = a + 1; b < big.size() && meet_ok; ++b) meet_ok = geom::meet(f, big[a], big[b]) == s1;
    for (const auto& pj : big) {
      std::size_t inside = 0;
      for (const auto& e : s.elements) {
        const auto m = geom::meet(f, pj, e);
        if (m == e) ++inside;
        else if (!m.empty()) partitioned = false;
      }
      partitioned = partitioned && inside == qn + 1;
    }
    const bool span_ok = geom::span(f, big).rank() == r * n;
    const auto expected_m = (gf::ipow(p.q, (r - 1) * p.n) - 1) / (qn - 1);
    const auto shorter_m = (gf::ipow(p.q, (r - 2) * p.n) - 1) / (qn - 1);
    const bool structure = meet_ok && partitioned && span_ok && big.size() == expected_m;
    pass = pass && count_ok && equivalent && structure;
    arr.push_back({{"case", uc.name},
                   {"k", k},
                   {"induced_size", induced.size()},
                   {"induced_equivalent_to_S_k", equivalent},
                   {"pi_j",
                    {{"k", 1},
                     {"count", big.size()},
                     {"count_exponent_r_minus_k", expected_m},
                     {"count_exponent_r_minus_k_minus_1", shorter_m},
                     {"pairwise_meet_in_pi", meet_ok},
                     {"span_full", span_ok},
                     {"each_partitioned", partitioned}}}});
  }
  j["cases"] = std::move(arr);
  return finish(std::move(j), pass);
}

Outcome thm_7_5(const Params& p) {
  require_r(p, 2);
  Ctx c(p);
  const auto& f = c.f();
  std::vector<std::pair<std::string, Spread>> cases;
  cases.emplace_back("desarguesian", fieldred::desarguesian_spread(c.tower, p.r));
  if (c.dickson) cases.emplace_back("S_r(dickson)", spreads::construct_S_r(f, *c.dickson, p.r));
  Json j = start("thm-7.5", p);
  Json arr = Json::array();
  bool pass = true;
  for (const auto& [name, s] : cases) {
    const auto t = sperner::SpernerSpace::build(f, s);
    const bool design_ok = sperner::validate_design(t.design()).ok;
    const auto normals = spreads::normal_elements(f, s, p.threads);
    const auto m = s.elements.size();
    std::vector<char> line_normal(m);
    parallel_for(m, p.threads, [&](std::size_t e) {
      line_normal[e] = t.is_normal_line(t.origin_line(static_cast<int>(e)), p.oracle).normal;
    });
    Json disagree = Json::array();
    std::size_t normal_lines = 0;
    for (std::size_t e = 0; e < m; ++e) {
      normal_lines += line_normal[e];
      const bool ne = std::binary_search(normals.begin(), normals.end(), static_cast<int>(e));
      if (ne != static_cast<bool>(line_normal[e])) disagree.push_back(e);
    }
    std::mt19937_64 rng(p.seed);
    std::vector<std::size_t> sample(p.samples);
    for (auto& x : sample) x = rng() % t.num_lines();
    std::vector<char> fast(sample.size()), slow(sample.size());
    parallel_for(sample.size(), p.threads, [&](std::size_t k) {
      fast[k] = t.is_normal_line(sample[k], false).normal;
      slow[k] = t.is_normal_line(sample[k], true).normal;
    });
    std::size_t oracle_agree = 0, class_agree = 0;
    for (std::size_t k = 0; k < sample.size(); ++k) {
      oracle_agree += fast[k] == slow[k];
      class_agree += fast[k] == line_normal[t.design().line_class[sample[k]]];
    }
    const bool ok = design_ok && disagree.empty() && oracle_agree == sample.size() && class_agree == sample.size();
    pass = pass && ok;
    arr.push_back({{"spread", name},
                   {"points", t.num_points()},
                   {"lines", t.num_lines()},
                   {"classes", t.design().num_classes},
                   {"design_valid", design_ok},
                   {"normal_elements", normals.size()},
                   {"normal_origin_lines", normal_lines},
                   {"disagreements", std::move(disagree)},
                   {"sampled_lines", sample},
                   {"oracle_agree", oracle_agree},
                   {"class_agree", class_agree}});
  }
  j["spreads"] = std::move(arr);
  return finish(std::move(j), pass);
}

Params defaults(std::uint32_t q, unsigned n, int r, std::uint32_t q0 = 0, int trials = 0, int samples = 0) {
  Params p;
  p.q = q;
  p.n = n;
  p.r = r;
  p.q0 = q0;
  p.trials = trials;
  p.samples = samples;
  return p;
}

}  // namespace

const std::vector<Entry>& catalog() {
  static const std::vector<Entry> entries = {
      {"thm-3.1", "S_r(M) of every multiplication-closed M has its r standard elements normal", defaults(3, 2, 3),
       thm_3_1},
      {"thm-4.2", "without proper nearfields every S_r(M) is Desarguesian", defaults(2, 2, 3), thm_4_2},
      {"thm-4.5", "r+1 normal elements in general position force a Desarguesian spread", defaults(3, 2, 3), thm_4_5},
      {"lemma-5.3", "restricted closure off P1P2 is the affine F_p-subplane", defaults(9, 1, 0, 0, 100), lemma_5_3},
      {"lemma-5.4", "members of V_p off <S1,S2> lie in the spread", defaults(3, 2, 3, 0, 0, 20), lemma_5_4},
      {"thm-5.4", "regulus closure at E characterizes semifield spreads with F_q0 central", defaults(4, 2, 2, 4),
       thm_5_4},
      {"thm-5.5", "normal elements of T_3(M,M0) inside Pi_0 match M0 n N_r(M)", defaults(3, 2, 3), thm_5_5},
      {"cor-5.6", "4 normal elements not in one (2n-1)-space force Desarguesian", defaults(3, 2, 3), cor_5_6},
      {"thm-5.7", "r+1 normal elements, r spanning, force Desarguesian", defaults(3, 2, 3), thm_5_7},
      {"thm-6.1", "U_r(M,M_1..M_r-1) has r-1 normal elements", defaults(3, 2, 3), thm_6_1},
      {"cor-6.2", "the span of the normal elements carries S_k(M)", defaults(3, 2, 3), cor_6_2},
      {"thm-7.5", "normal lines of T(S) are the lines over normal elements", defaults(3, 2, 3, 0, 0, 20), thm_7_5},
  };
  return entries;
}

const Entry* find(const std::string& name) {
  for (const auto& e : catalog())
    if (e.name == name) return &e;
  return nullptr;
}

Params resolve(const Entry& e, const Params& given) {
  Params p = given;
  const Params& d = e.defaults;
  if (!p.q) p.q = d.q;
  if (!p.n) p.n = d.n;
  if (!p.r) p.r = d.r;
  if (!p.q0) p.q0 = d.q0;
  if (!p.trials) p.trials = d.trials;
  if (!p.samples) p.samples = d.samples;
  if (!p.threads) p.threads = 1;
  return p;
}

Outcome run(const std::string& name, const Params& given) {
  const Entry* e = find(name);
  if (!e) throw DomainError("unknown scenario: " + name);
  const Params p = resolve(*e, given);
  if (!gf::prime_power(p.q)) throw DomainError("q must be a prime power");
  return e->run(p);
}

SpreadSet named_set(const gf::FieldTower& t, const std::string& name) {
  if (name == "field") return sets::desarguesian_spread_set(t);
  if (name == "dickson" || name == "hall") {
    if (t.n() < 2 || !sets::is_dickson_pair(t.q(), t.n())) throw DomainError("no proper Dickson nearfield at these parameters");
    auto d = sets::dickson_nearfield(t).set;
    if (name == "dickson") return d;
    if (auto h = non_nearfield_from(t.base(), d)) return *h;
    throw DomainError("no non-nearfield coordinatization found");
  }
  throw DomainError("unknown spread set: " + name + " (expected field, dickson or hall)");
}

Json spread_summary(const gf::Field& f, const Spread& s, unsigned threads) {
  Json j;
  j["r"] = s.r;
  j["n"] = s.n;
  j["q"] = s.q;
  j["provenance"] = s.provenance;
  j["size"] = s.elements.size();
  j["hash"] = io::hex64(spreads::spread_hash(s));
  const auto check = spreads::validate_spread(f, s);
  j["valid"] = check.ok;
  if (!check.ok) {
    j["reason"] = check.reason;
    if (check.meeting_pair) j["meeting_pair"] = {check.meeting_pair->first, check.meeting_pair->second};
    if (check.uncovered_point) j["uncovered_point"] = *check.uncovered_point;
    return j;
  }
  const auto normals = spreads::normal_elements(f, s, threads);
  const auto gp = spreads::max_normal_general_position(f, s, normals);
  j["normal_count"] = normals.size();
  j["normal_indices"] = normals;
  j["max_general_position"] = gp.k;
  j["general_position_witness"] = gp.witness;
  const auto v = spreads::is_desarguesian(f, s, threads);
  if (v == spreads::Verdict::unknown)
    j["desarguesian"] = "unknown";
  else
    j["desarguesian"] = v == spreads::Verdict::yes;
  return j;
}

}  // namespace spreadlab::scenarios
