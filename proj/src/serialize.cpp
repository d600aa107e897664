#include "spreadlab/serialize.hpp"

#include <cstdio>

#include "spreadlab/errors.hpp"

namespace spreadlab::io {

Json report(const std::string& command) {
  Json j;
  j["schema"] = kSchema;
  j["command"] = command;
  return j;
}

Json element(const gf::Field& f, gf::Elem a) { return f.coefficients(a); }

Json field_info(const gf::Field& f) {
  Json j;
  j["p"] = f.characteristic();
  j["degree"] = f.degree();
  j["order"] = f.order();
  j["modulus"] = f.modulus();
  j["generator"] = element(f, f.generator());
  return j;
}

Json tower_info(const gf::FieldTower& t) {
  Json j;
  j["p"] = t.p();
  j["h"] = t.h();
  j["n"] = t.n();
  j["q"] = t.q();
  j["extension"] = field_info(t.extension());
  j["base"] = field_info(t.base());
  j["base_generator"] = element(t.extension(), t.embed(t.base().generator()));
  j["basis_polynomial"] = t.basis_polynomial();
  return j;
}

Json matrix(const linalg::Matrix& m, std::uint32_t q) {
  Json rows = Json::array();
  for (int r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (auto x : m.row(r)) row.push_back(x);
    rows.push_back(std::move(row));
  }
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["q"] = q;
  j["entries"] = std::move(rows);
  return j;
}

linalg::Matrix matrix_from(const Json& j) {
  try {
    const int rows = j.at("rows").get<int>();
    const int cols = j.at("cols").get<int>();
    const auto q = j.at("q").get<std::uint32_t>();
    const auto& e = j.at("entries");
    if (rows < 0 || cols < 0 || static_cast<int>(e.size()) != rows) throw DomainError("matrix: row count mismatch");
    linalg::Matrix m(rows, cols);
    for (int r = 0; r < rows; ++r) {
      if (static_cast<int>(e[r].size()) != cols) throw DomainError("matrix: column count mismatch");
      for (int c = 0; c < cols; ++c) {
        const auto v = e[r][c].get<std::uint32_t>();
        if (v >= q) throw DomainError("matrix: entry outside the field");
        m(r, c) = static_cast<linalg::Entry>(v);
      }
    }
    return m;
  } catch (const Json::exception& ex) {
    throw DomainError(std::string("matrix: ") + ex.what());
  }
}

Json subspace(const geom::Subspace& s, std::uint32_t q) {
  Json j;
  j["ambient"] = {{"m", s.vector_dim() - 1}, {"q", q}};
  j["basis"] = matrix(s.basis, q);
  return j;
}

Json spread(const spreads::Spread& s) {
  Json j;
  j["r"] = s.r;
  j["n"] = s.n;
  j["q"] = s.q;
  j["provenance"] = s.provenance;
  j["size"] = s.elements.size();
  j["hash"] = hex64(spreads::spread_hash(s));
  Json el = Json::array();
  for (const auto& e : s.elements) el.push_back(matrix(e.basis, s.q));
  j["elements"] = std::move(el);
  return j;
}

spreads::Spread spread_from(const gf::Field& f, const Json& j) {
  try {
    const int r = j.at("r").get<int>();
    const int n = j.at("n").get<int>();
    const auto q = j.at("q").get<std::uint32_t>();
    if (q != f.order()) throw DomainError("spread: field order mismatch");
    std::vector<geom::Subspace> el;
    for (const auto& e : j.at("elements")) {
      auto m = matrix_from(e);
      if (m.cols() != r * n) throw DomainError("spread: element of the wrong length");
      el.push_back(geom::make_subspace(f, std::move(m)));
    }
    return spreads::make_spread(r, n, q, std::move(el), j.value("provenance", std::string("file")));
  } catch (const Json::exception& ex) {
    throw DomainError(std::string("spread: ") + ex.what());
  }
}

Json spread_set(const sets::SpreadSet& m) {
  Json j;
  j["q"] = m.q;
  j["n"] = m.n;
  j["size"] = m.matrices.size();
  j["contains_zero"] = m.contains_zero;
  j["contains_identity"] = m.contains_identity;
  Json ms = Json::array();
  for (const auto& x : m.matrices) ms.push_back(matrix(x, m.q));
  j["matrices"] = std::move(ms);
  return j;
}

Json quasifield(const sets::Quasifield& qf) {
  Json j;
  j["order"] = qf.order;
  j["q"] = qf.q;
  j["n"] = qf.n;
  j["unit"] = qf.unit;
  Json rows = Json::array();
  for (std::uint32_t x = 0; x < qf.order; ++x) {
    Json row = Json::array();
    for (std::uint32_t y = 0; y < qf.order; ++y) row.push_back(qf.mul(x, y));
    rows.push_back(std::move(row));
  }
  j["multiplication"] = std::move(rows);
  return j;
}

Json axioms(const sets::AxiomReport& r) {
  Json arr = Json::array();
  for (const auto& a : r.axioms) {
    Json x;
    x["name"] = a.name;
    x["pass"] = a.pass;
    if (!a.pass) x["witness"] = a.witness;
    arr.push_back(std::move(x));
  }
  return arr;
}

Json point(const closure::Point& p) { return Json::array({p[0], p[1], p[2]}); }

Json points(const closure::PointSet& s) {
  Json arr = Json::array();
  for (const auto& p : s) arr.push_back(point(p));
  return arr;
}

std::string hex64(std::uint64_t x) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

}  // namespace spreadlab::io
