#pragma once
// JSON encodings shared by the CLI and the acceptance harness.

#include <cstdint>
#include <string>

#include "json.hpp"
#include "spreadlab/closure.hpp"
#include "spreadlab/gf/tower.hpp"
#include "spreadlab/projgeom.hpp"
#include "spreadlab/spreads.hpp"
#include "spreadlab/spreadsets.hpp"

namespace spreadlab::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "spreadlab/1";

/// {"schema": ..., "command": command}
Json report(const std::string& command);

/// Little-endian coefficient vector in the power basis of the field's modulus.
Json element(const gf::Field& f, gf::Elem a);
Json field_info(const gf::Field& f);
Json tower_info(const gf::FieldTower& t);

Json matrix(const linalg::Matrix& m, std::uint32_t q);
/// Throws DomainError on malformed input.
linalg::Matrix matrix_from(const Json& j);

Json subspace(const geom::Subspace& s, std::uint32_t q);
Json spread(const spreads::Spread& s);
spreads::Spread spread_from(const gf::Field& f, const Json& j);
Json spread_set(const sets::SpreadSet& m);
Json quasifield(const sets::Quasifield& qf);
Json axioms(const sets::AxiomReport& r);
Json points(const closure::PointSet& s);
Json point(const closure::Point& p);

std::string hex64(std::uint64_t x);

}  // namespace spreadlab::io
