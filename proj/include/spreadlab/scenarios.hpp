#pragma once
// Named verification scenarios, each a structural result checked by
// exhaustive computation at small parameters.

#include <cstdint>
#include <string>
#include <vector>

#include "spreadlab/serialize.hpp"

namespace spreadlab::scenarios {

/// Zero fields fall back to the scenario's defaults.
struct Params {
  std::uint32_t q = 0;
  unsigned n = 0;
  int r = 0;
  std::uint32_t q0 = 0;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  bool oracle = false;
  std::uint64_t budget = 0;
  int trials = 0;
  int samples = 0;
};

struct Outcome {
  io::Json report;
  bool pass = false;
};

struct Entry {
  std::string name;
  std::string summary;
  Params defaults;
  Outcome (*run)(const Params&);
};

const std::vector<Entry>& catalog();
/// nullptr for unknown names.
const Entry* find(const std::string& name);
Params resolve(const Entry& e, const Params& given);
/// Throws DomainError for unknown names.
Outcome run(const std::string& name, const Params& given);

/// "field", "dickson", or "hall" (a coordinatization of the Dickson plane that
/// is not a nearfield), over t.base(). Throws DomainError when unavailable.
sets::SpreadSet named_set(const gf::FieldTower& t, const std::string& name);

/// Validity, normal elements, general position and the Desarguesian verdict.
io::Json spread_summary(const gf::Field& f, const spreads::Spread& s, unsigned threads);

}  // namespace spreadlab::scenarios
