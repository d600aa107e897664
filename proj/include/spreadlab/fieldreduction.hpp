#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "spreadlab/gf/tower.hpp"
#include "spreadlab/projgeom.hpp"
#include "spreadlab/spreads.hpp"

namespace spreadlab::fieldred {

using geom::Subspace;

/// {(a_1 x, ..., a_r x) : x in F_{q^n}} in PG(rn-1,q).
Subspace field_reduce_point(const gf::FieldTower& tower, std::span<const gf::Elem> point);

/// Field reduction of all points of PG(r-1,q^n).
spreads::Spread desarguesian_spread(const gf::FieldTower& tower, int r);

/// The q0+1 members of R_{q0}(A,B,C), sorted. Throws DomainError if the
/// inputs are not pairwise disjoint or q0 is not a subfield order of q.
std::vector<Subspace> regulus(const gf::Field& f, const Subspace& a, const Subspace& b, const Subspace& c,
                              std::uint32_t q0);

/// The q0^2+q0+1 members of V_{q0}(A,B,C,D), sorted.
std::vector<Subspace> subplane_V(const gf::Field& f, const Subspace& a, const Subspace& b, const Subspace& c,
                                 const Subspace& d, std::uint32_t q0);

}  // namespace spreadlab::fieldred
