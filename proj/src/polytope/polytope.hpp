#pragma once
#include <vector>

#include "core/mpoly.hpp"
#include "core/rational.hpp"

namespace grc {

// Convex hull of lattice points; only the extreme points are stored.
struct LatticePolytope {
  size_t dim = 0;
  std::vector<Mono> verts;  // sorted, irredundant
};

// Hull of the given points; interior and redundant points are dropped by LP.
LatticePolytope make_polytope(size_t dim, std::vector<Mono> pts);

LatticePolytope newton_polytope(const MPoly& f);

LatticePolytope minkowski_sum(const LatticePolytope& p, const LatticePolytope& q);

bool point_in_hull(const Mono& pt, const std::vector<Mono>& hull_pts);

// Euclidean d-volume of conv(pts); 0 when the hull is not full-dimensional.
// Computed from a lower-hull triangulation under a random integer lift drawn
// from `seed`; the result is lift-independent.
Rat euclidean_volume(size_t dim, const std::vector<Mono>& pts, uint64_t seed = 0);

// n! * euclidean volume.
Rat normalized_volume(const LatticePolytope& p);

// Euclidean volume of P_1 + ... + P_k.  Summands on disjoint coordinate
// blocks factor the volume; each block with several summands goes through a
// Cayley-lifted subdivision so the cell count tracks the mixed cells of the
// sum rather than a full triangulation.
Rat volume_of_sum(const std::vector<const LatticePolytope*>& ps, uint64_t seed = 0);

// Normalized mixed volume via inclusion-exclusion over subset sums:
//   MV = sum_{S != empty} (-1)^{n-|S|} vol(sum_{i in S} P_i).
// Exact reference engine; n <= 10.
Int mixed_volume_polarization(const std::vector<LatticePolytope>& ps, uint64_t seed = 0);

// Facets of conv(verts) as pairs (a, b) with <a,x> >= b on the polytope and
// equality on the facet; a is primitive integer.  Enumeration is by d-subsets
// of the vertices, so this is only meant for small instances.
std::vector<std::pair<ZVec, Rat>> facet_normals(size_t dim,
                                                const std::vector<Mono>& verts);

// Support-shrinking test: true iff replacing qs[0] by p1 (a subpolytope of
// qs[0]) preserves the mixed volume.  Checks, for one representative u per
// cone of the normal fan of the total sum, that p1 meets the face of qs[0]
// in direction u whenever the remaining faces have positive mixed volume in
// the quotient along u.
bool bihan_soprunov_reducible(const LatticePolytope& p1,
                              const std::vector<LatticePolytope>& qs);

}  // namespace grc
