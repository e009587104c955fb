#pragma once
#include <optional>
#include <string>
#include <vector>

#include "core/rational.hpp"
#include "core/rng.hpp"
#include "polysys/system.hpp"
#include "polytope/polytope.hpp"

namespace grc {

// Min-plus tropical polynomial.  A term (alpha, c) takes the value
// <alpha, w> + c at w; the polynomial is the min over its terms.
struct TropPoly {
  size_t nvars = 0;
  std::vector<std::pair<Mono, Rat>> terms;  // unique exponents, sorted
};

TropPoly trop_poly(const SpecPoly& p);
// Support with all weights zero (the fan case).
TropPoly trop_of_support(const std::vector<Mono>& supp, size_t nvars);
std::vector<TropPoly> trop_specialize(const System& sys, const Specialization& p);

Rat trop_term_value(const TropPoly& f, size_t i, const QVec& w);
bool min_attained_twice(const TropPoly& f, const QVec& w,
                        std::vector<size_t>* argmin = nullptr);

// Closed rational polyhedron { x : eq_a x = eq_b, ineq_a x <= ineq_b } in a
// canonical H-representation: equations in reduced row echelon form, implicit
// equalities promoted, inequality rows primitive integer, irredundant,
// reduced modulo the equation row space and sorted.  Two inputs describing
// the same point set canonicalize to the same representation.
struct Cell {
  size_t nvars = 0;
  QMat eq_a;
  QVec eq_b;
  QMat ineq_a;
  QVec ineq_b;
  size_t dim = 0;
  ZMat span_lat;  // saturated basis of the direction lattice, one row each
  QVec relint;    // a relative interior point
};

// Canonicalize; nullopt when the set is empty.
std::optional<Cell> make_cell(size_t nvars, const QMat& eq_a, const QVec& eq_b,
                              const QMat& ineq_a, const QVec& ineq_b);
std::string cell_key(const Cell& c);
bool cell_contains(const Cell& c, const QVec& x);
bool cell_bounded(const Cell& c);
Cell cell_translate(const Cell& c, const QVec& v);
// Tangent cone of c at a point of c, recentered to the origin.
Cell tangent_cone(const Cell& c, const QVec& p);

// Pure-dimensional weighted polyhedral complex (maximal cells only).
struct WeightedComplex {
  size_t nvars = 0;
  size_t dim = 0;
  std::vector<std::pair<Cell, Int>> cells;  // multiplicities > 0
};

Int total_weight(const WeightedComplex& wc);
WeightedComplex complex_translate(const WeightedComplex& wc, const QVec& v);
// Append extra free coordinates (product with R^extra).
WeightedComplex complex_extend(const WeightedComplex& wc, size_t extra);
// Place coordinate k of wc at ambient coordinate coords[k]; the remaining
// ambient coordinates are free.
WeightedComplex complex_embed(const WeightedComplex& wc, size_t total,
                              const std::vector<size_t>& coords);
// Exact balancing test at every wall: the weighted primitive quotient
// normals of the incident cells must sum into the wall's direction span.
bool is_balanced(const WeightedComplex& wc);

// Codimension-one complex dual to the weight-induced subdivision of the
// support; multiplicity of a cell is the lattice length of its dual edge.
WeightedComplex trop_hypersurface(const TropPoly& f);

// All nonempty intersections of one maximal cell per input, deduplicated.
// Cells of every dimension are kept; this is a set of cells, not a complex.
struct Prevariety {
  std::vector<Cell> cells;
  bool bounded = false;  // every cell has trivial recession cone
};
Prevariety prevariety(const std::vector<WeightedComplex>& parts);

struct TransversalReport {
  bool ok = true;
  std::string witness;  // describes one failing tuple when !ok
};
TransversalReport transversal_check(const std::vector<WeightedComplex>& parts);

struct StableInfo {
  ZVec translation;
  int attempts = 0;
};
// Stable intersection: limit of a ∩ (b + eps v) for a generic translation v.
// Survival of a cell pair under an infinitesimal translation is decided
// exactly by a pair of LPs in (x, eps); no concrete epsilon is picked.
WeightedComplex stable_intersection(const WeightedComplex& a,
                                    const WeightedComplex& b, Rng& rng,
                                    StableInfo* info = nullptr);

// Left fold of stable intersections; total weight of the 0-dimensional
// result.  Codimensions must sum to the ambient dimension.  Empty
// intermediate result short-circuits to 0.  Seed-independent.
Int intersection_number(const std::vector<WeightedComplex>& parts,
                        uint64_t seed);

// Local fan at p: tangent cones of the cells containing p.
WeightedComplex star_at(const WeightedComplex& wc, const QVec& p);

// Image under x -> L x for invertible integer L; multiplicities scale by
// the given uniform factor.
WeightedComplex linear_transform(const WeightedComplex& wc, const ZMat& l,
                                 const Int& factor);
// Preimage under the monomial map with exponent matrix a (weights map by
// w -> a w).  Per-cell multiplicity m * |det a| / [span_down : a span_up];
// this is the honest pullback along a finite toric cover.
WeightedComplex monomial_pullback(const WeightedComplex& wc, const ZMat& a);

// Tropical mixed volume engine: intersection number of the hypersurfaces
// of the polytopes' vertex supports with zero weights.
Int mixed_volume_tropical(const std::vector<LatticePolytope>& polys,
                          uint64_t seed);

std::string complex_json(const WeightedComplex& wc);

}  // namespace grc
