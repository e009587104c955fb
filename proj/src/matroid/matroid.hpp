#pragma once
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core/rational.hpp"
#include "polysys/system.hpp"
#include "tropical/tropical.hpp"

namespace grc {

// Matroid on a named ground set, realized over Q.  Element j of the ground is
// column j of the realization; independence is linear independence of columns.
struct Matroid {
  std::vector<std::string> ground;
  size_t rank = 0;
  QMat realization;                        // rank rows, |ground| columns
  std::vector<std::vector<size_t>> bases;  // sorted index sets, lex-sorted
};

// A family of linear forms in the ground variables whose coefficients may
// depend affinely on parameters.  Row i, column j is the coefficient of
// ground element j in form i.
struct LinForms {
  std::vector<std::string> params;
  std::vector<std::string> ground;
  std::vector<std::vector<ParamLinearForm>> rows;
};

struct GenericMatroidInfo {
  // Column sets of size coeff_rank whose submatrix is generically invertible.
  std::vector<std::vector<size_t>> plucker_support;
  size_t coeff_rank = 0;
  bool symbolic = false;  // support was settled by symbolic minors
  std::map<std::string, Rat> sample;  // integer draw realizing the support
};

// Matroid of the kernel of the coefficient matrix at generic parameter
// values.  Two independent families of random integer draws must agree on
// which maximal minors vanish; small instances fall back to symbolic minors;
// otherwise GenericityExhausted.  Bases of the result are the complements of
// the surviving minors.  Coefficients with a power of t are Unsupported.
Matroid generic_matroid(const LinForms& lf, uint64_t seed,
                        GenericMatroidInfo* info = nullptr);

size_t matroid_rank_of(const Matroid& m, const std::vector<size_t>& set);
bool matroid_has_loops(const Matroid& m);

// All flats grouped by rank, 0..rank.  Throws for matroids with loops (the
// closure of the empty set would not be empty).
std::vector<std::vector<std::vector<size_t>>> matroid_flats(const Matroid& m);

// Minimal dependent sets, sorted by size then lex.  Loops show up as
// singleton circuits.
std::vector<std::vector<size_t>> matroid_circuits(const Matroid& m);

// Rank of the coefficient matrix as polynomials in the parameters, and the
// column sets of that size carrying some square minor that is not identically
// zero.  Exact but only affordable for small instances.
std::pair<size_t, std::vector<std::vector<size_t>>> symbolic_plucker_support(
    const LinForms& lf);

// True when exactly the listed maximal minors of the coefficient matrix are
// nonzero at the point.
bool plucker_certificate(const LinForms& lf,
                         const std::vector<std::vector<size_t>>& support,
                         const std::map<std::string, Rat>& point);

// Polyhedral fan in R^|ground| with one cone per maximal chain of flats:
// coordinates equal inside each step of the chain, earlier steps at least as
// large as later ones.  Every weight is 1, the all-ones line is lineality,
// and the dimension equals the rank.
WeightedComplex bergman_fan(const Matroid& m);

// Direct check against the circuits: the minimum of w over every circuit is
// attained at least twice.
bool circuits_min_twice(const Matroid& m, const QVec& w);

// Intersection number of the Bergman fan, placed on the listed ambient
// coordinates with every other coordinate free, with the given complexes.
Int matroidal_degree(const Matroid& m, const std::vector<WeightedComplex>& parts,
                     const std::vector<size_t>& ground_coords, uint64_t seed);

std::string matroid_json(const Matroid& m);

}  // namespace grc
