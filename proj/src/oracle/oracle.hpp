#pragma once
#include <optional>
#include <vector>

#include "core/mpoly.hpp"

namespace grc {

// Reduced basis of the ideal in graded reverse lexicographic order: monic,
// minimal, inter-reduced, sorted by leading monomial.  Exponents must be
// nonnegative.
std::vector<MPoly> groebner_basis(const std::vector<MPoly>& gens);

// Remainder of f on full division by the basis; zero exactly when f lies in
// the ideal.
MPoly normal_form(const MPoly& f, const std::vector<MPoly>& gb);

// Number of solutions with every coordinate nonzero, counted with
// multiplicity over the complex numbers; nullopt when there are infinitely
// many.  Negative exponents are cleared first, which does not move roots in
// or out of the torus.
std::optional<Int> torus_root_count(const std::vector<MPoly>& polys);

// Dimension of the affine vanishing locus, read off the leading ideal; -1
// when the locus is empty.  Input must be nonempty with equal variable
// counts and nonnegative exponents.
long ideal_dimension(const std::vector<MPoly>& gens);

}  // namespace grc
