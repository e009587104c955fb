#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polysys/system.hpp"

namespace grc {

// A caller-chosen factoring f_i = sum of plf * q_list[q].  Entries within a
// row may repeat a q index; that shares the column.
struct Representation {
  std::vector<MPoly> q_list;  // constant-coefficient Laurent polynomials
  std::vector<std::vector<std::pair<size_t, ParamLinearForm>>> rows;
};

// Rewrite of a square system with one fresh unknown per table column:
// w_j = q_j(x).  The linear rows use only the w block; the nonlinear rows
// are w_j - q_j.  Substituting the table back recovers the input exactly.
struct Modification {
  System base;
  std::vector<std::string> w_vars;
  std::vector<MPoly> q_table;             // in the base unknowns
  std::vector<ParamPolynomial> lin_part;  // ambient base_vars + |w_vars|
  std::vector<MPoly> nlin_part;           // ditto
  size_t base_vars = 0;

  // Serialized view: unknowns x then w, rows lin then nlin.
  System as_system() const;
};

// Build the modification for an explicit representation.  Fails with
// RepresentationMismatch when the rows do not reproduce the system exactly,
// or when a shared column mixes parameters from different declared factor
// blocks.
Modification modify(const System& sys, const Representation& rep);

// One column per monomial of the Macaulay matrix, q_j = that monomial.
Modification modify_vertical(const System& sys);

// One column per (row, support) occurrence from the row factorization; no
// sharing of equal supports across rows.
Modification modify_horizontal(const System& sys);

// Generating set for the nonlinear part with pairwise-dependent columns
// simplified: when q_a and q_b differ by a monomial factor, w_b's row is
// replaced by the relation between w_a and w_b, which meets the remaining
// rows transversally more often.
std::vector<MPoly> rewrite_syzygies(const Modification& mod);

// Sufficient syntactic criterion for the parameter torus to act on the
// rewritten family: every coefficient is homogeneous linear without powers
// of t, and no parameter appears in two different columns.
bool check_torus_equivariant(const Modification& mod);

// True when the linear rows are generically independent: some n x n minor of
// the coefficient matrix is nonzero as a polynomial in the parameters.
// Random draws (one per seed) locate the minor; if all draws are deficient, a
// full symbolic sweep decides.  Throws RankDeficient with a certified
// relation when the rank really is short.
bool check_codim(const Modification& mod,
                 const std::vector<uint64_t>& seeds = {0, 1, 2, 3, 4});

struct CompatibilityReport {
  enum class Conclusion { FullTorus, OpenSubset, Unknown };
  std::vector<size_t> j_set;
  bool row_coverage = false;
  std::vector<std::pair<size_t, size_t>> coverage_witness;  // row -> column
  bool monomial = false;
  std::vector<std::pair<size_t, size_t>> monomial_witness;
  std::optional<bool> stratum_codim;     // set only by the exact check
  std::vector<size_t> stratum_witness;   // failing stratum when false
  Conclusion conclusion = Conclusion::Unknown;
  std::string json() const;
};

// Decide where the rewritten count is valid.  Row coverage of J gives
// OpenSubset(J) (the count holds off the union of V(q_j), j in J); a covering
// set of monomial columns upgrades to FullTorus.  With check_stratum set and
// at most 8 unknowns and 8 columns, the stratum-by-stratum codimension
// inequality is decided exactly (basis computations); a pass certifies
// OpenSubset(J) even without row coverage.
CompatibilityReport compatible_subset(const Modification& mod,
                                      const std::vector<size_t>& j_set,
                                      bool check_stratum = false);

}  // namespace grc
