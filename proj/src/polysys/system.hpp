#pragma once
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core/mpoly.hpp"
#include "core/rational.hpp"

namespace grc {

// Coefficient of one monomial: c0 + sum c_k * a_k, all times t^t_shift.
// Constant parts are allowed; several operations demand homogeneity and
// check it themselves.
struct ParamLinearForm {
  Rat c0;
  std::map<size_t, Rat> lin;  // parameter index -> coefficient
  int t_shift = 0;

  bool is_zero() const { return c0 == 0 && lin.empty(); }
  bool is_constant() const { return lin.empty(); }
  bool is_homogeneous() const { return c0 == 0; }
  // c * single parameter, nothing else
  std::optional<size_t> single_param() const {
    if (c0 == 0 && lin.size() == 1) return lin.begin()->first;
    return std::nullopt;
  }
  bool operator==(const ParamLinearForm& o) const {
    return c0 == o.c0 && t_shift == o.t_shift && lin == o.lin;
  }
  std::string str(const std::vector<std::string>& param_names) const;
};

struct ParamPolynomial {
  size_t nvars = 0;
  std::map<Mono, ParamLinearForm> terms;
};

struct System {
  std::vector<std::string> params;
  std::vector<std::vector<size_t>> factor_blocks;  // optional declared partition
  std::vector<std::string> vars;
  std::vector<std::string> poly_names;
  std::vector<ParamPolynomial> polys;

  size_t param_index(const std::string& name) const;
};

struct ValuedScalar {
  Rat value;   // nonzero
  Rat weight;  // valuation, min convention
};

struct Specialization {
  std::map<std::string, ValuedScalar> assign;
};

// Fully specialized polynomial: per monomial a leading value and its weight.
struct SpecPoly {
  size_t nvars = 0;
  std::map<Mono, ValuedScalar> terms;
};

System parse_system(const std::string& text);

struct MacaulayMatrix {
  std::vector<Mono> columns;  // sorted lexicographically
  std::vector<std::vector<ParamLinearForm>> entries;  // one row per polynomial
};
MacaulayMatrix macaulay_matrix(const System& sys);

// Column blocks: for each Macaulay column the parameters that may appear
// there.  ok=false comes with the offending parameter's name.
struct VerticalSplit {
  bool ok = false;
  std::string witness;
  std::vector<std::vector<size_t>> column_params;
};
VerticalSplit detect_vertical(const System& sys);

// Row factorization f_i = sum_j coeffs[i][j] * param(rows[i][j]) * q_j, with
// each q primitive and sign-normalized on its lex-largest monomial.
struct HorizontalSplit {
  bool ok = false;
  std::string witness;
  std::vector<std::vector<std::pair<size_t, MPoly>>> rows;
  std::vector<std::vector<Rat>> coeffs;
};
HorizontalSplit detect_horizontal(const System& sys);

// Leading value and valuation of each coefficient at the specialization.
// Exact cancellation of every weight group -> VanishingCoefficient; a
// cancelling leading group with survivors behind it -> AmbiguousLeadingTerm.
std::vector<SpecPoly> specialize(const System& sys, const Specialization& p);

// Numeric route for the basis oracle: t is replaced by an explicit rational,
// so every coefficient collapses to one exact value.  Weights must be
// integers.  Returns plain polynomials.
std::vector<MPoly> specialize_numeric(const System& sys, const Specialization& p,
                                      const Rat& t_value);

// x_i -> prod_k x_k^{M[k][i]} on exponents (alpha -> M alpha); returns |det M|.
std::pair<ParamPolynomial, Int> apply_monomial_map(const ParamPolynomial& poly, const ZMat& m);
std::pair<System, Int> apply_monomial_map(const System& sys, const ZMat& m);

// Monomials whose coefficient form cancels exactly at p; empty means
// non-degenerate.
std::vector<std::pair<size_t, Mono>> degenerate_coefficients(const System& sys,
                                                             const Specialization& p);

Specialization random_specialization(const System& sys, uint64_t seed, long lo = 1000,
                                     long hi = 1000000);

std::string poly_str(const ParamPolynomial& poly, const System& sys);

}  // namespace grc
