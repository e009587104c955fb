#pragma once
#include <map>
#include <string>
#include <vector>

#include "core/rational.hpp"

namespace grc {

// Exponent vector; negative entries are allowed (Laurent monomials).
using Mono = std::vector<int>;

int total_degree(const Mono& m);
Mono mono_mul(const Mono& a, const Mono& b);

// Orders used by the basis oracle. Both refine total degree.
bool lex_less(const Mono& a, const Mono& b);
bool degrevlex_less(const Mono& a, const Mono& b);

// Sparse polynomial over Q in a fixed number of variables.
class MPoly {
 public:
  MPoly() = default;
  explicit MPoly(size_t nvars) : nvars_(nvars) {}
  static MPoly constant(size_t nvars, const Rat& c);
  static MPoly variable(size_t nvars, size_t i);
  static MPoly monomial(const Mono& m, const Rat& c);

  size_t nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }
  const std::map<Mono, Rat>& terms() const { return terms_; }

  void add_term(const Mono& m, const Rat& c);

  MPoly operator-() const;
  MPoly operator+(const MPoly& o) const;
  MPoly operator-(const MPoly& o) const;
  MPoly operator*(const MPoly& o) const;
  MPoly operator*(const Rat& c) const;
  MPoly pow(unsigned e) const;
  bool operator==(const MPoly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

  // Evaluation; throws on a zero base raised to a negative power.
  Rat eval(const QVec& x) const;

  int degree() const;  // max total degree, -1 for zero
  std::string str(const std::vector<std::string>& names) const;

 private:
  size_t nvars_ = 0;
  std::map<Mono, Rat> terms_;  // keyed lexicographically, zero coeffs erased
};

// Determinant by cofactor expansion; meant for small symbolic matrices.
MPoly mpoly_det(const std::vector<std::vector<MPoly>>& m);

}  // namespace grc
