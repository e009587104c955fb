#pragma once
#include <gmpxx.h>

#include <string>
#include <vector>

#include "core/error.hpp"

namespace grc {

// Exact rationals everywhere; mpq_class keeps values canonical (lowest terms,
// positive denominator) as long as they are built through arithmetic.
using Rat = mpq_class;
using Int = mpz_class;

using QVec = std::vector<Rat>;
using QMat = std::vector<std::vector<Rat>>;
using ZVec = std::vector<Int>;
using ZMat = std::vector<std::vector<Int>>;

inline Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw Error(ErrCode::Parse, "empty rational literal");
  try {
    Rat r(s);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw Error(ErrCode::Parse, "bad rational literal: " + s);
  }
}

inline std::string rat_to_string(const Rat& r) { return r.get_str(); }

inline bool rat_is_int(const Rat& r) { return r.get_den() == 1; }

// Floor of p/q as an exact integer.
inline Int rat_floor(const Rat& r) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return q;
}

inline int sgn(const Rat& r) { return sgn(r.get_num()); }

inline QVec qvec(std::initializer_list<long> xs) {
  QVec v;
  for (long x : xs) v.push_back(Rat(x));
  return v;
}

inline bool is_zero_vec(const QVec& v) {
  for (const Rat& x : v)
    if (x != 0) return false;
  return true;
}

inline QVec vec_add(const QVec& a, const QVec& b) {
  QVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline QVec vec_sub(const QVec& a, const QVec& b) {
  QVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline QVec vec_scale(const Rat& c, const QVec& a) {
  QVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

inline Rat dot(const QVec& a, const QVec& b) {
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Scales a rational vector to a primitive integer vector (gcd 1), preserving
// direction. Zero vector stays zero.
inline ZVec primitive_integer(const QVec& v) {
  Int lcm = 1;
  for (const Rat& x : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den().get_mpz_t());
  ZVec w(v.size());
  Int g = 0;
  for (size_t i = 0; i < v.size(); ++i) {
    w[i] = v[i].get_num() * (lcm / v[i].get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), w[i].get_mpz_t());
  }
  if (g > 1)
    for (Int& x : w) x /= g;
  return w;
}

inline QVec to_qvec(const ZVec& v) {
  QVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
  return r;
}

}  // namespace grc
