#include "core/mpoly.hpp"

#include <algorithm>

#include "core/error.hpp"

namespace grc {

int total_degree(const Mono& m) {
  int d = 0;
  for (int e : m) d += e;
  return d;
}

Mono mono_mul(const Mono& a, const Mono& b) {
  Mono r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

bool lex_less(const Mono& a, const Mono& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool degrevlex_less(const Mono& a, const Mono& b) {
  int da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  for (size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return false;
}

MPoly MPoly::constant(size_t nvars, const Rat& c) {
  MPoly p(nvars);
  p.add_term(Mono(nvars, 0), c);
  return p;
}

MPoly MPoly::variable(size_t nvars, size_t i) {
  MPoly p(nvars);
  Mono m(nvars, 0);
  m[i] = 1;
  p.add_term(m, 1);
  return p;
}

MPoly MPoly::monomial(const Mono& m, const Rat& c) {
  MPoly p(m.size());
  p.add_term(m, c);
  return p;
}

void MPoly::add_term(const Mono& m, const Rat& c) {
  if (m.size() != nvars_) throw Error(ErrCode::DimensionMismatch, "monomial width");
  if (c == 0) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

MPoly MPoly::operator-() const {
  MPoly r(nvars_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

MPoly MPoly::operator+(const MPoly& o) const {
  MPoly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

MPoly MPoly::operator-(const MPoly& o) const {
  MPoly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
  return r;
}

MPoly MPoly::operator*(const MPoly& o) const {
  MPoly r(nvars_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) r.add_term(mono_mul(ma, mb), ca * cb);
  return r;
}

MPoly MPoly::operator*(const Rat& c) const {
  MPoly r(nvars_);
  if (c == 0) return r;
  for (const auto& [m, cc] : terms_) r.terms_.emplace(m, cc * c);
  return r;
}

MPoly MPoly::pow(unsigned e) const {
  MPoly r = MPoly::constant(nvars_, 1);
  MPoly base = *this;
  while (e) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

Rat MPoly::eval(const QVec& x) const {
  if (x.size() != nvars_) throw Error(ErrCode::DimensionMismatch, "eval point width");
  Rat total = 0;
  for (const auto& [m, c] : terms_) {
    Rat v = c;
    for (size_t i = 0; i < nvars_; ++i) {
      int e = m[i];
      if (e == 0) continue;
      if (x[i] == 0) {
        if (e < 0) throw Error(ErrCode::Validation, "pole at evaluation point");
        v = 0;
        break;
      }
      Rat b = x[i];
      if (e < 0) {
        b = 1 / b;
        e = -e;
      }
      for (int k = 0; k < e; ++k) v *= b;
    }
    total += v;
  }
  return total;
}

int MPoly::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, total_degree(m));
  return d;
}

std::string MPoly::str(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string t;
    if (c < 0) t += first ? "-" : " - ";
    else if (!first) t += " + ";
    Rat ac = abs(c);
    bool has_var = total_degree(m) != 0 || *std::min_element(m.begin(), m.end()) < 0;
    if (ac != 1 || !has_var) t += rat_to_string(ac);
    bool star = ac != 1 || !has_var;
    for (size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (star) t += "*";
      star = true;
      t += i < names.size() ? names[i] : "x" + std::to_string(i);
      if (m[i] != 1) t += "^" + std::to_string(m[i]);
    }
    out += t;
    first = false;
  }
  return out;
}

MPoly mpoly_det(const std::vector<std::vector<MPoly>>& m) {
  const size_t n = m.size();
  if (n == 0) throw Error(ErrCode::DimensionMismatch, "det of empty matrix");
  const size_t nv = m[0][0].nvars();
  if (n == 1) return m[0][0];
  MPoly d(nv);
  std::vector<std::vector<MPoly>> sub(n - 1, std::vector<MPoly>(n - 1, MPoly(nv)));
  for (size_t k = 0; k < n; ++k) {
    if (m[0][k].is_zero()) continue;
    for (size_t i = 1; i < n; ++i) {
      size_t jj = 0;
      for (size_t j = 0; j < n; ++j) {
        if (j == k) continue;
        sub[i - 1][jj++] = m[i][j];
      }
    }
    MPoly cof = m[0][k] * mpoly_det(sub);
    d = (k % 2 == 0) ? d + cof : d - cof;
  }
  return d;
}

}  // namespace grc
