#include "polysys/system.hpp"

#include <algorithm>
#include <set>

#include "core/error.hpp"
#include "core/linalg.hpp"
#include "core/rng.hpp"

namespace grc {

namespace {

const ValuedScalar& lookup(const System& sys, const Specialization& p, size_t k) {
  auto it = p.assign.find(sys.params[k]);
  if (it == p.assign.end())
    throw Error(ErrCode::Validation, "specialization misses parameter '" + sys.params[k] + "'");
  if (it->second.value == 0)
    throw Error(ErrCode::Validation, "parameter '" + sys.params[k] + "' specialized to zero");
  return it->second;
}

// gcd of numerators over lcm of denominators, signed by the lex-largest term
Rat mpoly_content(const MPoly& q) {
  Int num = 0, den = 1;
  for (const auto& [m, c] : q.terms()) {
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num().get_mpz_t());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
  }
  Rat content = Rat(num) / Rat(den);
  if (q.terms().rbegin()->second < 0) content = -content;
  return content;
}

}  // namespace

std::string ParamLinearForm::str(const std::vector<std::string>& param_names) const {
  std::string s;
  bool first = true;
  auto put = [&](const Rat& c, const std::string& sym) {
    if (c == 0) return;
    Rat ac = abs(c);
    if (c < 0) s += first ? "-" : " - ";
    else if (!first) s += " + ";
    if (ac != 1 || sym.empty()) s += rat_to_string(ac);
    if (!sym.empty()) {
      if (ac != 1) s += "*";
      s += sym;
    }
    first = false;
  };
  put(c0, "");
  for (const auto& [k, c] : lin) put(c, param_names[k]);
  if (first) s = "0";
  if (t_shift != 0) {
    s = "(" + s + ")*t";
    if (t_shift != 1) s += "^" + std::to_string(t_shift);
  }
  return s;
}

MacaulayMatrix macaulay_matrix(const System& sys) {
  MacaulayMatrix mm;
  std::set<Mono> monos;
  for (const auto& poly : sys.polys)
    for (const auto& [m, f] : poly.terms) monos.insert(m);
  mm.columns.assign(monos.begin(), monos.end());
  for (const auto& poly : sys.polys) {
    std::vector<ParamLinearForm> row;
    for (const auto& m : mm.columns) {
      auto it = poly.terms.find(m);
      row.push_back(it == poly.terms.end() ? ParamLinearForm{} : it->second);
    }
    mm.entries.push_back(std::move(row));
  }
  return mm;
}

VerticalSplit detect_vertical(const System& sys) {
  MacaulayMatrix mm = macaulay_matrix(sys);
  VerticalSplit out;
  out.column_params.resize(mm.columns.size());
  std::map<size_t, size_t> column_of;  // parameter -> column
  for (const auto& row : mm.entries) {
    for (size_t j = 0; j < row.size(); ++j) {
      for (const auto& [k, c] : row[j].lin) {
        auto [it, fresh] = column_of.emplace(k, j);
        if (!fresh && it->second != j) {
          out.witness = sys.params[k];
          return out;
        }
        if (fresh) out.column_params[j].push_back(k);
      }
    }
  }
  // a declared tensor decomposition must be refined by the column blocks
  for (const auto& block : sys.factor_blocks) {
    for (size_t i = 1; i < block.size(); ++i)
      if (column_of[block[i]] != column_of[block[0]]) {
        out.witness = sys.params[block[i]];
        return out;
      }
  }
  out.ok = true;
  return out;
}

HorizontalSplit detect_horizontal(const System& sys) {
  HorizontalSplit out;
  std::map<size_t, size_t> row_of;
  for (size_t i = 0; i < sys.polys.size(); ++i) {
    for (const auto& [m, f] : sys.polys[i].terms) {
      if (f.t_shift != 0) {
        out.witness = "t-power in " + sys.poly_names[i];
        return out;
      }
      if (f.c0 != 0) {
        out.witness = "inhomogeneous coefficient in " + sys.poly_names[i];
        return out;
      }
      for (const auto& [k, c] : f.lin) {
        auto [it, fresh] = row_of.emplace(k, i);
        if (!fresh && it->second != i) {
          out.witness = sys.params[k];
          return out;
        }
      }
    }
  }
  // f_i = sum_k (sum_alpha c_{k,alpha} x^alpha) * a_k: collect q per parameter
  out.rows.assign(sys.polys.size(), {});
  out.coeffs.assign(sys.polys.size(), {});
  for (size_t i = 0; i < sys.polys.size(); ++i) {
    std::map<size_t, MPoly> qs;
    for (const auto& [m, f] : sys.polys[i].terms)
      for (const auto& [k, c] : f.lin) {
        auto [it, fresh] = qs.emplace(k, MPoly(sys.vars.size()));
        it->second.add_term(m, c);
      }
    for (auto& [k, q] : qs) {
      Rat content = mpoly_content(q);
      out.rows[i].push_back({k, q * (1 / content)});
      out.coeffs[i].push_back(content);
    }
  }
  out.ok = true;
  return out;
}

std::vector<SpecPoly> specialize(const System& sys, const Specialization& p) {
  std::vector<SpecPoly> out;
  std::vector<std::pair<size_t, Mono>> vanished;
  std::vector<std::pair<size_t, Mono>> ambiguous;
  for (size_t i = 0; i < sys.polys.size(); ++i) {
    SpecPoly sp;
    sp.nvars = sys.polys[i].nvars;
    for (const auto& [m, f] : sys.polys[i].terms) {
      std::map<Rat, Rat> groups;  // weight -> value sum
      if (f.c0 != 0) groups[Rat(f.t_shift)] += f.c0;
      for (const auto& [k, c] : f.lin) {
        const ValuedScalar& vs = lookup(sys, p, k);
        groups[vs.weight + f.t_shift] += c * vs.value;
      }
      bool any_nonzero = false;
      for (const auto& [w, v] : groups)
        if (v != 0) any_nonzero = true;
      if (!any_nonzero) {
        vanished.push_back({i, m});
        continue;
      }
      const auto& lead = *groups.begin();
      if (lead.second == 0) {
        ambiguous.push_back({i, m});
        continue;
      }
      sp.terms[m] = ValuedScalar{lead.second, lead.first};
    }
    out.push_back(std::move(sp));
  }
  auto witness_list = [&](const std::vector<std::pair<size_t, Mono>>& xs) {
    std::string s;
    for (const auto& [i, m] : xs) {
      if (!s.empty()) s += ", ";
      s += sys.poly_names[i] + ":(";
      for (size_t j = 0; j < m.size(); ++j) s += (j ? "," : "") + std::to_string(m[j]);
      s += ")";
    }
    return s;
  };
  if (!vanished.empty())
    throw Error(ErrCode::VanishingCoefficient,
                "coefficients vanish at specialization: " + witness_list(vanished));
  if (!ambiguous.empty())
    throw Error(ErrCode::AmbiguousLeadingTerm,
                "leading terms cancel at specialization: " + witness_list(ambiguous));
  return out;
}

std::vector<MPoly> specialize_numeric(const System& sys, const Specialization& p,
                                      const Rat& t_value) {
  if (t_value == 0) throw Error(ErrCode::Validation, "t must be nonzero");
  auto rat_pow = [&](const Rat& w) {
    if (!rat_is_int(w))
      throw Error(ErrCode::Validation, "non-integer weight in numeric specialization");
    long e = w.get_num().get_si();
    Rat base = e < 0 ? Rat(1 / t_value) : t_value;
    if (e < 0) e = -e;
    Rat r = 1;
    for (long k = 0; k < e; ++k) r *= base;
    return r;
  };
  std::vector<MPoly> out;
  for (size_t i = 0; i < sys.polys.size(); ++i) {
    MPoly poly(sys.polys[i].nvars);
    for (const auto& [m, f] : sys.polys[i].terms) {
      Rat v = f.c0;
      for (const auto& [k, c] : f.lin) {
        const ValuedScalar& vs = lookup(sys, p, k);
        v += c * vs.value * rat_pow(vs.weight);
      }
      v *= rat_pow(Rat(f.t_shift));
      if (v != 0) poly.add_term(m, v);
    }
    if (poly.is_zero())
      throw Error(ErrCode::VanishingCoefficient,
                  "polynomial " + sys.poly_names[i] + " vanishes at specialization");
    out.push_back(std::move(poly));
  }
  return out;
}

std::pair<ParamPolynomial, Int> apply_monomial_map(const ParamPolynomial& poly, const ZMat& m) {
  const size_t n = poly.nvars;
  if (m.size() != n) throw Error(ErrCode::DimensionMismatch, "monomial map shape");
  QMat qm(n, QVec(n));
  for (size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw Error(ErrCode::DimensionMismatch, "monomial map shape");
    for (size_t j = 0; j < n; ++j) qm[i][j] = Rat(m[i][j]);
  }
  Rat d = det_of(qm);
  if (d == 0) throw Error(ErrCode::Validation, "singular monomial map");
  ParamPolynomial out;
  out.nvars = n;
  for (const auto& [mono, f] : poly.terms) {
    Mono img(n, 0);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) img[i] += (int)m[i][j].get_si() * mono[j];
    out.terms[img] = f;
  }
  Int deg = abs(d.get_num());
  return {out, deg};
}

std::pair<System, Int> apply_monomial_map(const System& sys, const ZMat& m) {
  System out = sys;
  Int deg = 1;
  for (size_t i = 0; i < sys.polys.size(); ++i) {
    auto [p, d] = apply_monomial_map(sys.polys[i], m);
    out.polys[i] = std::move(p);
    deg = d;
  }
  return {out, deg};
}

std::vector<std::pair<size_t, Mono>> degenerate_coefficients(const System& sys,
                                                             const Specialization& p) {
  std::vector<std::pair<size_t, Mono>> witnesses;
  for (size_t i = 0; i < sys.polys.size(); ++i) {
    for (const auto& [m, f] : sys.polys[i].terms) {
      std::map<Rat, Rat> groups;
      if (f.c0 != 0) groups[Rat(f.t_shift)] += f.c0;
      for (const auto& [k, c] : f.lin) {
        const ValuedScalar& vs = lookup(sys, p, k);
        groups[vs.weight + f.t_shift] += c * vs.value;
      }
      bool any = false;
      for (const auto& [w, v] : groups)
        if (v != 0) any = true;
      if (!any) witnesses.push_back({i, m});
    }
  }
  return witnesses;
}

Specialization random_specialization(const System& sys, uint64_t seed, long lo, long hi) {
  Rng rng(seed);
  Specialization p;
  for (const auto& name : sys.params) {
    long v = rng.uniform(lo, hi);
    if (v == 0) v = hi;
    p.assign[name] = ValuedScalar{Rat(v), Rat(0)};
  }
  return p;
}

std::string poly_str(const ParamPolynomial& poly, const System& sys) {
  std::string s;
  bool first = true;
  for (const auto& [m, f] : poly.terms) {
    if (!first) s += " + ";
    first = false;
    s += "(" + f.str(sys.params) + ")";
    for (size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      s += "*" + sys.vars[i];
      if (m[i] != 1) s += "^" + std::to_string(m[i]);
    }
  }
  return s.empty() ? "0" : s;
}

}  // namespace grc
