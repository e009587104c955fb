#include "modify/modify.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "core/error.hpp"
#include "core/linalg.hpp"
#include "core/rng.hpp"
#include "oracle/oracle.hpp"

namespace grc {

namespace {

ParamLinearForm plf_scale(const ParamLinearForm& f, const Rat& c) {
  ParamLinearForm out;
  out.c0 = Rat(f.c0 * c);
  out.t_shift = f.t_shift;
  for (const auto& [k, v] : f.lin) {
    Rat s = Rat(v * c);
    if (s != 0) out.lin[k] = s;
  }
  return out;
}

void plf_add(ParamLinearForm& into, const ParamLinearForm& f,
             const std::string& where) {
  if (f.is_zero()) return;
  if (into.is_zero()) {
    into = f;
    return;
  }
  if (into.t_shift != f.t_shift)
    throw Error(ErrCode::RepresentationMismatch,
                "mixed powers of t in one coefficient at " + where);
  into.c0 += f.c0;
  for (const auto& [k, v] : f.lin) {
    Rat s = into.lin.count(k) ? Rat(into.lin[k] + v) : v;
    if (s == 0)
      into.lin.erase(k);
    else
      into.lin[k] = s;
  }
}

Mono extend_mono(const Mono& m, size_t total) {
  Mono e(total, 0);
  for (size_t i = 0; i < m.size(); ++i) e[i] = m[i];
  return e;
}

// clear negative exponents poly-wise; exact on the torus
MPoly laurent_clear(const MPoly& f) {
  if (f.is_zero()) return f;
  size_t n = f.nvars();
  Mono shift(n, 0);
  bool first = true;
  for (const auto& [m, c] : f.terms()) {
    for (size_t i = 0; i < n; ++i)
      shift[i] = first ? std::min(m[i], 0) : std::min(shift[i], m[i]);
    first = false;
  }
  MPoly out(n);
  for (const auto& [m, c] : f.terms()) {
    Mono e(n);
    for (size_t i = 0; i < n; ++i) e[i] = m[i] - shift[i];
    out.add_term(e, c);
  }
  return out;
}

MPoly plf_to_mpoly(const ParamLinearForm& f, size_t np) {
  if (f.t_shift != 0)
    throw Error(ErrCode::Unsupported, "coefficient carries a power of t");
  MPoly p = MPoly::constant(np, f.c0);
  for (const auto& [k, c] : f.lin) {
    Mono m(np, 0);
    m[k] = 1;
    p = p + MPoly::monomial(m, c);
  }
  return p;
}

Rat plf_eval(const ParamLinearForm& f, const QVec& pv) {
  Rat v = f.c0;
  for (const auto& [k, c] : f.lin) v += Rat(c * pv[k]);
  return v;
}

// coefficient of w_j in row i, zero form when absent
ParamLinearForm lin_coeff(const Modification& mod, size_t i, size_t j) {
  Mono key(mod.base_vars + mod.w_vars.size(), 0);
  key[mod.base_vars + j] = 1;
  auto it = mod.lin_part[i].terms.find(key);
  return it == mod.lin_part[i].terms.end() ? ParamLinearForm{} : it->second;
}

}  // namespace

System Modification::as_system() const {
  System s;
  s.params = base.params;
  s.factor_blocks = base.factor_blocks;
  s.vars = base.vars;
  for (const std::string& w : w_vars) s.vars.push_back(w);
  size_t total = base_vars + w_vars.size();
  for (size_t i = 0; i < lin_part.size(); ++i) {
    s.poly_names.push_back(base.poly_names[i]);
    s.polys.push_back(lin_part[i]);
  }
  for (size_t j = 0; j < nlin_part.size(); ++j) {
    s.poly_names.push_back("h_" + w_vars[j]);
    ParamPolynomial p;
    p.nvars = total;
    for (const auto& [m, c] : nlin_part[j].terms()) {
      ParamLinearForm f;
      f.c0 = c;
      p.terms[m] = f;
    }
    s.polys.push_back(p);
  }
  return s;
}

Modification modify(const System& sys, const Representation& rep) {
  size_t n = sys.vars.size(), m = rep.q_list.size();
  if (rep.rows.size() != sys.polys.size())
    throw Error(ErrCode::RepresentationMismatch, "row count mismatch");
  for (const MPoly& q : rep.q_list)
    if (q.is_zero())
      throw Error(ErrCode::RepresentationMismatch, "zero table entry");

  // the rows must reproduce the system exactly
  for (size_t i = 0; i < rep.rows.size(); ++i) {
    std::map<Mono, ParamLinearForm> acc;
    for (const auto& [qi, plf] : rep.rows[i]) {
      if (qi >= m)
        throw Error(ErrCode::RepresentationMismatch, "table index out of range");
      for (const auto& [mono, c] : rep.q_list[qi].terms())
        plf_add(acc[mono], plf_scale(plf, c),
                sys.poly_names.empty() ? "row" : sys.poly_names[i]);
    }
    for (auto it = acc.begin(); it != acc.end();)
      it = it->second.is_zero() ? acc.erase(it) : std::next(it);
    if (acc != sys.polys[i].terms)
      throw Error(ErrCode::RepresentationMismatch,
                  "rows do not reproduce " +
                      (sys.poly_names.empty() ? "the system" : sys.poly_names[i]));
  }

  // a shared column must stay inside one declared factor block
  if (!sys.factor_blocks.empty()) {
    std::map<size_t, size_t> block_of;
    for (size_t b = 0; b < sys.factor_blocks.size(); ++b)
      for (size_t k : sys.factor_blocks[b]) block_of[k] = b;
    for (size_t j = 0; j < m; ++j) {
      std::set<size_t> blocks;
      for (const auto& row : rep.rows)
        for (const auto& [qi, plf] : row)
          if (qi == j)
            for (const auto& [k, c] : plf.lin) blocks.insert(block_of.at(k));
      if (blocks.size() > 1)
        throw Error(ErrCode::RepresentationMismatch,
                    "shared column spans parameter factor blocks");
    }
  }

  Modification mod;
  mod.base = sys;
  mod.base_vars = n;
  mod.q_table = rep.q_list;
  std::set<std::string> taken(sys.vars.begin(), sys.vars.end());
  taken.insert(sys.params.begin(), sys.params.end());
  for (size_t j = 0; j < m; ++j) {
    std::string name = "w" + std::to_string(j + 1);
    while (taken.count(name)) name += "_";
    taken.insert(name);
    mod.w_vars.push_back(name);
  }
  size_t total = n + m;
  for (size_t i = 0; i < rep.rows.size(); ++i) {
    ParamPolynomial fh;
    fh.nvars = total;
    for (const auto& [qi, plf] : rep.rows[i]) {
      Mono key(total, 0);
      key[n + qi] = 1;
      plf_add(fh.terms[key], plf, "rewritten row");
    }
    for (auto it = fh.terms.begin(); it != fh.terms.end();)
      it = it->second.is_zero() ? fh.terms.erase(it) : std::next(it);
    mod.lin_part.push_back(std::move(fh));
  }
  for (size_t j = 0; j < m; ++j) {
    MPoly h(total);
    Mono key(total, 0);
    key[n + j] = 1;
    h.add_term(key, Rat(1));
    for (const auto& [mono, c] : rep.q_list[j].terms())
      h.add_term(extend_mono(mono, total), -c);
    mod.nlin_part.push_back(std::move(h));
  }
  return mod;
}

Modification modify_vertical(const System& sys) {
  VerticalSplit vs = detect_vertical(sys);
  if (!vs.ok) throw Error(ErrCode::NotVertical, vs.witness);
  MacaulayMatrix mm = macaulay_matrix(sys);
  Representation rep;
  for (const Mono& col : mm.columns)
    rep.q_list.push_back(MPoly::monomial(col, Rat(1)));
  for (const auto& row : mm.entries) {
    std::vector<std::pair<size_t, ParamLinearForm>> r;
    for (size_t j = 0; j < row.size(); ++j)
      if (!row[j].is_zero()) r.push_back({j, row[j]});
    rep.rows.push_back(std::move(r));
  }
  return modify(sys, rep);
}

Modification modify_horizontal(const System& sys) {
  HorizontalSplit hs = detect_horizontal(sys);
  if (!hs.ok) throw Error(ErrCode::NotHorizontal, hs.witness);
  Representation rep;
  for (size_t i = 0; i < hs.rows.size(); ++i) {
    std::vector<std::pair<size_t, ParamLinearForm>> r;
    for (size_t k = 0; k < hs.rows[i].size(); ++k) {
      ParamLinearForm plf;
      plf.lin[hs.rows[i][k].first] = hs.coeffs[i][k];
      r.push_back({rep.q_list.size(), plf});
      rep.q_list.push_back(hs.rows[i][k].second);
    }
    rep.rows.push_back(std::move(r));
  }
  return modify(sys, rep);
}

std::vector<MPoly> rewrite_syzygies(const Modification& mod) {
  std::vector<MPoly> out = mod.nlin_part;
  size_t n = mod.base_vars, m = mod.q_table.size();
  // q_b = c * x^delta * q_a exactly?
  auto ratio = [&](const MPoly& qa, const MPoly& qb,
                   Mono* delta, Rat* c) -> bool {
    if (qa.term_count() != qb.term_count() || qa.is_zero()) return false;
    const auto& [ma, ca] = *qa.terms().begin();
    const auto& [mb, cb] = *qb.terms().begin();
    Mono d(n);
    for (size_t i = 0; i < n; ++i) d[i] = mb[i] - ma[i];
    Rat r = cb / ca;
    for (const auto& [mono, coef] : qa.terms()) {
      Mono want(n);
      for (size_t i = 0; i < n; ++i) want[i] = mono[i] + d[i];
      auto it = qb.terms().find(want);
      if (it == qb.terms().end() || it->second != Rat(coef * r)) return false;
    }
    *delta = d;
    *c = r;
    return true;
  };
  std::vector<bool> replaced(m, false);
  for (size_t b = 0; b < m; ++b) {
    if (mod.q_table[b].term_count() < 2) continue;
    for (size_t a = 0; a < b; ++a) {
      if (replaced[a] || replaced[b]) continue;
      if (mod.q_table[a].term_count() < 2) continue;
      Mono delta;
      Rat c;
      if (!ratio(mod.q_table[a], mod.q_table[b], &delta, &c)) continue;
      // w_b = c x^delta w_a on the variety; clear the denominators
      MPoly rel(n + m);
      Mono pos(n + m, 0), neg(n + m, 0);
      for (size_t i = 0; i < n; ++i) {
        pos[i] = std::max(delta[i], 0);
        neg[i] = std::max(-delta[i], 0);
      }
      Mono wa = pos;
      wa[n + a] = 1;
      rel.add_term(wa, c);
      Mono wb = neg;
      wb[n + b] = 1;
      rel.add_term(wb, Rat(-1));
      out[b] = rel;
      replaced[b] = true;
    }
  }
  return out;
}

bool check_torus_equivariant(const Modification& mod) {
  size_t n = mod.base_vars, m = mod.w_vars.size();
  std::map<size_t, size_t> column_of_param;
  for (const ParamPolynomial& row : mod.lin_part) {
    for (const auto& [mono, plf] : row.terms) {
      if (!plf.is_homogeneous() || plf.t_shift != 0) return false;
      size_t j = m;  // which w does this term use?
      for (size_t k = 0; k < n + m; ++k) {
        if (mono[k] == 0) continue;
        if (k < n || mono[k] != 1 || j != m) return false;  // not linear in w
        j = k - n;
      }
      if (j == m) return false;  // constant term
      for (const auto& [p, c] : plf.lin) {
        auto it = column_of_param.find(p);
        if (it != column_of_param.end() && it->second != j) return false;
        column_of_param[p] = j;
      }
    }
  }
  return true;
}

bool check_codim(const Modification& mod, const std::vector<uint64_t>& seeds) {
  size_t nr = mod.lin_part.size(), m = mod.w_vars.size();
  size_t np = mod.base.params.size();
  if (nr == 0) return true;
  if (nr > m)
    throw Error(ErrCode::RankDeficient,
                "more rewritten rows than columns");
  std::vector<std::vector<ParamLinearForm>> p(nr);
  for (size_t i = 0; i < nr; ++i)
    for (size_t j = 0; j < m; ++j) {
      p[i].push_back(lin_coeff(mod, i, j));
      if (p[i].back().t_shift != 0)
        throw Error(ErrCode::Unsupported, "coefficient carries a power of t");
    }

  auto symbolic_minor = [&](const std::vector<size_t>& cols) {
    std::vector<std::vector<MPoly>> sub;
    for (size_t i = 0; i < nr; ++i) {
      std::vector<MPoly> row;
      for (size_t j : cols) row.push_back(plf_to_mpoly(p[i][j], np));
      sub.push_back(row);
    }
    return mpoly_det(sub);
  };

  for (uint64_t seed : seeds) {
    Rng rng(seed);
    QVec pv;
    for (size_t k = 0; k < np; ++k) pv.push_back(Rat(rng.uniform(1000, 1000000)));
    QMat num;
    for (size_t i = 0; i < nr; ++i) {
      QVec row;
      for (size_t j = 0; j < m; ++j) row.push_back(plf_eval(p[i][j], pv));
      num.push_back(row);
    }
    if (rank_of(num) < nr) continue;
    std::vector<size_t> pivots = rref(num);
    if (symbolic_minor(pivots).is_zero())
      throw Error(ErrCode::Internal, "nonzero draw with vanishing minor");
    return true;
  }

  // all draws were short; decide symbolically
  std::vector<size_t> pick(nr);
  for (size_t i = 0; i < nr; ++i) pick[i] = i;
  while (true) {
    if (!symbolic_minor(pick).is_zero()) return true;
    size_t i = nr;
    while (i > 0 && pick[i - 1] == m - nr + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (size_t j = i; j < nr; ++j) pick[j] = pick[j - 1] + 1;
  }

  // certify the deficiency with a rational relation when one exists
  QMat flat;
  for (size_t i = 0; i < nr; ++i) {
    QVec row;
    for (size_t j = 0; j < m; ++j) {
      row.push_back(p[i][j].c0);
      for (size_t k = 0; k < np; ++k) {
        auto it = p[i][j].lin.find(k);
        row.push_back(it == p[i][j].lin.end() ? Rat(0) : it->second);
      }
    }
    flat.push_back(row);
  }
  QMat kern = kernel_basis(transpose(flat));
  std::ostringstream msg;
  msg << "rewritten rows are dependent";
  if (!kern.empty()) {
    msg << ": ";
    for (size_t i = 0; i < nr; ++i) {
      if (i) msg << " + ";
      msg << kern[0][i].get_str() << "*"
          << (mod.base.poly_names.empty() ? "row" + std::to_string(i + 1)
                                          : mod.base.poly_names[i]);
    }
    msg << " = 0";
  } else {
    msg << ": every maximal minor vanishes identically";
  }
  throw Error(ErrCode::RankDeficient, msg.str());
}

CompatibilityReport compatible_subset(const Modification& mod,
                                      const std::vector<size_t>& j_set,
                                      bool check_stratum) {
  size_t n = mod.base_vars, m = mod.w_vars.size(), nr = mod.lin_part.size();
  CompatibilityReport rep;
  rep.j_set = j_set;
  std::sort(rep.j_set.begin(), rep.j_set.end());
  for (size_t j : rep.j_set)
    if (j >= m) throw Error(ErrCode::Validation, "column index out of range");

  rep.row_coverage = true;
  rep.monomial = true;
  for (size_t i = 0; i < nr; ++i) {
    size_t cover = m, mono = m;
    for (size_t j = 0; j < m && (cover == m || mono == m); ++j) {
      if (lin_coeff(mod, i, j).is_zero()) continue;
      if (cover == m &&
          std::binary_search(rep.j_set.begin(), rep.j_set.end(), j))
        cover = j;
      if (mono == m && mod.q_table[j].term_count() == 1) mono = j;
    }
    if (cover < m)
      rep.coverage_witness.push_back({i, cover});
    else
      rep.row_coverage = false;
    if (mono < m)
      rep.monomial_witness.push_back({i, mono});
    else
      rep.monomial = false;
  }

  if (check_stratum && n <= 8 && m <= 8) {
    std::vector<size_t> comp;
    for (size_t j = 0; j < m; ++j)
      if (!std::binary_search(rep.j_set.begin(), rep.j_set.end(), j))
        comp.push_back(j);
    bool ok = true;
    for (uint64_t mask = 1; mask < (1ull << comp.size()) && ok; ++mask) {
      std::vector<size_t> jp;
      for (size_t t = 0; t < comp.size(); ++t)
        if (mask >> t & 1) jp.push_back(comp[t]);
      // dimension of the vanishing set of the selected table entries in the
      // base torus, via the saturated ideal
      std::vector<MPoly> gens;
      for (size_t j : jp) {
        MPoly q = laurent_clear(mod.q_table[j]);
        MPoly ext(n + 1);
        for (const auto& [mono, c] : q.terms()) ext.add_term(extend_mono(mono, n + 1), c);
        gens.push_back(ext);
      }
      Mono all_ones(n + 1, 1);
      MPoly sat(n + 1);
      sat.add_term(all_ones, Rat(1));
      sat.add_term(Mono(n + 1, 0), Rat(-1));
      gens.push_back(sat);
      long dim = ideal_dimension(gens);
      if (dim < 0) continue;  // stratum misses the torus entirely
      size_t codim_x = n - size_t(dim);
      size_t rank = 0;
      for (uint64_t seed : {901, 902}) {
        Rng rng(seed);
        QVec pv;
        for (size_t k = 0; k < mod.base.params.size(); ++k)
          pv.push_back(Rat(rng.uniform(1000, 1000000)));
        QMat num;
        for (size_t i = 0; i < nr; ++i) {
          QVec row;
          for (size_t j = 0; j < m; ++j) {
            if (std::find(jp.begin(), jp.end(), j) != jp.end()) continue;
            row.push_back(plf_eval(lin_coeff(mod, i, j), pv));
          }
          num.push_back(row);
        }
        rank = std::max(rank, rank_of(num));
      }
      if (rank + codim_x <= n) {
        ok = false;
        rep.stratum_witness = jp;
      }
    }
    rep.stratum_codim = ok;
  }

  if (rep.monomial)
    rep.conclusion = CompatibilityReport::Conclusion::FullTorus;
  else if ((rep.row_coverage && !rep.j_set.empty()) ||
           (rep.stratum_codim && *rep.stratum_codim))
    rep.conclusion = CompatibilityReport::Conclusion::OpenSubset;
  else
    rep.conclusion = CompatibilityReport::Conclusion::Unknown;
  return rep;
}

std::string CompatibilityReport::json() const {
  std::ostringstream os;
  auto idx_list = [&](const std::vector<size_t>& v) {
    os << '[';
    for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ']';
  };
  auto pair_list = [&](const std::vector<std::pair<size_t, size_t>>& v) {
    os << '[';
    for (size_t i = 0; i < v.size(); ++i)
      os << (i ? "," : "") << '[' << v[i].first << ',' << v[i].second << ']';
    os << ']';
  };
  os << "{\"subset\":";
  idx_list(j_set);
  os << ",\"verdicts\":{\"row-coverage\":{\"ok\":"
     << (row_coverage ? "true" : "false") << ",\"witness\":";
  pair_list(coverage_witness);
  os << "},\"monomial\":{\"ok\":" << (monomial ? "true" : "false")
     << ",\"witness\":";
  pair_list(monomial_witness);
  os << "},\"stratum-codim\":{\"ok\":";
  if (!stratum_codim)
    os << "null";
  else
    os << (*stratum_codim ? "true" : "false");
  if (stratum_codim && !*stratum_codim) {
    os << ",\"witness\":";
    idx_list(stratum_witness);
  }
  os << "}},\"conclusion\":\"";
  switch (conclusion) {
    case Conclusion::FullTorus:
      os << "FullTorus";
      break;
    case Conclusion::OpenSubset: {
      os << "OpenSubset(";
      std::ostringstream tmp;
      for (size_t i = 0; i < j_set.size(); ++i)
        tmp << (i ? "," : "") << j_set[i];
      os << tmp.str() << ")";
      break;
    }
    case Conclusion::Unknown:
      os << "Unknown";
      break;
  }
  os << "\"}";
  return os.str();
}

}  // namespace grc
