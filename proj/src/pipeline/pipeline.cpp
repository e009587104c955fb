#include "pipeline/pipeline.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "core/error.hpp"
#include "core/rng.hpp"
#include "matroid/matroid.hpp"
#include "modify/modify.hpp"
#include "oracle/oracle.hpp"
#include "polytope/polytope.hpp"
#include "tropical/tropical.hpp"

namespace grc {

namespace {

std::string esc(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

// hypersurface of a support set, all coefficients at weight zero
WeightedComplex support_complex(std::vector<Mono> supp, size_t nvars) {
  return trop_hypersurface(trop_of_support(std::move(supp), nvars));
}

WeightedComplex mpoly_complex(const MPoly& g) {
  std::vector<Mono> supp;
  for (const auto& [m, c] : g.terms()) supp.push_back(m);
  return support_complex(std::move(supp), g.nvars());
}

WeightedComplex row_complex(const ParamPolynomial& row) {
  std::vector<Mono> supp;
  for (const auto& [m, f] : row.terms) supp.push_back(m);
  return support_complex(std::move(supp), row.nvars);
}

std::vector<LatticePolytope> newton_polytopes(const System& sys) {
  std::vector<LatticePolytope> ps;
  for (const auto& poly : sys.polys) {
    std::vector<Mono> pts;
    for (const auto& [m, f] : poly.terms) pts.push_back(m);
    ps.push_back(make_polytope(sys.vars.size(), std::move(pts)));
  }
  return ps;
}

// Restrict to { v_k = 0 } and delete coordinate k.  Every cell must meet the
// slice transversally; fans with the all-ones lineality do.
WeightedComplex drop_zero_coord(const WeightedComplex& wc, size_t k) {
  WeightedComplex out;
  out.nvars = wc.nvars - 1;
  out.dim = wc.dim - 1;
  auto strip = [&](const QMat& rows) {
    QMat res;
    for (const auto& r : rows) {
      QVec s;
      for (size_t i = 0; i < r.size(); ++i)
        if (i != k) s.push_back(r[i]);
      res.push_back(std::move(s));
    }
    return res;
  };
  for (const auto& [cell, w] : wc.cells) {
    QMat eq = cell.eq_a;
    QVec eqb = cell.eq_b;
    QVec hit(wc.nvars, Rat(0));
    hit[k] = 1;
    eq.push_back(std::move(hit));
    eqb.push_back(Rat(0));
    auto cut = make_cell(wc.nvars, eq, eqb, cell.ineq_a, cell.ineq_b);
    if (!cut || cut->dim + 1 != cell.dim)
      throw Error(ErrCode::Internal, "coordinate slice degenerates a cone");
    auto low = make_cell(out.nvars, strip(cut->eq_a), cut->eq_b, strip(cut->ineq_a),
                         cut->ineq_b);
    if (!low || low->dim != cut->dim)
      throw Error(ErrCode::Internal, "coordinate slice is not injective");
    out.cells.push_back({*low, w});
  }
  return out;
}

struct CertBuilder {
  std::ostringstream os;
  CertBuilder() { os << '{'; }
  void field(const std::string& key, const std::string& raw) {
    if (os.tellp() > 1) os << ',';
    os << '"' << key << "\":" << raw;
  }
  void field(const std::string& key, bool v) { field(key, v ? "true" : "false"); }
  void field(const std::string& key, size_t v) { field(key, std::to_string(v)); }
  void text(const std::string& key, const std::string& s) {
    field(key, "\"" + esc(s) + "\"");
  }
  std::string done() { return os.str() + "}"; }
};

CountResult bail(CountResult res, CertBuilder& cert, const std::string& check,
                 const std::string& note) {
  res.failing_check = check;
  res.note = note;
  res.certificate = cert.done();
  return res;
}

std::string int_str(const Int& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

// Pull the pure-w linear rows into a coefficient matrix over the w block.
LinForms w_forms(const Modification& mod, const std::vector<size_t>& rows) {
  size_t n = mod.base_vars, m = mod.w_vars.size();
  LinForms lf;
  lf.params = mod.base.params;
  lf.ground = mod.w_vars;
  for (size_t i : rows) {
    std::vector<ParamLinearForm> row(m);
    for (const auto& [mono, f] : mod.lin_part[i].terms) {
      size_t j = 0;
      while (j < m && mono[n + j] != 1) ++j;
      if (j == m) throw Error(ErrCode::Internal, "linear row leaves the w block");
      row[j] = f;
    }
    lf.rows.push_back(std::move(row));
  }
  return lf;
}

}  // namespace

CountResult count_vertical(const System& sys, uint64_t seed) {
  CountResult res;
  res.pipeline = "vertical";
  VerticalSplit vs = detect_vertical(sys);
  if (!vs.ok)
    throw Error(ErrCode::NotVertical,
                "parameter '" + vs.witness + "' is tied to two support monomials");
  Modification mod = modify_vertical(sys);
  size_t n = mod.base_vars, m = mod.w_vars.size();

  // Rows whose coefficients are pure parameter forms move with the torus;
  // rows carrying constants are split off as one independent factor.
  std::vector<size_t> eq_rows, con_rows;
  for (size_t i = 0; i < mod.lin_part.size(); ++i) {
    bool homog = true;
    for (const auto& [mono, f] : mod.lin_part[i].terms)
      if (!f.is_homogeneous()) homog = false;
    (homog ? eq_rows : con_rows).push_back(i);
  }

  CertBuilder cert;
  cert.field("detection", "\"vertical\"");
  cert.field("columns", m);
  cert.field("constant_rows", con_rows.size());

  Modification eq_mod = mod;
  eq_mod.lin_part.clear();
  for (size_t i : eq_rows) eq_mod.lin_part.push_back(mod.lin_part[i]);
  bool equi = check_torus_equivariant(eq_mod);
  cert.field("equivariance", equi);
  if (!equi)
    return bail(std::move(res), cert, "torus-equivariance",
                "the rewritten linear rows are not torus-equivariant");

  if (!con_rows.empty()) {
    auto collect = [&](const std::vector<size_t>& rows) {
      std::set<size_t> ps;
      for (size_t i : rows)
        for (const auto& [mono, f] : mod.lin_part[i].terms)
          for (const auto& [k, c] : f.lin) ps.insert(k);
      return ps;
    };
    std::set<size_t> eq_ps = collect(eq_rows), con_ps = collect(con_rows);
    bool disjoint = true;
    for (size_t k : con_ps)
      if (eq_ps.count(k)) disjoint = false;
    cert.field("independent_factors", disjoint);
    if (!disjoint)
      return bail(std::move(res), cert, "independent-factors",
                  "constant-coefficient rows share parameters with the torus block");
  }

  try {
    check_codim(mod);
    cert.field("codim", true);
  } catch (const Error& e) {
    if (e.code != ErrCode::RankDeficient) throw;
    cert.field("codim", false);
    return bail(std::move(res), cert, "codim", e.what());
  }

  std::vector<size_t> all_cols(m);
  for (size_t j = 0; j < m; ++j) all_cols[j] = j;
  CompatibilityReport comp = compatible_subset(mod, all_cols);
  cert.field("compatibility", comp.json());
  if (comp.conclusion != CompatibilityReport::Conclusion::FullTorus)
    return bail(std::move(res), cert, "compatibility",
                "support monomials did not certify the whole torus");

  // graph hypersurfaces w_j = q_j, then the split-off rows
  std::vector<WeightedComplex> parts;
  for (const auto& g : mod.nlin_part) parts.push_back(mpoly_complex(g));
  for (size_t i : con_rows) parts.push_back(row_complex(mod.lin_part[i]));

  if (!con_rows.empty()) {
    TransversalReport tr = transversal_check(parts);
    if (!tr.ok) {
      cert.field("transversality", "{\"ok\":false,\"witness\":\"" + esc(tr.witness) + "\"}");
      return bail(std::move(res), cert, "transversality",
                  "the split-off rows do not meet the graph hypersurfaces transversally");
    }
    cert.field("transversality", "{\"ok\":true}");
  }

  if (eq_rows.empty()) {
    res.count = intersection_number(parts, seed);
    cert.field("route", "\"hypersurfaces-only\"");
    res.certificate = cert.done();
    return res;
  }

  GenericMatroidInfo info;
  Matroid mat = generic_matroid(w_forms(mod, eq_rows), seed, &info);
  if (mat.rank + eq_rows.size() != m)
    throw Error(ErrCode::Internal, "kernel rank disagrees with the row count");
  cert.field("matroid", "{\"ground\":" + std::to_string(m) +
                            ",\"rank\":" + std::to_string(mat.rank) +
                            ",\"bases\":" + std::to_string(mat.bases.size()) +
                            ",\"loops\":" + (matroid_has_loops(mat) ? "true" : "false") +
                            ",\"symbolic\":" + (info.symbolic ? "true" : "false") + "}");
  if (matroid_has_loops(mat)) {
    res.count = Int(0);
    res.note = "a rewritten unknown vanishes on the whole linear factor, which "
               "therefore misses the torus";
    res.certificate = cert.done();
    return res;
  }

  std::vector<size_t> w_coords(m);
  for (size_t j = 0; j < m; ++j) w_coords[j] = n + j;
  res.count = matroidal_degree(mat, parts, w_coords, seed);
  cert.field("route", "\"matroidal-degree\"");
  res.certificate = cert.done();
  return res;
}

namespace {

// Finite-cover description of the graph of the kept columns: squaring map on
// the original unknowns composed with a monomial shear on the new ones, under
// which every kept column becomes an affine-linear form.
struct CoverPlan {
  bool ok = false;
  ZMat expo;        // downstairs coordinates in upstairs exponents
  LinForms forms;   // affine forms downstairs; constant column last
  Int degree = 1;
};

CoverPlan plan_cover(const std::vector<MPoly>& kept_q, size_t n) {
  CoverPlan plan;
  size_t mk = kept_q.size(), d = n + mk;
  plan.expo.assign(d, ZVec(d, Int(0)));
  for (size_t k = 0; k < n; ++k) plan.expo[k][k] = 2;
  plan.forms.ground.assign(d + 1, "");
  // column of z^e for e a unit vector or zero; anything else disqualifies
  auto column_of = [&](const Mono& e) -> std::optional<size_t> {
    size_t col = d, ones = 0;
    for (size_t i = 0; i < n; ++i) {
      if (e[i] == 0) continue;
      if (e[i] != 1 || ++ones > 1) return std::nullopt;
      col = i;
    }
    return col;
  };
  for (size_t j = 0; j < mk; ++j) {
    if (kept_q[j].term_count() != 2) return plan;
    auto it = kept_q[j].terms().begin();
    const auto& [alpha, ca] = *it;
    ++it;
    const auto& [beta, cb] = *it;
    Mono half_a(n, 0), half_b(n, 0);
    for (size_t i = 0; i < n; ++i) {
      if ((alpha[i] - beta[i]) % 2 != 0) return plan;
      int delta = ((alpha[i] % 2) + 2) % 2;
      half_a[i] = (alpha[i] + delta) / 2;
      half_b[i] = (beta[i] + delta) / 2;
      plan.expo[n + j][i] = delta;
    }
    auto col_a = column_of(half_a), col_b = column_of(half_b);
    if (!col_a || !col_b) return plan;
    plan.expo[n + j][n + j] = 1;
    std::vector<ParamLinearForm> row(d + 1);
    row[n + j].c0 = 1;
    row[*col_a].c0 -= ca;
    row[*col_b].c0 -= cb;
    plan.forms.rows.push_back(std::move(row));
  }
  for (size_t i = 0; i < n; ++i) plan.degree *= 2;
  plan.ok = true;
  return plan;
}

}  // namespace

CountResult count_horizontal(const System& sys, uint64_t seed) {
  CountResult res;
  res.pipeline = "horizontal";
  HorizontalSplit hs = detect_horizontal(sys);
  if (!hs.ok) {
    std::string msg = "the rows do not split into parameter-times-support columns";
    if (!hs.witness.empty()) msg += " (" + hs.witness + ")";
    throw Error(ErrCode::NotHorizontal, msg);
  }
  size_t n = sys.vars.size();

  // One column per distinct support; occurrences from different declared
  // factor blocks stay apart.
  std::vector<size_t> block_of(sys.params.size(), SIZE_MAX);
  for (size_t b = 0; b < sys.factor_blocks.size(); ++b)
    for (size_t k : sys.factor_blocks[b]) block_of[k] = b;
  Representation rep;
  std::vector<size_t> col_block;
  rep.rows.resize(sys.polys.size());
  size_t occurrences = 0;
  for (size_t i = 0; i < hs.rows.size(); ++i) {
    for (size_t k = 0; k < hs.rows[i].size(); ++k) {
      const auto& [pidx, q] = hs.rows[i][k];
      ++occurrences;
      size_t b = block_of[pidx];
      size_t j = 0;
      while (j < rep.q_list.size() && !(col_block[j] == b && rep.q_list[j] == q)) ++j;
      if (j == rep.q_list.size()) {
        rep.q_list.push_back(q);
        col_block.push_back(b);
      }
      ParamLinearForm* slot = nullptr;
      for (auto& [cj, plf] : rep.rows[i])
        if (cj == j) slot = &plf;
      if (!slot) {
        rep.rows[i].push_back({j, ParamLinearForm{}});
        slot = &rep.rows[i].back().second;
      }
      slot->lin[pidx] = hs.coeffs[i][k];
    }
  }
  Modification mod = modify(sys, rep);
  size_t m = mod.w_vars.size();

  CertBuilder cert;
  cert.field("detection", "\"horizontal\"");
  cert.field("occurrences", occurrences);
  cert.field("columns", m);

  bool equi = check_torus_equivariant(mod);
  cert.field("equivariance", equi);
  if (!equi)
    return bail(std::move(res), cert, "torus-equivariance",
                "the rewritten linear rows are not torus-equivariant");

  try {
    check_codim(mod);
    cert.field("codim", true);
  } catch (const Error& e) {
    if (e.code != ErrCode::RankDeficient) throw;
    cert.field("codim", false);
    return bail(std::move(res), cert, "codim", e.what());
  }

  std::vector<size_t> all_cols(m);
  for (size_t j = 0; j < m; ++j) all_cols[j] = j;
  CompatibilityReport comp = compatible_subset(mod, all_cols, n <= 8 && m <= 8);
  cert.field("compatibility", comp.json());
  switch (comp.conclusion) {
    case CompatibilityReport::Conclusion::FullTorus:
      break;
    case CompatibilityReport::Conclusion::OpenSubset:
      res.note = "counts solutions off ⋃V(q_j)";
      break;
    case CompatibilityReport::Conclusion::Unknown:
      res.note = "compatible subset undecided; the count refers to the maximal "
                 "compatible open set";
      break;
  }

  // substitute monomial columns back before any geometry
  std::vector<size_t> kept, kept_index(m, SIZE_MAX);
  for (size_t j = 0; j < m; ++j)
    if (rep.q_list[j].term_count() > 1) {
      kept_index[j] = kept.size();
      kept.push_back(j);
    }
  size_t mk = kept.size(), d = n + mk;
  cert.field("monomial_columns", m - mk);

  std::vector<WeightedComplex> fparts;
  for (size_t i = 0; i < rep.rows.size(); ++i) {
    std::vector<Mono> supp;
    for (const auto& [j, plf] : rep.rows[i]) {
      Mono mo(d, 0);
      if (kept_index[j] != SIZE_MAX) {
        mo[n + kept_index[j]] = 1;
      } else {
        const Mono& q = rep.q_list[j].terms().begin()->first;
        for (size_t v = 0; v < n; ++v) mo[v] = q[v];
      }
      supp.push_back(std::move(mo));
    }
    fparts.push_back(support_complex(std::move(supp), d));
  }

  if (mk == 0) {
    cert.field("route", "\"monomial-inline\"");
    res.count = intersection_number(fparts, seed);
    res.certificate = cert.done();
    return res;
  }

  std::vector<MPoly> kept_q;
  for (size_t j : kept) kept_q.push_back(rep.q_list[j]);

  CoverPlan plan = plan_cover(kept_q, n);
  if (plan.ok) {
    cert.field("route", "\"finite-cover\"");
    Matroid down = generic_matroid(plan.forms, seed);
    if (matroid_has_loops(down)) {
      res.count = Int(0);
      res.note = "a coordinate vanishes on the covered linear space, which "
                 "therefore misses the torus";
      cert.field("cover", "{\"degree\":" + int_str(plan.degree) + ",\"loops\":true}");
      res.certificate = cert.done();
      return res;
    }
    WeightedComplex graph =
        monomial_pullback(drop_zero_coord(bergman_fan(down), d), plan.expo);
    if (!is_balanced(graph))
      throw Error(ErrCode::Internal, "pulled-back graph complex is unbalanced");
    cert.field("cover", "{\"degree\":" + int_str(plan.degree) +
                            ",\"downstairs_rank\":" + std::to_string(down.rank) +
                            ",\"balanced\":true}");
    std::vector<WeightedComplex> parts = fparts;
    parts.push_back(std::move(graph));
    res.count = intersection_number(parts, seed);
    res.certificate = cert.done();
    return res;
  }

  // fall back to the rewritten generating set; its hypersurfaces must meet
  // transversally for the product to be the honest graph complex
  Modification red;
  red.base = sys;
  red.base_vars = n;
  for (size_t j : kept) {
    red.w_vars.push_back(mod.w_vars[j]);
    red.q_table.push_back(rep.q_list[j]);
  }
  for (size_t a = 0; a < mk; ++a) {
    MPoly h(d);
    Mono w(d, 0);
    w[n + a] = 1;
    h.add_term(w, Rat(1));
    for (const auto& [mo, c] : kept_q[a].terms()) {
      Mono e(d, 0);
      for (size_t v = 0; v < n; ++v) e[v] = mo[v];
      h.add_term(e, -c);
    }
    red.nlin_part.push_back(std::move(h));
  }
  std::vector<MPoly> gens = rewrite_syzygies(red);
  std::vector<WeightedComplex> gparts;
  for (const auto& g : gens) gparts.push_back(mpoly_complex(g));
  TransversalReport tr = transversal_check(gparts);
  cert.field("route", "\"transversal-product\"");
  if (!tr.ok) {
    cert.field("transversality", "{\"ok\":false,\"witness\":\"" + esc(tr.witness) + "\"}");
    return bail(std::move(res), cert, "transversality",
                "graph hypersurfaces do not meet transversally and no finite "
                "cover applies");
  }
  cert.field("transversality", "{\"ok\":true}");
  std::vector<WeightedComplex> parts = fparts;
  for (auto& g : gparts) parts.push_back(std::move(g));
  res.count = intersection_number(parts, seed);
  res.certificate = cert.done();
  return res;
}

CountResult count_bkk(const System& sys, uint64_t seed, const Specialization* weights) {
  CountResult res;
  res.pipeline = "bkk";
  CertBuilder cert;
  cert.field("detection", "\"universal\"");

  // every coefficient must be its own parameter
  std::string shared;
  std::set<size_t> used;
  for (const auto& poly : sys.polys)
    for (const auto& [mo, f] : poly.terms) {
      auto k = f.single_param();
      if (!k || f.t_shift != 0)
        shared = "a coefficient is not a plain parameter";
      else if (!used.insert(*k).second)
        shared = "parameter '" + sys.params[*k] + "' is used twice";
    }
  cert.field("universal", shared.empty());
  if (!shared.empty()) return bail(std::move(res), cert, "universal-coefficients", shared);

  bool bounded = false;
  std::string witness;
  int tries = weights ? 1 : 5;
  for (int attempt = 0; attempt < tries && !bounded; ++attempt) {
    Specialization sp;
    if (weights) {
      sp = *weights;
    } else {
      sp = random_specialization(sys, seed + attempt);
      Rng rng(seed * 9176 + attempt);
      for (auto& [name, sc] : sp.assign) sc.weight = rng.uniform(0, 96);
    }
    std::vector<WeightedComplex> parts;
    for (const auto& tp : trop_specialize(sys, sp)) parts.push_back(trop_hypersurface(tp));
    if (prevariety(parts).bounded) {
      bounded = true;
      std::ostringstream os;
      os << '{';
      bool first = true;
      for (const auto& [name, sc] : sp.assign) {
        os << (first ? "" : ",") << '"' << name << "\":\"" << rat_to_string(sc.weight) << '"';
        first = false;
      }
      os << '}';
      witness = os.str();
    }
  }
  cert.field("bounded_prevariety", bounded);
  if (!bounded)
    return bail(std::move(res), cert, "bounded-prevariety",
                "no weight draw produced a bounded prevariety");
  cert.field("witness_weights", witness);

  auto ps = newton_polytopes(sys);
  Int pol = mixed_volume_polarization(ps, seed);
  Int trm = mixed_volume_tropical(ps, seed);
  if (pol != trm) throw Error(ErrCode::Internal, "mixed volume engines disagree");
  cert.field("mv", "{\"polarization\":" + int_str(pol) + ",\"tropical\":" + int_str(trm) + "}");
  res.count = pol;
  res.certificate = cert.done();
  return res;
}

RunReport run_count(const System& sys, const std::string& mode, uint64_t seed,
                    const Specialization* spec, bool verify) {
  if (sys.polys.size() != sys.vars.size())
    throw Error(ErrCode::NonSquare, std::to_string(sys.polys.size()) +
                                        " equations in " + std::to_string(sys.vars.size()) +
                                        " unknowns");
  CountResult r;
  if (mode == "vertical")
    r = count_vertical(sys, seed);
  else if (mode == "horizontal")
    r = count_horizontal(sys, seed);
  else if (mode == "bkk")
    r = count_bkk(sys, seed, spec);
  else
    throw Error(ErrCode::Validation, "unknown mode '" + mode + "'");

  bool consistent = true;
  std::ostringstream oracle;
  if (verify && r.count) {
    Int best(-1);
    bool all_finite = true;
    std::ostringstream seeds, counts;
    for (int s = 0; s < 2; ++s) {
      uint64_t os = seed + 101 + s;
      Specialization sp = random_specialization(sys, os);
      auto c = torus_root_count(specialize_numeric(sys, sp, Rat(1) / 1000));
      seeds << (s ? "," : "") << os;
      if (c) {
        counts << (s ? "," : "") << *c;
        if (*c > best) best = *c;
      } else {
        counts << (s ? "," : "") << "\"NotFinite\"";
        all_finite = false;
      }
    }
    consistent = best <= *r.count;
    oracle << ",\"oracle\":{\"seeds\":[" << seeds.str() << "],\"counts\":[" << counts.str()
           << "],\"max\":" << best << ",\"agree\":"
           << ((all_finite && best == *r.count) ? "true" : "false") << "}";
  }

  std::ostringstream os;
  os << "{\"command\":\"count\",\"mode\":\"" << mode << "\",\"seed\":" << seed
     << ",\"pipeline\":\"" << r.pipeline << "\",\"count\":";
  if (r.count)
    os << *r.count;
  else
    os << "\"Unknown\",\"failing_check\":\"" << esc(r.failing_check) << '"';
  if (!r.note.empty()) os << ",\"note\":\"" << esc(r.note) << '"';
  os << ",\"certificate\":" << r.certificate << oracle.str() << "}";
  return {r.count.has_value() && consistent, os.str()};
}

RunReport run_mv(const System& sys, uint64_t seed) {
  if (sys.polys.size() != sys.vars.size())
    throw Error(ErrCode::NonSquare, "mixed volume needs a square system");
  auto ps = newton_polytopes(sys);
  Int pol = mixed_volume_polarization(ps, seed);
  Int trm = mixed_volume_tropical(ps, seed);
  std::ostringstream os;
  os << "{\"command\":\"mv\",\"seed\":" << seed << ",\"polarization\":" << pol
     << ",\"tropical\":" << trm << ",\"agree\":" << (pol == trm ? "true" : "false") << "}";
  return {pol == trm, os.str()};
}

RunReport run_oracle(const System& sys, uint64_t seed, const Specialization* spec,
                     const std::optional<Rat>& t_value) {
  if (sys.polys.size() != sys.vars.size())
    throw Error(ErrCode::NonSquare, "the oracle counts roots of square systems");
  Specialization sp = spec ? *spec : random_specialization(sys, seed);
  for (const auto& [name, sc] : sp.assign)
    if (sc.weight != 0)
      throw Error(ErrCode::Validation,
                  "oracle specializations live over the rationals; '" + name +
                      "' carries weight " + rat_to_string(sc.weight));
  Rat t = t_value.value_or(Rat(1) / 1000);
  auto c = torus_root_count(specialize_numeric(sys, sp, t));
  std::ostringstream os;
  os << "{\"command\":\"oracle\",\"seed\":" << seed << ",\"t\":\"" << rat_to_string(t)
     << "\",\"count\":";
  if (c)
    os << *c;
  else
    os << "\"NotFinite\"";
  os << "}";
  return {c.has_value(), os.str()};
}

RunReport run_prevariety(const System& sys, const Specialization& spec, uint64_t seed) {
  std::vector<WeightedComplex> parts;
  for (const auto& tp : trop_specialize(sys, spec)) parts.push_back(trop_hypersurface(tp));
  Prevariety pv = prevariety(parts);

  std::map<size_t, size_t> by_dim;
  for (const auto& c : pv.cells) ++by_dim[c.dim];
  std::ostringstream os;
  os << "{\"command\":\"prevariety\",\"seed\":" << seed << ",\"bounded\":"
     << (pv.bounded ? "true" : "false") << ",\"cells_by_dim\":{";
  bool first = true;
  for (const auto& [dim, cnt] : by_dim) {
    os << (first ? "" : ",") << '"' << dim << "\":" << cnt;
    first = false;
  }
  os << "},\"zero_cells\":[";
  Int sum(0);
  first = true;
  for (const auto& c : pv.cells) {
    if (c.dim != 0) continue;
    std::vector<WeightedComplex> stars;
    for (const auto& p : parts) stars.push_back(star_at(p, c.relint));
    Int w = intersection_number(stars, seed);
    sum += w;
    os << (first ? "" : ",") << "{\"point\":[";
    for (size_t i = 0; i < c.relint.size(); ++i)
      os << (i ? "," : "") << '"' << rat_to_string(c.relint[i]) << '"';
    os << "],\"weight\":" << w << "}";
    first = false;
  }
  os << "],\"weight_sum\":" << sum << "}";
  return {true, os.str()};
}

RunReport run_matroid(const System& sys, uint64_t seed) {
  VerticalSplit vs = detect_vertical(sys);
  if (!vs.ok)
    throw Error(ErrCode::NotVertical,
                "parameter '" + vs.witness + "' is tied to two support monomials");
  Modification mod = modify_vertical(sys);
  std::vector<size_t> rows(mod.lin_part.size());
  for (size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  GenericMatroidInfo info;
  Matroid mat = generic_matroid(w_forms(mod, rows), seed, &info);
  std::ostringstream os;
  os << "{\"command\":\"matroid\",\"seed\":" << seed << ",\"symbolic\":"
     << (info.symbolic ? "true" : "false") << ",\"matroid\":" << matroid_json(mat);
  bool ok = true;
  if (!matroid_has_loops(mat)) {
    WeightedComplex fan = bergman_fan(mat);
    bool balanced = is_balanced(fan);
    bool circuits_ok = true;
    for (const auto& [cell, w] : fan.cells)
      if (!circuits_min_twice(mat, cell.relint)) circuits_ok = false;
    ok = balanced && circuits_ok;
    os << ",\"bergman\":{\"dim\":" << fan.dim << ",\"cones\":" << fan.cells.size()
       << ",\"balanced\":" << (balanced ? "true" : "false")
       << ",\"circuits_ok\":" << (circuits_ok ? "true" : "false") << "}";
  }
  os << "}";
  return {ok, os.str()};
}

RunReport run_modify(const System& sys, const std::string& mode) {
  Modification mod;
  if (mode == "vertical")
    mod = modify_vertical(sys);
  else if (mode == "horizontal")
    mod = modify_horizontal(sys);
  else
    throw Error(ErrCode::Validation, "unknown mode '" + mode + "'");
  System shown = mod.as_system();
  std::ostringstream os;
  os << "{\"command\":\"modify\",\"mode\":\"" << mode << "\",\"vars\":[";
  for (size_t i = 0; i < sys.vars.size(); ++i)
    os << (i ? "," : "") << '"' << sys.vars[i] << '"';
  os << "],\"w_vars\":[";
  for (size_t j = 0; j < mod.w_vars.size(); ++j)
    os << (j ? "," : "") << '"' << mod.w_vars[j] << '"';
  os << "],\"q\":{";
  for (size_t j = 0; j < mod.q_table.size(); ++j)
    os << (j ? "," : "") << '"' << mod.w_vars[j] << "\":\""
       << esc(mod.q_table[j].str(sys.vars)) << '"';
  os << "},\"rows\":[";
  for (size_t i = 0; i < shown.polys.size(); ++i)
    os << (i ? "," : "") << "{\"name\":\"" << shown.poly_names[i] << "\",\"poly\":\""
       << esc(poly_str(shown.polys[i], shown)) << "\"}";
  os << "],\"checks\":{";
  bool equi = check_torus_equivariant(mod);
  os << "\"equivariance\":" << (equi ? "true" : "false") << ",\"codim\":";
  try {
    check_codim(mod);
    os << "true";
  } catch (const Error& e) {
    if (e.code != ErrCode::RankDeficient) throw;
    os << "{\"ok\":false,\"relation\":\"" << esc(e.what()) << "\"}";
  }
  std::vector<size_t> all_cols(mod.w_vars.size());
  for (size_t j = 0; j < all_cols.size(); ++j) all_cols[j] = j;
  CompatibilityReport comp = compatible_subset(mod, all_cols);
  os << ",\"compatibility\":" << comp.json() << "}}";
  return {true, os.str()};
}

}  // namespace grc
