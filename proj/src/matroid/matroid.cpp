#include "matroid/matroid.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "core/error.hpp"
#include "core/linalg.hpp"
#include "core/mpoly.hpp"
#include "core/rng.hpp"

namespace grc {

namespace {

void for_subsets(size_t n, size_t k,
                 const std::function<void(const std::vector<size_t>&)>& fn) {
  if (k > n) return;
  std::vector<size_t> pick(k);
  for (size_t i = 0; i < k; ++i) pick[i] = i;
  while (true) {
    fn(pick);
    if (k == 0) return;
    size_t i = k;
    while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++pick[i - 1];
    for (size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
}

QMat eval_forms(const LinForms& lf, const QVec& pv) {
  QMat c;
  for (const auto& row : lf.rows) {
    QVec out;
    for (const ParamLinearForm& f : row) {
      if (f.t_shift != 0)
        throw Error(ErrCode::Unsupported,
                    "matroid coefficients cannot carry powers of t");
      Rat v = f.c0;
      for (const auto& [k, coef] : f.lin) {
        if (k >= pv.size())
          throw Error(ErrCode::Internal, "parameter index out of range");
        v += Rat(coef * pv[k]);
      }
      out.push_back(v);
    }
    c.push_back(out);
  }
  return c;
}

QMat column_submatrix(const QMat& c, const std::vector<size_t>& cols) {
  QMat s;
  for (const QVec& row : c) {
    QVec r;
    for (size_t j : cols) r.push_back(row[j]);
    s.push_back(r);
  }
  return s;
}

using Support = std::set<std::vector<size_t>>;

Support support_of(const QMat& c, size_t g, size_t rc) {
  Support supp;
  for_subsets(g, rc, [&](const std::vector<size_t>& s) {
    if (rank_of(column_submatrix(c, s)) == rc) supp.insert(s);
  });
  return supp;
}

struct Stream {
  size_t rc = 0;
  Support supp;
  std::optional<QVec> achiever;
};

QVec draw_params(Rng& rng, size_t np) {
  QVec pv;
  for (size_t i = 0; i < np; ++i) pv.push_back(Rat(rng.uniform(1000, 1000000)));
  return pv;
}

Stream run_stream(const LinForms& lf, uint64_t seed) {
  Rng rng(seed);
  size_t g = lf.ground.size();
  Stream st;
  std::vector<std::pair<QVec, Support>> draws;
  for (int round = 0; round < 8; ++round) {
    QVec pv = draw_params(rng, lf.params.size());
    QMat c = eval_forms(lf, pv);
    size_t r = rank_of(c);
    if (r > st.rc) {
      st.rc = r;
      st.supp.clear();
      draws.clear();
    }
    if (r == st.rc) {
      Support sp = support_of(c, g, r);
      for (const auto& s : sp) st.supp.insert(s);
      draws.push_back({pv, std::move(sp)});
    }
    if (round >= 3) {
      for (const auto& [dp, ds] : draws) {
        if (ds == st.supp) {
          st.achiever = dp;
          return st;
        }
      }
    }
  }
  return st;
}

MPoly plf_to_mpoly(const ParamLinearForm& f, size_t np) {
  MPoly p = MPoly::constant(np, f.c0);
  for (const auto& [k, coef] : f.lin) {
    Mono m(np, 0);
    m[k] = 1;
    p = p + MPoly::monomial(m, coef);
  }
  return p;
}

// Symbolic support: a column set counts when some square minor on those
// columns is not the zero polynomial.
std::pair<size_t, Support> symbolic_support(const LinForms& lf) {
  size_t np = lf.params.size(), g = lf.ground.size(), nr = lf.rows.size();
  std::vector<std::vector<MPoly>> c;
  for (const auto& row : lf.rows) {
    std::vector<MPoly> r;
    for (const ParamLinearForm& f : row) r.push_back(plf_to_mpoly(f, np));
    c.push_back(r);
  }
  auto some_minor_nonzero = [&](const std::vector<size_t>& cols) {
    if (cols.empty()) return true;
    bool hit = false;
    for_subsets(nr, cols.size(), [&](const std::vector<size_t>& rows) {
      if (hit) return;
      std::vector<std::vector<MPoly>> sub;
      for (size_t i : rows) {
        std::vector<MPoly> r;
        for (size_t j : cols) r.push_back(c[i][j]);
        sub.push_back(r);
      }
      if (!mpoly_det(sub).terms().empty()) hit = true;
    });
    return hit;
  };
  for (size_t k = std::min(nr, g) + 1; k-- > 0;) {
    Support supp;
    for_subsets(g, k, [&](const std::vector<size_t>& s) {
      if (some_minor_nonzero(s)) supp.insert(s);
    });
    if (!supp.empty()) return {k, supp};
  }
  return {0, Support{std::vector<size_t>{}}};
}

}  // namespace

std::pair<size_t, std::vector<std::vector<size_t>>> symbolic_plucker_support(
    const LinForms& lf) {
  auto [rc, supp] = symbolic_support(lf);
  return {rc, std::vector<std::vector<size_t>>(supp.begin(), supp.end())};
}

namespace {

size_t cols_rank(const QMat& realization, const std::vector<size_t>& set) {
  if (realization.empty()) return 0;
  return rank_of(column_submatrix(realization, set));
}

bool min_twice_on(const std::vector<std::vector<size_t>>& circuits,
                  const QVec& w) {
  for (const auto& c : circuits) {
    Rat best = w[c.front()];
    for (size_t e : c) best = std::min(best, w[e]);
    int hits = 0;
    for (size_t e : c)
      if (w[e] == best) ++hits;
    if (hits < 2) return false;
  }
  return true;
}

}  // namespace

Matroid generic_matroid(const LinForms& lf, uint64_t seed,
                        GenericMatroidInfo* info) {
  size_t g = lf.ground.size();
  for (const auto& row : lf.rows)
    if (row.size() != g)
      throw Error(ErrCode::DimensionMismatch, "linear form row width mismatch");

  Stream a = run_stream(lf, 2 * seed + 1);
  Stream b = run_stream(lf, 2 * seed + 2);
  size_t rc;
  Support supp;
  std::optional<QVec> sample;
  bool symbolic = false;
  if (a.rc == b.rc && a.supp == b.supp && a.achiever) {
    rc = a.rc;
    supp = a.supp;
    sample = a.achiever;
  } else {
    if (g > 8 || lf.rows.size() > 6)
      throw Error(ErrCode::GenericityExhausted,
                  "random draws disagree on the generic minors");
    std::tie(rc, supp) = symbolic_support(lf);
    symbolic = true;
    Rng rng(2 * seed + 3);
    for (int round = 0; round < 8 && !sample; ++round) {
      QVec pv = draw_params(rng, lf.params.size());
      QMat c = eval_forms(lf, pv);
      if (rank_of(c) == rc && support_of(c, g, rc) == supp) sample = pv;
    }
    if (!sample)
      throw Error(ErrCode::GenericityExhausted,
                  "no draw realizes the generic minors");
  }

  Matroid m;
  m.ground = lf.ground;
  m.rank = g - rc;
  for (const auto& s : supp) {
    std::vector<size_t> basis;
    size_t at = 0;
    for (size_t j = 0; j < g; ++j) {
      while (at < s.size() && s[at] < j) ++at;
      if (at < s.size() && s[at] == j) continue;
      basis.push_back(j);
    }
    m.bases.push_back(basis);
  }
  std::sort(m.bases.begin(), m.bases.end());
  m.realization = kernel_basis(eval_forms(lf, *sample));
  if (m.realization.size() != m.rank)
    throw Error(ErrCode::Internal, "kernel dimension mismatch");

  // the kernel columns must realize exactly the complements of the minors
  std::set<std::vector<size_t>> basis_set(m.bases.begin(), m.bases.end());
  bool ok = true;
  for_subsets(g, m.rank, [&](const std::vector<size_t>& s) {
    bool indep = cols_rank(m.realization, s) == m.rank;
    if (indep != (basis_set.count(s) > 0)) ok = false;
  });
  if (!ok)
    throw Error(ErrCode::Internal, "kernel matroid disagrees with the minors");

  if (info) {
    info->plucker_support.assign(supp.begin(), supp.end());
    info->coeff_rank = rc;
    info->symbolic = symbolic;
    info->sample.clear();
    for (size_t k = 0; k < lf.params.size(); ++k)
      info->sample[lf.params[k]] = (*sample)[k];
  }
  return m;
}

size_t matroid_rank_of(const Matroid& m, const std::vector<size_t>& set) {
  return cols_rank(m.realization, set);
}

bool matroid_has_loops(const Matroid& m) {
  for (size_t j = 0; j < m.ground.size(); ++j) {
    bool zero = true;
    for (const QVec& row : m.realization)
      if (row[j] != 0) {
        zero = false;
        break;
      }
    if (zero) return true;
  }
  return false;
}

std::vector<std::vector<std::vector<size_t>>> matroid_flats(const Matroid& m) {
  if (matroid_has_loops(m))
    throw Error(ErrCode::Validation, "matroid has loops");
  size_t g = m.ground.size();
  std::map<uint64_t, size_t> rank_memo;
  auto rank_mask = [&](uint64_t mask) {
    auto it = rank_memo.find(mask);
    if (it != rank_memo.end()) return it->second;
    std::vector<size_t> set;
    for (size_t j = 0; j < g; ++j)
      if (mask >> j & 1) set.push_back(j);
    size_t r = matroid_rank_of(m, set);
    rank_memo[mask] = r;
    return r;
  };
  auto closure = [&](uint64_t mask) {
    size_t r = rank_mask(mask);
    uint64_t out = mask;
    for (size_t j = 0; j < g; ++j)
      if (!(mask >> j & 1) && rank_mask(mask | (1ull << j)) == r)
        out |= 1ull << j;
    return out;
  };
  std::vector<std::vector<std::vector<size_t>>> by_rank(m.rank + 1);
  std::vector<std::set<uint64_t>> seen(m.rank + 1);
  seen[0].insert(0);
  for (size_t k = 0; k < m.rank; ++k) {
    for (uint64_t f : seen[k]) {
      for (size_t j = 0; j < g; ++j) {
        if (f >> j & 1) continue;
        seen[k + 1].insert(closure(f | (1ull << j)));
      }
    }
  }
  for (size_t k = 0; k <= m.rank; ++k) {
    for (uint64_t f : seen[k]) {
      std::vector<size_t> set;
      for (size_t j = 0; j < g; ++j)
        if (f >> j & 1) set.push_back(j);
      if (rank_mask(f) != k)
        throw Error(ErrCode::Internal, "flat landed at the wrong rank");
      by_rank[k].push_back(set);
    }
    std::sort(by_rank[k].begin(), by_rank[k].end());
  }
  return by_rank;
}

std::vector<std::vector<size_t>> matroid_circuits(const Matroid& m) {
  size_t g = m.ground.size();
  std::vector<std::vector<size_t>> circuits;
  auto has_known_subset = [&](const std::vector<size_t>& s) {
    for (const auto& c : circuits)
      if (std::includes(s.begin(), s.end(), c.begin(), c.end())) return true;
    return false;
  };
  for (size_t sz = 1; sz <= std::min(g, m.rank + 1); ++sz) {
    for_subsets(g, sz, [&](const std::vector<size_t>& s) {
      if (has_known_subset(s)) return;
      if (matroid_rank_of(m, s) < sz) circuits.push_back(s);
    });
  }
  return circuits;
}

bool plucker_certificate(const LinForms& lf,
                         const std::vector<std::vector<size_t>>& support,
                         const std::map<std::string, Rat>& point) {
  QVec pv(lf.params.size(), Rat(0));
  for (size_t k = 0; k < lf.params.size(); ++k) {
    auto it = point.find(lf.params[k]);
    if (it == point.end()) return false;
    pv[k] = it->second;
  }
  if (support.empty()) return false;
  size_t rc = support.front().size();
  QMat c = eval_forms(lf, pv);
  if (rank_of(c) != rc) return false;
  Support claimed(support.begin(), support.end());
  return support_of(c, lf.ground.size(), rc) == claimed;
}

WeightedComplex bergman_fan(const Matroid& m) {
  auto by_rank = matroid_flats(m);
  size_t g = m.ground.size();
  WeightedComplex wc;
  wc.nvars = g;
  wc.dim = m.rank;
  std::set<std::string> keys;
  std::vector<std::vector<size_t>> chain{std::vector<size_t>{}};
  std::function<void()> descend = [&]() {
    size_t k = chain.size() - 1;
    if (k == m.rank) {
      QMat eq_a, in_a;
      QVec eq_b, in_b;
      std::vector<size_t> reps;
      for (size_t i = 1; i <= m.rank; ++i) {
        std::vector<size_t> step;
        const auto& lo = chain[i - 1];
        for (size_t e : chain[i])
          if (!std::binary_search(lo.begin(), lo.end(), e)) step.push_back(e);
        reps.push_back(step.front());
        for (size_t t = 1; t < step.size(); ++t) {
          QVec row(g, Rat(0));
          row[step[0]] = 1;
          row[step[t]] = -1;
          eq_a.push_back(row);
          eq_b.push_back(Rat(0));
        }
      }
      for (size_t i = 0; i + 1 < reps.size(); ++i) {
        QVec row(g, Rat(0));
        row[reps[i + 1]] = 1;
        row[reps[i]] = -1;
        in_a.push_back(row);
        in_b.push_back(Rat(0));
      }
      auto cell = make_cell(g, eq_a, eq_b, in_a, in_b);
      if (!cell || cell->dim != m.rank)
        throw Error(ErrCode::Internal, "degenerate chain cone");
      if (keys.insert(cell_key(*cell)).second) wc.cells.push_back({*cell, 1});
      return;
    }
    for (const auto& f : by_rank[k + 1]) {
      const auto& prev = chain.back();
      if (!std::includes(f.begin(), f.end(), prev.begin(), prev.end()))
        continue;
      chain.push_back(f);
      descend();
      chain.pop_back();
    }
  };
  descend();
  auto circuits = matroid_circuits(m);
  for (const auto& [cell, mult] : wc.cells)
    if (!min_twice_on(circuits, cell.relint))
      throw Error(ErrCode::Internal, "fan cell violates a circuit");
  return wc;
}

bool circuits_min_twice(const Matroid& m, const QVec& w) {
  return min_twice_on(matroid_circuits(m), w);
}

Int matroidal_degree(const Matroid& m, const std::vector<WeightedComplex>& parts,
                     const std::vector<size_t>& ground_coords, uint64_t seed) {
  if (parts.empty())
    throw Error(ErrCode::Validation, "nothing to intersect with");
  if (ground_coords.size() != m.ground.size())
    throw Error(ErrCode::DimensionMismatch,
                "ground placement does not match the ground set");
  std::vector<WeightedComplex> all;
  all.push_back(complex_embed(bergman_fan(m), parts.front().nvars, ground_coords));
  for (const auto& p : parts) all.push_back(p);
  return intersection_number(all, seed);
}

std::string matroid_json(const Matroid& m) {
  std::ostringstream os;
  os << "{\"ground\":[";
  for (size_t j = 0; j < m.ground.size(); ++j)
    os << (j ? "," : "") << '"' << m.ground[j] << '"';
  os << "],\"rank\":" << m.rank << ",\"loops\":"
     << (matroid_has_loops(m) ? "true" : "false") << ",\"bases\":[";
  for (size_t i = 0; i < m.bases.size(); ++i) {
    os << (i ? "," : "") << '[';
    for (size_t j = 0; j < m.bases[i].size(); ++j)
      os << (j ? "," : "") << '"' << m.ground[m.bases[i][j]] << '"';
    os << ']';
  }
  os << "]}";
  return os.str();
}

}  // namespace grc
