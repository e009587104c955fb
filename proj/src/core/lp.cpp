#include "core/lp.hpp"

#include <algorithm>

#include "core/error.hpp"

namespace grc {

namespace {

// Dense tableau simplex over the rationals. Free variables are split as
// x = u - v; every row gets an artificial for phase 1. Bland's rule, so no
// cycling; everything stays exact.
struct Tableau {
  size_t m, n_orig, n_slack, n_art, width;
  ZVec flip;                  // +1 / -1 applied to each input row
  std::vector<QVec> t;        // m rows of width+1 (rhs last)
  std::vector<size_t> basis;  // basic variable per row
  std::vector<size_t> slack_col, art_col;  // per input row; SIZE_MAX if none

  size_t ucol(size_t j) const { return j; }
  size_t vcol(size_t j) const { return n_orig + j; }

  Tableau(const LpProblem& p) {
    m = p.a.size();
    n_orig = p.n;
    n_slack = 0;
    for (bool e : p.eq) n_slack += e ? 0 : 1;
    n_art = m;
    width = 2 * n_orig + n_slack + n_art;
    flip.assign(m, Int(1));
    slack_col.assign(m, SIZE_MAX);
    art_col.assign(m, SIZE_MAX);
    t.assign(m, QVec(width + 1, Rat(0)));
    basis.assign(m, 0);
    size_t s = 2 * n_orig, art = 2 * n_orig + n_slack;
    for (size_t i = 0; i < m; ++i) {
      if (p.a[i].size() != n_orig) throw Error(ErrCode::DimensionMismatch, "lp row width");
      bool neg = p.rhs[i] < 0;
      if (neg) flip[i] = -1;
      Rat sg = neg ? Rat(-1) : Rat(1);
      for (size_t j = 0; j < n_orig; ++j) {
        t[i][ucol(j)] = sg * p.a[i][j];
        t[i][vcol(j)] = -sg * p.a[i][j];
      }
      if (!p.eq[i]) {
        slack_col[i] = s;
        t[i][s++] = sg;
      }
      art_col[i] = art;
      t[i][art++] = 1;
      t[i][width] = sg * p.rhs[i];
      basis[i] = art_col[i];
    }
  }

  void pivot(size_t r, size_t c) {
    Rat inv = 1 / t[r][c];
    for (auto& x : t[r]) x *= inv;
    for (size_t i = 0; i < m; ++i) {
      if (i == r || t[i][c] == 0) continue;
      Rat f = t[i][c];
      for (size_t j = 0; j <= width; ++j) t[i][j] -= f * t[r][j];
    }
    basis[r] = c;
  }

  // One simplex phase maximizing cost over the allowed columns.
  // Returns entering column on unboundedness, SIZE_MAX at optimality.
  size_t run(const QVec& cost, size_t cols) {
    for (;;) {
      QVec red(cols, Rat(0));
      for (size_t j = 0; j < cols; ++j) {
        Rat r = -cost[j];
        for (size_t i = 0; i < m; ++i)
          if (cost[basis[i]] != 0) r += cost[basis[i]] * t[i][j];
        red[j] = r;
      }
      size_t enter = SIZE_MAX;
      for (size_t j = 0; j < cols; ++j)
        if (red[j] < 0) { enter = j; break; }
      if (enter == SIZE_MAX) return SIZE_MAX;
      size_t leave = SIZE_MAX;
      for (size_t i = 0; i < m; ++i) {
        if (t[i][enter] <= 0) continue;
        if (leave == SIZE_MAX) { leave = i; continue; }
        Rat cand = t[i][width] / t[i][enter];
        Rat best = t[leave][width] / t[leave][enter];
        if (cand < best || (cand == best && basis[i] < basis[leave])) leave = i;
      }
      if (leave == SIZE_MAX) return enter;
      pivot(leave, enter);
    }
  }

  QVec point() const {
    QVec x(n_orig, Rat(0));
    for (size_t i = 0; i < m; ++i) {
      if (basis[i] < n_orig) x[basis[i]] += t[i][width];
      else if (basis[i] < 2 * n_orig) x[basis[i] - n_orig] -= t[i][width];
    }
    return x;
  }
};

void verify_farkas(const LpProblem& p, const QVec& y) {
  QVec comb(p.n, Rat(0));
  Rat rv = 0;
  for (size_t i = 0; i < p.a.size(); ++i) {
    if (!p.eq[i] && y[i] < 0) throw Error(ErrCode::Internal, "farkas sign");
    for (size_t j = 0; j < p.n; ++j) comb[j] += y[i] * p.a[i][j];
    rv += y[i] * p.rhs[i];
  }
  if (!is_zero_vec(comb) || rv >= 0) throw Error(ErrCode::Internal, "farkas identity");
}

}  // namespace

LpResult lp_optimize(const LpProblem& p) {
  if (p.rhs.size() != p.a.size() || p.eq.size() != p.a.size())
    throw Error(ErrCode::DimensionMismatch, "lp constraint shape");
  if (p.objective.size() != p.n) throw Error(ErrCode::DimensionMismatch, "lp objective width");

  Tableau tab(p);
  LpResult res;

  // Phase 1: drive the artificials to zero.
  if (tab.m > 0) {
    QVec cost(tab.width, Rat(0));
    for (size_t i = 0; i < tab.m; ++i) cost[tab.art_col[i]] = -1;
    tab.run(cost, tab.width - tab.n_art);  // artificials never re-enter
    Rat z = 0;
    for (size_t i = 0; i < tab.m; ++i) z += cost[tab.basis[i]] * tab.t[i][tab.width];
    if (z < 0) {
      res.status = LpStatus::Infeasible;
      // Dual of phase 1, pushed back through the row sign flips.
      QVec y(tab.m, Rat(0));
      for (size_t i = 0; i < tab.m; ++i) {
        Rat yi = 0;  // row price: phase-1 costs against B^-1 e_i
        for (size_t k = 0; k < tab.m; ++k)
          if (cost[tab.basis[k]] != 0) yi += cost[tab.basis[k]] * tab.t[k][tab.art_col[i]];
        y[i] = Rat(tab.flip[i]) * yi;
      }
      verify_farkas(p, y);
      res.farkas = std::move(y);
      return res;
    }
    // Kick still-basic artificials out; a row with no other support is redundant.
    for (size_t i = 0; i < tab.m;) {
      if (tab.basis[i] < tab.width - tab.n_art) { ++i; continue; }
      size_t c = SIZE_MAX;
      for (size_t j = 0; j < tab.width - tab.n_art && c == SIZE_MAX; ++j)
        if (tab.t[i][j] != 0) c = j;
      if (c != SIZE_MAX) {
        tab.pivot(i, c);
        ++i;
      } else {
        tab.t.erase(tab.t.begin() + i);
        tab.basis.erase(tab.basis.begin() + i);
        --tab.m;
      }
    }
  }

  // Phase 2 on the real objective.
  QVec cost(tab.width, Rat(0));
  for (size_t j = 0; j < tab.n_orig; ++j) {
    cost[tab.ucol(j)] = p.objective[j];
    cost[tab.vcol(j)] = -p.objective[j];
  }
  size_t enter = tab.run(cost, tab.width - tab.n_art);
  if (enter != SIZE_MAX) {
    res.status = LpStatus::Unbounded;
    res.x = tab.point();
    QVec d(tab.width, Rat(0));
    d[enter] = 1;
    for (size_t i = 0; i < tab.m; ++i) d[tab.basis[i]] = -tab.t[i][enter];
    res.ray.assign(tab.n_orig, Rat(0));
    for (size_t j = 0; j < tab.n_orig; ++j) res.ray[j] = d[tab.ucol(j)] - d[tab.vcol(j)];
    return res;
  }
  res.status = LpStatus::Optimal;
  res.x = tab.point();
  res.value = dot(p.objective, res.x);
  return res;
}

std::optional<QVec> lp_feasible_point(const LpProblem& p) {
  LpProblem q = p;
  q.objective.assign(p.n, Rat(0));
  auto r = lp_optimize(q);
  if (r.status == LpStatus::Infeasible) return std::nullopt;
  return r.x;
}

}  // namespace grc
