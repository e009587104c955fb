#include "tropical/tropical.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "core/error.hpp"
#include "core/linalg.hpp"
#include "core/lp.hpp"

namespace grc {

namespace {

bool row_zero(const QVec& r) {
  for (const Rat& x : r)
    if (x != 0) return false;
  return true;
}

// Scale (a, b) by the positive rational that makes a primitive integer.
void scale_primitive(QVec& a, Rat& b) {
  Int lcm = 1;
  for (const Rat& x : a)
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den().get_mpz_t());
  Int gcd = 0;
  for (const Rat& x : a) {
    Rat y = x * lcm;
    mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), y.get_num().get_mpz_t());
  }
  if (gcd == 0) return;
  Rat f = Rat(lcm) / gcd;
  for (Rat& x : a) {
    x *= f;
    x.canonicalize();
  }
  b *= f;
  b.canonicalize();
}

struct RowCmp {
  bool operator()(const std::pair<QVec, Rat>& x,
                  const std::pair<QVec, Rat>& y) const {
    if (x.first != y.first) return x.first < y.first;
    return x.second < y.second;
  }
};

}  // namespace

TropPoly trop_poly(const SpecPoly& p) {
  TropPoly f;
  f.nvars = p.nvars;
  for (const auto& [m, vs] : p.terms) f.terms.push_back({m, vs.weight});
  return f;
}

TropPoly trop_of_support(const std::vector<Mono>& supp, size_t nvars) {
  TropPoly f;
  f.nvars = nvars;
  std::vector<Mono> s = supp;
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  for (const Mono& m : s) f.terms.push_back({m, Rat(0)});
  return f;
}

std::vector<TropPoly> trop_specialize(const System& sys,
                                      const Specialization& p) {
  std::vector<TropPoly> out;
  for (const SpecPoly& sp : specialize(sys, p)) out.push_back(trop_poly(sp));
  return out;
}

Rat trop_term_value(const TropPoly& f, size_t i, const QVec& w) {
  Rat v = f.terms[i].second;
  for (size_t k = 0; k < f.nvars; ++k) v += f.terms[i].first[k] * w[k];
  return v;
}

bool min_attained_twice(const TropPoly& f, const QVec& w,
                        std::vector<size_t>* argmin) {
  if (f.terms.empty()) return false;
  Rat best = trop_term_value(f, 0, w);
  std::vector<size_t> am{0};
  for (size_t i = 1; i < f.terms.size(); ++i) {
    Rat v = trop_term_value(f, i, w);
    if (v < best) {
      best = v;
      am.assign(1, i);
    } else if (v == best) {
      am.push_back(i);
    }
  }
  if (argmin) *argmin = am;
  return am.size() >= 2;
}

std::optional<Cell> make_cell(size_t nvars, const QMat& eq_a0, const QVec& eq_b0,
                              const QMat& ineq_a0, const QVec& ineq_b0) {
  QMat eq_a = eq_a0;
  QVec eq_b = eq_b0;
  QMat in_a = ineq_a0;
  QVec in_b = ineq_b0;

  // Feasibility plus implicit equalities.  Maximize the least slack t over
  // the inequalities; t* = 0 means at least one inequality is tight on the
  // whole set and moves into the equation block.
  QVec relint;
  for (;;) {
    // sweep rows with zero normal
    {
      QMat a2;
      QVec b2;
      for (size_t i = 0; i < eq_a.size(); ++i) {
        if (row_zero(eq_a[i])) {
          if (eq_b[i] != 0) return std::nullopt;
        } else {
          a2.push_back(eq_a[i]);
          b2.push_back(eq_b[i]);
        }
      }
      eq_a.swap(a2);
      eq_b.swap(b2);
      a2.clear();
      b2.clear();
      for (size_t i = 0; i < in_a.size(); ++i) {
        if (row_zero(in_a[i])) {
          if (in_b[i] < 0) return std::nullopt;
        } else {
          a2.push_back(in_a[i]);
          b2.push_back(in_b[i]);
        }
      }
      in_a.swap(a2);
      in_b.swap(b2);
    }
    if (in_a.empty()) {
      LpProblem p;
      p.n = nvars;
      p.a = eq_a;
      p.rhs = eq_b;
      p.eq.assign(eq_a.size(), true);
      p.objective.assign(nvars, Rat(0));
      auto x = lp_feasible_point(p);
      if (!x) return std::nullopt;
      relint = *x;
      break;
    }
    LpProblem p;
    p.n = nvars + 1;
    for (size_t i = 0; i < eq_a.size(); ++i) {
      QVec r = eq_a[i];
      r.push_back(Rat(0));
      p.a.push_back(r);
      p.rhs.push_back(eq_b[i]);
      p.eq.push_back(true);
    }
    for (size_t i = 0; i < in_a.size(); ++i) {
      QVec r = in_a[i];
      r.push_back(Rat(1));  // a.x + t <= b
      p.a.push_back(r);
      p.rhs.push_back(in_b[i]);
      p.eq.push_back(false);
    }
    QVec cap(nvars + 1, Rat(0));
    cap[nvars] = 1;
    p.a.push_back(cap);
    p.rhs.push_back(Rat(1));
    p.eq.push_back(false);
    p.objective.assign(nvars + 1, Rat(0));
    p.objective[nvars] = 1;
    LpResult r = lp_optimize(p);
    if (r.status == LpStatus::Infeasible) return std::nullopt;
    if (r.status == LpStatus::Optimal && r.value < 0) return std::nullopt;
    if (r.status == LpStatus::Optimal && r.value > 0) {
      relint.assign(r.x.begin(), r.x.begin() + nvars);
      break;
    }
    // find the tight inequalities: min of a_i.x over the set equals b_i
    LpProblem q;
    q.n = nvars;
    q.a = eq_a;
    q.rhs = eq_b;
    q.eq.assign(eq_a.size(), true);
    for (size_t i = 0; i < in_a.size(); ++i) {
      q.a.push_back(in_a[i]);
      q.rhs.push_back(in_b[i]);
      q.eq.push_back(false);
    }
    bool moved = false;
    QMat keep_a;
    QVec keep_b;
    for (size_t i = 0; i < in_a.size(); ++i) {
      q.objective = in_a[i];
      for (Rat& x : q.objective) x = -x;  // maximize -a.x = -min a.x
      LpResult s = lp_optimize(q);
      if (s.status == LpStatus::Optimal && -s.value == in_b[i]) {
        eq_a.push_back(in_a[i]);
        eq_b.push_back(in_b[i]);
        moved = true;
      } else {
        keep_a.push_back(in_a[i]);
        keep_b.push_back(in_b[i]);
      }
    }
    if (!moved) throw Error(ErrCode::Internal, "implicit equality sweep stalled");
    in_a.swap(keep_a);
    in_b.swap(keep_b);
  }

  // canonical equations: reduced row echelon form of [A | b]
  std::vector<size_t> pivots;
  {
    QMat aug = eq_a;
    for (size_t i = 0; i < aug.size(); ++i) aug[i].push_back(eq_b[i]);
    std::vector<size_t> pc = rref(aug);
    eq_a.clear();
    eq_b.clear();
    for (size_t i = 0; i < aug.size(); ++i) {
      QVec row(aug[i].begin(), aug[i].end() - 1);
      if (row_zero(row)) {
        if (aug[i].back() != 0) return std::nullopt;  // cannot happen
        continue;
      }
      eq_a.push_back(row);
      eq_b.push_back(aug[i].back());
    }
    for (size_t c : pc)
      if (c < nvars) pivots.push_back(c);
  }

  // inequalities reduced modulo the equation row space, primitive, deduped
  std::map<QVec, Rat> rows;
  for (size_t i = 0; i < in_a.size(); ++i) {
    QVec a = in_a[i];
    Rat b = in_b[i];
    for (size_t r = 0; r < eq_a.size(); ++r) {
      const Rat& c = a[pivots[r]];
      if (c == 0) continue;
      Rat f = c;
      for (size_t k = 0; k < nvars; ++k) a[k] -= f * eq_a[r][k];
      b -= f * eq_b[r];
    }
    if (row_zero(a)) continue;  // slack is constant on the set
    scale_primitive(a, b);
    auto it = rows.find(a);
    if (it == rows.end())
      rows.emplace(a, b);
    else if (b < it->second)
      it->second = b;
  }

  // drop redundant inequalities
  std::vector<std::pair<QVec, Rat>> work(rows.begin(), rows.end());
  std::vector<bool> dead(work.size(), false);
  for (size_t i = 0; i < work.size(); ++i) {
    LpProblem p;
    p.n = nvars;
    p.a = eq_a;
    p.rhs = eq_b;
    p.eq.assign(eq_a.size(), true);
    for (size_t j = 0; j < work.size(); ++j) {
      if (dead[j] || j == i) continue;
      p.a.push_back(work[j].first);
      p.rhs.push_back(work[j].second);
      p.eq.push_back(false);
    }
    p.objective = work[i].first;
    LpResult r = lp_optimize(p);
    if (r.status == LpStatus::Optimal && r.value <= work[i].second)
      dead[i] = true;
  }

  Cell c;
  c.nvars = nvars;
  c.eq_a = eq_a;
  c.eq_b = eq_b;
  std::vector<std::pair<QVec, Rat>> fin;
  for (size_t i = 0; i < work.size(); ++i)
    if (!dead[i]) fin.push_back(work[i]);
  std::sort(fin.begin(), fin.end(), RowCmp{});
  for (auto& [a, b] : fin) {
    c.ineq_a.push_back(a);
    c.ineq_b.push_back(b);
  }
  c.dim = nvars - eq_a.size();
  if (eq_a.empty()) {
    c.span_lat.assign(nvars, ZVec(nvars, 0));
    for (size_t i = 0; i < nvars; ++i) c.span_lat[i][i] = 1;
  } else {
    c.span_lat = saturated_kernel_lattice(eq_a);
  }
  c.relint = relint;
  return c;
}

std::string cell_key(const Cell& c) {
  std::ostringstream os;
  os << c.nvars;
  for (size_t i = 0; i < c.eq_a.size(); ++i) {
    os << ";e";
    for (const Rat& x : c.eq_a[i]) os << x.get_str() << ",";
    os << "=" << c.eq_b[i].get_str();
  }
  for (size_t i = 0; i < c.ineq_a.size(); ++i) {
    os << ";q";
    for (const Rat& x : c.ineq_a[i]) os << x.get_str() << ",";
    os << "<" << c.ineq_b[i].get_str();
  }
  return os.str();
}

bool cell_contains(const Cell& c, const QVec& x) {
  for (size_t i = 0; i < c.eq_a.size(); ++i)
    if (dot(c.eq_a[i], x) != c.eq_b[i]) return false;
  for (size_t i = 0; i < c.ineq_a.size(); ++i)
    if (dot(c.ineq_a[i], x) > c.ineq_b[i]) return false;
  return true;
}

bool cell_bounded(const Cell& c) {
  if (c.dim == 0) return true;
  LpProblem p;
  p.n = c.nvars;
  p.a = c.eq_a;
  p.rhs = c.eq_b;
  p.eq.assign(c.eq_a.size(), true);
  for (size_t i = 0; i < c.ineq_a.size(); ++i) {
    p.a.push_back(c.ineq_a[i]);
    p.rhs.push_back(c.ineq_b[i]);
    p.eq.push_back(false);
  }
  for (size_t k = 0; k < c.nvars; ++k) {
    p.objective.assign(c.nvars, Rat(0));
    p.objective[k] = 1;
    if (lp_optimize(p).status == LpStatus::Unbounded) return false;
    p.objective[k] = -1;
    if (lp_optimize(p).status == LpStatus::Unbounded) return false;
  }
  return true;
}

Cell cell_translate(const Cell& c, const QVec& v) {
  Cell out = c;
  for (size_t i = 0; i < out.eq_a.size(); ++i) out.eq_b[i] += dot(out.eq_a[i], v);
  for (size_t i = 0; i < out.ineq_a.size(); ++i)
    out.ineq_b[i] += dot(out.ineq_a[i], v);
  for (size_t k = 0; k < out.nvars; ++k) out.relint[k] += v[k];
  // re-sort: the inequality order keys on the right-hand side too
  std::vector<std::pair<QVec, Rat>> rows;
  for (size_t i = 0; i < out.ineq_a.size(); ++i)
    rows.push_back({out.ineq_a[i], out.ineq_b[i]});
  std::sort(rows.begin(), rows.end(), RowCmp{});
  for (size_t i = 0; i < rows.size(); ++i) {
    out.ineq_a[i] = rows[i].first;
    out.ineq_b[i] = rows[i].second;
  }
  return out;
}

Cell tangent_cone(const Cell& c, const QVec& p) {
  QMat ea = c.eq_a;
  QVec eb(ea.size(), Rat(0));
  QMat ia;
  QVec ib;
  for (size_t i = 0; i < c.ineq_a.size(); ++i) {
    if (dot(c.ineq_a[i], p) == c.ineq_b[i]) {
      ia.push_back(c.ineq_a[i]);
      ib.push_back(Rat(0));
    }
  }
  auto cone = make_cell(c.nvars, ea, eb, ia, ib);
  if (!cone) throw Error(ErrCode::Internal, "tangent cone of a contained point is empty");
  return *cone;
}

Int total_weight(const WeightedComplex& wc) {
  Int s = 0;
  for (const auto& [c, m] : wc.cells) s += m;
  return s;
}

WeightedComplex complex_translate(const WeightedComplex& wc, const QVec& v) {
  WeightedComplex out;
  out.nvars = wc.nvars;
  out.dim = wc.dim;
  for (const auto& [c, m] : wc.cells) out.cells.push_back({cell_translate(c, v), m});
  return out;
}

WeightedComplex complex_extend(const WeightedComplex& wc, size_t extra) {
  WeightedComplex out;
  out.nvars = wc.nvars + extra;
  out.dim = wc.dim + extra;
  for (const auto& [c, m] : wc.cells) {
    Cell d;
    d.nvars = out.nvars;
    for (const QVec& r : c.eq_a) {
      QVec r2 = r;
      r2.resize(out.nvars, Rat(0));
      d.eq_a.push_back(r2);
    }
    d.eq_b = c.eq_b;
    for (const QVec& r : c.ineq_a) {
      QVec r2 = r;
      r2.resize(out.nvars, Rat(0));
      d.ineq_a.push_back(r2);
    }
    d.ineq_b = c.ineq_b;
    d.dim = c.dim + extra;
    d.span_lat.assign(c.span_lat.size() + extra, ZVec(out.nvars, 0));
    for (size_t i = 0; i < c.span_lat.size(); ++i)
      for (size_t j = 0; j < c.nvars; ++j) d.span_lat[i][j] = c.span_lat[i][j];
    for (size_t i = 0; i < extra; ++i)
      d.span_lat[c.span_lat.size() + i][c.nvars + i] = 1;
    d.relint = c.relint;
    d.relint.resize(out.nvars, Rat(0));
    out.cells.push_back({d, m});
  }
  return out;
}

WeightedComplex complex_embed(const WeightedComplex& wc, size_t total,
                              const std::vector<size_t>& coords) {
  if (coords.size() != wc.nvars || total < wc.nvars)
    throw Error(ErrCode::DimensionMismatch, "bad embedding coordinates");
  std::vector<bool> used(total, false);
  for (size_t c : coords) {
    if (c >= total || used[c])
      throw Error(ErrCode::DimensionMismatch, "bad embedding coordinates");
    used[c] = true;
  }
  size_t extra = total - wc.nvars;
  bool ordered = std::is_sorted(coords.begin(), coords.end());
  auto scatter = [&](const QVec& r) {
    QVec out(total, Rat(0));
    for (size_t k = 0; k < r.size(); ++k) out[coords[k]] = r[k];
    return out;
  };
  WeightedComplex out;
  out.nvars = total;
  out.dim = wc.dim + extra;
  for (const auto& [c, m] : wc.cells) {
    Cell d;
    d.nvars = total;
    for (const QVec& r : c.eq_a) d.eq_a.push_back(scatter(r));
    d.eq_b = c.eq_b;
    for (const QVec& r : c.ineq_a) d.ineq_a.push_back(scatter(r));
    d.ineq_b = c.ineq_b;
    if (!ordered) {
      // a permuting embedding breaks the canonical row order; redo it
      auto redo = make_cell(total, d.eq_a, d.eq_b, d.ineq_a, d.ineq_b);
      if (!redo) throw Error(ErrCode::Internal, "embedded cell vanished");
      out.cells.push_back({*redo, m});
      continue;
    }
    d.dim = c.dim + extra;
    for (const ZVec& r : c.span_lat) {
      ZVec s(total, Int(0));
      for (size_t k = 0; k < r.size(); ++k) s[coords[k]] = r[k];
      d.span_lat.push_back(s);
    }
    for (size_t j = 0; j < total; ++j) {
      if (used[j]) continue;
      ZVec s(total, Int(0));
      s[j] = 1;
      d.span_lat.push_back(s);
    }
    d.relint = scatter(c.relint);
    out.cells.push_back({d, m});
  }
  return out;
}

bool is_balanced(const WeightedComplex& wc) {
  if (wc.cells.empty() || wc.dim == 0) return true;
  for (const auto& [c, m] : wc.cells)
    if (c.dim != wc.dim || m <= 0) return false;

  // collect the walls: facets of the maximal cells, deduplicated
  std::map<std::string, Cell> walls;
  for (const auto& [c, m] : wc.cells) {
    for (size_t i = 0; i < c.ineq_a.size(); ++i) {
      QMat ea = c.eq_a;
      QVec eb = c.eq_b;
      ea.push_back(c.ineq_a[i]);
      eb.push_back(c.ineq_b[i]);
      QMat ia;
      QVec ib;
      for (size_t j = 0; j < c.ineq_a.size(); ++j) {
        if (j == i) continue;
        ia.push_back(c.ineq_a[j]);
        ib.push_back(c.ineq_b[j]);
      }
      auto f = make_cell(c.nvars, ea, eb, ia, ib);
      if (!f) throw Error(ErrCode::Internal, "irredundant inequality with empty facet");
      if (f->dim + 1 != c.dim)
        throw Error(ErrCode::Internal, "facet dimension mismatch");
      walls.emplace(cell_key(*f), *f);
    }
  }

  for (const auto& [key, wall] : walls) {
    const QVec& p = wall.relint;
    QVec sum(wc.nvars, Rat(0));
    for (const auto& [c, m] : wc.cells) {
      if (!cell_contains(c, p)) continue;
      // wall directions must sit inside the cell's directions
      {
        QMat stack;
        for (const ZVec& r : c.span_lat) {
          QVec q(r.size());
          for (size_t k = 0; k < r.size(); ++k) q[k] = r[k];
          stack.push_back(q);
        }
        size_t base = rank_of(stack);
        for (const ZVec& r : wall.span_lat) {
          QVec q(r.size());
          for (size_t k = 0; k < r.size(); ++k) q[k] = r[k];
          stack.push_back(q);
        }
        if (rank_of(stack) != base) return false;
      }
      ZVec u = quotient_generator(wall.span_lat, c.span_lat);
      // orient u into the cell: active inequalities must not increase
      auto points_in = [&](const ZVec& d) {
        for (size_t i = 0; i < c.ineq_a.size(); ++i) {
          if (dot(c.ineq_a[i], p) != c.ineq_b[i]) continue;
          Rat s = 0;
          for (size_t k = 0; k < c.nvars; ++k) s += c.ineq_a[i][k] * d[k];
          if (s > 0) return false;
        }
        return true;
      };
      ZVec neg = u;
      for (Int& x : neg) x = -x;
      if (points_in(u)) {
      } else if (points_in(neg)) {
        u = neg;
      } else {
        return false;
      }
      for (size_t k = 0; k < wc.nvars; ++k) sum[k] += Rat(m) * Rat(u[k]);
    }
    // the weighted normal sum must lie in the wall's direction span
    QMat cols(wc.nvars, QVec(wall.span_lat.size()));
    for (size_t i = 0; i < wall.span_lat.size(); ++i)
      for (size_t k = 0; k < wc.nvars; ++k) cols[k][i] = wall.span_lat[i][k];
    if (!solve_linear(cols, sum)) return false;
  }
  return true;
}

WeightedComplex trop_hypersurface(const TropPoly& f) {
  if (f.terms.size() < 2)
    throw Error(ErrCode::Validation,
                "tropical hypersurface needs at least two terms");
  size_t n = f.nvars;
  WeightedComplex out;
  out.nvars = n;
  out.dim = n == 0 ? 0 : n - 1;
  std::map<std::vector<size_t>, std::pair<Cell, Int>> seen;  // by argmin set
  for (size_t i = 0; i < f.terms.size(); ++i) {
    for (size_t j = i + 1; j < f.terms.size(); ++j) {
      QMat ea(1, QVec(n));
      QVec eb(1);
      for (size_t k = 0; k < n; ++k)
        ea[0][k] = f.terms[i].first[k] - f.terms[j].first[k];
      eb[0] = f.terms[j].second - f.terms[i].second;
      QMat ia;
      QVec ib;
      for (size_t l = 0; l < f.terms.size(); ++l) {
        if (l == i || l == j) continue;
        QVec r(n);
        for (size_t k = 0; k < n; ++k)
          r[k] = f.terms[i].first[k] - f.terms[l].first[k];
        ia.push_back(r);
        ib.push_back(f.terms[l].second - f.terms[i].second);
      }
      auto cell = make_cell(n, ea, eb, ia, ib);
      if (!cell || cell->dim != out.dim) continue;
      std::vector<size_t> am;
      min_attained_twice(f, cell->relint, &am);
      if (seen.count(am)) continue;
      // multiplicity: lattice length of the dual edge
      std::vector<Mono> pts;
      for (size_t l : am) pts.push_back(f.terms[l].first);
      size_t c0 = 0;  // coordinate where the edge direction is visible
      Mono dir(n, 0);
      for (const Mono& q : pts) {
        bool nz = false;
        for (size_t k = 0; k < n; ++k) {
          dir[k] = q[k] - pts[0][k];
          if (dir[k]) nz = true;
        }
        if (nz) break;
      }
      for (size_t k = 0; k < n; ++k)
        if (dir[k]) {
          c0 = k;
          break;
        }
      const Mono* lo = &pts[0];
      const Mono* hi = &pts[0];
      for (const Mono& q : pts) {
        if (q[c0] * (dir[c0] > 0 ? 1 : -1) < (*lo)[c0] * (dir[c0] > 0 ? 1 : -1))
          lo = &q;
        if (q[c0] * (dir[c0] > 0 ? 1 : -1) > (*hi)[c0] * (dir[c0] > 0 ? 1 : -1))
          hi = &q;
      }
      Int g = 0;
      for (size_t k = 0; k < n; ++k) {
        Int d = (*hi)[k] - (*lo)[k];
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      }
      seen.emplace(am, std::make_pair(*cell, g));
    }
  }
  std::vector<std::pair<std::string, std::pair<Cell, Int>>> ord;
  for (auto& [am, cm] : seen) ord.push_back({cell_key(cm.first), cm});
  std::sort(ord.begin(), ord.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [k, cm] : ord) out.cells.push_back(cm);
  return out;
}

Prevariety prevariety(const std::vector<WeightedComplex>& parts) {
  Prevariety out;
  out.bounded = true;
  if (parts.empty()) return out;
  size_t n = parts[0].nvars;
  for (const auto& p : parts)
    if (p.nvars != n)
      throw Error(ErrCode::DimensionMismatch, "mixed ambient dimensions");
  for (const auto& p : parts)
    if (p.cells.empty()) return out;

  std::map<std::string, Cell> seen;
  std::vector<size_t> idx(parts.size(), 0);
  for (;;) {
    QMat ea;
    QVec eb;
    QMat ia;
    QVec ib;
    for (size_t k = 0; k < parts.size(); ++k) {
      const Cell& c = parts[k].cells[idx[k]].first;
      for (size_t i = 0; i < c.eq_a.size(); ++i) {
        ea.push_back(c.eq_a[i]);
        eb.push_back(c.eq_b[i]);
      }
      for (size_t i = 0; i < c.ineq_a.size(); ++i) {
        ia.push_back(c.ineq_a[i]);
        ib.push_back(c.ineq_b[i]);
      }
    }
    auto cell = make_cell(n, ea, eb, ia, ib);
    if (cell) seen.emplace(cell_key(*cell), *cell);
    size_t k = 0;
    while (k < parts.size() && ++idx[k] == parts[k].cells.size()) {
      idx[k] = 0;
      ++k;
    }
    if (k == parts.size()) break;
  }
  for (auto& [key, c] : seen) {
    if (out.bounded && !cell_bounded(c)) out.bounded = false;
    out.cells.push_back(c);
  }
  return out;
}

TransversalReport transversal_check(const std::vector<WeightedComplex>& parts) {
  TransversalReport rep;
  if (parts.empty()) return rep;
  size_t n = parts[0].nvars;
  for (const auto& p : parts)
    if (p.nvars != n)
      throw Error(ErrCode::DimensionMismatch, "mixed ambient dimensions");
  for (const auto& p : parts)
    if (p.cells.empty()) return rep;

  std::vector<size_t> idx(parts.size(), 0);
  for (;;) {
    QMat stack;
    size_t csum = 0;
    LpProblem p;
    p.n = n;
    for (size_t k = 0; k < parts.size(); ++k) {
      const Cell& c = parts[k].cells[idx[k]].first;
      csum += n - c.dim;
      for (size_t i = 0; i < c.eq_a.size(); ++i) {
        stack.push_back(c.eq_a[i]);
        p.a.push_back(c.eq_a[i]);
        p.rhs.push_back(c.eq_b[i]);
        p.eq.push_back(true);
      }
      for (size_t i = 0; i < c.ineq_a.size(); ++i) {
        p.a.push_back(c.ineq_a[i]);
        p.rhs.push_back(c.ineq_b[i]);
        p.eq.push_back(false);
      }
    }
    p.objective.assign(n, Rat(0));
    auto pt = lp_feasible_point(p);
    if (pt && rank_of(stack) != csum) {
      std::ostringstream os;
      os << "non-transversal tuple (";
      for (size_t k = 0; k < idx.size(); ++k)
        os << (k ? "," : "") << idx[k];
      os << ") meeting at (";
      for (size_t k = 0; k < n; ++k)
        os << (k ? "," : "") << (*pt)[k].get_str();
      os << ")";
      rep.ok = false;
      rep.witness = os.str();
      return rep;
    }
    size_t k = 0;
    while (k < parts.size() && ++idx[k] == parts[k].cells.size()) {
      idx[k] = 0;
      ++k;
    }
    if (k == parts.size()) break;
  }
  return rep;
}

WeightedComplex stable_intersection(const WeightedComplex& a,
                                    const WeightedComplex& b, Rng& rng,
                                    StableInfo* info) {
  if (a.nvars != b.nvars)
    throw Error(ErrCode::DimensionMismatch, "mixed ambient dimensions");
  size_t n = a.nvars;
  long dstar = (long)a.dim + (long)b.dim - (long)n;
  WeightedComplex out;
  out.nvars = n;
  out.dim = dstar > 0 ? (size_t)dstar : 0;
  if (dstar < 0 || a.cells.empty() || b.cells.empty()) return out;

  const int kMaxAttempts = 12;
  for (int att = 0; att < kMaxAttempts; ++att) {
    long bound = 16L << att;
    ZVec v;
    do {
      v = rng.int_vec(n, -bound, bound);
    } while (std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; }));
    if (info) {
      info->translation = v;
      info->attempts = att + 1;
    }
    bool retry = false;
    std::map<std::string, std::pair<Cell, Int>> acc;
    for (const auto& [sa, ma] : a.cells) {
      for (const auto& [sb, mb] : b.cells) {
        // feasible epsilon range of { x in A, x - eps v in B, |eps| <= 1 }
        LpProblem p;
        p.n = n + 1;
        auto add = [&](const QVec& row, const Rat& rhs, bool iseq, bool shift) {
          QVec r = row;
          Rat ev = 0;
          if (shift)
            for (size_t k = 0; k < n; ++k) ev -= row[k] * v[k];
          r.push_back(ev);
          p.a.push_back(r);
          p.rhs.push_back(rhs);
          p.eq.push_back(iseq);
        };
        for (size_t i = 0; i < sa.eq_a.size(); ++i)
          add(sa.eq_a[i], sa.eq_b[i], true, false);
        for (size_t i = 0; i < sa.ineq_a.size(); ++i)
          add(sa.ineq_a[i], sa.ineq_b[i], false, false);
        for (size_t i = 0; i < sb.eq_a.size(); ++i)
          add(sb.eq_a[i], sb.eq_b[i], true, true);
        for (size_t i = 0; i < sb.ineq_a.size(); ++i)
          add(sb.ineq_a[i], sb.ineq_b[i], false, true);
        QVec capp(n + 1, Rat(0)), capm(n + 1, Rat(0));
        capp[n] = 1;
        capm[n] = -1;
        p.a.push_back(capp);
        p.rhs.push_back(Rat(1));
        p.eq.push_back(false);
        p.a.push_back(capm);
        p.rhs.push_back(Rat(1));
        p.eq.push_back(false);
        p.objective.assign(n + 1, Rat(0));
        p.objective[n] = 1;
        LpResult hi = lp_optimize(p);
        if (hi.status == LpStatus::Infeasible) continue;
        if (hi.status == LpStatus::Optimal && hi.value <= 0) continue;
        p.objective[n] = -1;
        LpResult lo = lp_optimize(p);
        if (lo.status == LpStatus::Optimal && -lo.value > 0) continue;
        // the pair survives an infinitesimal translation
        QMat stack = sa.eq_a;
        for (const QVec& r : sb.eq_a) stack.push_back(r);
        if (rank_of(stack) != (n - sa.dim) + (n - sb.dim)) {
          retry = true;  // meets non-transversally: move again
          break;
        }
        QMat ea = sa.eq_a;
        QVec eb = sa.eq_b;
        QMat ia = sa.ineq_a;
        QVec ib = sa.ineq_b;
        for (size_t i = 0; i < sb.eq_a.size(); ++i) {
          ea.push_back(sb.eq_a[i]);
          eb.push_back(sb.eq_b[i]);
        }
        for (size_t i = 0; i < sb.ineq_a.size(); ++i) {
          ia.push_back(sb.ineq_a[i]);
          ib.push_back(sb.ineq_b[i]);
        }
        auto cell = make_cell(n, ea, eb, ia, ib);
        if (!cell) continue;  // survival implies eps = 0 feasible; defensive
        if ((long)cell->dim != dstar) continue;  // boundary sliver
        Int mult = ma * mb * lattice_index(sa.span_lat, sb.span_lat, n);
        std::string key = cell_key(*cell);
        auto it = acc.find(key);
        if (it == acc.end())
          acc.emplace(key, std::make_pair(*cell, mult));
        else
          it->second.second += mult;
      }
      if (retry) break;
    }
    if (retry) continue;
    for (auto& [k, cm] : acc) out.cells.push_back(cm);
    return out;
  }
  throw Error(ErrCode::GenericityExhausted,
              "no generic translation found for stable intersection");
}

Int intersection_number(const std::vector<WeightedComplex>& parts,
                        uint64_t seed) {
  if (parts.empty())
    throw Error(ErrCode::Validation, "intersection number of nothing");
  size_t n = parts[0].nvars;
  size_t csum = 0;
  for (const auto& p : parts) {
    if (p.nvars != n)
      throw Error(ErrCode::DimensionMismatch, "mixed ambient dimensions");
    csum += n - p.dim;
  }
  if (csum != n)
    throw Error(ErrCode::DimensionMismatch,
                "codimensions must sum to the ambient dimension");
  Rng rng(seed);
  WeightedComplex acc = parts[0];
  for (size_t i = 1; i < parts.size(); ++i) {
    if (acc.cells.empty()) return 0;
    acc = stable_intersection(acc, parts[i], rng);
  }
  return total_weight(acc);
}

WeightedComplex star_at(const WeightedComplex& wc, const QVec& p) {
  WeightedComplex out;
  out.nvars = wc.nvars;
  out.dim = wc.dim;
  std::vector<std::pair<std::string, std::pair<Cell, Int>>> ord;
  for (const auto& [c, m] : wc.cells) {
    if (!cell_contains(c, p)) continue;
    Cell cone = tangent_cone(c, p);
    ord.push_back({cell_key(cone), {cone, m}});
  }
  std::sort(ord.begin(), ord.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [k, cm] : ord) out.cells.push_back(cm);
  return out;
}

WeightedComplex linear_transform(const WeightedComplex& wc, const ZMat& l,
                                 const Int& factor) {
  size_t n = wc.nvars;
  if (l.size() != n) throw Error(ErrCode::DimensionMismatch, "matrix size");
  if (factor <= 0) throw Error(ErrCode::Validation, "factor must be positive");
  QMat lq(n, QVec(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) lq[i][j] = l[i][j];
  auto li = mat_inverse(lq);
  if (!li) throw Error(ErrCode::RankDeficient, "singular transform");
  WeightedComplex out;
  out.nvars = n;
  out.dim = wc.dim;
  for (const auto& [c, m] : wc.cells) {
    QMat ea = mat_mul(c.eq_a, *li);
    QMat ia = mat_mul(c.ineq_a, *li);
    auto cell = make_cell(n, ea, c.eq_b, ia, c.ineq_b);
    if (!cell) throw Error(ErrCode::Internal, "image cell vanished");
    out.cells.push_back({*cell, m * factor});
  }
  return out;
}

WeightedComplex monomial_pullback(const WeightedComplex& wc, const ZMat& a) {
  size_t n = wc.nvars;
  if (a.size() != n) throw Error(ErrCode::DimensionMismatch, "matrix size");
  QMat aq(n, QVec(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) aq[i][j] = a[i][j];
  Rat det = det_of(aq);
  if (det == 0) throw Error(ErrCode::RankDeficient, "singular exponent matrix");
  Int adet = det.get_num();
  if (adet < 0) adet = -adet;

  WeightedComplex out;
  out.nvars = n;
  out.dim = wc.dim;
  for (const auto& [c, m] : wc.cells) {
    QMat ea = mat_mul(c.eq_a, aq);
    QMat ia = mat_mul(c.ineq_a, aq);
    auto cell = make_cell(n, ea, c.eq_b, ia, c.ineq_b);
    if (!cell) throw Error(ErrCode::Internal, "preimage cell vanished");
    // degree of the cover over this cell: [span_down : a * span_up]
    QMat cols(n, QVec(c.span_lat.size()));
    for (size_t i = 0; i < c.span_lat.size(); ++i)
      for (size_t k = 0; k < n; ++k) cols[k][i] = c.span_lat[i][k];
    QMat coeffs;
    for (const ZVec& u : cell->span_lat) {
      QVec au(n, Rat(0));
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) au[i] += Rat(a[i][j]) * Rat(u[j]);
      auto lam = solve_linear(cols, au);
      if (!lam)
        throw Error(ErrCode::Internal, "pullback direction leaves the cell span");
      coeffs.push_back(*lam);
    }
    Int idx = 1;
    if (!coeffs.empty()) {
      Rat d = det_of(coeffs);
      idx = d.get_num();
      if (idx < 0) idx = -idx;
      if (idx == 0) throw Error(ErrCode::Internal, "degenerate cover index");
    }
    Int num = m * adet;
    Int q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), idx.get_mpz_t());
    if (r != 0)
      throw Error(ErrCode::Internal, "non-integral pullback multiplicity");
    out.cells.push_back({*cell, q});
  }
  return out;
}

Int mixed_volume_tropical(const std::vector<LatticePolytope>& polys,
                          uint64_t seed) {
  if (polys.empty()) return 1;
  size_t n = polys[0].dim;
  if (polys.size() != n)
    throw Error(ErrCode::NonSquare, "need as many polytopes as dimensions");
  std::vector<WeightedComplex> hs;
  for (const auto& p : polys) {
    if (p.verts.size() < 2) return 0;  // a point summand kills the volume
    hs.push_back(trop_hypersurface(trop_of_support(p.verts, n)));
  }
  return intersection_number(hs, seed);
}

namespace {

void json_vec(std::ostringstream& os, const QVec& v) {
  os << "[";
  for (size_t i = 0; i < v.size(); ++i)
    os << (i ? "," : "") << "\"" << v[i].get_str() << "\"";
  os << "]";
}

}  // namespace

std::string complex_json(const WeightedComplex& wc) {
  std::ostringstream os;
  os << "{\"nvars\":" << wc.nvars << ",\"dim\":" << wc.dim << ",\"cells\":[";
  for (size_t c = 0; c < wc.cells.size(); ++c) {
    const Cell& cell = wc.cells[c].first;
    if (c) os << ",";
    os << "{\"mult\":\"" << wc.cells[c].second.get_str() << "\",\"dim\":"
       << cell.dim << ",\"eq\":[";
    for (size_t i = 0; i < cell.eq_a.size(); ++i) {
      if (i) os << ",";
      os << "{\"a\":";
      json_vec(os, cell.eq_a[i]);
      os << ",\"b\":\"" << cell.eq_b[i].get_str() << "\"}";
    }
    os << "],\"ineq\":[";
    for (size_t i = 0; i < cell.ineq_a.size(); ++i) {
      if (i) os << ",";
      os << "{\"a\":";
      json_vec(os, cell.ineq_a[i]);
      os << ",\"b\":\"" << cell.ineq_b[i].get_str() << "\"}";
    }
    os << "],\"relint\":";
    json_vec(os, cell.relint);
    os << "}";
  }
  os << "]}";
  return os.str();
}

}  // namespace grc
