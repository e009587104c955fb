#include "polytope/polytope.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <set>

#include "core/error.hpp"
#include "core/linalg.hpp"
#include "core/lp.hpp"
#include "core/rng.hpp"

namespace grc {
namespace {

QVec to_q(const Mono& m) {
  QVec v(m.size());
  for (size_t i = 0; i < m.size(); ++i) v[i] = m[i];
  return v;
}

Rat fact(size_t k) {
  Rat r = 1;
  for (size_t i = 2; i <= k; ++i) r *= (long)i;
  return r;
}

// Signals a lift that was not generic enough; the caller retries.
struct Degenerate {};

// Lower hull of points lifted by w: cells are the simplices of the regular
// triangulation induced by the lift.  Cells are found by rotating supporting
// hyperplanes of the form <c,x> + t = h around ridges (gift wrapping on the
// lifted point set); ties abort via Degenerate.
struct LowerHull {
  const std::vector<QVec>& p;
  QVec w;
  size_t d, m;

  LowerHull(const std::vector<QVec>& pts, QVec lifts)
      : p(pts), w(std::move(lifts)), d(pts[0].size()), m(pts.size()) {}

  // hyperplane through the d+1 lifted points idx; Degenerate if they are
  // affinely dependent
  std::pair<QVec, Rat> plane(const std::vector<int>& idx) const {
    QMat a(idx.size(), QVec(d + 1));
    QVec rhs(idx.size());
    for (size_t r = 0; r < idx.size(); ++r) {
      for (size_t j = 0; j < d; ++j) a[r][j] = p[idx[r]][j];
      a[r][d] = -1;
      rhs[r] = -w[idx[r]];
    }
    if (det_of(a) == 0) throw Degenerate{};
    auto sol = solve_linear(a, rhs);
    if (!sol) throw Degenerate{};
    return {QVec(sol->begin(), sol->begin() + d), (*sol)[d]};
  }

  // rotation directions (dir, e) fixing the lifted points idx:
  // <dir, p_i> - e = 0 for i in idx
  QMat family(const std::vector<int>& idx) const {
    QMat a(idx.size(), QVec(d + 1));
    for (size_t r = 0; r < idx.size(); ++r) {
      for (size_t j = 0; j < d; ++j) a[r][j] = p[idx[r]][j];
      a[r][d] = -1;
    }
    return kernel_basis(a);
  }

  // Rotate (c,h) along (dir,e) until a new point meets the plane; adds it to
  // s.  False when no point lies on the closing side.
  bool rotate_once(QVec& c, Rat& h, std::vector<int>& s, const QVec& dir,
                   const Rat& e) const {
    bool have = false, tie = false;
    Rat best;
    int win = -1;
    for (size_t j = 0; j < m; ++j) {
      if (std::find(s.begin(), s.end(), (int)j) != s.end()) continue;
      Rat g = dot(c, p[j]) + w[j] - h;
      if (g == 0) throw Degenerate{};
      Rat delta = dot(dir, p[j]) - e;
      if (sgn(delta) >= 0) continue;
      Rat t = g / -delta;
      if (!have || t < best) {
        best = t;
        win = (int)j;
        have = true;
        tie = false;
      } else if (t == best) {
        tie = true;
      }
    }
    if (!have) return false;
    if (tie) throw Degenerate{};
    for (size_t j = 0; j < d; ++j) c[j] += best * dir[j];
    h += best * e;
    s.push_back(win);
    return true;
  }

  // Find one cell: support in a random direction, then rotate until the
  // contact set has d+1 points.
  std::vector<int> initial_cell(Rng& rng) {
    QVec c(d);
    for (auto& x : c) x = rng.uniform(-1000000000L, 1000000000L);
    Rat h;
    for (size_t j = 0; j < m; ++j) {
      Rat v = dot(c, p[j]) + w[j];
      if (j == 0 || v < h) h = v;
    }
    std::vector<int> s;
    for (size_t j = 0; j < m; ++j)
      if (dot(c, p[j]) + w[j] == h) s.push_back((int)j);
    if (s.size() != 1) throw Degenerate{};
    while (s.size() < d + 1) {
      QMat fam = family(s);
      if (fam.size() != d + 1 - s.size()) throw Degenerate{};
      QVec dir(fam[0].begin(), fam[0].begin() + d);
      Rat e = fam[0][d];
      if (!rotate_once(c, h, s, dir, e)) {
        for (auto& x : dir) x = -x;
        e = -e;
        if (!rotate_once(c, h, s, dir, e)) throw Degenerate{};
      }
    }
    std::sort(s.begin(), s.end());
    return s;
  }

  template <class Sink>
  void run(Rng& rng, Sink&& sink) {
    auto start = initial_cell(rng);
    std::set<std::vector<int>> seen{start};
    std::queue<std::vector<int>> work;
    work.push(start);
    while (!work.empty()) {
      auto cell = work.front();
      work.pop();
      auto [c, h] = plane(cell);
      QVec g(m);
      for (size_t j = 0; j < m; ++j) {
        g[j] = dot(c, p[j]) + w[j] - h;
        if (sgn(g[j]) < 0) throw Degenerate{};
        if (g[j] == 0 &&
            !std::binary_search(cell.begin(), cell.end(), (int)j))
          throw Degenerate{};
      }
      sink(cell);
      for (size_t drop = 0; drop < cell.size(); ++drop) {
        std::vector<int> ridge;
        for (size_t r = 0; r < cell.size(); ++r)
          if (r != drop) ridge.push_back(cell[r]);
        QMat fam = family(ridge);
        if (fam.size() != 1) throw Degenerate{};
        QVec dir(fam[0].begin(), fam[0].begin() + d);
        Rat e = fam[0][d];
        Rat dq = dot(dir, p[cell[drop]]) - e;
        if (dq == 0) throw Degenerate{};
        if (sgn(dq) < 0) {
          for (auto& x : dir) x = -x;
          e = -e;
        }
        // first contact on the closing side; none means a boundary ridge
        bool have = false, tie = false;
        Rat best;
        int win = -1;
        for (size_t j = 0; j < m; ++j) {
          if (g[j] == 0) continue;
          Rat delta = dot(dir, p[j]) - e;
          if (sgn(delta) >= 0) continue;
          Rat t = g[j] / -delta;
          if (!have || t < best) {
            best = t;
            win = (int)j;
            have = true;
            tie = false;
          } else if (t == best) {
            tie = true;
          }
        }
        if (!have) continue;
        if (tie) throw Degenerate{};
        std::vector<int> nxt = ridge;
        nxt.push_back(win);
        std::sort(nxt.begin(), nxt.end());
        if (seen.insert(nxt).second) work.push(nxt);
      }
    }
  }
};

// Runs the lower-hull enumeration under fresh lifts until one is generic,
// accumulating cell_vol over all cells.
template <class CellVol>
Rat lower_hull_sum(const std::vector<QVec>& pts, uint64_t seed,
                   CellVol&& cell_vol) {
  for (int attempt = 0; attempt < 32; ++attempt) {
    Rng rng(seed * 1000003ULL + (uint64_t)attempt + 1);
    QVec lifts(pts.size());
    for (auto& x : lifts) x = rng.uniform(1, 1000000000000L);
    try {
      LowerHull hull(pts, std::move(lifts));
      Rat acc = 0;
      hull.run(rng, [&](const std::vector<int>& cell) { acc += cell_vol(cell); });
      return acc;
    } catch (const Degenerate&) {
    }
  }
  throw Error(ErrCode::Internal, "no generic lift found for hull enumeration");
}

// Euclidean volume of a Minkowski sum through the Cayley embedding: cells of
// the induced fine mixed subdivision are sums of simplex faces F_i and
// contribute |det(stacked edges)| / prod(dim F_i)!.  Far fewer cells than a
// triangulation of the summed point cloud.
Rat cayley_sum_volume(size_t dim, const std::vector<std::vector<Mono>>& blocks,
                      uint64_t seed) {
  size_t k = blocks.size();
  std::vector<QVec> pts;
  std::vector<int> owner;
  size_t cd = dim + k - 1;
  for (size_t i = 0; i < k; ++i)
    for (const auto& a : blocks[i]) {
      QVec v(cd, Rat(0));
      for (size_t j = 0; j < dim; ++j) v[j] = a[j];
      if (i + 1 < k) v[dim + i] = 1;
      pts.push_back(std::move(v));
      owner.push_back((int)i);
    }
  return lower_hull_sum(pts, seed, [&](const std::vector<int>& cell) -> Rat {
    std::vector<std::vector<int>> grp(k);
    for (int idx : cell) grp[owner[idx]].push_back(idx);
    QMat edges;
    Rat denom = 1;
    for (const auto& g : grp) {
      if (g.empty()) throw Degenerate{};
      for (size_t r = 1; r < g.size(); ++r) {
        QVec row(dim);
        for (size_t j = 0; j < dim; ++j) row[j] = pts[g[r]][j] - pts[g[0]][j];
        edges.push_back(std::move(row));
      }
      denom *= fact(g.size() - 1);
    }
    return abs(det_of(edges)) / denom;
  });
}

Rat dot_zq(const ZVec& a, const QVec& b) {
  Rat r = 0;
  for (size_t i = 0; i < a.size(); ++i) r += Rat(a[i]) * b[i];
  return r;
}

Int dot_zm(const ZVec& a, const Mono& b) {
  Int r = 0;
  for (size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
  return r;
}

}  // namespace

bool point_in_hull(const Mono& pt, const std::vector<Mono>& hull_pts) {
  size_t m = hull_pts.size(), d = pt.size();
  if (m == 0) return false;
  LpProblem lp;
  lp.n = m;
  for (size_t j = 0; j < d; ++j) {
    QVec row(m);
    for (size_t i = 0; i < m; ++i) row[i] = hull_pts[i][j];
    lp.a.push_back(std::move(row));
    lp.rhs.push_back(pt[j]);
    lp.eq.push_back(true);
  }
  lp.a.push_back(QVec(m, Rat(1)));
  lp.rhs.push_back(1);
  lp.eq.push_back(true);
  for (size_t i = 0; i < m; ++i) {
    QVec row(m, Rat(0));
    row[i] = -1;
    lp.a.push_back(std::move(row));
    lp.rhs.push_back(0);
    lp.eq.push_back(false);
  }
  lp.objective = QVec(m, Rat(0));
  return lp_feasible_point(lp).has_value();
}

LatticePolytope make_polytope(size_t dim, std::vector<Mono> pts) {
  for (const auto& p : pts)
    if (p.size() != dim)
      throw Error(ErrCode::DimensionMismatch, "point dimension mismatch");
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.empty()) throw Error(ErrCode::Validation, "polytope needs a point");
  LatticePolytope out;
  out.dim = dim;
  for (size_t i = 0; i < pts.size(); ++i) {
    std::vector<Mono> others;
    for (size_t j = 0; j < pts.size(); ++j)
      if (j != i) others.push_back(pts[j]);
    if (others.empty() || !point_in_hull(pts[i], others))
      out.verts.push_back(pts[i]);
  }
  return out;
}

LatticePolytope newton_polytope(const MPoly& f) {
  if (f.is_zero())
    throw Error(ErrCode::Validation, "zero polynomial has no Newton polytope");
  std::vector<Mono> pts;
  for (const auto& [m, c] : f.terms()) pts.push_back(m);
  return make_polytope(f.nvars(), std::move(pts));
}

LatticePolytope minkowski_sum(const LatticePolytope& p, const LatticePolytope& q) {
  if (p.dim != q.dim)
    throw Error(ErrCode::DimensionMismatch, "ambient dimensions differ");
  std::vector<Mono> pts;
  for (const auto& a : p.verts)
    for (const auto& b : q.verts) pts.push_back(mono_mul(a, b));
  return make_polytope(p.dim, std::move(pts));
}

Rat euclidean_volume(size_t dim, const std::vector<Mono>& pts_in, uint64_t seed) {
  if (dim == 0) return 0;
  std::vector<Mono> pts = pts_in;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < dim + 1) return 0;
  QMat diff;
  for (size_t i = 1; i < pts.size(); ++i)
    diff.push_back(vec_sub(to_q(pts[i]), to_q(pts[0])));
  if (rank_of(diff) < dim) return 0;
  std::vector<QVec> qp;
  for (const auto& p : pts) qp.push_back(to_q(p));
  Rat fd = fact(dim);
  return lower_hull_sum(qp, seed, [&](const std::vector<int>& cell) -> Rat {
    QMat e;
    for (size_t r = 1; r < cell.size(); ++r)
      e.push_back(vec_sub(qp[cell[r]], qp[cell[0]]));
    return abs(det_of(e)) / fd;
  });
}

Rat normalized_volume(const LatticePolytope& p) {
  return fact(p.dim) * euclidean_volume(p.dim, p.verts);
}

Rat volume_of_sum(const std::vector<const LatticePolytope*>& ps, uint64_t seed) {
  if (ps.empty()) return 0;
  size_t n = ps[0]->dim;
  for (const auto* p : ps) {
    if (p->dim != n)
      throw Error(ErrCode::DimensionMismatch, "ambient dimensions differ");
    if (p->verts.empty()) throw Error(ErrCode::Validation, "empty polytope");
  }
  if (n == 0) return 0;

  // coordinates each summand actually moves in
  std::vector<std::vector<int>> act(ps.size());
  for (size_t i = 0; i < ps.size(); ++i)
    for (size_t j = 0; j < n; ++j)
      for (const auto& v : ps[i]->verts)
        if (v[j] != ps[i]->verts[0][j]) {
          act[i].push_back((int)j);
          break;
        }

  std::vector<int> uf(n);
  for (size_t j = 0; j < n; ++j) uf[j] = (int)j;
  std::function<int(int)> find = [&](int x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  };
  std::vector<bool> covered(n, false);
  for (const auto& a : act)
    for (size_t r = 0; r < a.size(); ++r) {
      covered[a[r]] = true;
      if (r) uf[find(a[r])] = find(a[0]);
    }
  for (size_t j = 0; j < n; ++j)
    if (!covered[j]) return 0;  // the sum is flat in direction j

  // summands sharing coordinates form blocks; volume is the product over
  // blocks of the block volume
  std::map<int, std::vector<int>> comp_coords;
  for (size_t j = 0; j < n; ++j) comp_coords[find((int)j)].push_back((int)j);
  Rat total = 1;
  for (const auto& [root, coords] : comp_coords) {
    std::vector<std::vector<Mono>> blocks;
    QMat span;
    for (size_t i = 0; i < ps.size(); ++i) {
      if (act[i].empty() || find(act[i][0]) != root) continue;
      std::vector<Mono> proj;
      for (const auto& v : ps[i]->verts) {
        Mono q(coords.size());
        for (size_t j = 0; j < coords.size(); ++j) q[j] = v[coords[j]];
        proj.push_back(std::move(q));
      }
      std::sort(proj.begin(), proj.end());
      proj.erase(std::unique(proj.begin(), proj.end()), proj.end());
      for (size_t r = 1; r < proj.size(); ++r)
        span.push_back(vec_sub(to_q(proj[r]), to_q(proj[0])));
      blocks.push_back(std::move(proj));
    }
    if (rank_of(span) < coords.size()) return 0;
    if (blocks.size() == 1)
      total *= euclidean_volume(coords.size(), blocks[0], seed);
    else
      total *= cayley_sum_volume(coords.size(), blocks, seed);
  }
  return total;
}

Int mixed_volume_polarization(const std::vector<LatticePolytope>& ps, uint64_t seed) {
  size_t n = ps.size();
  if (n == 0) return 1;
  for (const auto& p : ps)
    if (p.dim != n)
      throw Error(ErrCode::DimensionMismatch,
                  "mixed volume needs n polytopes in n-space");
  if (n > 10)
    throw Error(ErrCode::Unsupported, "polarization engine limited to n <= 10");
  Rat acc = 0;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<const LatticePolytope*> sub;
    for (size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) sub.push_back(&ps[i]);
    Rat v = volume_of_sum(sub, seed);
    if ((n - sub.size()) % 2 == 0)
      acc += v;
    else
      acc -= v;
  }
  if (!rat_is_int(acc))
    throw Error(ErrCode::Internal, "polarization sum is not an integer");
  return acc.get_num();
}

std::vector<std::pair<ZVec, Rat>> facet_normals(size_t dim,
                                                const std::vector<Mono>& verts) {
  size_t m = verts.size();
  std::vector<std::pair<ZVec, Rat>> out;
  if (dim == 0 || m == 0) return out;
  std::vector<QVec> q;
  for (const auto& v : verts) q.push_back(to_q(v));
  if (dim == 1) {
    Rat lo = q[0][0], hi = q[0][0];
    for (const auto& v : q) {
      lo = std::min(lo, v[0]);
      hi = std::max(hi, v[0]);
    }
    out.push_back({ZVec{Int(1)}, lo});
    if (hi != lo) out.push_back({ZVec{Int(-1)}, -hi});
    return out;
  }
  if (m < dim) return out;

  // every facet is spanned by dim of the vertices; enumeration by subsets is
  // fine for the small instances this is used on
  double work = 1;
  for (size_t i = 0; i < dim; ++i) work *= (double)(m - i) / (double)(i + 1);
  if (work > 2e6)
    throw Error(ErrCode::Unsupported, "facet enumeration too large");
  std::set<std::pair<ZVec, Rat>> found;
  std::vector<size_t> idx(dim);
  for (size_t i = 0; i < dim; ++i) idx[i] = i;
  while (true) {
    QMat diff;
    for (size_t r = 1; r < dim; ++r)
      diff.push_back(vec_sub(q[idx[r]], q[idx[0]]));
    QMat ker = kernel_basis(diff);
    if (ker.size() == 1) {
      ZVec a = primitive_integer(ker[0]);
      Rat b = dot_zq(a, q[idx[0]]);
      bool lo = true, hi = true;
      for (const auto& v : q) {
        int s = sgn(dot_zq(a, v) - b);
        if (s < 0) lo = false;
        if (s > 0) hi = false;
        if (!lo && !hi) break;
      }
      if (lo) found.insert({a, b});
      if (hi) {
        ZVec na(a.size());
        for (size_t i = 0; i < a.size(); ++i) na[i] = -a[i];
        found.insert({na, -b});
      }
    }
    // next combination
    size_t i = dim;
    while (i > 0 && idx[i - 1] == m - dim + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (size_t j = i; j < dim; ++j) idx[j] = idx[j - 1] + 1;
  }
  out.assign(found.begin(), found.end());
  return out;
}

bool bihan_soprunov_reducible(const LatticePolytope& p1,
                              const std::vector<LatticePolytope>& qs) {
  if (qs.empty()) throw Error(ErrCode::Validation, "no polytopes given");
  size_t n = qs[0].dim;
  if (qs.size() != n)
    throw Error(ErrCode::DimensionMismatch,
                "support reduction needs n polytopes in n-space");
  if (p1.dim != n)
    throw Error(ErrCode::DimensionMismatch, "ambient dimensions differ");
  for (const auto& q : qs)
    if (q.dim != n)
      throw Error(ErrCode::DimensionMismatch, "ambient dimensions differ");
  if (p1.verts.empty()) throw Error(ErrCode::Validation, "empty polytope");
  for (const auto& v : p1.verts)
    if (!point_in_hull(v, qs[0].verts))
      throw Error(ErrCode::Validation, "not a subpolytope of the first factor");

  // full Minkowski sum and its proper faces
  std::vector<Mono> cloud{Mono(n, 0)};
  for (const auto& q : qs) {
    std::set<Mono> next;
    for (const auto& a : cloud)
      for (const auto& b : q.verts) next.insert(mono_mul(a, b));
    cloud.assign(next.begin(), next.end());
  }
  LatticePolytope s = make_polytope(n, std::move(cloud));
  {
    QMat diff;
    for (size_t i = 1; i < s.verts.size(); ++i)
      diff.push_back(vec_sub(to_q(s.verts[i]), to_q(s.verts[0])));
    if (rank_of(diff) < n) return true;  // total mixed volume is 0 either way
  }
  auto facets = facet_normals(n, s.verts);

  std::vector<std::set<int>> fsets;
  for (const auto& [a, b] : facets) {
    std::set<int> w;
    for (size_t i = 0; i < s.verts.size(); ++i)
      if (Rat(dot_zm(a, s.verts[i])) == b) w.insert((int)i);
    fsets.push_back(std::move(w));
  }
  // proper faces = closures of facet vertex sets under intersection
  std::set<std::set<int>> faces(fsets.begin(), fsets.end());
  std::queue<std::set<int>> work;
  for (const auto& f : faces) work.push(f);
  while (!work.empty()) {
    auto f = work.front();
    work.pop();
    for (const auto& g : fsets) {
      std::set<int> h;
      std::set_intersection(f.begin(), f.end(), g.begin(), g.end(),
                            std::inserter(h, h.begin()));
      if (!h.empty() && faces.insert(h).second) work.push(h);
    }
  }

  for (const auto& face : faces) {
    // interior representative of the face's normal cone
    ZVec u(n, Int(0));
    for (size_t fi = 0; fi < fsets.size(); ++fi) {
      if (!std::includes(fsets[fi].begin(), fsets[fi].end(), face.begin(),
                         face.end()))
        continue;
      for (size_t j = 0; j < n; ++j) u[j] += facets[fi].first[j];
    }
    QVec uq(n);
    for (size_t j = 0; j < n; ++j) uq[j] = Rat(u[j]);
    if (is_zero_vec(uq)) continue;
    ZVec up = primitive_integer(uq);

    // unimodular map sending u to a basis vector; drop that coordinate to
    // land in the quotient lattice along u
    ZMat col(n, ZVec(1));
    for (size_t j = 0; j < n; ++j) col[j][0] = up[j];
    auto snf = smith_normal_form(col);
    std::vector<LatticePolytope> faces_q;
    for (size_t i = 1; i < qs.size(); ++i) {
      Int best;
      bool first = true;
      for (const auto& v : qs[i].verts) {
        Int d = dot_zm(up, v);
        if (first || d < best) best = d, first = false;
      }
      std::vector<Mono> proj;
      for (const auto& v : qs[i].verts) {
        if (dot_zm(up, v) != best) continue;
        Mono y(n - 1);
        for (size_t r = 1; r < n; ++r) {
          Int acc = 0;
          for (size_t cidx = 0; cidx < n; ++cidx) acc += snf.u[r][cidx] * v[cidx];
          y[r - 1] = (int)acc.get_si();
        }
        proj.push_back(std::move(y));
      }
      faces_q.push_back(make_polytope(n - 1, std::move(proj)));
    }
    if (mixed_volume_polarization(faces_q) <= 0) continue;

    Int mp, mq;
    bool first = true;
    for (const auto& v : p1.verts) {
      Int d = dot_zm(up, v);
      if (first || d < mp) mp = d, first = false;
    }
    first = true;
    for (const auto& v : qs[0].verts) {
      Int d = dot_zm(up, v);
      if (first || d < mq) mq = d, first = false;
    }
    if (mp != mq) return false;  // p1 misses the face of Q_1 in direction u
  }
  return true;
}

}  // namespace grc
