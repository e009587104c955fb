#include "core/linalg.hpp"

#include <algorithm>

#include "core/error.hpp"

namespace grc {

namespace {

// Clear denominators row by row; keeps row spans and kernels intact.
ZMat integerize_rows(const QMat& m) {
  ZMat out;
  out.reserve(m.size());
  for (const auto& row : m) {
    Int l = 1;
    for (const auto& x : row) l = lcm(l, x.get_den());
    ZVec zrow;
    zrow.reserve(row.size());
    for (const auto& x : row) zrow.push_back(Int(x.get_num() * (l / x.get_den())));
    out.push_back(std::move(zrow));
  }
  return out;
}

// Fraction-free elimination with full pivoting. Returns {rank, det_of_leading},
// where det_of_leading is the determinant when the matrix is square of full rank.
std::pair<size_t, Int> bareiss(ZMat a) {
  const size_t rows = a.size();
  const size_t cols = rows ? a[0].size() : 0;
  Int prev = 1;
  int sign = 1;
  size_t k = 0;
  for (; k < std::min(rows, cols); ++k) {
    size_t pi = rows, pj = cols;
    for (size_t i = k; i < rows && pi == rows; ++i)
      for (size_t j = k; j < cols; ++j)
        if (a[i][j] != 0) { pi = i; pj = j; break; }
    if (pi == rows) break;
    if (pi != k) { std::swap(a[pi], a[k]); sign = -sign; }
    if (pj != k) {
      for (size_t i = 0; i < rows; ++i) std::swap(a[i][pj], a[i][k]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < rows; ++i) {
      for (size_t j = k + 1; j < cols; ++j) {
        Int num = a[k][k] * a[i][j] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  Int det = (k == rows && rows == cols && rows > 0) ? Int(sign * prev) : Int(0);
  if (rows == 0) det = 1;
  return {k, det};
}

}  // namespace

size_t rank_of(const ZMat& m) { return bareiss(m).first; }

size_t rank_of(const QMat& m) { return bareiss(integerize_rows(m)).first; }

Rat det_of(const QMat& m) {
  const size_t n = m.size();
  if (n == 0) return 1;
  if (m[0].size() != n) throw Error(ErrCode::DimensionMismatch, "det of non-square matrix");
  // Track the row scalings used to clear denominators.
  Rat scale = 1;
  for (const auto& row : m) {
    Int l = 1;
    for (const auto& x : row) l = lcm(l, x.get_den());
    scale *= Rat(l);
  }
  Int d = bareiss(integerize_rows(m)).second;
  return Rat(d) / scale;
}

QMat transpose(const QMat& m) {
  if (m.empty()) return {};
  QMat out(m[0].size(), QVec(m.size()));
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < m[i].size(); ++j) out[j][i] = m[i][j];
  return out;
}

QVec mat_vec(const QMat& m, const QVec& v) {
  QVec out(m.size(), Rat(0));
  for (size_t i = 0; i < m.size(); ++i) {
    if (m[i].size() != v.size()) throw Error(ErrCode::DimensionMismatch, "mat_vec shape");
    for (size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
  }
  return out;
}

QMat mat_mul(const QMat& a, const QMat& b) {
  if (a.empty() || b.empty()) return {};
  const size_t n = a.size(), k = b.size(), m = b[0].size();
  QMat out(n, QVec(m, Rat(0)));
  for (size_t i = 0; i < n; ++i) {
    if (a[i].size() != k) throw Error(ErrCode::DimensionMismatch, "mat_mul shape");
    for (size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (size_t j = 0; j < m; ++j) out[i][j] += a[i][l] * b[l][j];
    }
  }
  return out;
}

std::vector<size_t> rref(QMat& m) {
  std::vector<size_t> pivots;
  if (m.empty()) return pivots;
  const size_t rows = m.size(), cols = m[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    Rat inv = 1 / m[r][c];
    for (size_t j = c; j < cols; ++j) m[r][j] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rat f = m[i][c];
      for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

QMat kernel_basis(const QMat& m) {
  if (m.empty()) return {};
  const size_t cols = m[0].size();
  QMat a = m;
  auto pivots = rref(a);
  std::vector<bool> is_pivot(cols, false);
  for (size_t c : pivots) is_pivot[c] = true;
  QMat basis;
  for (size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    QVec v(cols, Rat(0));
    v[f] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<QVec> solve_linear(const QMat& m, const QVec& rhs) {
  if (m.size() != rhs.size()) throw Error(ErrCode::DimensionMismatch, "solve shape");
  if (m.empty()) return QVec{};
  const size_t cols = m[0].size();
  QMat aug = m;
  for (size_t i = 0; i < m.size(); ++i) aug[i].push_back(rhs[i]);
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
  QVec x(cols, Rat(0));
  for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug[r][cols];
  return x;
}

std::optional<QMat> mat_inverse(const QMat& m) {
  const size_t n = m.size();
  if (n == 0) return QMat{};
  QMat aug = m;
  for (size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw Error(ErrCode::DimensionMismatch, "inverse of non-square");
    for (size_t j = 0; j < n; ++j) aug[i].push_back(i == j ? Rat(1) : Rat(0));
  }
  auto pivots = rref(aug);
  if (pivots.size() != n || pivots.back() >= n) return std::nullopt;
  QMat inv(n, QVec(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

SmithResult smith_normal_form(ZMat a) {
  const size_t rows = a.size();
  const size_t cols = rows ? a[0].size() : 0;
  SmithResult res;
  auto ident = [](size_t n) {
    ZMat m(n, ZVec(n, Int(0)));
    for (size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
  };
  res.u = ident(rows);
  res.v = ident(cols);
  res.vinv = ident(cols);

  auto row_swap = [&](size_t i, size_t j) {
    std::swap(a[i], a[j]);
    std::swap(res.u[i], res.u[j]);
  };
  auto row_add = [&](size_t i, size_t j, const Int& c) {  // row i += c * row j
    for (size_t k = 0; k < cols; ++k) a[i][k] += c * a[j][k];
    for (size_t k = 0; k < rows; ++k) res.u[i][k] += c * res.u[j][k];
  };
  auto col_swap = [&](size_t i, size_t j) {
    for (size_t k = 0; k < rows; ++k) std::swap(a[k][i], a[k][j]);
    for (size_t k = 0; k < cols; ++k) std::swap(res.v[k][i], res.v[k][j]);
    std::swap(res.vinv[i], res.vinv[j]);
  };
  auto col_add = [&](size_t i, size_t j, const Int& c) {  // col i += c * col j
    for (size_t k = 0; k < rows; ++k) a[k][i] += c * a[k][j];
    for (size_t k = 0; k < cols; ++k) res.v[k][i] += c * res.v[k][j];
    for (size_t k = 0; k < cols; ++k) res.vinv[j][k] -= c * res.vinv[i][k];
  };
  auto row_negate = [&](size_t i) {
    for (size_t k = 0; k < cols; ++k) a[i][k] = -a[i][k];
    for (size_t k = 0; k < rows; ++k) res.u[i][k] = -res.u[i][k];
  };

  size_t t = 0;
  const size_t mn = std::min(rows, cols);
  while (t < mn) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    size_t pi = rows, pj = cols;
    for (size_t i = t; i < rows; ++i)
      for (size_t j = t; j < cols; ++j) {
        if (a[i][j] == 0) continue;
        if (pi == rows || cmp(abs(a[i][j]), abs(a[pi][pj])) < 0) { pi = i; pj = j; }
      }
    if (pi == rows) break;
    if (pi != t) row_swap(pi, t);
    if (pj != t) col_swap(pj, t);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
        row_add(i, t, -q);
        if (a[i][t] != 0) { row_swap(i, t); clean = false; }
      }
      for (size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
        col_add(j, t, -q);
        if (a[t][j] != 0) { col_swap(j, t); clean = false; }
      }
      if (clean) {
        // Divisibility of the rest of the block by the pivot.
        for (size_t i = t + 1; i < rows && clean; ++i)
          for (size_t j = t + 1; j < cols && clean; ++j)
            if (a[i][j] % a[t][t] != 0) {
              row_add(t, i, 1);
              clean = false;
            }
      }
    }
    if (a[t][t] < 0) row_negate(t);
    ++t;
  }
  res.rank = t;
  res.divisors.assign(mn, Int(0));
  for (size_t i = 0; i < t; ++i) res.divisors[i] = a[i][i];
  return res;
}

Int lattice_index_of_rows(const ZMat& gens, size_t n) {
  for (const auto& r : gens)
    if (r.size() != n) throw Error(ErrCode::DimensionMismatch, "lattice generator width");
  auto snf = smith_normal_form(gens);
  if (snf.rank != n)
    throw Error(ErrCode::RankDeficient, "lattice does not have full rank");
  Int idx = 1;
  for (size_t i = 0; i < n; ++i) idx *= snf.divisors[i];
  return idx;
}

Int lattice_index(const ZMat& gen_a, const ZMat& gen_b, size_t n) {
  ZMat stacked = gen_a;
  stacked.insert(stacked.end(), gen_b.begin(), gen_b.end());
  return lattice_index_of_rows(stacked, n);
}

ZMat saturated_kernel_lattice(const QMat& m) {
  if (m.empty()) throw Error(ErrCode::DimensionMismatch, "kernel of empty matrix");
  const size_t n = m[0].size();
  auto snf = smith_normal_form(integerize_rows(m));
  // x = V y solves A x = 0 exactly when the pivot coordinates of y vanish,
  // so the trailing columns of V are a basis of the saturated kernel.
  ZMat out;
  for (size_t j = snf.rank; j < n; ++j) {
    ZVec col(n);
    for (size_t i = 0; i < n; ++i) col[i] = snf.v[i][j];
    out.push_back(std::move(col));
  }
  return out;
}

ZMat saturated_row_lattice(const QMat& m) {
  if (m.empty()) return {};
  const size_t n = m[0].size();
  QMat ker = kernel_basis(m);
  if (ker.empty()) {
    ZMat id(n, ZVec(n, Int(0)));
    for (size_t i = 0; i < n; ++i) id[i][i] = 1;
    return id;
  }
  return saturated_kernel_lattice(ker);
}

ZVec quotient_generator(const ZMat& lat_face, const ZMat& lat_cell) {
  const size_t p = lat_cell.size();
  if (lat_face.size() + 1 != p)
    throw Error(ErrCode::DimensionMismatch, "quotient rank is not one");
  if (p == 1) return lat_cell[0];
  const size_t n = lat_cell[0].size();
  QMat cell_t(n, QVec(p));
  for (size_t i = 0; i < p; ++i)
    for (size_t j = 0; j < n; ++j) cell_t[j][i] = Rat(lat_cell[i][j]);
  // Face vectors in cell coordinates; integral because both lattices are saturated.
  ZMat coords;
  for (const auto& f : lat_face) {
    QVec rhs(n);
    for (size_t j = 0; j < n; ++j) rhs[j] = Rat(f[j]);
    auto x = solve_linear(cell_t, rhs);
    if (!x) throw Error(ErrCode::Internal, "face vector outside cell span");
    ZVec zx(p);
    for (size_t i = 0; i < p; ++i) {
      if (!rat_is_int((*x)[i]))
        throw Error(ErrCode::Internal, "face lattice not saturated in cell lattice");
      zx[i] = (*x)[i].get_num();
    }
    coords.push_back(std::move(zx));
  }
  auto snf = smith_normal_form(coords);
  if (snf.rank != p - 1)
    throw Error(ErrCode::RankDeficient, "face lattice rank too small");
  for (size_t i = 0; i < snf.rank; ++i)
    if (snf.divisors[i] != 1)
      throw Error(ErrCode::Internal, "face lattice not saturated in cell lattice");
  // Rows of coords span the first p-1 rows of vinv; the last row completes
  // a basis of Z^p, so it maps to a generator of the quotient.
  ZVec u(n, Int(0));
  for (size_t i = 0; i < p; ++i)
    for (size_t j = 0; j < n; ++j) u[j] += snf.vinv[p - 1][i] * lat_cell[i][j];
  return u;
}

}  // namespace grc
