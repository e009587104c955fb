#include "oracle/oracle.hpp"

#include <algorithm>
#include <set>

#include "core/error.hpp"

namespace grc {

namespace {

// terms sorted descending, so the leading term sits in front
struct GP {
  std::vector<std::pair<Mono, Rat>> t;
  bool zero() const { return t.empty(); }
  const Mono& lm() const { return t.front().first; }
  const Rat& lc() const { return t.front().second; }
};

bool term_before(const std::pair<Mono, Rat>& a, const std::pair<Mono, Rat>& b) {
  return degrevlex_less(b.first, a.first);
}

GP to_gp(const MPoly& f) {
  GP g;
  for (const auto& [m, c] : f.terms()) {
    for (int e : m)
      if (e < 0)
        throw Error(ErrCode::Validation, "basis oracle needs nonnegative exponents");
    g.t.push_back({m, c});
  }
  std::sort(g.t.begin(), g.t.end(), term_before);
  return g;
}

MPoly to_mpoly(const GP& g, size_t nvars) {
  MPoly f(nvars);
  for (const auto& [m, c] : g.t) f.add_term(m, c);
  return f;
}

void make_monic(GP& g) {
  if (g.zero()) return;
  Rat lc = g.lc();
  for (auto& [m, c] : g.t) c /= lc;
}

bool m_divides(const Mono& a, const Mono& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Mono m_sub(const Mono& b, const Mono& a) {
  Mono r(b.size());
  for (size_t i = 0; i < b.size(); ++i) r[i] = b[i] - a[i];
  return r;
}

Mono m_lcm(const Mono& a, const Mono& b) {
  Mono r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

bool m_coprime(const Mono& a, const Mono& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > 0 && b[i] > 0) return false;
  return true;
}

// f - c * x^m * g, both inputs sorted, result sorted
GP sub_mul(const GP& f, const Rat& c, const Mono& m, const GP& g) {
  GP out;
  out.t.reserve(f.t.size() + g.t.size());
  size_t i = 0, j = 0;
  while (i < f.t.size() || j < g.t.size()) {
    if (j == g.t.size()) {
      out.t.push_back(f.t[i++]);
      continue;
    }
    Mono gm = mono_mul(g.t[j].first, m);
    if (i == f.t.size()) {
      Rat v = -Rat(c * g.t[j].second);
      if (v != 0) out.t.push_back({gm, v});
      ++j;
      continue;
    }
    if (f.t[i].first == gm) {
      Rat v = f.t[i].second - Rat(c * g.t[j].second);
      if (v != 0) out.t.push_back({gm, v});
      ++i;
      ++j;
    } else if (degrevlex_less(gm, f.t[i].first)) {
      out.t.push_back(f.t[i++]);
    } else {
      Rat v = -Rat(c * g.t[j].second);
      if (v != 0) out.t.push_back({gm, v});
      ++j;
    }
  }
  return out;
}

GP reduce_full(GP f, const std::vector<GP>& basis,
               const std::vector<bool>* skip = nullptr) {
  GP rem;
  while (!f.zero()) {
    bool hit = false;
    for (size_t k = 0; k < basis.size(); ++k) {
      if (skip && (*skip)[k]) continue;
      if (basis[k].zero()) continue;
      if (!m_divides(basis[k].lm(), f.lm())) continue;
      Rat c = f.lc() / basis[k].lc();
      f = sub_mul(f, c, m_sub(f.lm(), basis[k].lm()), basis[k]);
      hit = true;
      break;
    }
    if (!hit) {
      rem.t.push_back(f.t.front());
      f.t.erase(f.t.begin());
    }
  }
  return rem;
}

std::vector<GP> buchberger(std::vector<GP> basis) {
  for (GP& g : basis) make_monic(g);
  struct Pair {
    size_t i, j;
    Mono lcm;
    int deg;
  };
  std::vector<Pair> pending;
  std::set<std::pair<size_t, size_t>> open;
  auto push_pairs = [&](size_t k) {
    for (size_t i = 0; i < k; ++i) {
      Pair p{i, k, m_lcm(basis[i].lm(), basis[k].lm()), 0};
      p.deg = total_degree(p.lcm);
      pending.push_back(p);
      open.insert({i, k});
    }
  };
  for (size_t k = 0; k < basis.size(); ++k) push_pairs(k);
  while (!pending.empty()) {
    size_t best = 0;
    for (size_t i = 1; i < pending.size(); ++i) {
      if (pending[i].deg < pending[best].deg ||
          (pending[i].deg == pending[best].deg &&
           degrevlex_less(pending[i].lcm, pending[best].lcm)))
        best = i;
    }
    Pair p = pending[best];
    pending.erase(pending.begin() + best);
    open.erase({p.i, p.j});
    if (m_coprime(basis[p.i].lm(), basis[p.j].lm())) continue;
    bool chained = false;
    for (size_t k = 0; k < basis.size() && !chained; ++k) {
      if (k == p.i || k == p.j) continue;
      if (!m_divides(basis[k].lm(), p.lcm)) continue;
      auto a = std::minmax(p.i, k), b = std::minmax(p.j, k);
      if (!open.count({a.first, a.second}) && !open.count({b.first, b.second}))
        chained = true;
    }
    if (chained) continue;
    GP s = sub_mul(GP{}, Rat(1), m_sub(p.lcm, basis[p.i].lm()), basis[p.i]);
    for (auto& [m, c] : s.t) c = -c;  // s = x^(lcm-lm_i) * f_i
    s = sub_mul(s, Rat(1), m_sub(p.lcm, basis[p.j].lm()), basis[p.j]);
    GP r = reduce_full(std::move(s), basis);
    if (r.zero()) continue;
    make_monic(r);
    basis.push_back(std::move(r));
    push_pairs(basis.size() - 1);
  }

  // minimal: drop members whose leading monomial another one divides
  std::vector<bool> drop(basis.size(), false);
  for (size_t i = 0; i < basis.size(); ++i) {
    for (size_t j = 0; j < basis.size() && !drop[i]; ++j) {
      if (i == j || drop[j]) continue;
      if (m_divides(basis[j].lm(), basis[i].lm()) &&
          (basis[j].lm() != basis[i].lm() || j < i))
        drop[i] = true;
    }
  }
  // inter-reduce the survivors
  std::vector<GP> out;
  for (size_t i = 0; i < basis.size(); ++i) {
    if (drop[i]) continue;
    std::vector<bool> skip = drop;
    skip[i] = true;
    GP r = reduce_full(basis[i], basis, &skip);
    make_monic(r);
    out.push_back(std::move(r));
  }
  std::sort(out.begin(), out.end(),
            [](const GP& a, const GP& b) { return degrevlex_less(a.lm(), b.lm()); });
  return out;
}

std::vector<GP> gp_inputs(const std::vector<MPoly>& gens, size_t* nvars) {
  if (gens.empty())
    throw Error(ErrCode::Validation, "no generators");
  size_t nv = gens.front().nvars();
  std::vector<GP> basis;
  for (const MPoly& f : gens) {
    if (f.nvars() != nv)
      throw Error(ErrCode::DimensionMismatch, "mixed variable counts");
    GP g = to_gp(f);
    if (!g.zero()) basis.push_back(std::move(g));
  }
  *nvars = nv;
  return basis;
}

}  // namespace

std::vector<MPoly> groebner_basis(const std::vector<MPoly>& gens) {
  size_t nv = 0;
  std::vector<GP> basis = gp_inputs(gens, &nv);
  if (basis.empty()) return {};
  basis = buchberger(std::move(basis));
  std::vector<MPoly> out;
  for (const GP& g : basis) out.push_back(to_mpoly(g, nv));
  return out;
}

MPoly normal_form(const MPoly& f, const std::vector<MPoly>& gb) {
  std::vector<GP> basis;
  for (const MPoly& g : gb) {
    GP gg = to_gp(g);
    if (!gg.zero()) basis.push_back(std::move(gg));
  }
  return to_mpoly(reduce_full(to_gp(f), basis), f.nvars());
}

std::optional<Int> torus_root_count(const std::vector<MPoly>& polys) {
  if (polys.empty())
    throw Error(ErrCode::Validation, "no equations");
  size_t n = polys.front().nvars();
  if (n == 0)
    throw Error(ErrCode::Validation, "no unknowns");
  // clear denominators monomial-wise, then add u * x1...xn = 1
  std::vector<GP> basis;
  for (const MPoly& f : polys) {
    if (f.nvars() != n)
      throw Error(ErrCode::DimensionMismatch, "mixed variable counts");
    if (f.is_zero()) continue;
    Mono shift(n, 0);
    bool first = true;
    for (const auto& [m, c] : f.terms()) {
      for (size_t i = 0; i < n; ++i)
        shift[i] = first ? m[i] : std::min(shift[i], m[i]);
      first = false;
    }
    GP g;
    for (const auto& [m, c] : f.terms()) {
      Mono e(n + 1, 0);
      for (size_t i = 0; i < n; ++i) e[i] = m[i] - shift[i];
      g.t.push_back({e, c});
    }
    std::sort(g.t.begin(), g.t.end(), term_before);
    basis.push_back(std::move(g));
  }
  GP sat;
  Mono u(n + 1, 1);
  sat.t.push_back({u, Rat(1)});
  sat.t.push_back({Mono(n + 1, 0), Rat(-1)});
  std::sort(sat.t.begin(), sat.t.end(), term_before);
  basis.push_back(std::move(sat));

  std::vector<GP> gb = buchberger(std::move(basis));
  for (const GP& g : gb)
    if (total_degree(g.lm()) == 0) return Int(0);

  std::vector<int> bound(n + 1, -1);
  for (const GP& g : gb) {
    const Mono& m = g.lm();
    int nz = -1;
    bool pure = true;
    for (size_t i = 0; i <= n; ++i) {
      if (m[i] == 0) continue;
      if (nz >= 0) pure = false;
      nz = int(i);
    }
    if (pure && nz >= 0)
      bound[nz] = bound[nz] < 0 ? m[nz] : std::min(bound[nz], m[nz]);
  }
  for (int b : bound)
    if (b < 0) return std::nullopt;

  // walk the box under the pure-power bounds, skip leading-term multiples
  std::vector<Mono> lms;
  for (const GP& g : gb) lms.push_back(g.lm());
  Int count = 0;
  Mono e(n + 1, 0);
  while (true) {
    bool standard = true;
    for (const Mono& m : lms)
      if (m_divides(m, e)) {
        standard = false;
        break;
      }
    if (standard) ++count;
    size_t i = 0;
    while (i <= n) {
      if (++e[i] < bound[i]) break;
      e[i] = 0;
      ++i;
    }
    if (i > n) break;
  }
  return count;
}

long ideal_dimension(const std::vector<MPoly>& gens) {
  size_t nv = 0;
  std::vector<GP> basis = gp_inputs(gens, &nv);
  if (basis.empty()) return long(nv);
  std::vector<GP> gb = buchberger(std::move(basis));
  std::vector<uint64_t> masks;
  for (const GP& g : gb) {
    if (total_degree(g.lm()) == 0) return -1;
    uint64_t mask = 0;
    for (size_t i = 0; i < nv; ++i)
      if (g.lm()[i] > 0) mask |= 1ull << i;
    masks.push_back(mask);
  }
  for (size_t size = nv + 1; size-- > 0;) {
    // any variable set of this size meeting no leading support?
    std::vector<size_t> pick(size);
    for (size_t i = 0; i < size; ++i) pick[i] = i;
    while (true) {
      uint64_t s = 0;
      for (size_t v : pick) s |= 1ull << v;
      bool free_set = true;
      for (uint64_t m : masks)
        if ((m & ~s) == 0) {
          free_set = false;
          break;
        }
      if (free_set) return long(size);
      if (size == 0) break;
      size_t i = size;
      while (i > 0 && pick[i - 1] == nv - size + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  throw Error(ErrCode::Internal, "dimension search fell through");
}

}  // namespace grc
