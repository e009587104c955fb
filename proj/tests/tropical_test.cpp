#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "core/error.hpp"
#include "polytope/polytope.hpp"
#include "tropical/tropical.hpp"

using namespace grc;

namespace {

TropPoly tp(size_t nvars, std::initializer_list<std::pair<Mono, long>> terms) {
  TropPoly f;
  f.nvars = nvars;
  for (auto& [m, w] : terms) f.terms.push_back({m, Rat(w)});
  return f;
}

QMat qm(std::initializer_list<std::initializer_list<long>> rows) {
  QMat m;
  for (auto& r : rows) {
    QVec v;
    for (long x : r) v.push_back(Rat(x));
    m.push_back(v);
  }
  return m;
}

QVec qv(std::initializer_list<long> xs) {
  QVec v;
  for (long x : xs) v.push_back(Rat(x));
  return v;
}

ZMat zm(std::initializer_list<std::initializer_list<long>> rows) {
  ZMat m;
  for (auto& r : rows) {
    ZVec v;
    for (long x : r) v.push_back(Int(x));
    m.push_back(v);
  }
  return m;
}

LatticePolytope dilated_simplex(size_t n, long d) {
  std::vector<Mono> pts;
  pts.push_back(Mono(n, 0));
  for (size_t i = 0; i < n; ++i) {
    Mono m(n, 0);
    m[i] = (int)d;
    pts.push_back(m);
  }
  return make_polytope(n, pts);
}

// supports of the rewritten single-oscillator forced-pendulum square system
// in (u, v, w1, w2): two parameter rows plus the two coupling relations
std::vector<WeightedComplex> oscillator_complexes() {
  TropPoly fh = tp(4, {{{0, 0, 1, 0}, 0}, {{1, 0, 0, 0}, 0}, {{0, 1, 0, 0}, 0}, {{0, 0, 0, 0}, 0}});
  TropPoly gh = tp(4, {{{0, 0, 0, 1}, 0}, {{1, 0, 0, 0}, 0}, {{0, 1, 0, 0}, 0}, {{0, 0, 0, 0}, 0}});
  TropPoly hh = tp(4, {{{0, 0, 1, 0}, 0}, {{3, 0, 0, 0}, 0}, {{1, 2, 0, 0}, 0}});
  TropPoly rh = tp(4, {{{0, 1, 1, 0}, 0}, {{1, 0, 0, 1}, 0}});
  return {trop_hypersurface(fh), trop_hypersurface(gh), trop_hypersurface(hh),
          trop_hypersurface(rh)};
}

}  // namespace

TEST_CASE("make_cell canonicalizes and detects emptiness") {
  // x >= 1, x <= 0 in one variable: empty
  CHECK(!make_cell(1, {}, {}, qm({{-1}, {1}}), qv({-1, 0})));
  // 0 <= x <= 0 promotes the pair to an equation
  auto c = make_cell(1, {}, {}, qm({{-1}, {1}}), qv({0, 0}));
  REQUIRE(c);
  CHECK(c->dim == 0);
  CHECK(c->eq_a.size() == 1);
  CHECK(c->ineq_a.empty());
  CHECK(c->relint[0] == 0);
  // same square described twice with scaled redundant rows
  auto a = make_cell(2, {}, {}, qm({{1, 0}, {-1, 0}, {0, 1}, {0, -1}}),
                     qv({1, 0, 1, 0}));
  auto b = make_cell(2, {}, {},
                     qm({{2, 0}, {-3, 0}, {0, 5}, {0, -1}, {1, 1}}),
                     qv({2, 0, 5, 0, 2}));
  REQUIRE(a);
  REQUIRE(b);
  CHECK(cell_key(*a) == cell_key(*b));
  CHECK(a->dim == 2);
  CHECK(a->ineq_a.size() == 4);
  CHECK(cell_bounded(*a));
  // a ray is unbounded
  auto r = make_cell(2, qm({{0, 1}}), qv({0}), qm({{-1, 0}}), qv({0}));
  REQUIRE(r);
  CHECK(r->dim == 1);
  CHECK(!cell_bounded(*r));
  CHECK(cell_contains(*r, qv({3, 0})));
  CHECK(!cell_contains(*r, qv({-1, 0})));
  CHECK(!cell_contains(*r, qv({3, 1})));
}

TEST_CASE("make_cell finds implicit equalities through combinations") {
  // x + y <= 0, -x <= 0, -y <= 0 pins the origin
  auto c = make_cell(2, {}, {}, qm({{1, 1}, {-1, 0}, {0, -1}}), qv({0, 0, 0}));
  REQUIRE(c);
  CHECK(c->dim == 0);
  CHECK(c->relint == qv({0, 0}));
  CHECK(c->span_lat.empty());
}

TEST_CASE("tropical line in the plane") {
  TropPoly f = tp(2, {{{1, 0}, 0}, {{0, 1}, 0}, {{0, 0}, 0}});
  WeightedComplex wc = trop_hypersurface(f);
  CHECK(wc.dim == 1);
  REQUIRE(wc.cells.size() == 3);
  for (auto& [c, m] : wc.cells) {
    CHECK(m == 1);
    CHECK(c.dim == 1);
    CHECK(cell_contains(c, qv({0, 0})));
  }
  CHECK(is_balanced(wc));
  CHECK(min_attained_twice(f, qv({0, 0})));
  CHECK(min_attained_twice(f, qv({3, 0})));
  CHECK(!min_attained_twice(f, qv({1, 2})));
  std::vector<size_t> am;
  min_attained_twice(f, qv({0, 0}), &am);
  CHECK(am.size() == 3);
}

TEST_CASE("binomial-square support degenerates to a double line") {
  TropPoly f = tp(2, {{{2, 0}, 0}, {{1, 1}, 0}, {{0, 2}, 0}});
  WeightedComplex wc = trop_hypersurface(f);
  REQUIRE(wc.cells.size() == 1);
  CHECK(wc.cells[0].second == 2);
  CHECK(wc.cells[0].first.dim == 1);
  CHECK(wc.cells[0].first.ineq_a.empty());  // a full line, no boundary
  CHECK(is_balanced(wc));
}

TEST_CASE("single term has no hypersurface") {
  TropPoly f = tp(1, {{{3}, 0}});
  CHECK_THROWS_AS(trop_hypersurface(f), Error);
}

TEST_CASE("weights shift the breakpoints and the duality count holds") {
  // univariate supports: total multiplicity = lattice length of the segment
  TropPoly f = tp(1, {{{0}, 0}, {{1}, 0}, {{2}, 1}, {{3}, 3}});
  WeightedComplex wc = trop_hypersurface(f);
  Int total = 0;
  for (auto& [c, m] : wc.cells) {
    CHECK(c.dim == 0);
    total += m;
  }
  CHECK(total == 3);
  // all weights zero: a single point carries the whole length
  TropPoly g = tp(1, {{{0}, 0}, {{1}, 0}, {{2}, 0}, {{3}, 0}});
  WeightedComplex wg = trop_hypersurface(g);
  REQUIRE(wg.cells.size() == 1);
  CHECK(wg.cells[0].second == 3);
  CHECK(wg.cells[0].first.relint == qv({0}));
}

TEST_CASE("affine plane from a specialized coefficient") {
  // z - a t at a of weight zero: the term weights are 0 and 1
  TropPoly f = tp(3, {{{0, 0, 1}, 0}, {{0, 0, 0}, 1}});
  WeightedComplex wc = trop_hypersurface(f);
  REQUIRE(wc.cells.size() == 1);
  CHECK(wc.cells[0].second == 1);
  CHECK(wc.cells[0].first.dim == 2);
  CHECK(cell_contains(wc.cells[0].first, qv({5, -7, 1})));
  CHECK(!cell_contains(wc.cells[0].first, qv({0, 0, 0})));
  CHECK(is_balanced(wc));
}

TEST_CASE("balancing rejects a broken complex") {
  // keep only two of the three rays of the tropical line
  TropPoly f = tp(2, {{{1, 0}, 0}, {{0, 1}, 0}, {{0, 0}, 0}});
  WeightedComplex wc = trop_hypersurface(f);
  wc.cells.pop_back();
  CHECK(!is_balanced(wc));
  // doubling one multiplicity also breaks it
  WeightedComplex wc2 = trop_hypersurface(f);
  wc2.cells[0].second = 2;
  CHECK(!is_balanced(wc2));
}

TEST_CASE("stable intersection of two lines is one simple point") {
  TropPoly f = tp(2, {{{1, 0}, 0}, {{0, 1}, 0}, {{0, 0}, 0}});
  WeightedComplex l1 = trop_hypersurface(f);
  for (uint64_t seed : {0, 1, 2}) {
    Int n = intersection_number({l1, l1}, seed);
    CHECK(n == 1);
  }
  // translation invariance
  WeightedComplex l2 = complex_translate(l1, qv({3, -2}));
  CHECK(intersection_number({l1, l2}, 7) == 1);
  CHECK(intersection_number({l2, l2}, 7) == 1);
}

TEST_CASE("two fan conics meet with multiplicity four") {
  TropPoly f = tp(2, {{{2, 0}, 0}, {{0, 2}, 0}, {{1, 0}, 0}, {{0, 1}, 0}, {{0, 0}, 0}});
  WeightedComplex c = trop_hypersurface(f);
  REQUIRE(c.cells.size() == 3);
  for (auto& [cell, m] : c.cells) CHECK(m == 2);
  for (uint64_t seed : {0, 1, 2}) CHECK(intersection_number({c, c}, seed) == 4);
}

TEST_CASE("intersection number validates codimensions") {
  TropPoly f = tp(2, {{{1, 0}, 0}, {{0, 1}, 0}, {{0, 0}, 0}});
  WeightedComplex l = trop_hypersurface(f);
  CHECK_THROWS_AS(intersection_number({l}, 0), Error);
  CHECK_THROWS_AS(intersection_number({l, l, l}, 0), Error);
}

TEST_CASE("stable intersection of a complex with itself keeps balance") {
  TropPoly f = tp(3, {{{1, 0, 0}, 0}, {{0, 1, 0}, 0}, {{0, 0, 1}, 0}, {{0, 0, 0}, 0}});
  WeightedComplex s = trop_hypersurface(f);  // tropical plane in R^3
  CHECK(is_balanced(s));
  Rng rng(5);
  WeightedComplex cut = stable_intersection(s, s, rng);
  CHECK(cut.dim == 1);
  CHECK(is_balanced(cut));
  // cutting once more gives the expected degree
  CHECK(intersection_number({s, s, s}, 3) == 1);
}

TEST_CASE("tropical bezout numbers match the polarization engine") {
  for (long d = 1; d <= 3; ++d) {
    for (long e = 1; e <= 3; ++e) {
      std::vector<LatticePolytope> ps{dilated_simplex(2, d), dilated_simplex(2, e)};
      Int mv = mixed_volume_polarization(ps, 0);
      CHECK(mv == d * e);
      CHECK(mixed_volume_tropical(ps, 0) == mv);
      CHECK(mixed_volume_tropical(ps, 41) == mv);
    }
  }
}

TEST_CASE("mixed volume engines agree on a skew example") {
  std::vector<Mono> s1{{0, 0}, {2, 1}, {1, 2}};
  std::vector<Mono> s2{{0, 0}, {3, 0}, {0, 1}, {1, 1}};
  std::vector<LatticePolytope> ps{make_polytope(2, s1), make_polytope(2, s2)};
  Int mv = mixed_volume_polarization(ps, 0);
  CHECK(mixed_volume_tropical(ps, 0) == mv);
  CHECK(mixed_volume_tropical(ps, 17) == mv);
}

TEST_CASE("prevariety of two shifted lines") {
  TropPoly f = tp(2, {{{1, 0}, 0}, {{0, 1}, 0}, {{0, 0}, 0}});
  WeightedComplex l1 = trop_hypersurface(f);
  WeightedComplex l2 = complex_translate(l1, qv({2, 1}));
  Prevariety pv = prevariety({l1, l2});
  // the two vertices are generic: exactly one crossing point survives
  size_t zero_cells = 0;
  for (const Cell& c : pv.cells)
    if (c.dim == 0) ++zero_cells;
  CHECK(zero_cells == 1);
  CHECK(pv.cells.size() == 1);  // nothing overlaps along a ray
  CHECK(pv.bounded);
  // identical copies overlap along every ray
  Prevariety same = prevariety({l1, l1});
  size_t rays = 0;
  for (const Cell& c : same.cells)
    if (c.dim == 1) ++rays;
  CHECK(rays == 3);
  CHECK(!same.bounded);
}

TEST_CASE("transversality check spots a shared normal direction") {
  TropPoly f = tp(2, {{{1, 0}, 0}, {{0, 1}, 0}, {{0, 0}, 0}});
  WeightedComplex l1 = trop_hypersurface(f);
  TransversalReport bad = transversal_check({l1, l1});
  CHECK(!bad.ok);
  CHECK(!bad.witness.empty());
  WeightedComplex l2 = complex_translate(l1, qv({2, 1}));
  TransversalReport good = transversal_check({l1, l2});
  CHECK(good.ok);
}

TEST_CASE("star at a point keeps only the incident cones") {
  TropPoly f = tp(2, {{{1, 0}, 0}, {{0, 1}, 0}, {{0, 0}, 0}});
  WeightedComplex l = trop_hypersurface(f);
  WeightedComplex at_vertex = star_at(l, qv({0, 0}));
  CHECK(at_vertex.cells.size() == 3);
  CHECK(is_balanced(at_vertex));
  WeightedComplex on_ray = star_at(l, qv({4, 0}));
  REQUIRE(on_ray.cells.size() == 1);
  CHECK(on_ray.cells[0].first.ineq_a.empty());  // tangent cone is a full line
  CHECK(is_balanced(on_ray));
  WeightedComplex off = star_at(l, qv({1, 2}));
  CHECK(off.cells.empty());
}

TEST_CASE("linear transform scales multiplicities uniformly") {
  TropPoly f = tp(2, {{{1, 0}, 0}, {{0, 1}, 0}, {{0, 0}, 0}});
  WeightedComplex l = trop_hypersurface(f);
  WeightedComplex img = linear_transform(l, zm({{1, 1}, {0, 1}}), Int(3));
  CHECK(img.cells.size() == 3);
  for (auto& [c, m] : img.cells) CHECK(m == 3);
  CHECK(is_balanced(img));
  CHECK_THROWS_AS(linear_transform(l, zm({{1, 1}, {1, 1}}), Int(1)), Error);
}

TEST_CASE("monomial pullback along a degree-two cover") {
  // target: the line of w' - z + 1 in coordinates (z, w')
  TropPoly f = tp(2, {{{0, 1}, 0}, {{1, 0}, 0}, {{0, 0}, 0}});
  WeightedComplex target = trop_hypersurface(f);
  // source coordinates (x, w); z = x^2, w' = x w
  ZMat a = zm({{2, 0}, {1, 1}});
  WeightedComplex up = monomial_pullback(target, a);
  CHECK(up.dim == 1);
  CHECK(is_balanced(up));
  REQUIRE(up.cells.size() == 3);
  std::multiset<long> mults;
  Int tot = 0;
  for (auto& [c, m] : up.cells) {
    mults.insert((long)m.get_si());
    tot += m;
  }
  CHECK(mults == std::multiset<long>({1, 1, 2}));
  // the ray of direction (0,1) carries the doubled weight
  for (auto& [c, m] : up.cells) {
    if (m == 2) {
      CHECK(cell_contains(c, qv({0, 5})));
      CHECK(!cell_contains(c, qv({1, 1})));
    }
  }
}

TEST_CASE("oscillator system count via transversal complete intersection") {
  auto parts = oscillator_complexes();
  TransversalReport tr = transversal_check({parts[2], parts[3]});
  CHECK(tr.ok);
  for (auto& p : parts) CHECK(is_balanced(p));
  for (uint64_t seed : {0, 1, 2}) {
    CHECK(intersection_number(parts, seed) == 5);
  }
}

TEST_CASE("complex extension and weight bookkeeping") {
  TropPoly f = tp(2, {{{1, 0}, 0}, {{0, 1}, 0}, {{0, 0}, 0}});
  WeightedComplex l = trop_hypersurface(f);
  WeightedComplex ext = complex_extend(l, 1);
  CHECK(ext.nvars == 3);
  CHECK(ext.dim == 2);
  CHECK(is_balanced(ext));
  CHECK(total_weight(ext) == 3);
  for (auto& [c, m] : ext.cells) {
    CHECK(c.dim == 2);
    CHECK(c.span_lat.size() == 2);
  }
  // json serialization mentions every cell
  std::string js = complex_json(ext);
  CHECK(js.find("\"cells\"") != std::string::npos);
  CHECK(js.find("\"mult\":\"1\"") != std::string::npos);
}
