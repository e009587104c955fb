#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "core/error.hpp"
#include "matroid/matroid.hpp"
#include "tropical/tropical.hpp"

using namespace grc;

namespace {

ParamLinearForm pf(std::initializer_list<std::pair<size_t, long>> lin,
                   long c0 = 0) {
  ParamLinearForm f;
  f.c0 = Rat(c0);
  for (auto& [k, c] : lin) f.lin[k] = Rat(c);
  return f;
}

QVec qv(std::initializer_list<long> xs) {
  QVec v;
  for (long x : xs) v.push_back(Rat(x));
  return v;
}

std::vector<size_t> ix(std::initializer_list<size_t> xs) { return xs; }

// one generic linear form in three unknowns: kernel is a generic plane
LinForms u23_forms() {
  LinForms lf;
  lf.params = {"a1", "a2", "a3"};
  lf.ground = {"w1", "w2", "w3"};
  lf.rows = {{pf({{0, 1}}), pf({{1, 1}}), pf({{2, 1}})}};
  return lf;
}

// two generic forms in four unknowns: kernel is a generic 2-plane
LinForms u24_forms() {
  LinForms lf;
  lf.params = {"a1", "a2", "a3", "a4", "b1", "b2", "b3", "b4"};
  lf.ground = {"w1", "w2", "w3", "w4"};
  lf.rows = {{pf({{0, 1}}), pf({{1, 1}}), pf({{2, 1}}), pf({{3, 1}})},
             {pf({{4, 1}}), pf({{5, 1}}), pf({{6, 1}}), pf({{7, 1}})}};
  return lf;
}

// generic tropical hyperplane in n unknowns (constant term plus every unknown)
WeightedComplex generic_hyperplane(size_t n) {
  std::vector<Mono> supp{Mono(n, 0)};
  for (size_t i = 0; i < n; ++i) {
    Mono m(n, 0);
    m[i] = 1;
    supp.push_back(m);
  }
  return trop_hypersurface(trop_of_support(supp, n));
}

Matroid k4_matroid() {
  // graphic matroid of the complete graph on four vertices,
  // columns e01 e02 e03 e12 e13 e23
  Matroid m;
  m.ground = {"e01", "e02", "e03", "e12", "e13", "e23"};
  m.rank = 3;
  m.realization = {qv({1, 1, 1, 0, 0, 0}), qv({-1, 0, 0, 1, 1, 0}),
                   qv({0, -1, 0, -1, 0, 1}), qv({0, 0, -1, 0, -1, -1})};
  return m;
}

}  // namespace

TEST_CASE("one generic form gives the rank-2 matroid on three elements") {
  GenericMatroidInfo info;
  Matroid m = generic_matroid(u23_forms(), 0, &info);
  CHECK(m.rank == 2);
  CHECK(m.ground.size() == 3);
  CHECK(!matroid_has_loops(m));
  CHECK(m.bases.size() == 3);  // every pair
  CHECK(info.coeff_rank == 1);
  CHECK(info.plucker_support.size() == 3);
  CHECK(!info.symbolic);
  CHECK(plucker_certificate(u23_forms(), info.plucker_support, info.sample));

  auto circuits = matroid_circuits(m);
  REQUIRE(circuits.size() == 1);
  CHECK(circuits[0] == ix({0, 1, 2}));

  auto flats = matroid_flats(m);
  REQUIRE(flats.size() == 3);
  CHECK(flats[0].size() == 1);
  CHECK(flats[1].size() == 3);
  CHECK(flats[2].size() == 1);
}

TEST_CASE("certificate rejects a degenerate point and a wrong support") {
  GenericMatroidInfo info;
  generic_matroid(u23_forms(), 0, &info);
  std::map<std::string, Rat> bad = info.sample;
  bad["a2"] = 0;  // kills the second minor
  CHECK(!plucker_certificate(u23_forms(), info.plucker_support, bad));
  auto fewer = info.plucker_support;
  fewer.pop_back();
  CHECK(!plucker_certificate(u23_forms(), fewer, info.sample));
}

TEST_CASE("fan of the rank-2 matroid is the tropical plane") {
  Matroid m = generic_matroid(u23_forms(), 0);
  WeightedComplex fan = bergman_fan(m);
  CHECK(fan.nvars == 3);
  CHECK(fan.dim == 2);
  CHECK(fan.cells.size() == 3);
  CHECK(total_weight(fan) == 3);
  CHECK(is_balanced(fan));

  auto count_cells = [&](const QVec& p) {
    int c = 0;
    for (auto& [cell, mult] : fan.cells)
      if (cell_contains(cell, p)) ++c;
    return c;
  };
  CHECK(count_cells(qv({5, 0, 0})) == 1);  // one cone per direction
  CHECK(count_cells(qv({0, 0, 0})) == 3);  // origin on all of them
  CHECK(count_cells(qv({1, 2, 3})) == 0);  // minimum attained once
  CHECK(circuits_min_twice(m, qv({7, -1, -1})));
  CHECK(!circuits_min_twice(m, qv({1, 2, 3})));
}

TEST_CASE("two disjoint forms give the direct sum of two parallel pairs") {
  LinForms lf;
  lf.params = {"a1", "a2", "a3", "a4"};
  lf.ground = {"w1", "w2", "w3", "w4"};
  lf.rows = {{pf({{0, 1}}), pf({{1, 1}}), pf({}), pf({})},
             {pf({}), pf({}), pf({{2, 1}}), pf({{3, 1}})}};
  Matroid m = generic_matroid(lf, 0);
  CHECK(m.rank == 2);
  CHECK(!matroid_has_loops(m));
  std::set<std::vector<size_t>> bases(m.bases.begin(), m.bases.end());
  std::set<std::vector<size_t>> want{
      {0, 2}, {0, 3}, {1, 2}, {1, 3}};
  CHECK(bases == want);

  auto circuits = matroid_circuits(m);
  REQUIRE(circuits.size() == 2);
  CHECK(circuits[0] == ix({0, 1}));
  CHECK(circuits[1] == ix({2, 3}));

  WeightedComplex fan = bergman_fan(m);
  CHECK(fan.cells.size() == 2);  // two chains through the two parallel classes
  CHECK(is_balanced(fan));
  for (auto& [cell, mult] : fan.cells) CHECK(mult == 1);
}

TEST_CASE("full column rank leaves only loops and no fan") {
  LinForms lf;
  lf.params = {"a1", "a2", "a3", "a4"};
  lf.ground = {"w1", "w2"};
  lf.rows = {{pf({{0, 1}}), pf({{1, 1}})}, {pf({{2, 1}}), pf({{3, 1}})}};
  Matroid m = generic_matroid(lf, 0);
  CHECK(m.rank == 0);
  CHECK(matroid_has_loops(m));
  REQUIRE(m.bases.size() == 1);
  CHECK(m.bases[0].empty());
  CHECK_THROWS_AS(matroid_flats(m), Error);
  CHECK_THROWS_AS(bergman_fan(m), Error);
}

TEST_CASE("complete graph on four vertices: flats, circuits, fan") {
  Matroid m = k4_matroid();
  CHECK(matroid_rank_of(m, ix({0, 1, 2, 3, 4, 5})) == 3);
  CHECK(matroid_rank_of(m, ix({0, 1, 3})) == 2);  // triangle
  CHECK(!matroid_has_loops(m));

  auto flats = matroid_flats(m);
  REQUIRE(flats.size() == 4);
  CHECK(flats[0].size() == 1);
  CHECK(flats[1].size() == 6);
  CHECK(flats[2].size() == 7);  // four triangles and three matchings
  CHECK(flats[3].size() == 1);

  auto circuits = matroid_circuits(m);
  CHECK(circuits.size() == 7);
  int triangles = 0, quads = 0;
  for (auto& c : circuits) {
    if (c.size() == 3) ++triangles;
    if (c.size() == 4) ++quads;
  }
  CHECK(triangles == 4);
  CHECK(quads == 3);

  // circuit elimination: two circuits sharing an element contain a third
  // avoiding it
  for (size_t i = 0; i < circuits.size(); ++i) {
    for (size_t j = 0; j < circuits.size(); ++j) {
      if (i == j) continue;
      for (size_t e : circuits[i]) {
        if (!std::binary_search(circuits[j].begin(), circuits[j].end(), e))
          continue;
        std::vector<size_t> uni;
        std::set_union(circuits[i].begin(), circuits[i].end(),
                       circuits[j].begin(), circuits[j].end(),
                       std::back_inserter(uni));
        uni.erase(std::find(uni.begin(), uni.end(), e));
        bool found = false;
        for (auto& c : circuits)
          if (std::includes(uni.begin(), uni.end(), c.begin(), c.end()))
            found = true;
        CHECK(found);
      }
    }
  }

  WeightedComplex fan = bergman_fan(m);
  CHECK(fan.dim == 3);
  CHECK(fan.cells.size() == 18);  // each edge lies on three rank-2 flats
  CHECK(is_balanced(fan));
  for (auto& [cell, mult] : fan.cells)
    CHECK(circuits_min_twice(m, cell.relint));
}

TEST_CASE("free matroid fan fills space") {
  LinForms lf;
  lf.params = {"a1"};
  lf.ground = {"w1", "w2", "w3"};
  lf.rows = {{pf({}), pf({}), pf({})}};  // the zero form constrains nothing
  Matroid m = generic_matroid(lf, 0);
  CHECK(m.rank == 3);
  CHECK(m.bases.size() == 1);
  CHECK(matroid_circuits(m).empty());
  WeightedComplex fan = bergman_fan(m);
  CHECK(fan.dim == 3);
  CHECK(fan.cells.size() == 6);  // one cone per ordering
  CHECK(is_balanced(fan));
  CHECK(circuits_min_twice(m, qv({9, -4, 17})));
}

TEST_CASE("generic 2-plane in 4-space has degree one") {
  Matroid m = generic_matroid(u24_forms(), 0);
  CHECK(m.rank == 2);
  CHECK(m.bases.size() == 6);
  WeightedComplex fan = bergman_fan(m);
  CHECK(fan.cells.size() == 4);
  CHECK(is_balanced(fan));
  std::vector<WeightedComplex> parts{generic_hyperplane(4),
                                     generic_hyperplane(4)};
  for (uint64_t seed : {0, 1, 2})
    CHECK(matroidal_degree(m, parts, ix({0, 1, 2, 3}), seed) == 1);
}

TEST_CASE("tropical plane meets two hyperplanes once") {
  Matroid m = generic_matroid(u23_forms(), 0);
  std::vector<WeightedComplex> parts{generic_hyperplane(3),
                                     generic_hyperplane(3)};
  CHECK(matroidal_degree(m, parts, ix({0, 1, 2}), 0) == 1);
}

TEST_CASE("fan placed on trailing coordinates keeps leading ones free") {
  Matroid m = generic_matroid(u23_forms(), 0);
  WeightedComplex fan = bergman_fan(m);
  WeightedComplex up = complex_embed(fan, 5, ix({2, 3, 4}));
  CHECK(up.nvars == 5);
  CHECK(up.dim == 4);
  CHECK(is_balanced(up));
}

TEST_CASE("seeds agree on the generic matroid") {
  GenericMatroidInfo i0, i7;
  Matroid m0 = generic_matroid(u24_forms(), 0, &i0);
  Matroid m7 = generic_matroid(u24_forms(), 7, &i7);
  CHECK(m0.bases == m7.bases);
  CHECK(i0.plucker_support == i7.plucker_support);
  CHECK(i0.sample != i7.sample);  // genuinely different draws
}

TEST_CASE("symbolic minors spot identically dependent columns") {
  LinForms lf;
  lf.params = {"a1", "a2"};
  lf.ground = {"w1", "w2", "w3"};
  // first two columns are the same form, third is independent
  lf.rows = {{pf({{0, 1}}), pf({{0, 1}}), pf({{1, 1}})},
             {pf({{0, 2}}), pf({{0, 2}}), pf({{0, 1}})}};
  auto [rc, supp] = symbolic_plucker_support(lf);
  CHECK(rc == 2);
  std::set<std::vector<size_t>> s(supp.begin(), supp.end());
  std::set<std::vector<size_t>> want{{0, 2}, {1, 2}};
  CHECK(s == want);

  auto [rc3, supp3] = symbolic_plucker_support(u23_forms());
  CHECK(rc3 == 1);
  CHECK(supp3.size() == 3);
}

TEST_CASE("coefficients with powers of t are refused") {
  LinForms lf = u23_forms();
  lf.rows[0][1].t_shift = 1;
  CHECK_THROWS_AS(generic_matroid(lf, 0), Error);
}

TEST_CASE("matroid serialization lists named bases") {
  Matroid m = generic_matroid(u23_forms(), 0);
  std::string js = matroid_json(m);
  CHECK(js.find("\"rank\":2") != std::string::npos);
  CHECK(js.find("\"loops\":false") != std::string::npos);
  CHECK(js.find("[\"w1\",\"w2\"]") != std::string::npos);
  CHECK(js.find("\"w3\"") != std::string::npos);
}
