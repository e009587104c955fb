#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/error.hpp"
#include "core/rng.hpp"
#include "polytope/polytope.hpp"

using namespace grc;

namespace {

LatticePolytope mk(size_t d, std::vector<Mono> pts) {
  return make_polytope(d, std::move(pts));
}

// all pairwise vertex sums, for cross-checking the Cayley route against a
// plain triangulation of the summed cloud
std::vector<Mono> sum_cloud(const std::vector<LatticePolytope>& ps) {
  std::vector<Mono> cloud{Mono(ps[0].dim, 0)};
  for (const auto& p : ps) {
    std::vector<Mono> next;
    for (const auto& a : cloud)
      for (const auto& b : p.verts) next.push_back(mono_mul(a, b));
    cloud = std::move(next);
  }
  return cloud;
}

LatticePolytope random_poly(Rng& rng, size_t d, size_t npts) {
  std::vector<Mono> pts;
  for (size_t i = 0; i < npts; ++i) {
    Mono m(d);
    for (auto& x : m) x = (int)rng.uniform(-2, 3);
    pts.push_back(std::move(m));
  }
  return make_polytope(d, std::move(pts));
}

}  // namespace

TEST_CASE("newton polytope") {
  // x + y + 1: all three exponents are vertices
  MPoly f = MPoly::variable(2, 0) + MPoly::variable(2, 1) + MPoly::constant(2, 1);
  auto p = newton_polytope(f);
  CHECK(p.verts == std::vector<Mono>{{0, 0}, {0, 1}, {1, 0}});

  // x^2 + x + 1: the middle point is dropped
  MPoly g = MPoly::variable(1, 0).pow(2) + MPoly::variable(1, 0) +
            MPoly::constant(1, 1);
  CHECK(newton_polytope(g).verts == std::vector<Mono>{{0}, {2}});

  // w - u(u^2 + v^2) in (u, v, w): three vertices
  MPoly u = MPoly::variable(3, 0), v = MPoly::variable(3, 1),
        w = MPoly::variable(3, 2);
  auto h = newton_polytope(w - u * (u * u + v * v));
  CHECK(h.verts == std::vector<Mono>{{0, 0, 1}, {1, 2, 0}, {3, 0, 0}});

  CHECK_THROWS_AS(newton_polytope(MPoly(2)), Error);
}

TEST_CASE("minkowski sum") {
  auto p = mk(2, {{0, 0}, {1, 0}, {0, 1}});
  auto pt = mk(2, {{3, 5}});
  auto shifted = minkowski_sum(p, pt);
  CHECK(shifted.verts == std::vector<Mono>{{3, 5}, {3, 6}, {4, 5}});

  auto sx = mk(2, {{0, 0}, {1, 0}});
  auto sy = mk(2, {{0, 0}, {0, 1}});
  CHECK(minkowski_sum(sx, sy).verts ==
        std::vector<Mono>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});

  // P + P doubles; midpoints are not vertices
  auto twice = minkowski_sum(p, p);
  CHECK(twice.verts == std::vector<Mono>{{0, 0}, {0, 2}, {2, 0}});

  CHECK_THROWS_AS(minkowski_sum(p, mk(3, {{0, 0, 0}})), Error);
}

TEST_CASE("normalized volume") {
  CHECK(normalized_volume(mk(2, {{0, 0}, {1, 0}, {0, 1}})) == 1);
  CHECK(normalized_volume(mk(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}})) == 2);
  // shoelace: det(3,0; 1,2) = 6
  CHECK(normalized_volume(mk(2, {{0, 0}, {3, 0}, {1, 2}})) == 6);
  // pentagon (0,0),(2,0),(3,1),(1,3),(0,2): shoelace area 6
  CHECK(normalized_volume(mk(2, {{0, 0}, {2, 0}, {3, 1}, {1, 3}, {0, 2}})) ==
        12);
  // unit cube
  CHECK(normalized_volume(mk(3, {{0, 0, 0},
                                 {1, 0, 0},
                                 {0, 1, 0},
                                 {0, 0, 1},
                                 {1, 1, 0},
                                 {1, 0, 1},
                                 {0, 1, 1},
                                 {1, 1, 1}})) == 6);
  // segments, including Laurent points
  CHECK(normalized_volume(mk(1, {{0}, {2}})) == 2);
  CHECK(normalized_volume(mk(1, {{-1}, {1}})) == 2);
  // lower-dimensional bodies have volume 0
  CHECK(normalized_volume(mk(2, {{0, 0}, {1, 1}})) == 0);
  CHECK(normalized_volume(mk(2, {{1, 1}})) == 0);
  CHECK(normalized_volume(mk(3, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}})) ==
        0);
}

TEST_CASE("sum volume agrees with direct triangulation") {
  // the Cayley route and the plain lower-hull triangulation are independent
  // paths to the same number
  Rng rng(7);
  for (int rep = 0; rep < 6; ++rep) {
    size_t d = 2 + rep % 2;
    std::vector<LatticePolytope> ps;
    size_t k = 2 + rep % 2;
    for (size_t i = 0; i < k; ++i) ps.push_back(random_poly(rng, d, 4));
    std::vector<const LatticePolytope*> ptrs;
    for (const auto& p : ps) ptrs.push_back(&p);
    Rat direct = euclidean_volume(d, sum_cloud(ps), 11);
    CHECK(volume_of_sum(ptrs, 3) == direct);
  }
}

TEST_CASE("mixed volume polarization") {
  auto tri = mk(2, {{0, 0}, {1, 0}, {0, 1}});
  CHECK(mixed_volume_polarization({tri, tri}) == 1);

  // dilated simplices multiply degrees
  auto d2 = mk(2, {{0, 0}, {2, 0}, {0, 2}});
  auto d3 = mk(2, {{0, 0}, {3, 0}, {0, 3}});
  CHECK(mixed_volume_polarization({d2, d3}) == 6);

  // crossing segments
  auto sx = mk(2, {{0, 0}, {1, 0}});
  auto sy = mk(2, {{0, 0}, {0, 1}});
  CHECK(mixed_volume_polarization({sx, sy}) == 1);
  CHECK(mixed_volume_polarization({sx, sx}) == 0);

  // quadric supports: both reduce to 2*simplex
  MPoly x = MPoly::variable(2, 0), y = MPoly::variable(2, 1);
  auto quad = newton_polytope(x * x + y * y + x + y + MPoly::constant(2, 1));
  CHECK(mixed_volume_polarization({quad, quad}) == 4);

  // three unit simplices in R^3
  auto t3 = mk(3, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(mixed_volume_polarization({t3, t3, t3}) == 1);
}

TEST_CASE("mixed volume properties") {
  Rng rng(19);
  for (int rep = 0; rep < 4; ++rep) {
    auto p = random_poly(rng, 2, 4);
    auto q = random_poly(rng, 2, 4);
    // MV(P, P) is the normalized volume
    CHECK(mixed_volume_polarization({p, p}) == normalized_volume(p));
    // symmetry
    CHECK(mixed_volume_polarization({p, q}) == mixed_volume_polarization({q, p}));
    // translation invariance
    auto shift = minkowski_sum(p, mk(2, {{5, -3}}));
    CHECK(mixed_volume_polarization({p, q}) ==
          mixed_volume_polarization({shift, q}));
    // multilinearity in the first slot
    auto r = random_poly(rng, 2, 3);
    auto pr = minkowski_sum(p, r);
    CHECK(mixed_volume_polarization({pr, q}) ==
          mixed_volume_polarization({p, q}) + mixed_volume_polarization({r, q}));
  }
}

TEST_CASE("duffing modified system mixed volume") {
  // coords (u, v, w1, w2); four polynomials of the modified system
  auto f = mk(4, {{0, 0, 1, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 0}});
  auto g = mk(4, {{0, 0, 0, 1}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 0}});
  auto h = mk(4, {{0, 0, 1, 0}, {3, 0, 0, 0}, {1, 2, 0, 0}});
  auto rho = mk(4, {{0, 1, 1, 0}, {1, 0, 0, 1}});
  CHECK(mixed_volume_polarization({f, g, h, rho}) == 5);
}

TEST_CASE("facet normals") {
  auto square = mk(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  CHECK(facet_normals(2, square.verts).size() == 4);
  auto tri = mk(2, {{0, 0}, {1, 0}, {0, 1}});
  CHECK(facet_normals(2, tri.verts).size() == 3);
  CHECK(facet_normals(1, std::vector<Mono>{{0}, {2}}).size() == 2);
  auto cube = mk(3, {{0, 0, 0},
                     {1, 0, 0},
                     {0, 1, 0},
                     {0, 0, 1},
                     {1, 1, 0},
                     {1, 0, 1},
                     {0, 1, 1},
                     {1, 1, 1}});
  CHECK(facet_normals(3, cube.verts).size() == 6);
}

TEST_CASE("support reduction test") {
  auto tri = mk(2, {{0, 0}, {1, 0}, {0, 1}});

  // equal polytopes: trivially reducible
  CHECK(bihan_soprunov_reducible(tri, {tri, tri}));

  // dropping the origin from the triangle keeps the mixed volume
  auto edge = mk(2, {{1, 0}, {0, 1}});
  CHECK(bihan_soprunov_reducible(edge, {tri, tri}));
  CHECK(mixed_volume_polarization({edge, tri}) ==
        mixed_volume_polarization({tri, tri}));

  // dropping an endpoint of a segment kills the mixed volume
  auto sx = mk(2, {{0, 0}, {1, 0}});
  auto sy = mk(2, {{0, 0}, {0, 1}});
  auto tip = mk(2, {{1, 0}});
  CHECK(!bihan_soprunov_reducible(tip, {sx, sy}));
  CHECK(mixed_volume_polarization({tip, sy}) == 0);
  CHECK(mixed_volume_polarization({sx, sy}) == 1);

  // outside point is rejected
  CHECK_THROWS_AS(bihan_soprunov_reducible(mk(2, {{2, 0}}), {tri, tri}), Error);
}

TEST_CASE("support reduction on the modified duffing system") {
  auto f = mk(4, {{0, 0, 1, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 0}});
  auto g = mk(4, {{0, 0, 0, 1}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 0}});
  auto h = mk(4, {{0, 0, 1, 0}, {3, 0, 0, 0}, {1, 2, 0, 0}});
  auto rho = mk(4, {{0, 1, 1, 0}, {1, 0, 0, 1}});
  CHECK(bihan_soprunov_reducible(f, {f, g, h, rho}));
}
