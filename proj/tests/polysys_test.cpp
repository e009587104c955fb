#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/error.hpp"
#include "polysys/system.hpp"

using namespace grc;

namespace {

Specialization spec_of(std::initializer_list<std::tuple<const char*, long, long>> xs) {
  Specialization p;
  for (auto& [name, val, wt] : xs) p.assign[name] = ValuedScalar{Rat(val), Rat(wt)};
  return p;
}

const char* kLocalize =
    "params a1 a2 a3 a4;\n"
    "vars x y;\n"
    "f1 = a1*(x-1) + a2*(y-1);\n"
    "f2 = a3*(x-1) + a4*(y-1);\n";

}  // namespace

TEST_CASE("parse basics") {
  System s = parse_system("params a b; vars x; f = a*x + b;");
  CHECK(s.params.size() == 2);
  CHECK(s.vars.size() == 1);
  CHECK(s.polys.size() == 1);
  CHECK(s.polys[0].terms.size() == 2);

  System loc = parse_system(kLocalize);
  CHECK(loc.params.size() == 4);
  CHECK(loc.vars.size() == 2);
  REQUIRE(loc.polys.size() == 2);
  CHECK(loc.polys[0].terms.size() == 3);  // x, y, 1 after expansion
  CHECK(loc.polys[1].terms.size() == 3);
  // constant coefficient of f1 is -a1-a2
  const auto& c = loc.polys[0].terms.at(Mono{0, 0});
  CHECK(c.c0 == 0);
  CHECK(c.lin.at(0) == -1);
  CHECK(c.lin.at(1) == -1);
}

TEST_CASE("parse laurent, rationals, t, comments") {
  System s = parse_system(
      "# steady state\n"
      "params a; vars x y;\n"
      "f = 3/2*a*x^-2*y + x - t^2*a;\n");
  CHECK(s.polys[0].terms.count(Mono{-2, 1}) == 1);
  CHECK(s.polys[0].terms.at(Mono{-2, 1}).lin.at(0) == Rat(3, 2));
  CHECK(s.polys[0].terms.at(Mono{0, 0}).t_shift == 2);
  CHECK(s.polys[0].terms.at(Mono{1, 0}).c0 == 1);

  System inv = parse_system("params a; vars x y; g = a*(x*y)^-2 + a;");
  CHECK(inv.polys[0].terms.count(Mono{-2, -2}) == 1);
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_system("params a; vars x; f = a*x; f = a*x;"), Error);   // dup poly
  CHECK_THROWS_AS(parse_system("params a a; vars x; f = a*x;"), Error);          // dup name
  CHECK_THROWS_AS(parse_system("params a; vars x; f = a*b*x;"), Error);          // unbound
  CHECK_THROWS_AS(parse_system("params a b; vars x; f = a*b*x;"), Error);        // nonlinear
  CHECK_THROWS_AS(parse_system("params a; vars x; f = a*x - a*x;"), Error);      // zero poly
  CHECK_THROWS_AS(parse_system("params a b; vars x; f = a*x;"), Error);          // unused b
  CHECK_THROWS_AS(parse_system("params a; vars x; f = a*x + t*a*x;"), Error);    // mixed t
  CHECK_THROWS_AS(parse_system("params a; vars x; f = a*(x+1)^-1;"), Error);     // bad inverse
  CHECK_THROWS_AS(parse_system("params t; vars x; f = t*x;"), Error);            // reserved
  try {
    parse_system("params a; vars x;\nf = a*x + ;");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("factors statement") {
  System s = parse_system("params a b c; factors { a b | c }; vars x; f = a*x + b*x^2 + c;");
  REQUIRE(s.factor_blocks.size() == 2);
  CHECK(s.factor_blocks[0].size() == 2);
  CHECK_THROWS_AS(parse_system("params a b; factors { a }; vars x; f = a*x + b;"), Error);
  CHECK_THROWS_AS(parse_system("params a; factors { a | a }; vars x; f = a*x;"), Error);
}

TEST_CASE("macaulay matrix") {
  System s = parse_system("params a b; vars x; f = a*x + b;");
  MacaulayMatrix mm = macaulay_matrix(s);
  REQUIRE(mm.columns.size() == 2);
  CHECK(mm.columns[0] == Mono{0});  // lex order: 1 before x
  CHECK(mm.columns[1] == Mono{1});
  CHECK(mm.entries[0][0].lin.count(1) == 1);
  CHECK(mm.entries[0][1].lin.count(0) == 1);

  MacaulayMatrix loc = macaulay_matrix(parse_system(kLocalize));
  CHECK(loc.columns.size() == 3);
  CHECK(loc.entries.size() == 2);
  // round trip: every poly reassembles from its row
  System locsys = parse_system(kLocalize);
  for (size_t i = 0; i < locsys.polys.size(); ++i) {
    size_t nonzero = 0;
    for (size_t j = 0; j < loc.columns.size(); ++j) {
      if (loc.entries[i][j].is_zero()) continue;
      ++nonzero;
      CHECK(locsys.polys[i].terms.at(loc.columns[j]).lin == loc.entries[i][j].lin);
    }
    CHECK(nonzero == locsys.polys[i].terms.size());
  }
}

TEST_CASE("vertical detection") {
  // universal family: fresh parameter per monomial
  System u = parse_system("params c0 c1 c2; vars x; f = c2*x^2 + c1*x + c0;");
  auto v = detect_vertical(u);
  CHECK(v.ok);
  CHECK(v.column_params.size() == 3);
  for (const auto& blk : v.column_params) CHECK(blk.size() == 1);

  // localize: a1 multiplies both x and the constant
  auto loc = detect_vertical(parse_system(kLocalize));
  CHECK(!loc.ok);
  CHECK(!loc.witness.empty());

  // shared column parameter across rows is fine
  System sh = parse_system("params a b; vars x; f = a*x + b; g = 2*a*x + 3*b;");
  CHECK(detect_vertical(sh).ok);

  // declared factors must sit inside single columns
  System bad = parse_system("params a b; factors { a b }; vars x; f = a*x + b;");
  CHECK(!detect_vertical(bad).ok);
}

TEST_CASE("horizontal detection") {
  auto loc = detect_horizontal(parse_system(kLocalize));
  REQUIRE(loc.ok);
  REQUIRE(loc.rows.size() == 2);
  REQUIRE(loc.rows[0].size() == 2);
  // q's are x-1 and y-1
  MPoly xm1 = MPoly::variable(2, 0) - MPoly::constant(2, 1);
  MPoly ym1 = MPoly::variable(2, 1) - MPoly::constant(2, 1);
  CHECK(loc.rows[0][0].second == xm1);
  CHECK(loc.rows[0][1].second == ym1);
  CHECK(loc.coeffs[0][0] == 1);

  // single row is always horizontal; shared parameter groups monomials
  auto one = detect_horizontal(parse_system("params a; vars x y; f = a*x + a*y;"));
  REQUIRE(one.ok);
  REQUIRE(one.rows[0].size() == 1);
  CHECK(one.rows[0][0].second == MPoly::variable(2, 0) + MPoly::variable(2, 1));

  // sign and content normalization: -2a*x - 2a*y -> coeff -2, q = x+y
  auto neg = detect_horizontal(parse_system("params a; vars x y; f = -2*a*x - 2*a*y;"));
  REQUIRE(neg.ok);
  CHECK(neg.coeffs[0][0] == -2);
  CHECK(neg.rows[0][0].second == MPoly::variable(2, 0) + MPoly::variable(2, 1));

  // parameter in two rows
  auto bad = detect_horizontal(parse_system("params a b; vars x; f = a*x + b; g = a*x + 2*b;"));
  CHECK(!bad.ok);

  // coefficient forms may mix parameters: f = a*(x+1) + b*x
  auto mixed = detect_horizontal(parse_system("params a b; vars x; f = (a+b)*x + a;"));
  REQUIRE(mixed.ok);
  REQUIRE(mixed.rows[0].size() == 2);
  CHECK(mixed.rows[0][0].second == MPoly::variable(1, 0) + MPoly::constant(1, 1));
  CHECK(mixed.rows[0][1].second == MPoly::variable(1, 0));

  // a parameter-free coefficient part blocks extraction
  auto inh = detect_horizontal(parse_system("params a; vars x; f = a*x + 1;"));
  CHECK(!inh.ok);

  // kuramoto n=2: q's are x - x^-1 and 1
  auto kur = detect_horizontal(
      parse_system("params a b; vars x; f = a*(x - x^-1) - b;"));
  REQUIRE(kur.ok);
  REQUIRE(kur.rows[0].size() == 2);
  MPoly q = MPoly::variable(1, 0) - MPoly::monomial(Mono{-1}, 1);
  CHECK(kur.rows[0][0].second == q);
  CHECK(kur.rows[0][1].second == MPoly::constant(1, 1));
  CHECK(kur.coeffs[0][1] == -1);
}

TEST_CASE("specialize weights") {
  System s = parse_system("params a b; vars x; f = a*x + b;");
  auto sp = specialize(s, spec_of({{"a", 1, 0}, {"b", 1, 1}}));
  REQUIRE(sp.size() == 1);
  CHECK(sp[0].terms.at(Mono{1}).weight == 0);
  CHECK(sp[0].terms.at(Mono{0}).weight == 1);

  // z - a*t: weights (0, 1)
  System zt = parse_system("params a; vars z; f = z - a*t;");
  auto szt = specialize(zt, spec_of({{"a", 1, 0}}));
  CHECK(szt[0].terms.at(Mono{1}).weight == 0);
  CHECK(szt[0].terms.at(Mono{0}).weight == 1);
  CHECK(szt[0].terms.at(Mono{0}).value == -1);

  // grouped weights: leading group decides value and weight
  System g = parse_system("params a b; vars x; f = (a+b)*x + x^2;");
  auto sg = specialize(g, spec_of({{"a", 3, 0}, {"b", 5, 1}}));
  CHECK(sg[0].terms.at(Mono{1}).value == 3);
  CHECK(sg[0].terms.at(Mono{1}).weight == 0);
}

TEST_CASE("specialize failure modes") {
  System s = parse_system("params a b; vars x y; f = a*x - b*x + y;");
  CHECK_THROWS_AS(specialize(s, spec_of({{"a", 1, 0}, {"b", 1, 0}})), Error);
  try {
    specialize(s, spec_of({{"a", 1, 0}, {"b", 1, 0}}));
  } catch (const Error& e) {
    CHECK(e.code == ErrCode::VanishingCoefficient);
  }

  System amb = parse_system("params a b c; vars x y; f = (a+b+c)*x + y;");
  try {
    specialize(amb, spec_of({{"a", 1, 0}, {"b", -1, 0}, {"c", 5, 1}}));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code == ErrCode::AmbiguousLeadingTerm);
  }

  auto wit = degenerate_coefficients(s, spec_of({{"a", 1, 0}, {"b", 1, 0}}));
  REQUIRE(wit.size() == 1);
  CHECK(wit[0].second == Mono{1, 0});

  // mainthm1 first ideal is non-degenerate at a = 1
  System m1 = parse_system(
      "params a; vars x y z;\n"
      "f1 = a*x^2 + y^2 + x + 2*y + 3 + a*z;\n"
      "f2 = x^2 + y^2 + 3*x - y + 5;\n");
  CHECK(degenerate_coefficients(m1, spec_of({{"a", 1, 0}})).empty());
}

TEST_CASE("numeric specialization") {
  System zt = parse_system("params b; vars z; f = z - t - b*t;");
  auto polys = specialize_numeric(zt, spec_of({{"b", 1, 2}}), Rat(1, 10));
  REQUIRE(polys.size() == 1);
  CHECK(polys[0].terms().at(Mono{0}) == Rat(-101, 1000));
  CHECK(polys[0].terms().at(Mono{1}) == 1);

  // non-integer weight rejected
  System s = parse_system("params a; vars x; f = a*x + 1;");
  Specialization p;
  p.assign["a"] = ValuedScalar{Rat(1), Rat(1, 2)};
  CHECK_THROWS_AS(specialize_numeric(s, p, Rat(1, 10)), Error);
}

TEST_CASE("monomial maps") {
  System s = parse_system("params a; vars x w; f = a*x + w;");
  ZMat m = {{Int(2), Int(0)}, {Int(1), Int(1)}};
  auto [mapped, deg] = apply_monomial_map(s, m);
  CHECK(deg == 2);
  CHECK(mapped.polys[0].terms.count(Mono{2, 1}) == 1);  // x -> x^2 w
  CHECK(mapped.polys[0].terms.count(Mono{0, 1}) == 1);  // w -> w

  // composition: degrees multiply, exponents compose
  ZMat d23 = {{Int(2), Int(0)}, {Int(0), Int(3)}};
  auto [m1, d1] = apply_monomial_map(s, d23);
  auto [m2, d2] = apply_monomial_map(m1, m);
  ZMat prod = {{Int(4), Int(0)}, {Int(2), Int(3)}};
  auto [m3, d3] = apply_monomial_map(s, prod);
  CHECK(d1 * d2 == d3 * 1);
  CHECK(m2.polys[0].terms == m3.polys[0].terms);

  ZMat sing = {{Int(1), Int(1)}, {Int(1), Int(1)}};
  CHECK_THROWS_AS(apply_monomial_map(s, sing), Error);
}
