#include <doctest.h>

#include "dq/donaldson.hpp"

using namespace dq;

namespace {

bool vanishes(const NumericZ& a) { return a.terms().empty(); }

InvariantQuery query(const SurfaceModel& S, const char* C, const char* F, const char* x, int zorder) {
  InvariantQuery q;
  q.S = S;
  q.C = parse_class(C);
  q.F = parse_class(F);
  q.x = parse_rational_class(x);
  q.zorder = zorder;
  return q;
}

}  // namespace

TEST_CASE("boundary invariants are additive over cusp triples") {
  SurfaceModel S = make_surface(SurfaceKind::P2Blow, 9);
  const IVec F1 = parse_class("3,1x9"), F2 = parse_class("1,0,1,0x7"), F3 = S.default_G(1);
  InvariantQuery q = query(S, "1,0x9", "3,1x9", "1/2,1,0,-1/3,0x5,2", 6);
  auto diff = [&](const IVec& a, const IVec& b) {
    InvariantQuery t = q;
    t.F = a;
    t.G = b;
    return psi_boundary_range(t, 2);
  };
  auto d12 = diff(F1, F2), d23 = diff(F2, F3), d13 = diff(F1, F3);
  for (int r = 0; r <= 2; ++r) CHECK(vanishes(d12[r] + d23[r] - d13[r]));
  auto d11 = diff(F1, F1);
  for (int r = 0; r <= 2; ++r) CHECK(vanishes(d11[r]));
}

TEST_CASE("simple type for F = (3,1x9)") {
  SurfaceModel S = make_surface(SurfaceKind::P2Blow, 9);
  InvariantQuery q = query(S, "0,1,0x8", "3,1x9", "1,0,1/2,0x7", 8);
  StructureReport r = structure_theorem(q, 5);
  CHECK(r.k == 1);
  CHECK(r.ok());
  // (p^2 - 4) kills everything
  for (int j = 0; j + 2 <= 5; ++j) CHECK(vanishes(r.psi[j + 2] - [&] {
                                          NumericZ t = r.psi[j];
                                          t.scale(Cyclo8(4));
                                          return t;
                                        }()));
}

TEST_CASE("wall-crossing is additive over chambers") {
  SurfaceModel P = make_surface(SurfaceKind::P1xP1);
  const IVec C{1, 0};
  const QVec x{Rational(1, 3), Rational(-2, 5)};
  const QVec H1{2, 7}, H2{3, 5}, H3{7, 3};
  auto a = wallcross_range(P, C, x, 2, 6, H1, H2), b = wallcross_range(P, C, x, 2, 6, H2, H3),
       c = wallcross_range(P, C, x, 2, 6, H1, H3);
  for (int r = 0; r <= 2; ++r) CHECK(vanishes(a[r] + b[r] - c[r]));
  auto f1 = wallcross_from_cusp(P, C, x, 2, 6, IVec{1, 0}, H1), f3 = wallcross_from_cusp(P, C, x, 2, 6, IVec{1, 0}, H3);
  for (int r = 0; r <= 2; ++r) CHECK(vanishes(f3[r] - f1[r] - c[r]));
}

TEST_CASE("closed forms at the F+ chamber of P1 x P1") {
  SurfaceModel P = make_surface(SurfaceKind::P1xP1);
  for (bool cf : {false, true}) {
    InvariantQuery q;
    q.S = P;
    q.C = cf ? IVec{1, 0} : IVec{0, 0};
    q.F = {1, 0};
    q.G = IVec{0, 1};
    q.x = {Rational(-2), Rational(1, 3)};
    q.zorder = 6;
    auto v = psi_cusp_plus(q, QVec{5, 1}, 2);
    for (int r = 0; r <= 2; ++r) CHECK(vanishes(v[r] - p1xp1_closed_form(cf, q.x[0], q.x[1], r, 6)));
  }
}

TEST_CASE("interior invariants reject bad chambers") {
  SurfaceModel P = make_surface(SurfaceKind::P1xP1);
  CHECK_THROWS_AS(interior_invariant(P, IVec{0, 0}, -1, 2, QVec{1, 1}, 0, 4), std::invalid_argument);
  CHECK_THROWS_WITH(interior_invariant(P, IVec{1, 1}, 2, 14, QVec{1, 1}, 0, 6), doctest::Contains("ambiguous chamber"));
  CHECK_THROWS_AS(interior_invariant(make_surface(SurfaceKind::P2Blow, 3), IVec{0, 0, 0, 0}, 1, 1, QVec{1, 0, 0, 0}, 0, 4),
                  std::invalid_argument);
}

TEST_CASE("sign table of the basic classes") {
  SurfaceModel P = make_surface(SurfaceKind::P1xP1);
  const IVec F{1, 0}, G{0, 1};
  CHECK(epsilon_W(P, F, G, IVec{-2, 2}) == 1);   // WF > 0 > WG
  CHECK(epsilon_W(P, F, G, IVec{2, -2}) == -1);  // WF < 0 < WG
  CHECK(epsilon_W(P, F, G, IVec{2, 2}) == 0);
  CHECK(epsilon_W(P, F, G, IVec{-2, -2}) == 0);
}

TEST_CASE("Seiberg-Witten dictionary") {
  SWReport r5 = sw_report(make_surface(SurfaceKind::P2Blow, 10), parse_class("4,2x2,1x8"));
  CHECK(r5.sw_basic.empty());
  CHECK(r5.rf.size() == 2);
  SWReport r6 = sw_report(make_surface(SurfaceKind::P2Blow, 13), parse_class("4,2,1x12"));
  REQUIRE(r6.sw_basic.size() == 2);
  IVec W1 = parse_class("3,1x13"), mW1 = W1;
  for (auto& v : mW1) v = -v;
  bool has_w = false, has_mw = false;
  for (const auto& row : r6.sw_basic) {
    has_w = has_w || row.w == W1;
    has_mw = has_mw || row.w == mW1;
  }
  CHECK(has_w);
  CHECK(has_mw);
  CHECK(r6.rf.size() == 24);
  SWReport r3 = sw_report(make_surface(SurfaceKind::P2Blow, 9), parse_class("3,1x9"));
  REQUIRE(r3.rf.size() == 1);
  CHECK(r3.rf[0].w == parse_class("3,1x9"));
}

TEST_CASE("blowup polynomials") {
  BlowupSeries bs = blowup_polys(6);
  auto U = [](std::initializer_list<long> c) {
    UPoly p;
    for (long v : c) p.c.push_back(Cyclo8(v));
    return p;
  };
  CHECK(bs.B[0] == U({1}));
  CHECK(bs.B[1].degree() == -1);
  CHECK(bs.B[4] == U({-2}));
  CHECK(bs.B[6] == U({0, 8}));
  CHECK(bs.S[1] == U({1}));
  CHECK(bs.S[3] == U({0, -1}));
  CHECK(bs.S[5] == U({2, 0, 1}));
  // odd B and even S vanish
  for (int k = 1; k <= 6; k += 2) CHECK(bs.B[k].degree() == -1);
  for (int k = 0; k <= 6; k += 2) CHECK(bs.S[k].degree() == -1);
  CHECK_THROWS_AS(blowup_polys(4, GaussianReading::OverF), std::domain_error);
}

TEST_CASE("blowup series action from the blown-up plane") {
  // sigma > -8 on both sides, so this only exercises the plumbing: every term vanishes
  InvariantQuery q;
  q.S = make_surface(SurfaceKind::P2Blow, 1);
  q.C = {1, 1};
  q.F = {1, -1};
  q.x = {Rational(1, 2), Rational(1, 3)};
  q.zorder = 6;
  std::vector<Rational> lambdas{1, Rational(-1, 2), Rational(2, 3), 3, Rational(-5, 4), Rational(1, 7), -2};
  CHECK(blowup_verify(q, lambdas, true).ok);
  CHECK_THROWS_AS(blowup_verify(q, lambdas, false), std::invalid_argument);
}

TEST_CASE("blowup identities from p2blow(10)") {
  InvariantQuery q;
  q.S = make_surface(SurfaceKind::P2Blow, 10);
  q.C = parse_class("1,0x10");
  q.F = parse_class("4,2x2,1x8");
  q.x = parse_rational_class("1/2,0,1,0x7,-1/3");
  q.zorder = 6;
  std::vector<Rational> lambdas{1, Rational(-1, 2), Rational(2, 3), 3, Rational(-5, 4), Rational(1, 7), -2};
  BlowupCheck c = blowup_verify(q, lambdas, true);
  CHECK(c.ok);
}
