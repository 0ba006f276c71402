#include <doctest.h>

#include "dq/theta.hpp"

using namespace dq;

namespace {

FormalZ negated(FormalZ a) {
  a.scale(Cyclo8(-1));
  return a;
}

}  // namespace

TEST_CASE("Laurent coefficients of 1/(1 -+ e^y)") {
  auto p = inv_one_minus_exp(1, 4);   // -1/y + 1/2 - y/12 + y^3/720
  CHECK(p[0] == -1);
  CHECK(p[1] == Rational(1, 2));
  CHECK(p[2] == Rational(-1, 12));
  CHECK(p[3] == 0);
  CHECK(p[4] == Rational(1, 720));
  auto m = inv_one_minus_exp(-1, 4);  // 1/2 - y/4 + y^3/48
  CHECK(m[0] == 0);
  CHECK(m[1] == Rational(1, 2));
  CHECK(m[2] == Rational(-1, 4));
  CHECK(m[3] == 0);
  CHECK(m[4] == Rational(1, 48));
}

TEST_CASE("hyperbolic plane theta is the Kronecker function") {
  SurfaceModel P = make_surface(SurfaceKind::P1xP1);
  for (const QVec& x : std::vector<QVec>{{Rational(1, 3), 2}, {Rational(-5, 2), Rational(3, 4)}}) {
    ThetaRequest r{P.lattice(), {0, 0}, {0, 0}, {1, 0}, {0, 1}, x, 5, 5};
    Rational fx = r.L.dot(to_rational(r.f), r.x), gx = r.L.dot(to_rational(r.g), r.x);
    CHECK(agree(theta_indef(r), kronecker_F(Cyclo8(-fx), Cyclo8(gx), 5, 5)));
  }
}

TEST_CASE("swapping the cusps flips the sign") {
  SurfaceModel S = make_surface(SurfaceKind::P2Blow, 2);
  ThetaRequest r{S.lattice(), {1, 1, 0}, {0, 1, 1}, {1, 1, 0}, {1, 0, -1}, {Rational(2, 3), 1, Rational(-1, 5)}, 3, 4};
  ThetaRequest s = r;
  std::swap(s.f, s.g);
  CHECK(agree(theta_indef(r), negated(theta_indef(s))));
  ThetaRequest same = r;
  same.g = same.f;
  FormalZ zero = theta_indef(same);
  for (const auto& [n, c] : zero.terms()) CHECK(c.is_zero());
}

TEST_CASE("rescaling the elliptic variable") {
  SurfaceModel S = make_surface(SurfaceKind::P2Blow, 1);
  ThetaRequest r{S.lattice(), {1, 1}, {1, 1}, {1, -1}, {1, 1}, {Rational(1, 2), Rational(1, 7)}, 3, 5};
  ThetaRequest d = r;
  for (auto& v : d.x) v *= 2;
  FormalZ scaled = rescale_z(theta_indef(r), QSeries::constant(Cyclo8(2)));
  CHECK(agree(theta_indef(d), scaled));
}

TEST_CASE("pole group requires a valid direction") {
  SurfaceModel S = make_surface(SurfaceKind::P2Blow, 1);
  Lattice L = S.lattice();
  // h.f must be negative in lattice terms
  CHECK_THROWS(theta_pole_group(L, {1, 1}, {1, 1}, {1, -1}, {1, -1}, {Rational(1, 2), 0}, 2, 3));
}

TEST_CASE("structure decomposition on the theta side") {
  SurfaceModel S = make_surface(SurfaceKind::P2Blow, 9);
  IVec C(10, 0);
  C[9] = 1;
  QVec x(10, 0);
  x[0] = Rational(1, 2);
  x[1] = 1;
  x[2] = Rational(-1, 3);
  ThetaRequest req{S.lattice(), C, C, parse_class("3,1x9"), S.default_G(1), x, 3, 5};
  StructureData d = structure_extract(S, req);
  CHECK(d.degree_bound == 1);
  CHECK(d.m == 0);
  for (const auto& t : d.terms) CHECK(t.P.degree() <= 1);
  for (const auto& [n, c] : (d.leading - d.leading_expected).terms()) CHECK(c.is_zero());
}
