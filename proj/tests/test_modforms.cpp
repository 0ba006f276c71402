#include <doctest.h>

#include "dq/modforms.hpp"

using namespace dq;

namespace {

mpz_class sigma1(long n) {
  mpz_class s = 0;
  for (long d = 1; d <= n; ++d)
    if (n % d == 0) s += d;
  return s;
}

// prod_{n >= 1} (1 - q^{step n})^power through q-exponents < qmax (integers)
QSeries eta_like(int step, int power, int qmax) {
  std::vector<Rational> c(qmax, 0);
  c[0] = 1;
  for (int n = step; n < qmax; n += step)
    for (int rep = 0; rep < std::abs(power); ++rep) {
      if (power > 0) {
        for (int e = qmax - 1; e >= n; --e) c[e] -= c[e - n];
      } else {
        for (int e = n; e < qmax; ++e) c[e] += c[e - n];
      }
    }
  QSeries s(int64_t(qmax) * kGrid);
  for (int e = 0; e < qmax; ++e) s.add_term(e * kGrid, Cyclo8(c[e]));
  return s;
}

}  // namespace

TEST_CASE("Bernoulli numbers") {
  CHECK(bernoulli(0) == 1);
  CHECK(bernoulli(1) == Rational(-1, 2));
  CHECK(bernoulli(2) == Rational(1, 6));
  CHECK(bernoulli(3) == 0);
  CHECK(bernoulli(4) == Rational(-1, 30));
  CHECK(bernoulli(12) == Rational(-691, 2730));
}

TEST_CASE("Eisenstein series: constant terms and E4^2 = E8") {
  const int64_t T = 48 * 12;
  QSeries g2 = eisenstein(2, T), g4 = eisenstein(4, T), g8 = eisenstein(8, T);
  CHECK(g2.coeff(0) == Cyclo8(Rational(-1, 24)));
  CHECK(g2.coeff(48) == Cyclo8(1));
  CHECK(g2.coeff(48 * 6) == Cyclo8(Rational(sigma1(6))));
  CHECK(g4.coeff(0) == Cyclo8(Rational(1, 240)));
  CHECK(eisenstein(5, T).is_zero());
  QSeries e4 = g4 * Cyclo8(240);
  QSeries e8 = g8 * Cyclo8(480);
  CHECK(agree(e4 * e4, e8));
}

TEST_CASE("theta^4 counts sums of four squares") {
  QSeries th = named_series("theta", 10);
  QSeries t4 = th.pow(4);
  for (long m = 1; m < 20; ++m) {
    mpz_class r4 = 8 * sigma1(m) - (m % 4 == 0 ? 32 * sigma1(m / 4) : mpz_class(0));
    CHECK(t4.coeff(24 * m) == Cyclo8(Rational(r4)));
  }
}

TEST_CASE("eta quotient against the product") {
  QSeries want = eta_like(1, 4, 15) * eta_like(2, -2, 15);
  CHECK(agree(named_series("eta4_eta2tau2", 14), want));
}

TEST_CASE("catalog relations") {
  QSeries U = named_series("U", 8), u = named_series("u", 8);
  CHECK(agree(U * u, QSeries::constant(Cyclo8(1))));
  QSeries y = y_as_q_series(48 * 8);
  CHECK(agree(y + QSeries::constant(Cyclo8(2)), named_series("Utilde", 8)));
  CHECK_THROWS(named_series("no-such-form", 3));
  for (const auto& name : catalog_names()) CHECK_NOTHROW(named_series(name, 2));
}

TEST_CASE("u-coefficient extraction reads powers of u") {
  for (int j = -2; j <= 5; ++j) {
    QSeries uj = named_series("u", 6).pow(j);
    for (int r = 0; r <= 3; ++r) {
      CoeffInU c = coeff_in_u_both(uj, r);
      CHECK(c.residue == c.reversion);
      CHECK(c.residue == Cyclo8(j == r + 1 ? 1 : 0));
    }
  }
}

TEST_CASE("u-coefficient extraction reports starvation") {
  QSeries f = named_series("f", Rational(1, 4));
  CHECK_THROWS_AS(coeff_in_u_residue(f, 6), OrderStarvation);
  CHECK_THROWS_AS(coeff_in_u(f, -1), std::invalid_argument);
}

TEST_CASE("polynomials in U") {
  UPoly p{{Cyclo8(5), Cyclo8(-2), Cyclo8(), Cyclo8(Rational(1, 3))}};
  CHECK(p.degree() == 3);
  CHECK(as_poly_in_U(p.eval(48 * 6)) == p);
  // f is not a polynomial in U
  CHECK_THROWS(as_poly_in_U(named_series("f", 6)));
}

TEST_CASE("expansion in y") {
  YLaurent a = expand_in_y(y_as_q_series(48 * 6), 4);
  CHECK(a.coeff(1) == Cyclo8(1));
  CHECK(a.coeff(0).is_zero());
  CHECK(a.coeff(2).is_zero());
  CHECK(a.principal().empty());
  YLaurent b = expand_in_y(y_as_q_series(48 * 8).inverse(), 2);
  CHECK(b.principal().size() == 1);
  CHECK(b.coeff(-1) == Cyclo8(1));
}

TEST_CASE("theta with characteristics in the elliptic variable") {
  NumericZ lin(8);
  lin.set(1, Cyclo8(Rational(2, 3)));
  FormalZ w = lift(lin), mw = lift(-lin);
  FormalZ t00 = theta_charz(0, 0, w, 6, 6), t11 = theta_charz(1, 1, w, 6, 6);
  CHECK(agree(t00, theta_charz(0, 0, mw, 6, 6)));
  FormalZ t11m = theta_charz(1, 1, mw, 6, 6);
  t11m.scale(Cyclo8(-1));
  CHECK(agree(t11, t11m));
  CHECK(agree(t00.coeff(0), named_series("theta", 6)));
  CHECK(agree(theta_charz(1, 0, w, 6, 6).coeff(0), named_series("theta10", 6)));
  CHECK(t11.coeff(0).is_zero());
}
