#include <doctest.h>

#include "dq/zseries.hpp"
#include "support.hpp"

using namespace dq;

namespace {

QSeries random_series(std::mt19937& rng, int64_t trunc, bool unit) {
  QSeries s(trunc);
  std::uniform_int_distribution<int> step(1, 3);
  s.add_term(0, unit ? Cyclo8(1) : dqtest::random_cyclo(rng));
  for (int64_t e = 24 * step(rng); e < trunc; e += 24 * step(rng)) s.add_term(e, dqtest::random_cyclo(rng));
  return s;
}

}  // namespace

TEST_CASE("exponent grid") {
  CHECK(grid_exponent(Rational(1, 8)) == 6);
  CHECK(grid_exponent(Rational(-1, 2)) == -24);
  CHECK(exponent_value(36) == Rational(3, 4));
  CHECK_THROWS(grid_exponent(Rational(1, 5)));
}

TEST_CASE("truncation bookkeeping") {
  QSeries a(96);
  a.add_term(0, Cyclo8(1));
  a.add_term(48, Cyclo8(2));
  a.add_term(200, Cyclo8(5));  // beyond the truncation, dropped
  CHECK(a.terms().size() == 2);
  CHECK_THROWS(a.coeff(96));
  QSeries b = QSeries::monomial(24, Cyclo8(1));
  QSeries ab = a * b;
  CHECK(ab.trunc() == 120);
  CHECK(ab.coeff(72) == Cyclo8(2));
  QSeries c = QSeries::constant(Cyclo8(3));
  CHECK(c.exact());
  CHECK((a + c).trunc() == 96);
}

TEST_CASE("inverse, exp and log round trips") {
  std::mt19937 rng(3);
  for (int t = 0; t < 20; ++t) {
    QSeries a = random_series(rng, 480, false);
    if (a.coeff(0).is_zero()) continue;
    QSeries one = a * a.inverse();
    CHECK(agree(one, QSeries::constant(Cyclo8(1))));
    QSeries u = random_series(rng, 480, true);
    QSeries v = u - QSeries::constant(Cyclo8(1));
    CHECK(agree(qs_exp(qs_log(u)), u));
    if (!v.is_zero()) CHECK(agree(qs_log(qs_exp(v)), v));
    CHECK(agree(u.pow(3), u * u * u));
    CHECK(agree(u.pow(-2) * u.pow(2), QSeries::constant(Cyclo8(1))));
  }
}

TEST_CASE("reversion and substitution") {
  std::mt19937 rng(9);
  for (int t = 0; t < 10; ++t) {
    QSeries a(48 * 8);
    a.add_term(48, Cyclo8(1));
    for (int k = 2; k < 8; ++k) a.add_term(48 * k, Cyclo8(dqtest::random_rational(rng)));
    QSeries r = qs_revert(a);
    QSeries id = qs_substitute(a, r);
    CHECK(agree(id, QSeries::monomial(48, Cyclo8(1))));
    CHECK(agree(qs_revert(r), a));
  }
}

TEST_CASE("q-derivative is a derivation") {
  std::mt19937 rng(4);
  QSeries a = random_series(rng, 300, false), b = random_series(rng, 300, false);
  CHECK(agree(qs_qderiv(a * b), qs_qderiv(a) * b + a * qs_qderiv(b)));
}

TEST_CASE("z-series arithmetic") {
  NumericZ a(6);
  a.set(1, Cyclo8(2));
  NumericZ e = zs_exp(a);
  for (int n = 0; n <= 6; ++n) {
    Rational want = inv_factorial(n);
    for (int k = 0; k < n; ++k) want *= 2;
    CHECK(e.coeff(n) == Cyclo8(want));
  }
  NumericZ pole(4);
  pole.set(-1, Cyclo8(1));
  CHECK_THROWS_AS(pole * pole, std::domain_error);
  CHECK((pole * a).zorder() == 5);  // a starts at z^1
  CHECK_THROWS(a.coeff(7));
}
