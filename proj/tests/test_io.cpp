#include <doctest.h>

#include "dq/io.hpp"

using namespace dq;

TEST_CASE("cyclotomic JSON round trip") {
  for (const Cyclo8& c : {Cyclo8(Rational(-3, 7)), Cyclo8::zeta_pow(3) * Cyclo8(Rational(5, 2)), Cyclo8()}) {
    json j = to_json(c);
    CHECK(cyclo_from_json(json::parse(j.dump())) == c);
  }
  CHECK(to_json(Cyclo8(Rational(1, 2))) == json("1/2"));
  CHECK_THROWS(cyclo_from_json(json::array({"1", "2"})));
}

TEST_CASE("q-series JSON round trip") {
  for (const char* name : {"R", "u", "f", "theta10"}) {
    QSeries s = named_series(name, 4);
    QSeries back = qseries_from_json(json::parse(to_json(s).dump()));
    CHECK(back == s);
  }
  QSeries exact = QSeries::monomial(-24, Cyclo8(2));
  json j = to_json(exact);
  CHECK(j["trunc"].is_null());
  CHECK(qseries_from_json(j) == exact);
}

TEST_CASE("z-series JSON round trip") {
  NumericZ a(5);
  a.set(-1, Cyclo8(Rational(1, 3)));
  a.set(2, Cyclo8::i());
  NumericZ b = numericz_from_json(json::parse(to_json(a).dump()));
  CHECK(b.zorder() == 5);
  CHECK(b.terms() == a.terms());
  FormalZ f(2);
  f.set(0, named_series("e1", 2));
  f.set(1, named_series("G", 2));
  FormalZ g = formalz_from_json(to_json(f));
  CHECK(agree(f, g));
}

TEST_CASE("LaTeX uses fractional exponents") {
  std::string s = named_series("R", 1).latex();
  CHECK(s.find("q^{-1/2}") != std::string::npos);
  CHECK(s.find("276") != std::string::npos);
  NumericZ a(3);
  a.set(0, Cyclo8(1));
  a.set(2, Cyclo8(Rational(-1, 2)));
  CHECK(latex(a) == "1 - \\frac{1}{2}z^{2} + O(z^{4})");
}

TEST_CASE("output is deterministic") {
  CHECK(to_json(named_series("U", 3)).dump() == to_json(named_series("U", 3)).dump());
}
