#include <doctest.h>

#include "dq/intlinalg.hpp"
#include "support.hpp"

using namespace dq;

TEST_CASE("rational parsing canonicalizes") {
  CHECK(parse_rational("6/4") == Rational(3) / 2);
  CHECK(parse_rational("-10/5") == -2);
  CHECK(parse_rational(" 7 ") == 7);
  CHECK(rational_str(parse_rational("6/4")) == "3/2");
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
}

TEST_CASE("roots of unity") {
  Cyclo8 z = Cyclo8::zeta_pow(1);
  CHECK(z.pow(8) == Cyclo8(1));
  CHECK(z.pow(4) == Cyclo8(-1));
  CHECK(Cyclo8::zeta_pow(-3) == z.pow(5));
  CHECK(Cyclo8::root_of_unity(Rational(1, 8)) == z);
  CHECK(Cyclo8::root_of_unity(Rational(-3, 4)) == Cyclo8::i());
  CHECK(Cyclo8::root_of_unity(Rational(5, 2)) == Cyclo8(-1));
  CHECK_THROWS(Cyclo8::root_of_unity(Rational(1, 3)));
  // sqrt 2 = z + z^7
  Cyclo8 s2 = z + z.pow(7);
  CHECK(s2 * s2 == Cyclo8(2));
  CHECK(s2.norm() == 4);  // (sqrt 2)^4 over the degree-4 extension
}

TEST_CASE("field axioms on random elements") {
  std::mt19937 rng(11);
  for (int i = 0; i < 200; ++i) {
    Cyclo8 a = dqtest::random_cyclo(rng), b = dqtest::random_cyclo(rng), c = dqtest::random_cyclo(rng);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK(a - a == Cyclo8());
    if (!a.is_zero()) {
      CHECK(a * a.inverse() == Cyclo8(1));
      CHECK((b / a) * a == b);
    }
    CHECK((a * b).norm() == a.norm() * b.norm());
    for (int k : {3, 5, 7}) {
      CHECK((a * b).galois(k) == a.galois(k) * b.galois(k));
      CHECK((a + b).galois(k) == a.galois(k) + b.galois(k));
    }
    CHECK(a.conj().conj() == a);
  }
  CHECK_THROWS(Cyclo8().inverse());
}

TEST_CASE("cyclotomic printing") {
  CHECK(Cyclo8(Rational(-1, 2)).str() == "-1/2");
  CHECK(Cyclo8().str() == "0");
  CHECK(Cyclo8::i().str().find("zeta^2") != std::string::npos);
}

TEST_CASE("integer linear algebra") {
  IMat h{{0, 1}, {1, 0}};
  CHECK(determinant(h) == -1);
  CHECK(signature(h) == 0);
  IMat d{{1, 0, 0}, {0, -1, 0}, {0, 0, -1}};
  CHECK(signature(d) == -1);
  CHECK(determinant(d) == 1);
  IMat e8_like{{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
  CHECK(determinant(e8_like) == 4);
  CHECK(signature(e8_like) == 3);
  CHECK(bilinear(d, IVec{3, 1, 2}, IVec{3, 1, 2}) == 4);
  CHECK(gcd_all(IVec{6, -9, 15}) == 3);
}

TEST_CASE("two-row reduction is unimodular and triangular") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> v(-6, 6);
  for (int t = 0; t < 100; ++t) {
    IVec r1(4), r2(4);
    for (int i = 0; i < 4; ++i) {
      r1[i] = v(rng);
      r2[i] = v(rng);
    }
    TwoRowReduction red = reduce_two_rows(r1, r2);
    mpz_class det = determinant(red.U);
    CHECK(abs(det) == 1);
    for (int j = 0; j < 4; ++j) {
      IVec col(4);
      for (int i = 0; i < 4; ++i) col[i] = red.U[i][j];
      int64_t a = dot(r1, col), b = dot(r2, col);
      if (j == 0) {
        CHECK(a == red.h00);
        CHECK(b == red.h10);
      } else if (j == 1) {
        CHECK(a == 0);
        CHECK(b == red.h11);
      } else {
        CHECK(a == 0);
        CHECK(b == 0);
      }
    }
  }
}

TEST_CASE("solve over GF(2)") {
  IMat a{{1, 1, 0}, {0, 1, 1}, {1, 0, 0}};
  IVec b{1, 0, 1};
  IVec x = solve_mod2(a, b);
  IVec ax = mat_vec(a, x);
  for (int i = 0; i < 3; ++i) CHECK(((ax[i] - b[i]) % 2 + 2) % 2 == 0);
}
