#pragma once

#include <gmpxx.h>

#include <array>
#include <stdexcept>
#include <string>

namespace dq {

using Rational = mpq_class;

// Parse "p/q", "p" or "-p/q"; result is canonicalized.
Rational parse_rational(const std::string& s);
std::string rational_str(const Rational& r);

// Element a0 + a1 z + a2 z^2 + a3 z^3 of Q(z), z a primitive 8th root of unity.
class Cyclo8 {
 public:
  Cyclo8() = default;
  Cyclo8(long v) { c_[0] = v; }  // NOLINT implicit
  Cyclo8(const Rational& v) : c_{v, 0, 0, 0} { c_[0].canonicalize(); }  // NOLINT implicit
  Cyclo8(Rational a0, Rational a1, Rational a2, Rational a3);

  // z^k for any integer k.
  static Cyclo8 zeta_pow(long k);
  // e^{2 pi i a}; a must lie in (1/8)Z.
  static Cyclo8 root_of_unity(const Rational& a);
  static Cyclo8 i() { return zeta_pow(2); }

  const Rational& operator[](int k) const { return c_[k]; }
  bool is_zero() const;
  bool is_rational() const;
  bool is_one() const { return is_rational() && c_[0] == 1; }

  Cyclo8 operator-() const;
  Cyclo8& operator+=(const Cyclo8& o);
  Cyclo8& operator-=(const Cyclo8& o);
  Cyclo8& operator*=(const Cyclo8& o);
  Cyclo8& operator*=(const Rational& r);
  Cyclo8& operator/=(const Cyclo8& o);

  friend Cyclo8 operator+(Cyclo8 a, const Cyclo8& b) { return a += b; }
  friend Cyclo8 operator-(Cyclo8 a, const Cyclo8& b) { return a -= b; }
  friend Cyclo8 operator*(Cyclo8 a, const Cyclo8& b) { return a *= b; }
  friend Cyclo8 operator/(Cyclo8 a, const Cyclo8& b) { return a /= b; }
  friend bool operator==(const Cyclo8& a, const Cyclo8& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Cyclo8& a, const Cyclo8& b) { return !(a == b); }

  // Galois automorphism z -> z^k, k odd.
  Cyclo8 galois(int k) const;
  // Complex conjugation z -> z^{-1}.
  Cyclo8 conj() const { return galois(7); }
  // Field norm down to Q.
  Rational norm() const;
  Cyclo8 inverse() const;
  Cyclo8 pow(long e) const;

  // "1/2" for rationals, otherwise "a0 + a1*zeta + a2*zeta^2 + a3*zeta^3" with zero terms dropped.
  std::string str() const;
  std::string latex() const;

 private:
  std::array<Rational, 4> c_{};
};

}  // namespace dq
