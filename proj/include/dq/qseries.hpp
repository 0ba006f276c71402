#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "dq/cyclo8.hpp"

namespace dq {

// Exponents are integers counting 1/48 of a unit of q.
inline constexpr int64_t kGrid = 48;
// Truncation marker for exactly known (finite) series.
inline constexpr int64_t kExact = INT64_C(1) << 60;

inline int64_t trunc_add(int64_t a, int64_t b) {
  if (a >= kExact || b >= kExact) return kExact;
  return a + b;
}

// Exponent given as a rational number of q-units, e.g. 1/8 -> 6.
int64_t grid_exponent(const Rational& e);
Rational exponent_value(int64_t e);

class QSeries {
 public:
  using Terms = std::map<int64_t, Cyclo8>;

  QSeries() = default;  // exact zero
  explicit QSeries(int64_t trunc) : trunc_(trunc) {}
  static QSeries constant(const Cyclo8& c, int64_t trunc = kExact);
  static QSeries monomial(int64_t e, const Cyclo8& c, int64_t trunc = kExact);

  int64_t trunc() const { return trunc_; }
  bool exact() const { return trunc_ >= kExact; }
  const Terms& terms() const { return terms_; }
  // Coefficient at e; throws when e >= trunc.
  Cyclo8 coeff(int64_t e) const;
  // Adds c at e; silently dropped when e >= trunc.
  void add_term(int64_t e, const Cyclo8& c);
  // Lowest stored exponent, or trunc if zero to its truncation.
  int64_t valuation() const;
  bool is_zero() const { return terms_.empty(); }
  bool integral_exponents() const;

  QSeries truncated(int64_t t) const;

  QSeries operator-() const;
  QSeries& operator+=(const QSeries& o);
  QSeries& operator-=(const QSeries& o);
  QSeries& operator*=(const Cyclo8& c);
  friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
  friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
  friend QSeries operator*(const QSeries& a, const QSeries& b);
  friend QSeries operator*(QSeries a, const Cyclo8& c) { return a *= c; }
  friend QSeries operator*(const Cyclo8& c, QSeries a) { return a *= c; }
  // Division; when both operands are exact and b has several terms, cap bounds the result.
  static QSeries divide(const QSeries& a, const QSeries& b, std::optional<int64_t> cap = {});
  friend QSeries operator/(const QSeries& a, const QSeries& b) { return divide(a, b); }

  // Multiplicative inverse with an optional truncation for exact inputs.
  QSeries inverse(std::optional<int64_t> cap = {}) const;
  QSeries pow(long k, std::optional<int64_t> cap = {}) const;
  // Multiply by q^e.
  QSeries shifted(int64_t e) const;

  // Structural equality (terms and truncation).
  friend bool operator==(const QSeries& a, const QSeries& b) {
    return a.trunc_ == b.trunc_ && a.terms_ == b.terms_;
  }

  std::string str() const;
  std::string latex() const;

 private:
  Terms terms_;
  int64_t trunc_ = kExact;
};

// Agreement on all exponents below the smaller truncation.
bool agree(const QSeries& a, const QSeries& b);

QSeries qs_exp(const QSeries& a, std::optional<int64_t> cap = {});
QSeries qs_log(const QSeries& a, std::optional<int64_t> cap = {});
QSeries qs_qderiv(const QSeries& a);
QSeries qs_substitute(const QSeries& outer, const QSeries& inner);
// Compositional inverse of a series of valuation exactly 1 with integer exponents.
QSeries qs_revert(const QSeries& a, std::optional<int64_t> cap = {});
// Exponent map e -> (num/den) e with num/den in {1/2, 2}.
QSeries qs_rescale(const QSeries& a, int num, int den);

}  // namespace dq
