#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "dq/qseries.hpp"

namespace dq {

namespace detail {
inline bool coeff_is_zero(const Cyclo8& c) { return c.is_zero(); }
inline bool coeff_is_zero(const QSeries& s) { return s.is_zero() && s.exact(); }
template <class C>
C one();
template <>
inline Cyclo8 one<Cyclo8>() { return Cyclo8(1); }
template <>
inline QSeries one<QSeries>() { return QSeries::constant(Cyclo8(1)); }
}  // namespace detail

inline Rational inv_factorial(unsigned k) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), k);
  return Rational(1) / Rational(f);
}

// Laurent series in z with pole order at most 1, known for exponents <= zorder.
template <class C>
class ZSeries {
 public:
  using Terms = std::map<int, C>;

  ZSeries() = default;
  explicit ZSeries(int zorder) : zorder_(zorder) {}

  int zorder() const { return zorder_; }
  const Terms& terms() const { return terms_; }

  C coeff(int n) const {
    if (n > zorder_) throw std::out_of_range("z-coefficient beyond zorder");
    auto it = terms_.find(n);
    return it == terms_.end() ? C() : it->second;
  }
  void set(int n, C c) {
    if (n < -1) throw std::domain_error("z-pole overflow");
    if (n > zorder_) return;
    if (detail::coeff_is_zero(c))
      terms_.erase(n);
    else
      terms_[n] = std::move(c);
  }
  void add(int n, const C& c) {
    if (n > zorder_) return;
    auto it = terms_.find(n);
    if (it == terms_.end())
      set(n, c);
    else {
      it->second += c;
      if (detail::coeff_is_zero(it->second)) terms_.erase(it);
    }
  }
  // Lowest stored exponent, or zorder + 1 when empty.
  int valuation() const { return terms_.empty() ? zorder_ + 1 : terms_.begin()->first; }

  ZSeries with_zorder(int z) const {
    ZSeries r(std::min(z, zorder_));
    for (const auto& [n, c] : terms_)
      if (n <= r.zorder_) r.terms_.emplace(n, c);
    return r;
  }

  ZSeries operator-() const {
    ZSeries r(zorder_);
    for (const auto& [n, c] : terms_) r.terms_.emplace(n, -c);
    return r;
  }
  ZSeries& operator+=(const ZSeries& o) {
    if (o.zorder_ < zorder_) *this = with_zorder(o.zorder_);
    for (const auto& [n, c] : o.terms_) add(n, c);
    return *this;
  }
  ZSeries& operator-=(const ZSeries& o) { return *this += -o; }
  friend ZSeries operator+(ZSeries a, const ZSeries& b) { return a += b; }
  friend ZSeries operator-(ZSeries a, const ZSeries& b) { return a -= b; }

  template <class S>
  ZSeries& scale(const S& s) {
    ZSeries r(zorder_);
    for (const auto& [n, c] : terms_) r.set(n, c * s);
    return *this = std::move(r);
  }

  friend ZSeries operator*(const ZSeries& a, const ZSeries& b) {
    int va = a.valuation(), vb = b.valuation();
    if (!a.terms_.empty() && !b.terms_.empty() && va + vb < -1) throw std::domain_error("z-pole overflow");
    int zo = std::min(a.zorder_ + std::max(vb, -1), b.zorder_ + std::max(va, -1));
    ZSeries r(zo);
    for (const auto& [na, ca] : a.terms_)
      for (const auto& [nb, cb] : b.terms_) {
        if (na + nb > zo) break;
        r.add(na + nb, ca * cb);
      }
    return r;
  }

  // Multiply by z^k.
  ZSeries shifted(int k) const {
    ZSeries r(zorder_ + k);
    for (const auto& [n, c] : terms_) r.set(n + k, c);
    return r;
  }

 private:
  Terms terms_;
  int zorder_ = 0;
};

using FormalZ = ZSeries<QSeries>;
using NumericZ = ZSeries<Cyclo8>;

// exp(a) for a with lowest z-exponent >= 1.
template <class C>
ZSeries<C> zs_exp(const ZSeries<C>& a) {
  if (!a.terms().empty() && a.valuation() < 1) throw std::domain_error("exp of non-nilpotent z-series");
  ZSeries<C> r(a.zorder());
  r.set(0, detail::one<C>());
  ZSeries<C> p = r;
  for (int k = 1; k <= a.zorder(); ++k) {
    p = p * a;
    if (p.terms().empty()) break;
    ZSeries<C> t = p;
    t.scale(Cyclo8(inv_factorial(k)));
    r += t;
  }
  return r;
}

// Constant QSeries coefficient per z-power.
FormalZ lift(const NumericZ& a, int64_t trunc = kExact);
// Multiply each coefficient by a q-series.
FormalZ times(const FormalZ& a, const QSeries& s);

// Per-coefficient agreement to truncation (zorders compared up to the smaller).
bool agree(const FormalZ& a, const FormalZ& b);

// Single-variable Laurent polynomial printing helpers.
std::string str(const NumericZ& a, const std::string& var = "z");

// t-series of z-series, t-exponents >= 1.
class TSeries {
 public:
  using Terms = std::map<int, NumericZ>;
  void set(int k, NumericZ v) {
    if (k < 1) throw std::domain_error("t-exponent must be >= 1");
    terms_[k] = std::move(v);
  }
  const Terms& terms() const { return terms_; }
  const NumericZ& at(int k) const { return terms_.at(k); }

 private:
  Terms terms_;
};

}  // namespace dq
