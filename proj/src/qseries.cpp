#include "dq/qseries.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <vector>

namespace dq {

int64_t grid_exponent(const Rational& e) {
  Rational s = e * kGrid;
  s.canonicalize();
  if (s.get_den() != 1) throw std::domain_error("exponent grid overflow");
  return s.get_num().get_si();
}

Rational exponent_value(int64_t e) {
  Rational r(e, kGrid);
  r.canonicalize();
  return r;
}

QSeries QSeries::constant(const Cyclo8& c, int64_t trunc) {
  return monomial(0, c, trunc);
}

QSeries QSeries::monomial(int64_t e, const Cyclo8& c, int64_t trunc) {
  QSeries s(trunc);
  s.add_term(e, c);
  return s;
}

Cyclo8 QSeries::coeff(int64_t e) const {
  if (e >= trunc_) {
    std::ostringstream os;
    os << "coefficient at q^" << exponent_value(e).get_str() << " beyond truncation q^"
       << exponent_value(trunc_).get_str();
    throw std::out_of_range(os.str());
  }
  auto it = terms_.find(e);
  return it == terms_.end() ? Cyclo8() : it->second;
}

void QSeries::add_term(int64_t e, const Cyclo8& c) {
  if (e >= trunc_ || c.is_zero()) return;
  auto [it, fresh] = terms_.try_emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

int64_t QSeries::valuation() const { return terms_.empty() ? trunc_ : terms_.begin()->first; }

bool QSeries::integral_exponents() const {
  for (const auto& [e, c] : terms_)
    if (e % kGrid != 0) return false;
  return true;
}

QSeries QSeries::truncated(int64_t t) const {
  if (t >= trunc_) return *this;
  QSeries r(t);
  for (const auto& [e, c] : terms_) {
    if (e >= t) break;
    r.terms_.emplace(e, c);
  }
  return r;
}

QSeries QSeries::operator-() const {
  QSeries r(trunc_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

QSeries& QSeries::operator+=(const QSeries& o) {
  int64_t t = std::min(trunc_, o.trunc_);
  if (t < trunc_) *this = truncated(t);
  for (const auto& [e, c] : o.terms_) {
    if (e >= t) break;
    add_term(e, c);
  }
  return *this;
}

QSeries& QSeries::operator-=(const QSeries& o) { return *this += -o; }

QSeries& QSeries::operator*=(const Cyclo8& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

QSeries operator*(const QSeries& a, const QSeries& b) {
  int64_t va = a.valuation(), vb = b.valuation();
  int64_t t = std::min(trunc_add(a.trunc_, vb), trunc_add(b.trunc_, va));
  QSeries r(t);
  for (const auto& [ea, ca] : a.terms_) {
    if (ea + vb >= t) break;
    for (const auto& [eb, cb] : b.terms_) {
      if (ea + eb >= t) break;
      r.add_term(ea + eb, ca * cb);
    }
  }
  return r;
}

QSeries QSeries::shifted(int64_t e) const {
  QSeries r(trunc_add(trunc_, e));
  for (const auto& [k, c] : terms_) r.terms_.emplace(k + e, c);
  return r;
}

namespace {
int64_t support_step(const QSeries& s, int64_t base, int64_t limit) {
  int64_t g = 0;
  for (const auto& [e, c] : s.terms()) {
    if (e >= limit) break;
    g = std::gcd(g, e - base);
  }
  return g;
}
}  // namespace

QSeries QSeries::inverse(std::optional<int64_t> cap) const {
  if (terms_.empty()) throw std::domain_error("indeterminate division");
  int64_t v = valuation();
  const Cyclo8 b0inv = terms_.begin()->second.inverse();
  if (terms_.size() == 1 && exact()) return monomial(-v, b0inv);
  int64_t rho;
  if (exact()) {
    if (!cap) throw std::domain_error("indeterminate division: exact divisor needs a truncation");
    rho = *cap + v;
  } else {
    rho = trunc_ - v;
    if (cap) rho = std::min(rho, *cap + v);
  }
  if (rho <= 0) return QSeries(-v + std::max<int64_t>(rho, 0));
  int64_t g = support_step(*this, v, v + rho);
  if (g == 0) return monomial(-v, b0inv, -v + rho);
  int64_t n = (rho + g - 1) / g;
  std::vector<std::pair<int64_t, const Cyclo8*>> bs;  // (index, coeff) for index >= 1
  for (const auto& [e, c] : terms_) {
    int64_t j = (e - v) / g;
    if (j >= n) break;
    if (j >= 1) bs.emplace_back(j, &c);
  }
  std::vector<Cyclo8> cs(n);
  cs[0] = b0inv;
  for (int64_t j = 1; j < n; ++j) {
    Cyclo8 acc;
    for (const auto& [i, bi] : bs) {
      if (i > j) break;
      if (!cs[j - i].is_zero()) acc += *bi * cs[j - i];
    }
    if (!acc.is_zero()) cs[j] = -(acc * b0inv);
  }
  QSeries r(-v + rho);
  for (int64_t j = 0; j < n; ++j)
    if (!cs[j].is_zero()) r.terms_.emplace(-v + j * g, cs[j]);
  return r;
}

QSeries QSeries::divide(const QSeries& a, const QSeries& b, std::optional<int64_t> cap) {
  if (b.is_zero()) throw std::domain_error("indeterminate division");
  int64_t vb = b.valuation();
  QSeries inv;
  if (b.exact() && b.terms_.size() > 1) {
    int64_t need;  // absolute truncation wanted for 1/b
    if (!a.exact()) {
      int64_t va = a.valuation();
      need = -vb + (a.trunc_ - va);
      if (cap) need = std::min(need, *cap - va);
    } else {
      if (!cap) throw std::domain_error("indeterminate division: exact divisor needs a truncation");
      need = *cap - a.valuation();
      if (a.is_zero()) need = *cap;
    }
    inv = b.inverse(need);
  } else {
    inv = b.inverse();
  }
  QSeries r = a * inv;
  if (cap) r = r.truncated(*cap);
  return r;
}

QSeries QSeries::pow(long k, std::optional<int64_t> cap) const {
  if (k == 0) return constant(Cyclo8(1));
  if (k < 0) {
    if (!cap) return inverse().pow(-k);
    // final valuation is k*v, so both need relative precision cap - k*v
    int64_t v = valuation();
    return inverse(-v + (*cap - k * v)).pow(-k, cap);
  }
  QSeries base = *this;
  if (cap && !is_zero()) {
    int64_t v = valuation();
    int64_t rel = *cap - k * v;
    base = base.truncated(v + std::max<int64_t>(rel, 0));
  }
  QSeries r = constant(Cyclo8(1));
  bool first = true;
  while (k) {
    if (k & 1) {
      r = first ? base : r * base;
      first = false;
    }
    k >>= 1;
    if (k) base = base * base;
  }
  if (cap) r = r.truncated(*cap);
  return r;
}

bool agree(const QSeries& a, const QSeries& b) {
  int64_t t = std::min(a.trunc(), b.trunc());
  return a.truncated(t).terms() == b.truncated(t).terms();
}

QSeries qs_exp(const QSeries& a, std::optional<int64_t> cap) {
  if (!a.is_zero() && a.valuation() <= 0)
    throw std::domain_error("exp of non-topologically-nilpotent series");
  int64_t t = a.trunc();
  if (cap) t = std::min(t, *cap);
  if (t >= kExact) {
    if (a.is_zero()) return QSeries::constant(Cyclo8(1));
    throw std::domain_error("exp of an exact series needs a truncation");
  }
  if (t <= 0) {
    if (a.is_zero() && a.trunc() <= 0)
      throw std::domain_error("exp of non-topologically-nilpotent series");
    return QSeries(t);
  }
  int64_t g = support_step(a, 0, t);
  if (g == 0) return QSeries::constant(Cyclo8(1), t);
  int64_t n = (t + g - 1) / g;
  std::vector<std::pair<int64_t, Cyclo8>> as;  // (i, i*a_i)
  for (const auto& [e, c] : a.terms()) {
    int64_t i = e / g;
    if (i >= n) break;
    as.emplace_back(i, c * Cyclo8(Rational(i)));
  }
  std::vector<Cyclo8> E(n);
  E[0] = Cyclo8(1);
  for (int64_t j = 1; j < n; ++j) {
    Cyclo8 acc;
    for (const auto& [i, ia] : as) {
      if (i > j) break;
      if (!E[j - i].is_zero()) acc += ia * E[j - i];
    }
    if (!acc.is_zero()) E[j] = acc * Cyclo8(Rational(1, j));
  }
  QSeries r(t);
  for (int64_t j = 0; j < n; ++j) r.add_term(j * g, E[j]);
  return r;
}

QSeries qs_log(const QSeries& a, std::optional<int64_t> cap) {
  if (a.is_zero() || a.valuation() != 0 || !a.terms().begin()->second.is_one())
    throw std::domain_error("log needs a series of the form 1 + O(q^e), e > 0");
  QSeries d = qs_qderiv(a);
  QSeries quot = QSeries::divide(d, a, cap ? cap : std::optional<int64_t>(a.trunc()));
  if (cap) quot = quot.truncated(*cap);
  QSeries r(quot.trunc());
  for (const auto& [e, c] : quot.terms()) r.add_term(e, c * Cyclo8(Rational(kGrid, e)));
  return r;
}

QSeries qs_qderiv(const QSeries& a) {
  QSeries r(a.trunc());
  for (const auto& [e, c] : a.terms()) r.add_term(e, c * Cyclo8(exponent_value(e)));
  return r;
}

QSeries qs_substitute(const QSeries& outer, const QSeries& inner) {
  if (!outer.integral_exponents()) throw std::domain_error("non-integral composition");
  if (inner.is_zero() || inner.valuation() <= 0)
    throw std::domain_error("substitution needs an inner series of positive valuation");
  if (outer.is_zero()) {
    if (outer.exact()) return QSeries();
    return QSeries(outer.trunc() >= kExact ? kExact : (outer.trunc() / kGrid) * inner.valuation());
  }
  int64_t v = inner.valuation();
  int64_t rho = inner.exact() ? kExact : inner.trunc() - v;
  int64_t kmin = outer.terms().begin()->first / kGrid;
  int64_t t = kExact;
  if (!outer.exact()) {
    int64_t ko = (outer.trunc() + kGrid - 1) / kGrid;  // first unknown integer exponent
    t = std::min(t, ko * v);
  }
  if (rho < kExact) t = std::min(t, kmin * v + rho);
  if (kmin < 0 && t >= kExact)
    throw std::domain_error("substitution with poles into an exact series needs a truncation");
  QSeries r(t);
  std::optional<int64_t> tc;
  if (t < kExact) tc = t;
  QSeries p = kmin < 0 ? inner.inverse(-v + (t - kmin * v)).pow(-kmin, tc) : inner.pow(kmin, tc);
  int64_t k = kmin;
  for (const auto& [e, c] : outer.terms()) {
    int64_t ke = e / kGrid;
    if (ke * v >= t) break;
    while (k < ke) {
      p = t >= kExact ? p * inner : (p * inner).truncated(t);
      ++k;
    }
    r += p * c;
  }
  return r.truncated(t);
}

QSeries qs_revert(const QSeries& a, std::optional<int64_t> cap) {
  if (a.is_zero() || a.valuation() != kGrid || !a.integral_exponents())
    throw std::domain_error("not reversible");
  int64_t t = a.trunc();
  if (cap) t = std::min(t, *cap);
  if (t >= kExact) {
    if (a.terms().size() == 1)
      return QSeries::monomial(kGrid, a.terms().begin()->second.inverse());
    throw std::domain_error("reversion of an exact series needs a truncation");
  }
  int64_t m = (t + kGrid - 1) / kGrid;  // integer exponents 1..m-1 are known
  std::vector<Cyclo8> ac(m);
  for (const auto& [e, c] : a.terms()) {
    int64_t j = e / kGrid;
    if (j >= m) break;
    ac[j] = c;
  }
  // pw[k][j] = [q^j] a^k
  std::vector<std::vector<Cyclo8>> pw(m, std::vector<Cyclo8>(m));
  if (m > 1) pw[1] = ac;
  for (int64_t k = 2; k < m; ++k)
    for (int64_t j = k; j < m; ++j) {
      Cyclo8 acc;
      for (int64_t i = 1; i <= j - (k - 1); ++i)
        if (!ac[i].is_zero() && !pw[k - 1][j - i].is_zero()) acc += ac[i] * pw[k - 1][j - i];
      pw[k][j] = acc;
    }
  std::vector<Cyclo8> b(m);
  if (m > 1) b[1] = ac[1].inverse();
  for (int64_t j = 2; j < m; ++j) {
    Cyclo8 acc;
    for (int64_t k = 1; k < j; ++k)
      if (!b[k].is_zero() && !pw[k][j].is_zero()) acc += b[k] * pw[k][j];
    b[j] = -(acc / pw[j][j]);
  }
  QSeries r(m * kGrid);
  for (int64_t j = 1; j < m; ++j) r.add_term(j * kGrid, b[j]);
  return r;
}

QSeries qs_rescale(const QSeries& a, int num, int den) {
  if (!((num == 1 && den == 2) || (num == 2 && den == 1)))
    throw std::invalid_argument("rescale factor must be 1/2 or 2");
  int64_t t;
  if (a.exact())
    t = kExact;
  else if (den == 2)
    t = a.trunc() >= 0 ? (a.trunc() + 1) / 2 : -((-a.trunc()) / 2);
  else
    t = a.trunc() * 2;
  QSeries r(t);
  for (const auto& [e, c] : a.terms()) {
    if ((e * num) % den != 0) throw std::domain_error("exponent grid overflow");
    r.add_term(e * num / den, c);
  }
  return r;
}

namespace {
std::string exp_text(int64_t e) {
  Rational v = exponent_value(e);
  if (v.get_den() == 1) return v.get_str();
  return "(" + v.get_str() + ")";
}
std::string exp_latex(int64_t e) {
  Rational v = exponent_value(e);
  return "{" + v.get_str() + "}";
}
}  // namespace

std::string QSeries::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    std::string cs = c.str();
    bool simple = c.is_rational();
    bool neg = simple && c[0] < 0;
    if (neg) cs = (-c).str();
    if (!first) os << (neg ? " - " : " + ");
    else if (neg) os << "-";
    first = false;
    if (!simple) cs = "(" + cs + ")";
    if (e == 0) {
      os << cs;
    } else {
      if (cs != "1") os << cs << "*";
      os << "q";
      if (e != kGrid) os << "^" << exp_text(e);
    }
  }
  if (!exact()) {
    if (!first) os << " + ";
    os << "O(q^" << exp_text(trunc_) << ")";
  } else if (first) {
    os << "0";
  }
  return os.str();
}

std::string QSeries::latex() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    bool simple = c.is_rational();
    bool neg = simple && c[0] < 0;
    std::string cs = neg ? (-c).latex() : c.latex();
    if (!first) os << (neg ? " - " : " + ");
    else if (neg) os << "-";
    first = false;
    if (!simple) cs = "\\left(" + cs + "\\right)";
    if (e == 0) {
      os << cs;
    } else {
      if (cs != "1") os << cs;
      os << "q";
      if (e != kGrid) os << "^" << exp_latex(e);
    }
  }
  if (!exact()) {
    if (!first) os << " + ";
    os << "O(q^" << exp_latex(trunc_) << ")";
  } else if (first) {
    os << "0";
  }
  return os.str();
}

}  // namespace dq
