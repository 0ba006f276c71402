#include "dq/cyclo8.hpp"

#include <sstream>

namespace dq {

Rational parse_rational(const std::string& s) {
  std::string t;
  for (char ch : s)
    if (ch != ' ') t += ch;
  if (t.empty()) throw std::invalid_argument("empty rational");
  if (t[0] == '+') t.erase(0, 1);
  for (size_t k = 0; k < t.size(); ++k) {
    char ch = t[k];
    bool ok = (ch >= '0' && ch <= '9') || ch == '/' || (ch == '-' && k == 0);
    if (!ok) throw std::invalid_argument("bad rational: " + s);
  }
  Rational r;
  if (r.set_str(t, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  r.canonicalize();
  return r;
}

std::string rational_str(const Rational& r) { return r.get_str(); }

Cyclo8::Cyclo8(Rational a0, Rational a1, Rational a2, Rational a3)
    : c_{std::move(a0), std::move(a1), std::move(a2), std::move(a3)} {
  for (auto& v : c_) v.canonicalize();
}

Cyclo8 Cyclo8::zeta_pow(long k) {
  long m = ((k % 8) + 8) % 8;
  Cyclo8 r;
  if (m < 4)
    r.c_[m] = 1;
  else
    r.c_[m - 4] = -1;
  return r;
}

Cyclo8 Cyclo8::root_of_unity(const Rational& a) {
  Rational e = a * 8;
  e.canonicalize();
  if (e.get_den() != 1) throw std::domain_error("phase outside Q(zeta_8)");
  mpz_class n = e.get_num() % 8;
  return zeta_pow(n.get_si());
}

bool Cyclo8::is_zero() const {
  return c_[0] == 0 && c_[1] == 0 && c_[2] == 0 && c_[3] == 0;
}

bool Cyclo8::is_rational() const { return c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }

Cyclo8 Cyclo8::operator-() const {
  Cyclo8 r;
  for (int k = 0; k < 4; ++k) r.c_[k] = -c_[k];
  return r;
}

Cyclo8& Cyclo8::operator+=(const Cyclo8& o) {
  for (int k = 0; k < 4; ++k)
    if (o.c_[k] != 0) c_[k] += o.c_[k];
  return *this;
}

Cyclo8& Cyclo8::operator-=(const Cyclo8& o) {
  for (int k = 0; k < 4; ++k)
    if (o.c_[k] != 0) c_[k] -= o.c_[k];
  return *this;
}

Cyclo8& Cyclo8::operator*=(const Rational& r) {
  for (auto& v : c_)
    if (v != 0) v *= r;
  return *this;
}

Cyclo8& Cyclo8::operator*=(const Cyclo8& o) {
  if (o.is_rational()) return *this *= o.c_[0];
  if (is_rational()) {
    Rational s = c_[0];
    *this = o;
    return *this *= s;
  }
  std::array<Rational, 4> r{};
  for (int a = 0; a < 4; ++a) {
    if (c_[a] == 0) continue;
    for (int b = 0; b < 4; ++b) {
      if (o.c_[b] == 0) continue;
      int k = a + b;
      if (k < 4)
        r[k] += c_[a] * o.c_[b];
      else
        r[k - 4] -= c_[a] * o.c_[b];
    }
  }
  c_ = std::move(r);
  return *this;
}

Cyclo8 Cyclo8::galois(int k) const {
  Cyclo8 r;
  for (int a = 0; a < 4; ++a) {
    if (c_[a] == 0) continue;
    Cyclo8 t = zeta_pow(static_cast<long>(a) * k);
    t *= c_[a];
    r += t;
  }
  return r;
}

Rational Cyclo8::norm() const {
  Cyclo8 p = *this * galois(3) * galois(5) * galois(7);
  return p.c_[0];
}

Cyclo8 Cyclo8::inverse() const {
  if (is_zero()) throw std::domain_error("zero divisor");
  if (is_rational()) return Cyclo8(Rational(1) / c_[0]);
  Cyclo8 co = galois(3) * galois(5) * galois(7);
  Rational n = (*this * co).c_[0];
  co *= Rational(1) / n;
  return co;
}

Cyclo8& Cyclo8::operator/=(const Cyclo8& o) {
  if (o.is_zero()) throw std::domain_error("zero divisor");
  if (o.is_rational()) return *this *= Rational(1) / o.c_[0];
  return *this *= o.inverse();
}

Cyclo8 Cyclo8::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Cyclo8 r(1), b = *this;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

namespace {
void append_term(std::ostringstream& os, bool& first, const Rational& c, const std::string& sym,
                 bool latex) {
  if (c == 0) return;
  Rational a = abs(c);
  bool neg = c < 0;
  if (first)
    os << (neg ? "-" : "");
  else
    os << (neg ? " - " : " + ");
  first = false;
  if (sym.empty()) {
    if (latex && a.get_den() != 1)
      os << "\\frac{" << a.get_num() << "}{" << a.get_den() << "}";
    else
      os << a.get_str();
    return;
  }
  if (a != 1) {
    if (latex && a.get_den() != 1)
      os << "\\frac{" << a.get_num() << "}{" << a.get_den() << "}";
    else
      os << a.get_str() << (latex ? "" : "*");
  }
  os << sym;
}
}  // namespace

std::string Cyclo8::str() const {
  if (is_rational()) return c_[0].get_str();
  std::ostringstream os;
  bool first = true;
  const char* syms[4] = {"", "zeta", "zeta^2", "zeta^3"};
  for (int k = 0; k < 4; ++k) append_term(os, first, c_[k], syms[k], false);
  return os.str();
}

std::string Cyclo8::latex() const {
  if (is_rational() && c_[0].get_den() == 1) return c_[0].get_str();
  std::ostringstream os;
  bool first = true;
  const char* syms[4] = {"", "\\zeta_8", "\\zeta_8^{2}", "\\zeta_8^{3}"};
  for (int k = 0; k < 4; ++k) append_term(os, first, c_[k], syms[k], true);
  if (first) return "0";
  return os.str();
}

}  // namespace dq
