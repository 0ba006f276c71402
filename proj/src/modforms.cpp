#include "dq/modforms.hpp"

#include <cmath>
#include <mutex>
#include <sstream>

namespace dq {

Rational bernoulli(unsigned n) {
  static std::mutex mu;
  static std::vector<Rational> cache{Rational(1)};
  std::lock_guard<std::mutex> lock(mu);
  while (cache.size() <= n) {
    // sum_{k<m} C(m+1,k) B_k = -(m+1) B_m
    unsigned m = cache.size();
    Rational s = 0;
    mpz_class binom = 1;  // C(m+1, 0)
    for (unsigned k = 0; k < m; ++k) {
      s += Rational(binom) * cache[k];
      binom = binom * (m + 1 - k) / (k + 1);
    }
    Rational b = -s / Rational(m + 1);
    b.canonicalize();
    cache.push_back(b);
  }
  return cache[n];
}

namespace {

// prod_{n>0} (1 - q^n), exponents on the integer grid.
QSeries euler_product(int64_t T) {
  QSeries r(T);
  for (int64_t k = 0;; ++k) {
    bool any = false;
    for (int64_t kk : {k, -k}) {
      if (k == 0 && kk != 0) continue;
      int64_t e = kk * (3 * kk - 1) / 2 * kGrid;
      if (e < T) {
        r.add_term(e, Cyclo8((kk % 2 == 0) ? 1 : -1));
        any = true;
      }
      if (k == 0) break;
    }
    if (!any && k > 0) break;
  }
  return r;
}

QSeries eta(int64_t T) { return euler_product(T - 2).shifted(2); }
QSeries eta_2tau(int64_t T) { return qs_rescale(euler_product((T - 4 + 1) / 2 + 1), 2, 1).shifted(4).truncated(T); }
QSeries eta_half(int64_t T) { return qs_rescale(euler_product(2 * (T - 1)), 1, 2).shifted(1).truncated(T); }

QSeries theta_sum(int mu, int nu, int64_t T) {
  QSeries r(T);
  for (int64_t m = mu; 6 * m * m < T; m += 2) {
    // m = 2n + mu for n >= 0, and its negative -m = 2n' + mu for n' = -n - mu
    int64_t n = (m - mu) / 2;
    int sign = (nu && (n % 2)) ? -1 : 1;
    r.add_term(6 * m * m, Cyclo8(sign));
    if (m != 0) {
      int64_t n2 = -n - mu;
      int sign2 = (nu && (n2 % 2)) ? -1 : 1;
      r.add_term(6 * m * m, Cyclo8(sign2));
    }
  }
  return r;
}

mpz_class sigma(int64_t n, unsigned k, bool odd_only) {
  mpz_class s = 0;
  for (int64_t d = 1; d <= n; ++d) {
    if (n % d) continue;
    if (odd_only && d % 2 == 0) continue;
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), d, k);
    s += p;
  }
  return s;
}

QSeries e_value(int which, int64_t T) {
  QSeries r(T);
  if (which == 1) {
    r.add_term(0, Cyclo8(Rational(-1, 6)));
    for (int64_t n = 1; n * kGrid < T; ++n) r.add_term(n * kGrid, Cyclo8(Rational(-4 * sigma(n, 1, true))));
  } else {
    r.add_term(0, Cyclo8(Rational(1, 12)));
    for (int64_t n = 1; n * 24 < T; ++n) {
      mpz_class c = 2 * sigma(n, 1, true);
      if (which == 3 && n % 2) c = -c;
      r.add_term(n * 24, Cyclo8(Rational(c)));
    }
  }
  return r;
}

const Cyclo8& zeta_m1() {
  static const Cyclo8 z = Cyclo8::root_of_unity(Rational(-1, 8));
  return z;
}

QSeries compute(const std::string& name, int64_t T) {
  auto eta_pow = [&](int k) { return eta(T + 48).pow(k); };
  if (name == "eta") return eta(T);
  if (name == "eta_2tau") return eta_2tau(T);
  if (name == "eta_half") return eta_half(T);
  if (name == "Delta") return euler_product(T).pow(24).shifted(kGrid).truncated(T);
  if (name == "theta") return theta_sum(0, 0, T);
  if (name == "theta01") return theta_sum(0, 1, T);
  if (name == "theta10") return theta_sum(1, 0, T);
  if (name == "theta11") return QSeries(T);
  if (name == "f") return theta_sum(0, 1, T) * theta_sum(1, 0, T) * Cyclo8(zeta_m1() * Cyclo8(Rational(1, 2)));
  if (name == "R") {
    int64_t W = T + 48;
    QSeries num = euler_product(W).pow(48);
    QSeries den = qs_rescale(euler_product(2 * W), 1, 2).pow(24) * qs_rescale(euler_product(W / 2 + 1), 2, 1).pow(24);
    return (num / den).shifted(-24);
  }
  if (name == "e1") return e_value(1, T);
  if (name == "e2") return e_value(2, T);
  if (name == "e3") return e_value(3, T);
  if (name == "U" || name == "u") {
    QSeries f = theta_sum(0, 1, T + 48) * theta_sum(1, 0, T + 48) * Cyclo8(zeta_m1() * Cyclo8(Rational(1, 2)));
    QSeries num = e_value(3, T + 48) * Cyclo8(-3);
    QSeries f2 = f * f;
    return name == "U" ? num / f2 : f2 / num;
  }
  if (name == "G") return eisenstein(2, T) + e_value(3, T) * Cyclo8(Rational(1, 2));
  if (name == "Utilde" || name == "utilde") {
    QSeries e2t = eta_2tau(T + 96);
    QSeries num = e_value(1, T) * Cyclo8(-12) * e2t.pow(4);
    QSeries den = eta_pow(8);
    return name == "Utilde" ? num / den : den / num;
  }
  if (name == "eta4_eta2tau2") return eta_pow(4) / eta_2tau(T + 48).pow(2);
  if (name == "eta2tau2_eta4") return eta_2tau(T + 48).pow(2) / eta_pow(4);
  if (name == "fW") return eta_pow(4) / eta_2tau(T + 48).pow(2) * Cyclo8(Rational(-1, 2));
  if (name == "G2e1_W") {
    QSeries a = eisenstein(2, T) * Cyclo8(4) + e_value(1, T) * Cyclo8(2);
    return a * eta_2tau(T + 96).pow(4) / eta_pow(8);
  }
  if (name == "RW") return eta_2tau(T + 96).pow(24) / eta_pow(24) * Cyclo8(-4096);
  if (name.size() >= 2 && name[0] == 'G' && name.find_first_not_of("0123456789", 1) == std::string::npos)
    return eisenstein(std::stoul(name.substr(1)), T);
  throw std::invalid_argument("unknown series name: " + name);
}

}  // namespace

QSeries eisenstein(unsigned k, int64_t T) {
  QSeries r(T);
  if (k % 2 || k == 0) return r;
  r.add_term(0, Cyclo8(-bernoulli(k) / Rational(2 * k)));
  for (int64_t n = 1; n * kGrid < T; ++n) r.add_term(n * kGrid, Cyclo8(Rational(sigma(n, k - 1, false))));
  return r;
}

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names{
      "eta",   "eta_2tau", "eta_half", "Delta", "theta", "theta01", "theta10", "theta11",
      "f",     "R",        "e1",       "e2",    "e3",    "U",       "u",       "G",
      "Utilde", "utilde",  "eta4_eta2tau2", "eta2tau2_eta4", "fW", "G2e1_W", "RW", "G2", "G4", "G6"};
  return names;
}

QSeries named_series_grid(const std::string& name, int64_t T) {
  static std::mutex mu;
  static std::map<std::string, QSeries> memo;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(name);
    if (it != memo.end() && it->second.trunc() >= T) return it->second.truncated(T);
  }
  int64_t W = T;
  QSeries s;
  for (int iter = 0;; ++iter) {
    s = compute(name, W);
    if (s.trunc() >= T) break;
    if (iter > 10) throw std::logic_error("named_series: precision loop did not converge for " + name);
    W += (T - s.trunc()) + kGrid;
  }
  s = s.truncated(T);
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = memo[name];
  if (slot.terms().empty() || slot.trunc() < s.trunc()) slot = s;
  return s;
}

QSeries named_series(const std::string& name, const Rational& qorder) {
  return named_series_grid(name, grid_exponent(qorder));
}

FormalZ theta_charz(int mu, int nu, const FormalZ& w, const Rational& qorder, int zorder) {
  if (!w.terms().empty() && w.valuation() < 1)
    throw std::domain_error("theta_charz needs an argument of z-valuation >= 1");
  int64_t T = grid_exponent(qorder);
  FormalZ result(zorder);
  FormalZ P(zorder);
  P.set(0, QSeries::constant(Cyclo8(1)));
  for (int k = 0; k <= zorder; ++k) {
    QSeries S(T);
    for (int64_t m = mu; 6 * m * m < T; m += 2) {
      for (int side = 0; side < 2; ++side) {
        if (m == 0 && side == 1) continue;
        int64_t mm = side ? -m : m;
        int64_t n = (mm - mu) / 2;
        int sign = (nu && (n % 2)) ? -1 : 1;
        // (n + mu/2)^k = (mm/2)^k
        Rational base(mm, 2);
        base.canonicalize();
        mpq_class pk = 1;
        for (int j = 0; j < k; ++j) pk *= base;
        S.add_term(6 * m * m, Cyclo8(pk * sign));
      }
    }
    FormalZ term = times(P, S);
    term.scale(Cyclo8(inv_factorial(k)));
    result += term;
    if (k < zorder) P = P * w;
    if (P.terms().empty()) break;
  }
  return result;
}

// ---------------------------------------------------------------- u-extraction

namespace {

// f^2 U^r R / 4, cached per r at the largest truncation requested.
QSeries residue_kernel(int r, int64_t T) {
  static std::mutex mu;
  static std::map<int, QSeries> memo;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(r);
    if (it != memo.end() && it->second.trunc() >= T) return it->second.truncated(T);
  }
  // valuations: f^2 -> 1/4, U^r -> -r/4, R -> -1/2
  int64_t vk = 12 - 12 * r - 24;
  QSeries f = named_series_grid("f", T - vk + 6 + kGrid);
  QSeries f2 = f * f;
  QSeries Ur = named_series_grid("U", T - vk + 12 * r + kGrid).pow(r);
  QSeries R = named_series_grid("R", T - vk + kGrid);
  QSeries K = f2 * Ur * R * Cyclo8(Rational(1, 4));
  if (K.trunc() < T) throw std::logic_error("residue kernel precision");
  K = K.truncated(T);
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = memo[r];
  if (slot.terms().empty() || slot.trunc() < K.trunc()) slot = K;
  return K;
}

void check_order(const QSeries& F, int r) {
  int64_t need = 12 * (r + 1);
  if (!F.exact() && F.trunc() <= need) {
    std::ostringstream os;
    os << "order starvation: Coeff_{u^" << r + 1 << "} needs the series known past q^"
       << exponent_value(need).get_str() << " but it is known only below q^" << exponent_value(F.trunc()).get_str();
    throw OrderStarvation(os.str(), exponent_value(need + 1));
  }
}

}  // namespace

Cyclo8 coeff_in_u_residue(const QSeries& F, int r) {
  if (r < 0) throw std::invalid_argument("coeff_in_u: r must be >= 0");
  check_order(F, r);
  if (F.is_zero()) return Cyclo8();
  int64_t vF = F.valuation();
  int64_t need = 12 * (r + 1);
  if (vF > need) return Cyclo8();
  QSeries K = residue_kernel(r, -vF + 1);
  Cyclo8 acc;
  for (const auto& [e, c] : F.terms()) {
    if (e > need) break;
    auto it = K.terms().find(-e);
    if (it != K.terms().end()) acc += c * it->second;
  }
  return acc;
}

Cyclo8 coeff_in_u_reversion(const QSeries& F, int r) {
  if (r < 0) throw std::invalid_argument("coeff_in_u: r must be >= 0");
  check_order(F, r);
  if (F.is_zero()) return Cyclo8();
  const int m = r + 1;
  const int kappa = m % 2;
  const int64_t jt = (m - kappa) / 2;
  // class q^{kappa/4} A(s), s = q^{1/2}; exponent e = 12 kappa + 24 j
  int64_t TF = F.exact() ? 12 * kappa + 24 * (jt + 1) : F.trunc();
  int64_t s_trunc_count = (TF - 12 * kappa + 23) / 24;  // j < this is known
  QSeries A(s_trunc_count * kGrid);
  for (const auto& [e, c] : F.terms()) {
    if (e % 12 != 0) continue;
    int64_t k4 = e / 12;
    if (((k4 % 2) + 2) % 2 != kappa) continue;
    int64_t j = (e - 12 * kappa) / 24;
    A.add_term(j * kGrid, c);
  }
  if (F.exact()) A = A.truncated((jt + 1) * kGrid);
  int64_t kmin = A.is_zero() ? 0 : std::min<int64_t>(0, A.valuation() / kGrid);
  int64_t span = jt + 2 - kmin;  // relative precision needed in s
  // u = i q^{1/4} h(s)
  QSeries u = named_series_grid("u", 12 + 24 * (span + 1));
  const Cyclo8 minus_i = -Cyclo8::i();
  QSeries h((span + 1) * kGrid);
  for (const auto& [e, c] : u.terms()) h.add_term((e - 12) / 24 * kGrid, c * minus_i);
  QSeries B = kappa ? QSeries::divide(A, h) : A;
  QSeries V = (h * h).shifted(kGrid);
  QSeries S = qs_revert(V);
  QSeries C = qs_substitute(B, S);
  if (C.trunc() <= jt * kGrid) throw OrderStarvation("order starvation in u-reversion", exponent_value(12 * m + 1));
  Cyclo8 b = C.coeff(jt * kGrid);
  // v^m = i^{-m} u^m
  return b * Cyclo8::zeta_pow(-2 * m);
}

CoeffInU coeff_in_u_both(const QSeries& F, int r) {
  return CoeffInU{coeff_in_u_residue(F, r), coeff_in_u_reversion(F, r)};
}

Cyclo8 coeff_in_u(const QSeries& F, int r) {
  CoeffInU both = coeff_in_u_both(F, r);
  if (both.residue != both.reversion)
    throw std::logic_error("coeff_in_u: residue (" + both.residue.str() + ") and reversion (" +
                           both.reversion.str() + ") disagree");
  return both.residue;
}

// ---------------------------------------------------------------- U polynomials

int UPoly::degree() const {
  for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k)
    if (!c[k].is_zero()) return k;
  return -1;
}

QSeries UPoly::eval(int64_t trunc) const {
  int d = std::max(degree(), 0);
  QSeries U = named_series_grid("U", trunc + 12 * d + kGrid);
  QSeries acc(trunc);
  QSeries p = QSeries::constant(Cyclo8(1));
  for (int k = 0; k <= degree(); ++k) {
    if (!c[k].is_zero()) acc += p * c[k];
    p = p * U;
  }
  return acc.truncated(trunc);
}

std::string UPoly::str(const std::string& var) const {
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    if (c[k].is_zero()) continue;
    bool simple = c[k].is_rational();
    bool neg = simple && c[k][0] < 0;
    std::string cs = neg ? (-c[k]).str() : c[k].str();
    if (!simple) cs = "(" + cs + ")";
    if (!first) os << (neg ? " - " : " + ");
    else if (neg) os << "-";
    first = false;
    if (k == 0) {
      os << cs;
      continue;
    }
    if (cs != "1") os << cs << "*";
    os << var;
    if (k > 1) os << "^" << k;
  }
  if (first) return "0";
  return os.str();
}

UPoly as_poly_in_U(const QSeries& F) {
  UPoly out;
  if (F.trunc() <= 0) throw std::domain_error("not polynomial in U: series not known past q^0");
  if (F.is_zero()) return out;
  int64_t v = F.valuation();
  if (v > 0 || (-v) % 12 != 0) throw std::domain_error("not polynomial in U");
  int d = static_cast<int>(-v / 12);
  int64_t T = F.exact() ? kGrid : F.trunc();
  QSeries U = named_series_grid("U", T + 12 * d + kGrid);
  std::vector<QSeries> pw(d + 1);
  pw[0] = QSeries::constant(Cyclo8(1));
  for (int k = 1; k <= d; ++k) pw[k] = (pw[k - 1] * U).truncated(T);
  out.c.assign(d + 1, Cyclo8());
  QSeries rem = F.truncated(T);
  for (int k = d; k >= 0; --k) {
    Cyclo8 lead = pw[k].coeff(-12 * k);
    Cyclo8 ck = rem.coeff(-12 * k) / lead;
    out.c[k] = ck;
    if (!ck.is_zero()) rem -= pw[k] * ck;
  }
  if (!rem.is_zero()) throw std::domain_error("not polynomial in U");
  return out;
}

// ---------------------------------------------------------------- y-expansion

Cyclo8 YLaurent::coeff(int k) const {
  if (k >= trunc) throw std::out_of_range("y-coefficient beyond truncation");
  auto it = c.find(k);
  return it == c.end() ? Cyclo8() : it->second;
}

std::map<int, Cyclo8> YLaurent::principal() const {
  std::map<int, Cyclo8> p;
  for (const auto& [k, v] : c)
    if (k < 0) p.emplace(k, v);
  return p;
}

QSeries y_as_q_series(int64_t trunc) {
  return named_series_grid("Utilde", trunc) - QSeries::constant(Cyclo8(2));
}

YLaurent expand_in_y(const QSeries& F, int yorder) {
  if (!F.integral_exponents()) throw std::domain_error("not a series in integral q");
  YLaurent out;
  if (F.is_zero()) {
    out.trunc = F.exact() ? yorder : std::min<int64_t>(yorder, F.trunc() / kGrid);
    return out;
  }
  int64_t kmin = std::min<int64_t>(0, F.valuation() / kGrid);
  int64_t rho = yorder - kmin;
  QSeries y = y_as_q_series((rho + 1) * kGrid);
  QSeries q_of_y = qs_revert(y);
  QSeries Fy = qs_substitute(F.exact() ? F : F, q_of_y);
  int64_t t = std::min<int64_t>(Fy.trunc() >= kExact ? yorder * kGrid : Fy.trunc(), yorder * kGrid);
  out.trunc = static_cast<int>((t + kGrid - 1) / kGrid);
  for (const auto& [e, c] : Fy.terms())
    if (e < t) out.c.emplace(static_cast<int>(e / kGrid), c);
  return out;
}

}  // namespace dq
