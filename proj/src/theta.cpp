#include "dq/theta.hpp"

#include <numeric>
#include <sstream>
#include <unordered_map>

namespace dq {

namespace {

Rational factorial(unsigned n) { return Rational(1) / inv_factorial(n); }

Rational lat_dot(const Lattice& L, const IVec& a, const QVec& x) { return L.dot(to_rational(a), x); }

// x = xi / D with xi integral.
struct ScaledVector {
  IVec num;
  int64_t den = 1;
};

ScaledVector scale_to_integral(const QVec& x) {
  mpz_class d = 1;
  for (const auto& v : x) d = lcm(d, mpz_class(v.get_den()));
  ScaledVector s;
  s.den = d.get_si();
  for (const auto& v : x) {
    mpq_class t = v * mpq_class(d);
    t.canonicalize();
    s.num.push_back(mpz_class(t.get_num()).get_si());
  }
  return s;
}

bool proportional(const IVec& a, const IVec& b) {
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = i + 1; j < a.size(); ++j)
      if (a[i] * b[j] != a[j] * b[i]) return false;
  return true;
}

// Counts of q^{Q(xi)} e^{(xi.x) z} i^k, keyed by (grid exponent, X.(G xi)).
class ThetaAccumulator {
 public:
  ThetaAccumulator(const Lattice& L, const IVec& b, const QVec& x) : sx_(scale_to_integral(x)) {
    lx_ = mat_vec(L.gram, sx_.num);
    lb_ = mat_vec(L.gram, b);
  }
  const std::vector<IVec> covectors() const { return {lx_, lb_}; }

  // values[0] = X.(G xi), values[1] = X.(G b); phase e^{pi i X.b / 2} = i^{X.b}
  void add(int64_t q8, int64_t v, int64_t xb, int sign) {
    auto& slot = counts_[Key{6 * q8, v}];
    switch (((xb % 4) + 4) % 4) {
      case 0: slot.re += sign; break;
      case 1: slot.im += sign; break;
      case 2: slot.re -= sign; break;
      default: slot.im -= sign; break;
    }
  }
  void add_leaf(const EnumLeaf& leaf, int sign) { add(leaf.q8, leaf.values[0], leaf.values[1], sign); }
  // +xi and the mirrored -xi with opposite sign
  void add_sinh(const EnumLeaf& leaf) {
    add(leaf.q8, leaf.values[0], leaf.values[1], 1);
    add(leaf.q8, -leaf.values[0], -leaf.values[1], -1);
  }
  bool empty() const {
    for (const auto& kv : counts_)
      if (kv.second.re || kv.second.im) return false;
    return true;
  }

  FormalZ to_formal(int64_t trunc, int zorder) const {
    // z^n coefficient: sum (v / 2D)^n / n! (re + i im) q^e
    std::vector<std::map<int64_t, std::pair<mpz_class, mpz_class>>> acc(zorder + 1);
    for (const auto& [key, ct] : counts_) {
      if (!ct.re && !ct.im) continue;
      mpz_class vp = 1;
      for (int n = 0; n <= zorder; ++n) {
        auto& cell = acc[n][key.e];
        cell.first += vp * ct.re;
        cell.second += vp * ct.im;
        vp *= key.v;
      }
    }
    FormalZ out(zorder);
    Rational scale = 1;
    for (int n = 0; n <= zorder; ++n) {
      QSeries s(trunc);
      for (const auto& [e, cell] : acc[n]) {
        if (cell.first == 0 && cell.second == 0) continue;
        s.add_term(e, Cyclo8(Rational(cell.first) * scale, 0, Rational(cell.second) * scale, 0));
      }
      out.set(n, std::move(s));
      scale /= Rational(2 * sx_.den * (n + 1));
    }
    return out;
  }

 private:
  struct Key {
    int64_t e, v;
    bool operator==(const Key& o) const { return e == o.e && v == o.v; }
  };
  struct KeyHash {
    size_t operator()(const Key& k) const {
      uint64_t h = static_cast<uint64_t>(k.e) * 0x9E3779B97F4A7C15ULL;
      h ^= static_cast<uint64_t>(k.v) + 0x7F4A7C159E3779B9ULL + (h << 6) + (h >> 2);
      return h;
    }
  };
  struct Count {
    int64_t re = 0, im = 0;
  };
  ScaledVector sx_;
  IVec lx_, lb_;
  std::unordered_map<Key, Count, KeyHash> counts_;
};

// 1/(1 - s e^{a z}) as a NumericZ.
NumericZ pole_factor(int s, const Rational& a, int zorder) {
  NumericZ p(zorder);
  if (a == 0) {
    if (s == 1) throw std::domain_error("undefined at this x");
    p.set(0, Cyclo8(Rational(1, 2)));
    return p;
  }
  auto c = inv_one_minus_exp(s, zorder);
  Rational ap = 1 / a;
  for (int n = -1; n <= zorder; ++n) {
    p.set(n, Cyclo8(c[n + 1] * ap));
    ap *= a;
  }
  return p;
}

NumericZ exp_linear(const Rational& a, int zorder) {
  NumericZ e(zorder);
  Rational ap = 1;
  for (int n = 0; n <= zorder; ++n) {
    e.set(n, Cyclo8(ap * inv_factorial(n)));
    ap *= a;
  }
  return e;
}

FormalZ gaussian(const QSeries& coeff, int zorder) {
  FormalZ a(zorder);
  if (zorder >= 2) a.set(2, coeff);
  return zs_exp(a);
}

int64_t margin_trunc(int64_t T, int zorder) { return T + 6 * (zorder + 4) + 2 * kGrid; }

}  // namespace

std::vector<Rational> inv_one_minus_exp(int s, int nmax) {
  if (s != 1 && s != -1) throw std::invalid_argument("inv_one_minus_exp: s must be +1 or -1");
  std::vector<Rational> c(nmax + 2);
  for (int n = -1; n <= nmax; ++n) {
    Rational b = -bernoulli(n + 1) / factorial(n + 1);
    if (s == -1) {
      mpz_class p;
      mpz_ui_pow_ui(p.get_mpz_t(), 2, n + 1);
      b *= Rational(p - 1);
    }
    b.canonicalize();
    c[n + 1] = b;
  }
  return c;
}

FormalZ kronecker_F(const Cyclo8& u_lin, const Cyclo8& v_lin, const Rational& qorder, int zorder) {
  if (u_lin.is_zero() || v_lin.is_zero()) throw std::domain_error("pole in z beyond floor");
  const int64_t T = grid_exponent(qorder);
  auto c = inv_one_minus_exp(1, zorder);
  FormalZ out(zorder);
  // -1/(1 - e^u) + 1/(1 - e^{-v})
  Cyclo8 up = u_lin.inverse(), vp = (-v_lin).inverse();
  for (int n = -1; n <= zorder; ++n) {
    Cyclo8 val = (vp - up) * Cyclo8(c[n + 1]);
    out.set(n, QSeries::constant(val, T));
    up *= u_lin;
    vp *= -v_lin;
  }
  // -2 sum sinh(n u + m v) q^{nm}
  std::vector<QSeries> odd(zorder + 1, QSeries(T));
  for (int64_t n = 1; n * kGrid < T; ++n)
    for (int64_t m = 1; n * m * kGrid < T; ++m) {
      Cyclo8 lin = u_lin * Cyclo8(n) + v_lin * Cyclo8(m);
      Cyclo8 p = lin;
      for (int k = 1; k <= zorder; ++k) {
        if (k % 2) odd[k].add_term(n * m * kGrid, p * Cyclo8(-2 * inv_factorial(k)));
        p *= lin;
      }
    }
  for (int k = 1; k <= zorder; k += 2) out.add(k, odd[k]);
  return out;
}

FormalZ theta_pole_group(const Lattice& L, const IVec& c, const IVec& b, const IVec& f, const IVec& h,
                         const QVec& x, const Rational& qorder, int zorder) {
  if (proportional(f, h)) throw std::domain_error("degenerate cusp pair");
  int64_t fh = L.dot(f, h);
  if (fh >= 0) throw std::domain_error("pole group needs f.h < 0");
  ThetaAccumulator acc(L, b, x);
  EnumRequest req;
  req.gram = L.gram;
  req.shift = c;
  req.p1 = f;
  req.p2 = h;
  req.r1 = IntRange::exactly(0);
  req.r2 = IntRange::between(2 * fh, -1);
  req.qmax = qorder;
  req.strict = true;
  req.linear = acc.covectors();
  enumerate(req, [&](const EnumLeaf& leaf) { acc.add_leaf(leaf, 1); });
  const int64_t T = grid_exponent(qorder);
  if (acc.empty()) {
    FormalZ z(zorder);
    for (int n = 0; n <= zorder; ++n) z.set(n, QSeries(T));
    return z;
  }
  FormalZ S = acc.to_formal(T, zorder + 1);
  int s = (L.dot(f, b) % 2 == 0) ? 1 : -1;
  NumericZ P = pole_factor(s, lat_dot(L, f, x), zorder + 1);
  return (S * lift(P)).with_zorder(zorder);
}

FormalZ theta_sinh_group(const ThetaRequest& req) {
  const Lattice& L = req.L;
  ThetaAccumulator acc(L, req.b, req.x);
  EnumRequest er;
  er.gram = L.gram;
  er.shift = req.c;
  er.p1 = req.f;
  er.p2 = req.g;
  er.r1 = IntRange::at_least(1);
  er.r2 = IntRange::at_most(-1);
  er.qmax = req.qorder;
  er.strict = true;
  er.linear = acc.covectors();
  enumerate(er, [&](const EnumLeaf& leaf) { acc.add_sinh(leaf); });
  return acc.to_formal(grid_exponent(req.qorder), req.zorder);
}

FormalZ theta_indef(const ThetaRequest& req) {
  const int64_t T = grid_exponent(req.qorder);
  if (req.f == req.g) {
    FormalZ z(req.zorder);
    for (int n = 0; n <= req.zorder; ++n) z.set(n, QSeries(T));
    return z;
  }
  FormalZ out = theta_sinh_group(req);
  out += theta_pole_group(req.L, req.c, req.b, req.f, req.g, req.x, req.qorder, req.zorder);
  out -= theta_pole_group(req.L, req.c, req.b, req.g, req.f, req.x, req.qorder, req.zorder);
  return out;
}

FormalZ rescale_z(const FormalZ& a, const QSeries& omega) {
  FormalZ r(a.zorder());
  QSeries p = QSeries::constant(Cyclo8(1));
  int at = 0;
  for (const auto& [n, c] : a.terms()) {
    if (n < 0) {
      r.set(n, c * omega.pow(n));
      continue;
    }
    while (at < n) {
      p = p * omega;
      ++at;
    }
    r.set(n, c * p);
  }
  return r;
}

FormalZ phi_dress(const Lattice& L, const IVec& c, const QVec& x, const FormalZ& raw, const Rational& qorder,
                  int zorder) {
  const int64_t T = margin_trunc(grid_exponent(qorder), zorder);
  QSeries f = named_series_grid("f", T);
  QSeries finv = f.inverse();
  QSeries theta = named_series_grid("theta", T);
  Cyclo8 phase = Cyclo8::root_of_unity(Rational(-3 * L.dot(c, c), 8));
  QSeries pre = theta.pow(-L.signature()) * finv * (phase * Cyclo8(2));
  QSeries G = named_series_grid("G", T);
  FormalZ gauss = gaussian(G * finv * finv * Cyclo8(L.dot(x, x)), zorder + 1);
  FormalZ body = rescale_z(raw, finv);
  return times(body * gauss, pre).with_zorder(zorder);
}

FormalZ phi_fn(const ThetaRequest& req) {
  ThetaRequest r = req;
  r.b = r.c;
  return phi_dress(req.L, req.c, req.x, theta_indef(r), req.qorder, req.zorder);
}

// ---------------------------------------------------------------- surface side

namespace {

int parity_sign(int64_t v) { return (v % 2 == 0) ? 1 : -1; }

// (-1)^{C(W+C)/2}
int class_sign(const SurfaceModel& S, const IVec& C, const IVec& W) {
  int64_t t = S.prod(C, W) + S.prod(C, C);
  if (t % 2) throw std::logic_error("W is not characteristic");
  return parity_sign(t / 2);
}

IVec neg(const IVec& v) {
  IVec r = v;
  for (auto& x : r) x = -x;
  return r;
}

// One Omega summand without its q-power.
NumericZ omega_term(const SurfaceModel& S, const IVec& C, const IVec& W, const IVec* cusp, const QVec& x,
                    int zorder) {
  QVec Wq = to_rational(W);
  Rational wx = S.prod(Wq, x);
  if (cusp) {
    NumericZ e = exp_linear(wx, zorder + 1);
    int s = parity_sign(S.prod(C, *cusp));
    Rational a = 2 * S.prod(to_rational(*cusp), x);
    NumericZ p = pole_factor(s, a, zorder + 1);
    NumericZ t = (e * p).with_zorder(zorder);
    t.scale(Cyclo8(class_sign(S, C, W)));
    return t;
  }
  NumericZ plus = exp_linear(wx, zorder);
  plus.scale(Cyclo8(class_sign(S, C, W)));
  NumericZ minus = exp_linear(-wx, zorder);
  minus.scale(Cyclo8(class_sign(S, C, neg(W))));
  return plus - minus;
}

template <class Fn>
void for_each_omega_term(const SurfaceModel& S, const BasicClassSets& B, const IVec& C, const IVec& F,
                         const IVec& G, const QVec& x, int zorder, Fn&& fn) {
  for (const auto& bc : B.BF) {
    NumericZ t = omega_term(S, C, bc.w, &F, x, zorder);
    fn(bc.w, -t);
  }
  for (const auto& bc : B.BG) fn(bc.w, omega_term(S, C, bc.w, &G, x, zorder));
  for (const auto& bc : B.BI) fn(bc.w, omega_term(S, C, bc.w, nullptr, x, zorder));
}

}  // namespace

FormalZ omega_fn(const SurfaceModel& S, const BasicClassSets& B, const IVec& C, const IVec& F, const IVec& G,
                 const QVec& x, int zorder) {
  FormalZ out(zorder);
  for_each_omega_term(S, B, C, F, G, x, zorder, [&](const IVec& W, const NumericZ& t) {
    int64_t e = -6 * S.prod(W, W);  // q^{-W^2/8}
    FormalZ ft(zorder);
    for (const auto& [n, c] : t.terms()) ft.set(n, QSeries::monomial(e, c));
    out += ft;
  });
  return out;
}

FormalZ omega_fn(const SurfaceModel& S, const IVec& C, const IVec& F, const IVec& G, const QVec& x, int zorder) {
  return omega_fn(S, basic_classes(S, F, G), C, F, G, x, zorder);
}

NumericZ oh_leading(const SurfaceModel& S, const BasicClassSets& B, const IVec& C, const IVec& F, const IVec& G,
                    const QVec& x, int zorder) {
  NumericZ out(zorder);
  if (!B.M) return out;
  for_each_omega_term(S, B, C, F, G, x, zorder, [&](const IVec& W, const NumericZ& t) {
    if (S.prod(W, W) == *B.M) out += t;
  });
  return out;
}

NumericZ oh_leading(const SurfaceModel& S, const IVec& C, const IVec& F, const IVec& G, const QVec& x, int zorder) {
  return oh_leading(S, basic_classes(S, F, G), C, F, G, x, zorder);
}

FormalZ structure_prefactor(const SurfaceModel& S, const QVec& x, int64_t trunc, int zorder) {
  const int64_t T = margin_trunc(trunc, zorder) - 6 * S.sigma();
  QSeries s = named_series_grid("eta2tau2_eta4", T);
  QSeries th = named_series_grid("theta10", T).pow(S.sigma());
  QSeries g = named_series_grid("G2e1_W", T);
  FormalZ gauss = gaussian(g * Cyclo8(-S.prod(x, x)), zorder);
  return times(gauss, th * s * Cyclo8(4));
}

FormalZ phi_W_image(const ThetaRequest& req, const IVec& w) {
  ThetaRequest r = req;
  r.b = req.c;
  r.c = w;
  FormalZ th = theta_indef(r);
  const int64_t T = margin_trunc(grid_exponent(req.qorder), req.zorder) + 6 * req.L.signature();
  const Lattice& L = req.L;
  QSeries s = named_series_grid("eta2tau2_eta4", T);
  QSeries th10 = named_series_grid("theta10", T).pow(-L.signature());
  Cyclo8 phase = -Cyclo8::root_of_unity(Rational(L.dot(req.c, req.c), 4));
  QSeries pre = th10 * s * (phase * Cyclo8(4));
  QSeries g = named_series_grid("G2e1_W", T);
  FormalZ gauss = gaussian(g * Cyclo8(L.dot(req.x, req.x)), req.zorder + 1);
  FormalZ body = rescale_z(th, s * Cyclo8(-2));
  return times(body * gauss, pre).with_zorder(req.zorder);
}

// ---------------------------------------------------------------- structure

int TPoly::degree() const {
  for (int k = static_cast<int>(p.size()) - 1; k >= 1; --k)
    if (!p[k].is_zero()) return k;
  return 0;
}

bool operator==(const TPoly& a, const TPoly& b) {
  size_t n = std::max(a.p.size(), b.p.size());
  for (size_t k = 1; k < n; ++k) {
    Cyclo8 x = k < a.p.size() ? a.p[k] : Cyclo8();
    Cyclo8 y = k < b.p.size() ? b.p[k] : Cyclo8();
    if (x != y) return false;
  }
  return true;
}

std::string TPoly::str(const std::string& var) const {
  UPoly u;
  u.c = p;
  if (!u.c.empty()) u.c[0] = Cyclo8();
  return u.str(var);
}

std::map<int, TPoly> structure_principal(const SurfaceModel& S, const BasicClassSets& B, const IVec& C,
                                         const IVec& F, const IVec& G, const QVec& x, int zorder) {
  std::map<int, TPoly> out;
  const int64_t T = 2 * kGrid;
  FormalZ om = omega_fn(S, B, C, F, G, x, zorder);
  QSeries s = named_series_grid("eta2tau2_eta4", T - 6 * S.sigma() + 6 * 8 * (B.k() + 2));
  FormalZ A = structure_prefactor(S, x, T, zorder + 1);
  FormalZ prod = (rescale_z(om, s) * A).with_zorder(zorder);
  for (int n = -1; n <= zorder; ++n) {
    TPoly P;
    P.p.assign(1, Cyclo8());
    QSeries c = prod.coeff(n);
    if (!c.is_zero()) {
      if (c.trunc() <= 0) throw std::logic_error("structure_principal: precision lost");
      YLaurent y = expand_in_y(c, 0);
      for (const auto& [k, v] : y.principal()) {
        size_t j = static_cast<size_t>(-k);
        if (P.p.size() <= j) P.p.resize(j + 1);
        P.p[j] = v;
      }
    }
    out[n] = P;
  }
  return out;
}

QSeries structure_singular_part(const TPoly& P, const Cyclo8& eps, int64_t trunc) {
  QSeries acc(trunc);
  if (P.degree() == 0) return acc;
  int64_t TU = trunc + 48 + 12 * P.degree();
  QSeries U = named_series_grid("U", TU);
  QSeries two = QSeries::constant(Cyclo8(2));
  QSeries a = (U - two).inverse();
  QSeries b = -(U + two).inverse();
  QSeries pa = QSeries::constant(Cyclo8(1)), pb = pa;
  for (int j = 1; j <= P.degree(); ++j) {
    pa = pa * a;
    pb = pb * b;
    if (P.p[j].is_zero()) continue;
    acc += (pa - pb * eps) * P.p[j];
  }
  return acc.truncated(trunc);
}

StructureData structure_extract(const SurfaceModel& S, const ThetaRequest& req) {
  const Lattice& L = req.L;
  BasicClassSets B = basic_classes(S, req.f, req.g);
  StructureData out;
  int k = B.k();
  out.m = B.M ? -*B.M : 0;
  out.degree_bound = k;
  std::map<int, TPoly> principal;
  if (B.M) principal = structure_principal(S, B, req.c, req.f, req.g, req.x, req.zorder);
  FormalZ w = phi_fn(req);
  out.leading = NumericZ(req.zorder);
  for (int n = -1; n <= req.zorder; ++n) {
    StructureTerm t;
    t.n = n;
    t.P = B.M ? principal.at(n) : TPoly{{Cyclo8()}};
    QSeries wn = w.coeff(n);
    if (!wn.exact() && wn.trunc() <= 12) {
      Rational need = req.qorder + exponent_value(12 - wn.trunc() + 6);
      throw OrderStarvation("structure_extract: phi not known past q^{1/4} at z^" + std::to_string(n), need);
    }
    // sign fixed by the grading; with the other sign the residual is not polynomial in U
    Cyclo8 eps = -Cyclo8::root_of_unity(Rational(L.dot(req.c, req.c) - 1 - n, 4));
    QSeries rem = wn - structure_singular_part(t.P, eps, wn.trunc());
    try {
      t.R = as_poly_in_U(rem);
    } catch (const std::domain_error&) {
      throw std::logic_error("structure-theorem consistency failure at z^" + std::to_string(n));
    }
    if (t.R.degree() > (n + 1) / 2)
      throw std::logic_error("structure-theorem consistency failure: deg R too large at z^" + std::to_string(n));
    if (t.P.degree() > std::max(k, 0))
      throw std::logic_error("structure-theorem consistency failure: deg P too large at z^" + std::to_string(n));
    if (k >= 1 && static_cast<int>(t.P.p.size()) > k) t.a = t.P.p[k];
    out.leading.set(n, t.a);
    out.terms.push_back(std::move(t));
  }
  if (B.M) {
    NumericZ O = oh_leading(S, B, req.c, req.f, req.g, req.x, req.zorder);
    int64_t e2 = 2 - (L.signature() + 3 * out.m) / 4;
    Rational p2 = e2 >= 0 ? Rational(mpz_class(1) << e2) : Rational(1) / Rational(mpz_class(1) << -e2);
    NumericZ g(req.zorder);
    // e^{-Q(x) z^2}
    Rational qx = -L.q(req.x);
    Rational pw = 1;
    for (int j = 0; 2 * j <= req.zorder; ++j) {
      g.set(2 * j, Cyclo8(pw * inv_factorial(j)));
      pw *= qx;
    }
    NumericZ e = (O * g).with_zorder(req.zorder);
    e.scale(Cyclo8(p2));
    out.leading_expected = e;
  } else {
    out.leading_expected = NumericZ(req.zorder);
  }
  return out;
}

}  // namespace dq
