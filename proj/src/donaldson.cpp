#include "dq/donaldson.hpp"

#include <sstream>

namespace dq {

namespace {

Rational pow2(int64_t e) {
  mpz_class p = 1;
  p <<= static_cast<unsigned long>(e < 0 ? -e : e);
  return e >= 0 ? Rational(p) : Rational(1) / Rational(p);
}

NumericZ exp_lin(const Rational& a, int zorder) {
  NumericZ e(zorder);
  Rational p = 1;
  for (int n = 0; n <= zorder; ++n) {
    e.set(n, Cyclo8(p * inv_factorial(n)));
    p *= a;
  }
  return e;
}

// exp(c z^2)
NumericZ exp_quad(const Rational& c, int zorder) {
  NumericZ e(zorder);
  Rational p = 1;
  for (int j = 0; 2 * j <= zorder; ++j) {
    e.set(2 * j, Cyclo8(p * inv_factorial(j)));
    p *= c;
  }
  return e;
}

// 1/(1 - e^{a z}), a != 0
NumericZ geometric_pole(const Rational& a, int zorder) {
  auto c = inv_one_minus_exp(1, zorder);
  NumericZ p(zorder);
  Rational ap = 1 / a;
  for (int n = -1; n <= zorder; ++n) {
    p.set(n, Cyclo8(c[n + 1] * ap));
    ap *= a;
  }
  return p;
}

FormalZ gaussian_z2(const QSeries& c, int zorder) {
  FormalZ a(zorder);
  if (zorder >= 2) a.set(2, c);
  return zs_exp(a);
}

int64_t extraction_trunc(int rmax, int zorder) { return 12 * (rmax + 1) + 6 * (zorder + 2) + 6; }

std::vector<NumericZ> extract(const FormalZ& s, int rmax, int zorder, bool dual) {
  std::vector<NumericZ> out;
  for (int r = 0; r <= rmax; ++r) {
    NumericZ v(zorder);
    for (int n = -1; n <= zorder; ++n) {
      QSeries c = s.coeff(n);
      v.set(n, dual ? coeff_in_u(c, r) : coeff_in_u_residue(c, r));
    }
    out.push_back(std::move(v));
  }
  return out;
}

Rational default_qorder(int rmax, int zorder) {
  return Rational(rmax + 1, 4) + Rational(zorder + 2, 8) + Rational(1, 8);
}

template <class Fn>
auto with_order_retry(Rational qorder, Fn&& fn) {
  for (int attempt = 0;; ++attempt) {
    try {
      return fn(qorder);
    } catch (const OrderStarvation&) {
      if (attempt >= 8) throw;
      qorder += Rational(1, 4);
    }
  }
}

ThetaRequest request_for(const InvariantQuery& q, const IVec& G, const Rational& qorder) {
  ThetaRequest r;
  r.L = q.S.lattice();
  r.c = q.C;
  r.b = q.C;
  r.f = q.F;
  r.g = G;
  r.x = q.x;
  r.qorder = qorder;
  r.zorder = q.zorder;
  return r;
}

IVec scaled_integral(const QVec& v) {
  mpz_class l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  IVec out;
  for (const auto& x : v) {
    Rational s = x * Rational(l);
    out.push_back(s.get_num().get_si());
  }
  return out;
}

}  // namespace

IVec reference_cusp(const InvariantQuery& q) { return q.G ? *q.G : q.S.default_G(1); }

std::vector<NumericZ> psi_boundary_range(const InvariantQuery& q, int rmax) {
  IVec G = reference_cusp(q);
  if (q.F == G) return std::vector<NumericZ>(rmax + 1, NumericZ(q.zorder));
  Rational start = q.qorder ? *q.qorder : default_qorder(rmax, q.zorder);
  return with_order_retry(start, [&](const Rational& qo) {
    FormalZ phi = phi_fn(request_for(q, G, qo));
    return extract(phi, rmax, q.zorder, q.dual_check);
  });
}

NumericZ psi_boundary_diff(const InvariantQuery& q) {
  if (!q.G) throw std::invalid_argument("psi_boundary_diff needs G");
  return psi_boundary_range(q, q.r).back();
}

std::vector<NumericZ> psi_rational_range(const InvariantQuery& q, int rmax) {
  InvariantQuery r = q;
  r.G = reference_cusp(q);
  return psi_boundary_range(r, rmax);
}

NumericZ psi_rational_surface(const InvariantQuery& q) { return psi_rational_range(q, q.r).back(); }

Cyclo8 phi_coeff(const InvariantQuery& q, int s, int r) {
  if (s > q.zorder) throw OrderStarvation("phi_coeff: x-degree beyond zorder", Rational(s));
  NumericZ v = psi_rational_range(q, r).back();
  return v.coeff(s) * Cyclo8(Rational(1) / inv_factorial(s));
}

// ---------------------------------------------------------------- walls

namespace {

// Coeff_{u^{r+1}} of -(4 theta^sigma / f) D(z/f) exp(-QQ(x) G z^2/f^2), D given raw.
std::vector<NumericZ> extract_delta_sum(const SurfaceModel& S, const FormalZ& D, const QVec& x, int rmax,
                                        int zorder) {
  int64_t T = 0;
  for (const auto& kv : D.terms()) T = std::max(T, kv.second.exact() ? 0 : kv.second.trunc());
  T = std::max<int64_t>(T, extraction_trunc(rmax, zorder)) + 6 * (zorder + 4) + 2 * kGrid;
  QSeries f = named_series_grid("f", T);
  QSeries finv = f.inverse();
  QSeries th = named_series_grid("theta", T).pow(S.sigma());
  QSeries G = named_series_grid("G", T);
  FormalZ gauss = gaussian_z2(G * finv * finv * Cyclo8(-S.prod(x, x)), zorder + 1);
  FormalZ body = rescale_z(D, finv);
  FormalZ full = times(body * gauss, th * finv * Cyclo8(-4)).with_zorder(zorder);
  return extract(full, rmax, zorder, false);
}

int effective_degree(const SurfaceModel& S, const IVec& C, int dmax) {
  int64_t c2 = S.prod(C, C);
  int d = dmax;
  while (d >= 0 && (((d + c2 + 3) % 4) + 4) % 4 != 0) --d;
  return d;
}

std::vector<NumericZ> sum_over_walls(const SurfaceModel& S, const IVec& C, const QVec& x, int rmax, int zorder,
                                     const std::function<std::vector<QVec>(int)>& list) {
  const int64_t need = extraction_trunc(rmax, zorder);
  // exponents -xi^2/2 <= (d+3)/8 are complete
  int dmax = static_cast<int>((need + 5) / 6) - 3 + 4;
  int d = effective_degree(S, C, dmax);
  std::vector<QVec> xis = list(dmax);
  const int64_t T = 6 * (d + 3) + 1;
  int64_t c2 = S.prod(C, C);
  QVec Cq = to_rational(C);
  FormalZ D(zorder + 1);
  for (int n = 0; n <= zorder + 1; ++n) D.set(n, QSeries(T));
  Cyclo8 phase = Cyclo8::root_of_unity(Rational(c2, 8));
  std::map<std::pair<int64_t, Rational>, Cyclo8> agg;
  for (const auto& xi : xis) {
    Rational e = -S.prod(xi, xi) / 2;
    Rational t = S.prod(xi, Cq) - Rational(c2) / 2;
    if (t.get_den() != 1) throw std::logic_error("wall class of wrong parity");
    int sign = (mpz_class(t.get_num()) % 2 == 0) ? 1 : -1;
    agg[{grid_exponent(e), -S.prod(xi, x)}] += phase * Cyclo8(sign);
  }
  for (const auto& [key, w] : agg) {
    NumericZ e = exp_lin(key.second, zorder + 1);
    FormalZ term(zorder + 1);
    for (const auto& [n, c] : e.terms()) term.set(n, QSeries::monomial(key.first, c * w, T));
    D += term;
  }
  if (xis.empty()) return std::vector<NumericZ>(rmax + 1, NumericZ(zorder));
  return extract_delta_sum(S, D, x, rmax, zorder);
}

}  // namespace

std::vector<NumericZ> delta_xi_range(const SurfaceModel& S, const QVec& xi, const QVec& x, int rmax, int zorder) {
  Rational xi2 = S.prod(xi, xi);
  if (xi2 >= 0) throw std::invalid_argument("delta_xi needs xi^2 < 0");
  int64_t e = grid_exponent(-xi2 / 2);
  NumericZ ex = exp_lin(-S.prod(xi, x), zorder + 1);
  FormalZ D(zorder + 1);
  for (const auto& [n, c] : ex.terms()) D.set(n, QSeries::monomial(e, c));
  return extract_delta_sum(S, D, x, rmax, zorder);
}

NumericZ delta_xi(const SurfaceModel& S, const QVec& xi, const QVec& x, int r, int zorder) {
  return delta_xi_range(S, xi, x, r, zorder).back();
}

std::vector<NumericZ> wallcross_range(const SurfaceModel& S, const IVec& C, const QVec& x, int rmax, int zorder,
                                      const QVec& H1, const QVec& H2) {
  return sum_over_walls(S, C, x, rmax, zorder, [&](int dmax) { return wall_enum(S, C, dmax, H1, H2); });
}

NumericZ wallcross_sum(const SurfaceModel& S, const IVec& C, const QVec& x, int r, int zorder, const QVec& H1,
                       const QVec& H2) {
  return wallcross_range(S, C, x, r, zorder, H1, H2).back();
}

std::vector<NumericZ> wallcross_from_cusp(const SurfaceModel& S, const IVec& C, const QVec& x, int rmax, int zorder,
                                          const IVec& F, const QVec& H) {
  return sum_over_walls(S, C, x, rmax, zorder, [&](int dmax) { return wall_enum_from_cusp(S, C, dmax, F, H); });
}

// ---------------------------------------------------------------- chambers near a cusp

std::vector<NumericZ> psi_cusp_plus(const InvariantQuery& q, const QVec& H, int rmax) {
  std::vector<NumericZ> psiF = psi_rational_range(q, rmax);
  IVec h = scaled_integral(H);
  Lattice L = q.S.lattice();
  Rational start = q.qorder ? *q.qorder : default_qorder(rmax, q.zorder);
  std::vector<NumericZ> corr = with_order_retry(start, [&](const Rational& qo) {
    FormalZ pg = theta_pole_group(L, q.C, q.C, q.F, h, q.x, qo, q.zorder);
    FormalZ dressed = phi_dress(L, q.C, q.x, pg, qo, q.zorder);
    return extract(dressed, rmax, q.zorder, q.dual_check);
  });
  for (int r = 0; r <= rmax; ++r) psiF[r] -= corr[r];
  return psiF;
}

NumericZ p1xp1_closed_form(bool C_is_F, const Rational& s, const Rational& t, int r, int zorder) {
  if (t == 0) throw std::domain_error("undefined at this x");
  const int64_t T = extraction_trunc(r, zorder) + 6 * (zorder + 4) + 2 * kGrid;
  // y = F x z = t z before the 1/f rescaling
  NumericZ raw(zorder + 1);
  NumericZ pole = geometric_pole(-t, zorder + 1);  // 1/(1 - e^{-t z})
  if (C_is_F) {
    raw = (exp_lin(-t / 2, zorder + 1) * pole).with_zorder(zorder + 1);
    raw.scale(Cyclo8(2));
  } else {
    raw = pole;
    raw.scale(Cyclo8(2));
    raw.add(0, Cyclo8(-1));
  }
  QSeries f = named_series_grid("f", T);
  QSeries finv = f.inverse();
  QSeries G = named_series_grid("G", T);
  FormalZ gauss = gaussian_z2(G * finv * finv * Cyclo8(-2 * s * t), zorder + 1);
  FormalZ body = rescale_z(lift(raw), finv);
  FormalZ full = times(body * gauss, finv * Cyclo8(-1)).with_zorder(zorder);
  return extract(full, r, zorder, false).back();
}

namespace {

struct CuspPair {
  IVec F, G;
};

CuspPair interior_pair(const SurfaceModel& S) {
  if (S.kind == SurfaceKind::P1xP1) return {{1, 0}, {0, 1}};
  if (S.kind == SurfaceKind::P2Blow && S.n == 1) return {{1, -1}, {1, 1}};
  throw std::invalid_argument("interior invariants are available for p1xp1 and p2blow:1 only");
}

}  // namespace

std::vector<NumericZ> interior_invariant_range(const SurfaceModel& S, const IVec& C, const Rational& a,
                                               const Rational& b, const QVec& x, int rmax, int zorder) {
  if (a <= 0 || b <= 0) throw std::invalid_argument("interior invariant needs a, b > 0");
  CuspPair p = interior_pair(S);
  QVec H(2);
  for (int i = 0; i < 2; ++i) H[i] = a * p.F[i] + b * p.G[i];
  InvariantQuery q;
  q.S = S;
  q.C = C;
  q.F = p.F;
  q.G = p.G;
  q.x = x;
  q.zorder = zorder;
  std::vector<NumericZ> out = psi_cusp_plus(q, H, rmax);
  std::vector<NumericZ> walls = wallcross_from_cusp(S, C, x, rmax, zorder, p.F, H);
  for (int r = 0; r <= rmax; ++r) out[r] += walls[r];
  return out;
}

NumericZ interior_invariant(const SurfaceModel& S, const IVec& C, const Rational& a, const Rational& b,
                            const QVec& x, int r, int zorder) {
  return interior_invariant_range(S, C, a, b, x, r, zorder).back();
}

// ---------------------------------------------------------------- structure theorem

int epsilon_W(const SurfaceModel& S, const IVec& F, const IVec& G, const IVec& W) {
  int64_t wf = S.prod(W, F), wg = S.prod(W, G);
  if (wf > 0 && wg <= 0) return 1;
  if (wf <= 0 && wg > 0) return -1;
  return 0;
}

namespace {

using CSeries = std::vector<Cyclo8>;  // power series in t, index = exponent

CSeries series_pow(const CSeries& a, int k, int len) {
  CSeries r(len, Cyclo8());
  r[0] = Cyclo8(1);
  for (int j = 0; j < k; ++j) {
    CSeries n(len, Cyclo8());
    for (int i = 0; i < len; ++i) {
      if (r[i].is_zero()) continue;
      for (int l = 0; i + l < len; ++l)
        if (!a[l].is_zero()) n[i + l] += r[i] * a[l];
    }
    r = std::move(n);
  }
  return r;
}

// Solves A p = y exactly.  Returns (consistent, unique, solution).
struct SolveResult {
  bool consistent = true;
  bool unique = true;
  std::vector<Cyclo8> p;
};

SolveResult solve_exact(std::vector<std::vector<Cyclo8>> A, std::vector<Cyclo8> y, int cols) {
  SolveResult res;
  int rows = static_cast<int>(A.size());
  std::vector<int> pivcol;
  int row = 0;
  for (int c = 0; c < cols && row < rows; ++c) {
    int p = row;
    while (p < rows && A[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(A[p], A[row]);
    std::swap(y[p], y[row]);
    Cyclo8 inv = A[row][c].inverse();
    for (int j = c; j < cols; ++j) A[row][j] *= inv;
    y[row] *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == row || A[i][c].is_zero()) continue;
      Cyclo8 fct = A[i][c];
      for (int j = c; j < cols; ++j) A[i][j] -= fct * A[row][j];
      y[i] -= fct * y[row];
    }
    pivcol.push_back(c);
    ++row;
  }
  for (int i = row; i < rows; ++i)
    if (!y[i].is_zero()) res.consistent = false;
  res.unique = static_cast<int>(pivcol.size()) == cols;
  res.p.assign(cols, Cyclo8());
  for (int i = 0; i < static_cast<int>(pivcol.size()); ++i) res.p[pivcol[i]] = y[i];
  return res;
}

// Basis functions (t/(1-2t))^j - eps (-t/(1+2t))^j, j = 1..k, as t-series of length len.
std::vector<CSeries> part2_basis(int k, const Cyclo8& eps, int len) {
  CSeries a(len, Cyclo8()), b(len, Cyclo8());
  Rational p = 1;
  for (int i = 1; i < len; ++i) {
    a[i] = Cyclo8(p);
    b[i] = Cyclo8(i % 2 ? -p : p);  // -t/(1+2t) = -t + 2t^2 - ...
    p *= 2;
  }
  std::vector<CSeries> out;
  for (int j = 1; j <= k; ++j) {
    CSeries aj = series_pow(a, j, len), bj = series_pow(b, j, len);
    CSeries v(len);
    for (int i = 0; i < len; ++i) v[i] = aj[i] - eps * bj[i];
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

StructureReport structure_theorem(const InvariantQuery& q, int R) {
  StructureReport rep;
  const SurfaceModel& S = q.S;
  IVec G = reference_cusp(q);
  BasicClassSets B = basic_classes(S, q.F, G);
  rep.sigma = S.sigma();
  rep.M = B.M;
  rep.k = B.k();
  auto add_rows = [&](const std::vector<BasicClass>& v, const char* name) {
    for (const auto& bc : v) rep.classes.push_back({bc.w, bc.order, name, epsilon_W(S, q.F, G, bc.w)});
  };
  add_rows(B.BF, "BF");
  add_rows(B.BG, "BG");
  add_rows(B.BI, "BI");

  InvariantQuery qq = q;
  qq.G = G;
  rep.psi = psi_boundary_range(qq, R);
  const int k = rep.k;
  const int Z = q.zorder;
  auto mismatch = [&](const std::string& m) { rep.mismatches.push_back(m); };

  // part 1: sum_j C(k,j)(-4)^{k-j} Psi(p^{r+2j}) = 0
  rep.simple_type = true;
  if (k < 0) {
    for (int r = 0; r <= R; ++r)
      if (!rep.psi[r].terms().empty()) rep.simple_type = false;
  } else {
    for (int r = 0; r + 2 * k <= R; ++r) {
      NumericZ acc(Z);
      mpz_class binom = 1;
      for (int j = 0; j <= k; ++j) {
        NumericZ t = rep.psi[r + 2 * j];
        t.scale(Cyclo8(Rational(binom) * pow2(2 * (k - j)) * ((k - j) % 2 ? -1 : 1)));
        acc += t;
        binom = binom * (k - j) / (j + 1);
      }
      if (!acc.terms().empty()) {
        rep.simple_type = false;
        mismatch("simple type fails at r = " + std::to_string(r) + ", z^" + std::to_string(acc.valuation()));
      }
    }
  }

  // part 3 expansion and part 2 solve
  if (B.M) rep.P_expand = structure_principal(S, B, q.C, q.F, G, q.x, Z);
  rep.parts_agree = true;
  const int64_t c2 = S.prod(q.C, q.C);
  for (int n = -1; n <= Z; ++n) {
    TPoly solved;
    solved.p.assign(std::max(k, 0) + 1, Cyclo8());
    if (k >= 1) {
      // sign fixed by the grading: t^{r+1} survives only for r+1 = -(C^2+1+n)/2 mod 2
      Cyclo8 eps = -Cyclo8::root_of_unity(Rational(-(c2 + 1 + n), 4));
      int len = R + 2;
      auto basis = part2_basis(k, eps, len);
      std::vector<std::vector<Cyclo8>> A;
      std::vector<Cyclo8> y;
      for (int i = 1; i < len; ++i) {
        std::vector<Cyclo8> row;
        for (int j = 0; j < k; ++j) row.push_back(basis[j][i]);
        A.push_back(std::move(row));
        y.push_back(rep.psi[i - 1].coeff(n));
      }
      SolveResult sr = solve_exact(A, y, k);
      rep.solve_unique[n] = sr.unique;
      if (!sr.consistent) {
        rep.parts_agree = false;
        mismatch("part 2 system inconsistent at z^" + std::to_string(n));
      }
      for (int j = 0; j < k; ++j) solved.p[j + 1] = sr.p[j];
      const TPoly& ex = rep.P_expand[n];
      if (sr.unique) {
        if (!(solved == ex)) {
          rep.parts_agree = false;
          mismatch("part 2 and part 3 differ at z^" + std::to_string(n));
        }
      } else {
        // the expansion must still satisfy every row
        for (size_t i = 0; i < A.size(); ++i) {
          Cyclo8 v;
          for (int j = 0; j < k; ++j)
            if (j + 1 < static_cast<int>(ex.p.size())) v += A[i][j] * ex.p[j + 1];
          if (v != y[i]) {
            rep.parts_agree = false;
            mismatch("part 3 polynomial violates part 2 at z^" + std::to_string(n) + ", t^" +
                     std::to_string(i + 1));
          }
        }
      }
    } else {
      rep.solve_unique[n] = true;
      for (int r = 0; r <= R; ++r)
        if (!rep.psi[r].coeff(n).is_zero()) {
          rep.parts_agree = false;
          mismatch("nonzero invariant with k < 1 at z^" + std::to_string(n));
        }
      if (B.M && rep.P_expand[n].degree() != 0) {
        rep.parts_agree = false;
        mismatch("nonzero principal part with k < 1 at z^" + std::to_string(n));
      }
    }
    rep.P_solve[n] = solved;
  }

  // part 4: Psi((1+p/2)(p^2-4)^{k-1}) = 2^{1+M} O e^{QQ z^2/2}
  rep.leading = NumericZ(Z);
  rep.leading_expected = NumericZ(Z);
  if (k >= 1) {
    if (R < 2 * k - 1) throw std::invalid_argument("structure_theorem: R must be at least 2k - 1");
    std::vector<Rational> poly{1, Rational(1, 2)};
    for (int j = 1; j < k; ++j) {
      std::vector<Rational> n(poly.size() + 2, 0);
      for (size_t i = 0; i < poly.size(); ++i) {
        n[i + 2] += poly[i];
        n[i] -= 4 * poly[i];
      }
      poly = n;
    }
    for (size_t r = 0; r < poly.size(); ++r) {
      NumericZ t = rep.psi[r];
      t.scale(Cyclo8(poly[r]));
      rep.leading += t;
    }
    NumericZ O = oh_leading(S, B, q.C, q.F, G, q.x, Z);
    NumericZ e = (O * exp_quad(S.prod(q.x, q.x) / 2, Z + 1)).with_zorder(Z);
    e.scale(Cyclo8(pow2(1 + *B.M)));
    rep.leading_expected = e;
    rep.leading_ok = (rep.leading - rep.leading_expected).terms().empty();
    if (!rep.leading_ok) mismatch("leading term differs from 2^{1+M} O e^{QQ z^2/2}");
  } else {
    rep.leading_ok = true;
  }
  return rep;
}

std::map<int, TPoly> class_contribution(const SurfaceModel& S, const IVec& W, const QVec& x, int zorder) {
  const int64_t T = 2 * kGrid;
  int64_t k = (S.prod(W, W) - S.sigma()) / 8;
  NumericZ e = exp_lin(S.prod(to_rational(W), x), zorder);
  FormalZ raw(zorder);
  for (const auto& [n, c] : e.terms()) raw.set(n, QSeries::monomial(-6 * S.prod(W, W), c));
  QSeries s = named_series_grid("eta2tau2_eta4", T - 6 * S.sigma() + kGrid * (k + 2));
  FormalZ prod = (rescale_z(raw, s) * structure_prefactor(S, x, T, zorder)).with_zorder(zorder);
  std::map<int, TPoly> out;
  for (int n = 0; n <= zorder; ++n) {
    TPoly P;
    P.p.assign(1, Cyclo8());
    QSeries c = prod.coeff(n);
    if (!c.is_zero())
      for (const auto& [j, v] : expand_in_y(c, 0).principal()) {
        size_t d = static_cast<size_t>(-j);
        if (P.p.size() <= d) P.p.resize(d + 1);
        P.p[d] = v;
      }
    out[n] = P;
  }
  return out;
}

// ---------------------------------------------------------------- blowups

BlowupSeries blowup_polys(int max_k, GaussianReading reading) {
  const int64_t T = 2 * kGrid + 12 * max_k + kGrid;
  QSeries f = named_series_grid("f", T + kGrid);
  QSeries finv = f.inverse();
  QSeries G = named_series_grid("G", T + kGrid);
  QSeries th = named_series_grid("theta", T + kGrid);
  QSeries thinv = th.inverse();
  QSeries gq = reading == GaussianReading::OverFSquared ? G * finv * finv : G * finv;
  FormalZ gauss = gaussian_z2(gq, max_k);
  FormalZ w(max_k);
  w.set(1, finv);
  Rational qo = exponent_value(T);
  FormalZ b = times(theta_charz(0, 0, w, qo, max_k) * gauss, thinv);
  FormalZ s = times(theta_charz(1, 1, w, qo, max_k) * gauss, thinv * Cyclo8::root_of_unity(Rational(-1, 8)));
  BlowupSeries out;
  for (int k = 0; k <= max_k; ++k) {
    Rational kf = Rational(1) / inv_factorial(k);
    for (auto [src, dst] : {std::pair{&b, &out.B}, std::pair{&s, &out.S}}) {
      UPoly p = as_poly_in_U(src->coeff(k));
      for (auto& c : p.c) c *= kf;
      dst->push_back(std::move(p));
    }
  }
  return out;
}

BlowupCheck blowup_verify(const InvariantQuery& q, const std::vector<Rational>& lambdas, bool series_action) {
  BlowupCheck out;
  if (q.S.kind != SurfaceKind::P2Blow) throw std::invalid_argument("blowup_verify needs a p2blow surface");
  const int Z = q.zorder;
  IVec G = reference_cusp(q);
  int k = basic_classes(q.S, q.F, G).k();
  // the closed forms need simple type; the series action does not
  const bool closed = k >= 1;
  if (!closed && !series_action) throw std::invalid_argument("blowup_verify: closed forms need k >= 1");
  // (1 + p/2)(1 - p^2/4)^{k-1}
  std::vector<Rational> poly{1, Rational(1, 2)};
  for (int j = 1; j < k; ++j) {
    std::vector<Rational> n(poly.size() + 2, 0);
    for (size_t i = 0; i < poly.size(); ++i) {
      n[i] += poly[i];
      n[i + 2] -= poly[i] / 4;
    }
    poly = n;
  }
  const int rpoly = static_cast<int>(poly.size()) - 1;
  BlowupSeries bs;
  int rbase = rpoly;
  if (series_action) {
    bs = blowup_polys(Z);
    int extra = 0;
    for (int j = 0; j <= Z; ++j) extra = std::max({extra, bs.B[j].degree(), bs.S[j].degree()});
    rbase = rpoly + extra;
  }
  InvariantQuery base = q;
  base.G = G;
  std::vector<NumericZ> psi = psi_boundary_range(base, rbase);
  auto assemble = [&](const std::vector<NumericZ>& v) {
    NumericZ acc(Z);
    for (int r = 0; r <= rpoly; ++r) {
      NumericZ t = v[r];
      t.scale(Cyclo8(poly[r]));
      acc += t;
    }
    return acc;
  };
  NumericZ lhs0 = assemble(psi);
  SurfaceModel Sh = make_surface(SurfaceKind::P2Blow, q.S.n + 1);
  auto extend = [](IVec v, int64_t last) {
    v.push_back(last);
    return v;
  };
  for (const auto& lam : lambdas) {
    for (int withE = 0; withE <= 1; ++withE) {
      InvariantQuery h;
      h.S = Sh;
      h.C = extend(q.C, withE);
      h.F = extend(q.F, 0);
      h.G = extend(G, 0);
      h.x = q.x;
      h.x.push_back(lam);
      h.zorder = Z;
      std::vector<NumericZ> ph = psi_boundary_range(h, series_action ? rpoly : rpoly);
      // cosh / sinh closed forms
      NumericZ el = exp_lin(lam, Z), em = exp_lin(-lam, Z);
      NumericZ hyp = withE ? el - em : el + em;
      hyp.scale(Cyclo8(Rational(1, 2)));
      NumericZ expected = (lhs0 * hyp * exp_quad(-lam * lam / 2, Z)).with_zorder(Z);
      NumericZ got = assemble(ph);
      if (closed && !(got - expected).terms().empty()) {
        out.ok = false;
        std::ostringstream os;
        os << (withE ? "sinh" : "cosh") << " identity fails at lambda = " << lam.get_str() << ", z^"
           << (got - expected).valuation();
        out.failures.push_back(os.str());
      }
      if (!series_action) continue;
      // Psi^{Xhat}(x z + lambda z e, p^r) = Psi^X(x z, B(p, lambda z) p^r)
      const auto& polys = withE ? bs.S : bs.B;
      for (int r = 0; r <= rpoly; ++r) {
        NumericZ want(Z);
        Rational lp = 1;
        for (int j = 0; j <= Z; ++j) {
          NumericZ acc(Z);
          for (int i = 0; i <= polys[j].degree(); ++i) {
            if (polys[j].c[i].is_zero()) continue;
            NumericZ t = psi[r + i];
            t.scale(polys[j].c[i]);
            acc += t;
          }
          acc = acc.shifted(j).with_zorder(Z);
          acc.scale(Cyclo8(lp * inv_factorial(j)));
          want += acc;
          lp *= lam;
        }
        if (!(ph[r] - want).terms().empty()) {
          out.ok = false;
          std::ostringstream os;
          os << (withE ? "S" : "B") << "-series action fails at lambda = " << lam.get_str() << ", r = " << r
             << ", z^" << (ph[r] - want).valuation();
          out.failures.push_back(os.str());
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------- Seiberg-Witten dictionary

SWReport sw_report(const SurfaceModel& S, const IVec& F) {
  SWReport rep;
  IVec G = S.default_G(1);
  rep.sets = basic_classes(S, F, G);
  for (const auto& bc : rep.sets.BF) rep.rf.push_back({bc.w, bc.order, "BF", epsilon_W(S, F, G, bc.w)});
  for (const auto& bc : rep.sets.BI) {
    rep.sw_basic.push_back({bc.w, bc.order, "BI", epsilon_W(S, F, G, bc.w)});
    IVec m = bc.w;
    for (auto& v : m) v = -v;
    rep.sw_basic.push_back({m, bc.order, "-BI", epsilon_W(S, F, G, m)});
  }
  rep.omega_template =
      "Omega_C^{X,F}(tau, x) = -sum_{W in R_F} (-1)^{C(W+C)/2} q^{-W^2/8} e^{Wx} / (1 - (-1)^{CF} e^{2Fx})"
      " + sum_{W in SW} (-1)^{C(W+C)/2} q^{-W^2/8} e^{Wx}";
  return rep;
}

}  // namespace dq
