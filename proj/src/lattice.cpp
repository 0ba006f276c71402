#include "dq/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace dq {

// ---------------------------------------------------------------- lattices and surfaces

int Lattice::signature() const { return dq::signature(gram); }

void Lattice::validate() const {
  int r = rank();
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(gram[i].size()) != r) throw std::invalid_argument("gram matrix is not square");
    for (int j = 0; j < r; ++j)
      if (gram[i][j] != gram[j][i]) throw std::invalid_argument("gram matrix is not symmetric");
  }
  mpz_class d = determinant(gram);
  if (d != 1 && d != -1) throw std::invalid_argument("lattice is not unimodular");
  if (signature() != r - 2) throw std::invalid_argument("lattice is not of type (r-1,1)");
  if (dot(f0, f0) >= 0) throw std::invalid_argument("orientation vector must have negative square");
}

int SurfaceModel::sigma() const { return dq::signature(intersection); }

Lattice SurfaceModel::lattice() const {
  Lattice L;
  L.gram = intersection;
  for (auto& row : L.gram)
    for (auto& x : row) x = -x;
  L.f0 = orientation;
  return L;
}

bool SurfaceModel::is_characteristic(const IVec& w) const {
  for (int i = 0; i < rank(); ++i) {
    int64_t wx = dot(intersection[i], w);
    if (((wx - intersection[i][i]) % 2) != 0) return false;
  }
  return true;
}

IVec SurfaceModel::characteristic() const {
  if (kind == SurfaceKind::P2Blow) return IVec(rank(), 1);
  IVec diag(rank());
  for (int i = 0; i < rank(); ++i) diag[i] = intersection[i][i];
  return solve_mod2(intersection, diag);
}

IVec SurfaceModel::default_G(int j) const {
  IVec g(rank(), 0);
  switch (kind) {
    case SurfaceKind::P2Blow:
      if (j < 1 || j > n) throw std::invalid_argument("H + E_j needs 1 <= j <= N");
      g[0] = 1;
      g[j] = 1;
      return g;
    case SurfaceKind::P1xP1:
    case SurfaceKind::P1xP1Blow:
      g[1] = 1;
      return g;
    case SurfaceKind::Custom:
      break;
  }
  throw std::invalid_argument("no default reference cusp for a custom surface");
}

std::string SurfaceModel::name() const {
  switch (kind) {
    case SurfaceKind::P2Blow: return "p2blow:" + std::to_string(n);
    case SurfaceKind::P1xP1: return "p1xp1";
    case SurfaceKind::P1xP1Blow: return "p1xp1blow:" + std::to_string(n);
    case SurfaceKind::Custom: return "custom";
  }
  return "?";
}

SurfaceModel make_surface(SurfaceKind kind, int n) {
  if (n < 0) throw std::invalid_argument("number of blowups must be >= 0");
  SurfaceModel s;
  s.kind = kind;
  s.n = n;
  if (kind == SurfaceKind::P2Blow) {
    int r = n + 1;
    s.intersection.assign(r, IVec(r, 0));
    s.intersection[0][0] = 1;
    for (int i = 1; i < r; ++i) s.intersection[i][i] = -1;
    s.basis.push_back("H");
    for (int i = 1; i < r; ++i) s.basis.push_back("E" + std::to_string(i));
    s.orientation = IVec(r, 0);
    s.orientation[0] = 1;
    return s;
  }
  if (kind == SurfaceKind::P1xP1 || kind == SurfaceKind::P1xP1Blow) {
    if (kind == SurfaceKind::P1xP1) s.n = n = 0;
    int r = n + 2;
    s.intersection.assign(r, IVec(r, 0));
    s.intersection[0][1] = s.intersection[1][0] = 1;
    for (int i = 2; i < r; ++i) s.intersection[i][i] = -1;
    s.basis = {"F", "G"};
    for (int i = 2; i < r; ++i) s.basis.push_back("E" + std::to_string(i - 1));
    s.orientation = IVec(r, 0);
    s.orientation[0] = s.orientation[1] = 1;
    return s;
  }
  throw std::invalid_argument("use make_custom_surface for custom lattices");
}

SurfaceModel make_custom_surface(const IMat& m) {
  SurfaceModel s;
  s.kind = SurfaceKind::Custom;
  s.intersection = m;
  int r = s.rank();
  for (int i = 0; i < r; ++i) s.basis.push_back("e" + std::to_string(i + 1));
  // first small vector of positive square
  for (int i = 0; i < r && s.orientation.empty(); ++i)
    for (int j = i; j < r && s.orientation.empty(); ++j)
      for (int sg : {1, -1}) {
        IVec v(r, 0);
        v[i] += 1;
        if (j != i) v[j] += sg;
        if (s.prod(v, v) > 0) {
          s.orientation = v;
          break;
        }
      }
  if (s.orientation.empty()) throw std::invalid_argument("custom surface: no small class of positive square");
  s.lattice().validate();
  return s;
}

SurfaceModel parse_surface(const std::string& spec) {
  auto colon = spec.find(':');
  std::string kind = spec.substr(0, colon);
  std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  auto parse_n = [&]() {
    if (arg.empty() || arg.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("bad surface spec: " + spec);
    return std::stoi(arg);
  };
  if (kind == "p2blow") return make_surface(SurfaceKind::P2Blow, parse_n());
  if (kind == "p1xp1" && arg.empty()) return make_surface(SurfaceKind::P1xP1);
  if (kind == "p1xp1blow") return make_surface(SurfaceKind::P1xP1Blow, parse_n());
  if (kind == "custom") {
    std::ifstream in(arg);
    if (!in) throw std::invalid_argument("cannot read gram file: " + arg);
    std::vector<int64_t> vals;
    int64_t x;
    while (in >> x) vals.push_back(x);
    auto r = static_cast<size_t>(std::llround(std::sqrt(static_cast<double>(vals.size()))));
    if (r == 0 || r * r != vals.size()) throw std::invalid_argument("gram file must hold r*r integers");
    IMat m(r, IVec(r));
    for (size_t i = 0; i < r; ++i)
      for (size_t j = 0; j < r; ++j) m[i][j] = vals[i * r + j];
    return make_custom_surface(m);
  }
  throw std::invalid_argument("bad surface spec: " + spec);
}

bool is_cusp_class(const SurfaceModel& s, const IVec& F) {
  if (static_cast<int>(F.size()) != s.rank()) return false;
  if (gcd_all(F) != 1) return false;
  if (s.prod(F, F) != 0) return false;
  return s.prod(F, s.orientation) > 0;
}

// ---------------------------------------------------------------- enumeration

IVec EnumLeaf::vec() const {
  IVec x(rank);
  for (int i = 0; i < rank; ++i) x[i] = base[i] + y * step[i];
  return x;
}

namespace {

struct Interval {
  int64_t lo, hi;
};

class Enumerator {
 public:
  Enumerator(const EnumRequest& req, const std::function<void(const EnumLeaf&)>& visit)
      : req_(req), visit_(visit), r_(static_cast<int>(req.gram.size())) {}

  void run();

 private:
  void setup_plane();
  std::pair<int64_t, int64_t> a_bounds() const;
  std::optional<Interval> b_interval(int64_t A) const;
  bool q_ok(int64_t q8) const {
    // q8 / 8 <= qmax  <=>  q8 * den <= 8 * num
    mpz_class lhs = mpz_class(static_cast<long>(q8)) * req_.qmax.get_den();
    mpz_class rhs = 8 * req_.qmax.get_num();
    return req_.strict ? lhs < rhs : lhs <= rhs;
  }
  void do_plane_point(int64_t A, int64_t B);
  void descend(int level, double budget);

  const EnumRequest& req_;
  const std::function<void(const EnumLeaf&)>& visit_;
  int r_;
  int n_ = 0;  // kernel dimension
  IVec phi1_, phi2_;
  TwoRowReduction red_;
  std::vector<IVec> kern_;    // kernel basis (X-steps are 2 * kern_)
  std::vector<IVec> step_;    // 2 * kern_
  std::vector<IVec> gstep_;   // G * step
  std::vector<int64_t> ss_;   // step.G.step
  std::vector<std::vector<int64_t>> lstep_;  // linear . step
  std::vector<std::vector<double>> qij_;
  std::vector<double> qii_;
  std::vector<std::vector<double>> gk_inv_;  // (K^T G K)^{-1}
  double alpha_ = 0, beta_ = 0, gamma_ = 0;  // 8 Q_plane = alpha A^2 + 2 beta A B + gamma B^2
  double T_ = 0;                             // 8 qmax
  int64_t s1_ = 0, s2_ = 0;                  // parities of A, B
  // state during descent
  std::vector<IVec> X_;         // per level partial vector
  std::vector<int64_t> q8_;     // per level X.G.X
  std::vector<IVec> gx_;        // per level G X
  std::vector<std::vector<int64_t>> lv_;  // per level linear values
  std::vector<double> p_;       // center
  std::vector<int64_t> y_;
  int64_t A_ = 0, B_ = 0;
};

void Enumerator::setup_plane() {
  const IMat& G = req_.gram;
  phi1_ = mat_vec(G, req_.p1);
  phi2_ = mat_vec(G, req_.p2);
  int64_t g11 = dot(req_.p1, phi1_), g12 = dot(req_.p1, phi2_), g22 = dot(req_.p2, phi2_);
  int64_t det = g11 * g22 - g12 * g12;
  if (det == 0) throw std::invalid_argument("degenerate cusp pair");
  if (det > 0) throw std::invalid_argument("constraint plane is not hyperbolic");
  alpha_ = static_cast<double>(g22) / det;
  beta_ = -static_cast<double>(g12) / det;
  gamma_ = static_cast<double>(g11) / det;
  T_ = req_.qmax.get_d() * 8.0;
  s1_ = ((dot(phi1_, req_.shift) % 2) + 2) % 2;
  s2_ = ((dot(phi2_, req_.shift) % 2) + 2) % 2;
  red_ = reduce_two_rows(phi1_, phi2_);
  if (red_.h00 == 0 || red_.h11 == 0) throw std::invalid_argument("degenerate cusp pair");
  n_ = r_ - 2;
  for (int j = 2; j < r_; ++j) {
    IVec col(r_);
    for (int i = 0; i < r_; ++i) col[i] = red_.U[i][j];
    kern_.push_back(col);
  }
  lll_reduce(kern_, G);
  // Fincke-Pohst data for K^T G K
  std::vector<std::vector<double>> gk(n_, std::vector<double>(n_));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) gk[i][j] = static_cast<double>(bilinear(G, kern_[i], kern_[j]));
  // Cholesky gk = R^T R
  std::vector<std::vector<double>> R(n_, std::vector<double>(n_, 0.0));
  for (int i = 0; i < n_; ++i) {
    for (int j = i; j < n_; ++j) {
      double s = gk[i][j];
      for (int k = 0; k < i; ++k) s -= R[k][i] * R[k][j];
      if (i == j) {
        if (s <= 0) throw std::logic_error("orthogonal complement is not positive definite");
        R[i][i] = std::sqrt(s);
      } else {
        R[i][j] = s / R[i][i];
      }
    }
  }
  qii_.assign(n_, 0.0);
  qij_.assign(n_, std::vector<double>(n_, 0.0));
  for (int i = 0; i < n_; ++i) {
    qii_[i] = R[i][i] * R[i][i];
    for (int j = i + 1; j < n_; ++j) qij_[i][j] = R[i][j] / R[i][i];
  }
  // inverse of gk via Gauss-Jordan
  gk_inv_.assign(n_, std::vector<double>(n_, 0.0));
  {
    std::vector<std::vector<double>> a = gk;
    for (int i = 0; i < n_; ++i) gk_inv_[i][i] = 1.0;
    for (int c = 0; c < n_; ++c) {
      int p = c;
      for (int i = c + 1; i < n_; ++i)
        if (std::fabs(a[i][c]) > std::fabs(a[p][c])) p = i;
      std::swap(a[p], a[c]);
      std::swap(gk_inv_[p], gk_inv_[c]);
      double d = a[c][c];
      for (int j = 0; j < n_; ++j) {
        a[c][j] /= d;
        gk_inv_[c][j] /= d;
      }
      for (int i = 0; i < n_; ++i) {
        if (i == c || a[i][c] == 0) continue;
        double f = a[i][c];
        for (int j = 0; j < n_; ++j) {
          a[i][j] -= f * a[c][j];
          gk_inv_[i][j] -= f * gk_inv_[c][j];
        }
      }
    }
  }
  for (const auto& k : kern_) {
    IVec st(r_);
    for (int i = 0; i < r_; ++i) st[i] = 2 * k[i];
    step_.push_back(st);
    gstep_.push_back(mat_vec(G, st));
    ss_.push_back(dot(st, gstep_.back()));
    std::vector<int64_t> ls;
    for (const auto& l : req_.linear) ls.push_back(dot(l, st));
    lstep_.push_back(ls);
  }
  X_.assign(n_ + 1, IVec(r_));
  q8_.assign(n_ + 1, 0);
  gx_.assign(n_ + 1, IVec(r_));
  lv_.assign(n_ + 1, std::vector<int64_t>(req_.linear.size()));
  p_.assign(n_, 0.0);
  y_.assign(n_, 0);
}

// Range of A when it is not bounded by the request.
std::pair<int64_t, int64_t> Enumerator::a_bounds() const {
  const IntRange& r1 = req_.r1;
  const IntRange& r2 = req_.r2;
  if (r1.lo && r1.hi) return {*r1.lo, *r1.hi};
  int sa = (r1.lo && *r1.lo >= 0) ? 1 : (r1.hi && *r1.hi <= 0) ? -1 : 0;
  if (sa == 0) throw std::invalid_argument("unbounded enumeration: constraint on the first product has no sign");
  int sb = 0;
  double bmin = 0;  // lower bound of sb * B
  if (r2.lo && *r2.lo >= 0) {
    sb = 1;
    bmin = static_cast<double>(*r2.lo);
  } else if (r2.hi && *r2.hi <= 0) {
    sb = -1;
    bmin = -static_cast<double>(*r2.hi);
  } else if (r2.lo && r2.hi) {
    sb = 0;
  } else {
    throw std::invalid_argument("unbounded enumeration: constraint on the second product has no sign");
  }
  double bound;
  double T = std::max(T_, 0.0);
  if (sb == 0) {
    // B bounded but mixed sign: use the exact per-B maximum of |A|.
    if (alpha_ <= 0) throw std::invalid_argument("unbounded enumeration");
    double best = 0;
    for (int64_t B = *r2.lo; B <= *r2.hi; ++B) {
      double disc = beta_ * beta_ * B * B - alpha_ * (gamma_ * B * B - T);
      if (disc < 0) continue;
      double s = std::sqrt(disc);
      best = std::max({best, std::fabs((-beta_ * B + s) / alpha_), std::fabs((-beta_ * B - s) / alpha_)});
    }
    bound = best;
  } else {
    double bp = sa * sb * beta_;
    if (alpha_ > 1e-12 && bp >= 0) {
      bound = std::sqrt(T / alpha_);
    } else if (alpha_ > 1e-12 && alpha_ * gamma_ - bp * bp > 1e-12) {
      bound = std::sqrt(T * gamma_ / (alpha_ * gamma_ - bp * bp));
    } else if (std::fabs(alpha_) <= 1e-12 && bp > 0 && bmin > 0) {
      bound = T / (2 * bp * bmin);
    } else {
      throw std::invalid_argument("unbounded enumeration");
    }
  }
  auto b = static_cast<int64_t>(std::floor(bound * (1 + 1e-9) + 1e-6)) + 1;
  if (sa > 0) return {*r1.lo, std::max(*r1.lo, r1.hi ? std::min(*r1.hi, b) : b)};
  return {std::min(*r1.hi, r1.lo ? std::max(*r1.lo, -b) : -b), *r1.hi};
}

std::optional<Interval> Enumerator::b_interval(int64_t A) const {
  const IntRange& r2 = req_.r2;
  double T = T_;
  double a = static_cast<double>(A);
  double lo = -INFINITY, hi = INFINITY;
  const double pad = 1e-6;
  if (gamma_ > 1e-12) {
    double disc = beta_ * beta_ * a * a - gamma_ * (alpha_ * a * a - T);
    if (disc < -1e-9) return std::nullopt;
    double s = std::sqrt(std::max(disc, 0.0));
    lo = (-beta_ * a - s) / gamma_;
    hi = (-beta_ * a + s) / gamma_;
    double w = pad * (1 + std::fabs(lo) + std::fabs(hi));
    lo -= w;
    hi += w;
  } else if (std::fabs(gamma_) <= 1e-12) {
    double lin = 2 * beta_ * a, rest = T - alpha_ * a * a;
    if (std::fabs(lin) < 1e-12) {
      if (rest < -1e-9) return std::nullopt;
    } else if (lin > 0) {
      hi = rest / lin + pad * (1 + std::fabs(rest / lin));
    } else {
      lo = rest / lin - pad * (1 + std::fabs(rest / lin));
    }
  }
  // gamma < 0: no restriction from the plane part
  if (r2.lo) lo = std::max(lo, static_cast<double>(*r2.lo));
  if (r2.hi) hi = std::min(hi, static_cast<double>(*r2.hi));
  if (!std::isfinite(lo) || !std::isfinite(hi)) throw std::invalid_argument("unbounded enumeration");
  if (lo > hi) return std::nullopt;
  return Interval{static_cast<int64_t>(std::ceil(lo)), static_cast<int64_t>(std::floor(hi))};
}

void Enumerator::run() {
  if (req_.gram.empty()) return;
  setup_plane();
  auto [alo, ahi] = a_bounds();
  for (int64_t A = alo; A <= ahi; ++A) {
    if ((((A - s1_) % 2) + 2) % 2 != 0) continue;
    auto bi = b_interval(A);
    if (!bi) continue;
    for (int64_t B = bi->lo; B <= bi->hi; ++B) {
      if ((((B - s2_) % 2) + 2) % 2 != 0) continue;
      do_plane_point(A, B);
    }
  }
}

void Enumerator::do_plane_point(int64_t A, int64_t B) {
  double plane8 = alpha_ * A * A + 2 * beta_ * A * B + gamma_ * B * B;
  double budget8 = T_ - plane8;
  if (budget8 < -1e-6 * (1 + std::fabs(T_))) return;
  // particular solution
  int64_t t1 = (A - dot(phi1_, req_.shift)) / 2;
  int64_t t2 = (B - dot(phi2_, req_.shift)) / 2;
  if (t1 % red_.h00 != 0) return;
  int64_t y0 = t1 / red_.h00;
  int64_t rem = t2 - red_.h10 * y0;
  if (rem % red_.h11 != 0) return;
  int64_t y1 = rem / red_.h11;
  IVec X0 = req_.shift;
  for (int i = 0; i < r_; ++i) X0[i] += 2 * (y0 * red_.U[i][0] + y1 * red_.U[i][1]);
  A_ = A;
  B_ = B;
  const IMat& G = req_.gram;
  IVec gx0 = mat_vec(G, X0);
  X_[n_] = X0;
  gx_[n_] = gx0;
  q8_[n_] = dot(X0, gx0);
  for (size_t k = 0; k < req_.linear.size(); ++k) lv_[n_][k] = dot(req_.linear[k], X0);
  if (n_ == 0) {
    if (q_ok(q8_[0])) {
      EnumLeaf leaf;
      leaf.A = A;
      leaf.B = B;
      leaf.q8 = q8_[0];
      leaf.values = lv_[0].data();
      leaf.base = X_[0].data();
      leaf.step = X_[0].data();
      leaf.y = 0;
      leaf.rank = r_;
      visit_(leaf);
    }
    return;
  }
  // center p = -(K^T G K)^{-1} K^T G X0 / 2
  std::vector<double> kgx(n_);
  for (int i = 0; i < n_; ++i) kgx[i] = static_cast<double>(dot(kern_[i], gx0));
  for (int i = 0; i < n_; ++i) {
    double s = 0;
    for (int j = 0; j < n_; ++j) s += gk_inv_[i][j] * kgx[j];
    p_[i] = -s / 2;
  }
  // X.G.X = 4 (y-p)^T Gk (y-p) + plane8
  double budget = std::max(budget8, 0.0) / 4.0;
  descend(n_ - 1, budget * (1 + 1e-9) + 1e-7);
}

void Enumerator::descend(int level, double budget) {
  double c = p_[level];
  for (int j = level + 1; j < n_; ++j) c -= qij_[level][j] * (static_cast<double>(y_[j]) - p_[j]);
  double rad = std::sqrt(std::max(budget, 0.0) / qii_[level]);
  auto lo = static_cast<int64_t>(std::ceil(c - rad - 1e-9));
  auto hi = static_cast<int64_t>(std::floor(c + rad + 1e-9));
  if (lo > hi) return;
  const IVec& Xp = X_[level + 1];
  const IVec& GXp = gx_[level + 1];
  const IVec& st = step_[level];
  const IVec& gst = gstep_[level];
  int64_t cross = dot(st, GXp);  // step . G . Xp
  if (level == 0) {
    EnumLeaf leaf;
    leaf.A = A_;
    leaf.B = B_;
    leaf.base = Xp.data();
    leaf.step = st.data();
    leaf.rank = r_;
    auto& vals = lv_[0];
    const auto& base_vals = lv_[1];
    for (int64_t y = lo; y <= hi; ++y) {
      int64_t q8 = q8_[1] + 2 * y * cross + y * y * ss_[0];
      if (!q_ok(q8)) continue;
      for (size_t k = 0; k < vals.size(); ++k) vals[k] = base_vals[k] + y * lstep_[0][k];
      leaf.q8 = q8;
      leaf.values = vals.data();
      leaf.y = y;
      visit_(leaf);
    }
    return;
  }
  for (int64_t y = lo; y <= hi; ++y) {
    y_[level] = y;
    IVec& X = X_[level];
    IVec& GX = gx_[level];
    for (int i = 0; i < r_; ++i) {
      X[i] = Xp[i] + y * st[i];
      GX[i] = GXp[i] + y * gst[i];
    }
    q8_[level] = q8_[level + 1] + 2 * y * cross + y * y * ss_[level];
    for (size_t k = 0; k < req_.linear.size(); ++k) lv_[level][k] = lv_[level + 1][k] + y * lstep_[level][k];
    double d = static_cast<double>(y) - c;
    descend(level - 1, budget - qii_[level] * d * d);
  }
}

}  // namespace

void enumerate(const EnumRequest& req, const std::function<void(const EnumLeaf&)>& visit) {
  Enumerator e(req, visit);
  e.run();
}

std::vector<IVec> enumerate_vectors(const EnumRequest& req) {
  std::vector<IVec> out;
  enumerate(req, [&](const EnumLeaf& leaf) { out.push_back(leaf.vec()); });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<IVec> enum_shifted_vectors(const Lattice& L, const IVec& shift, const Rational& qmax, const IVec& f,
                                       const IVec& g, IntRange twice_xf, IntRange twice_xg) {
  Lattice l = L;
  auto in_SL = [&](const IVec& v) { return gcd_all(v) == 1 && l.dot(v, v) == 0 && l.dot(v, l.f0) < 0; };
  if (!in_SL(f) || !in_SL(g)) throw std::invalid_argument("f and g must be cusp classes of the lattice");
  if (f == g) throw std::invalid_argument("degenerate cusp pair");
  EnumRequest req;
  req.gram = L.gram;
  req.shift = shift;
  req.p1 = f;
  req.p2 = g;
  req.r1 = twice_xf;
  req.r2 = twice_xg;
  req.qmax = qmax;
  return enumerate_vectors(req);
}

// ---------------------------------------------------------------- basic classes

int BasicClassSets::k() const {
  if (!M) return -1;
  return static_cast<int>((*M - sigma) / 8);
}

std::vector<BasicClass> BasicClassSets::bf_and_minus_bi() const {
  std::vector<BasicClass> out = BF;
  for (const auto& b : BI) {
    BasicClass m = b;
    for (auto& x : m.w) x = -x;
    out.push_back(m);
  }
  std::sort(out.begin(), out.end(), [](const BasicClass& a, const BasicClass& b) { return a.w < b.w; });
  return out;
}

namespace {

void check_pair(const SurfaceModel& s, const IVec& F, const IVec& G) {
  if (!is_cusp_class(s, F)) throw std::invalid_argument("F is not a cusp class: " + format_class(F));
  if (!is_cusp_class(s, G)) throw std::invalid_argument("G is not a cusp class: " + format_class(G));
  if (F == G) throw std::invalid_argument("degenerate cusp pair");
}

// Characteristic W with W^2 > sigma (or >= bound) in the region given on A = -WF, B = -WG.
std::vector<BasicClass> char_region(const SurfaceModel& s, const IVec& F, const IVec& G, IntRange ra, IntRange rb,
                                    const Rational& qmax, bool strict) {
  EnumRequest req;
  req.gram = s.lattice().gram;
  req.shift = s.characteristic();
  req.p1 = F;
  req.p2 = G;
  req.r1 = ra;
  req.r2 = rb;
  req.qmax = qmax;
  req.strict = strict;
  int sigma = s.sigma();
  std::vector<BasicClass> out;
  enumerate(req, [&](const EnumLeaf& leaf) {
    BasicClass b;
    b.w = leaf.vec();
    b.order = static_cast<int>((-leaf.q8 - sigma) / 8);
    out.push_back(std::move(b));
  });
  std::sort(out.begin(), out.end(), [](const BasicClass& a, const BasicClass& b) { return a.w < b.w; });
  return out;
}

}  // namespace

std::optional<int64_t> max_square(const SurfaceModel& s, const IVec& F, const IVec& G) {
  check_pair(s, F, G);
  int sigma = s.sigma();
  int64_t FG = s.prod(F, G);
  int64_t t = sigma;
  while (t + 8 <= 0) t += 8;
  for (; t >= sigma; t -= 8) {
    Rational qmax(-t, 8);  // W^2 >= t
    qmax.canonicalize();
    std::optional<int64_t> best;
    auto take = [&](const std::vector<BasicClass>& v) {
      for (const auto& b : v) {
        int64_t sq = s.prod(b.w, b.w);
        if (!best || sq > *best) best = sq;
      }
    };
    take(char_region(s, F, G, IntRange::at_most(-1), IntRange::at_least(1), qmax, false));
    take(char_region(s, F, G, IntRange::exactly(0), IntRange::between(0, 2 * FG - 1), qmax, false));
    take(char_region(s, F, G, IntRange::between(-(2 * FG - 1), 0), IntRange::exactly(0), qmax, false));
    if (best) return best;
  }
  return std::nullopt;
}

BasicClassSets basic_classes(const SurfaceModel& s, const IVec& F, const IVec& G) {
  check_pair(s, F, G);
  BasicClassSets out;
  out.sigma = s.sigma();
  int64_t FG = s.prod(F, G);
  Rational qmax(-out.sigma, 8);  // W^2 > sigma, strict
  qmax.canonicalize();
  out.BI = char_region(s, F, G, IntRange::at_most(-1), IntRange::at_least(1), qmax, true);
  out.BF = char_region(s, F, G, IntRange::exactly(0), IntRange::between(-2 * FG, -1), qmax, true);
  out.BG = char_region(s, F, G, IntRange::between(-2 * FG, -1), IntRange::exactly(0), qmax, true);
  out.M = max_square(s, F, G);
  return out;
}

BasicClassSets basic_classes_pruned(const SurfaceModel& s, const IVec& F) {
  if (s.kind != SurfaceKind::P2Blow) throw std::invalid_argument("pruned search needs a p2blow surface");
  for (size_t i = 1; i < F.size(); ++i)
    if (F[i] < 0 || F[i] > F[i - 1]) throw std::invalid_argument("pruned search needs f0 >= f1 >= ... >= 0");
  IVec G = s.default_G(1);
  check_pair(s, F, G);
  BasicClassSets out;
  out.sigma = s.sigma();
  int64_t FG = s.prod(F, G);
  Rational qmax(-out.sigma, 8);
  qmax.canonicalize();
  // B_F: only 0 < WG <= FG, the rest by W -> 2F - W.
  auto half = char_region(s, F, G, IntRange::exactly(0), IntRange::between(-FG, -1), qmax, true);
  std::set<IVec> bf;
  for (const auto& b : half) {
    bf.insert(b.w);
    IVec r(b.w.size());
    for (size_t i = 0; i < r.size(); ++i) r[i] = 2 * F[i] - b.w[i];
    bf.insert(r);
  }
  for (const auto& w : bf) out.BF.push_back({w, static_cast<int>((s.prod(w, w) - out.sigma) / 8)});
  // -B_I: seeds with 0 < WG < 2FG and WF < 0, then W + 2jF while still basic.
  auto seeds = char_region(s, F, G, IntRange::at_least(1), IntRange::between(-(2 * FG - 1), -1), qmax, true);
  std::set<IVec> mbi;
  for (const auto& b : seeds) {
    IVec w = b.w;
    while (s.prod(w, w) > out.sigma) {
      mbi.insert(w);
      for (size_t i = 0; i < w.size(); ++i) w[i] += 2 * F[i];
    }
  }
  for (const auto& w : mbi) {
    IVec m(w.size());
    for (size_t i = 0; i < m.size(); ++i) m[i] = -w[i];
    out.BI.push_back({m, static_cast<int>((s.prod(w, w) - out.sigma) / 8)});
  }
  std::sort(out.BI.begin(), out.BI.end(), [](const BasicClass& a, const BasicClass& b) { return a.w < b.w; });
  out.M = max_square(s, F, G);
  return out;
}

// ---------------------------------------------------------------- walls

namespace {

IVec scale_to_integers(const QVec& v) {
  mpz_class l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  IVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    Rational s = v[i] * Rational(l);
    out[i] = s.get_num().get_si();
  }
  int64_t g = gcd_all(out);
  if (g > 1)
    for (auto& x : out) x /= g;
  return out;
}

// Largest d <= dmax with d = -C^2 - 3 mod 4; the wall bound is -xi^2 <= (d+3)/4.
Rational wall_qmax(const SurfaceModel& s, const IVec& C, int dmax) {
  int64_t c2 = s.prod(C, C);
  int d = dmax;
  while (d >= 0 && (((d + c2 + 3) % 4) + 4) % 4 != 0) --d;
  if (d < 0) return Rational(-1);
  Rational q(d + 3, 8);  // lattice Q(xi) = -xi^2/2 <= (d+3)/8
  q.canonicalize();
  return q;
}

void check_not_on_wall(const SurfaceModel& s, const IVec& C, const IVec& h, const IVec& other, const Rational& qmax) {
  EnumRequest req;
  req.gram = s.lattice().gram;
  req.shift = C;
  req.p1 = h;
  req.p2 = other;
  req.r1 = IntRange::exactly(0);
  req.r2 = IntRange::all();
  req.qmax = qmax;
  std::optional<IVec> hit;
  enumerate(req, [&](const EnumLeaf& leaf) {
    if (leaf.q8 > 0 && !hit) hit = leaf.vec();
  });
  if (hit) throw std::domain_error("ambiguous chamber: 2 xi = (" + format_class(*hit) + ") is orthogonal to the period point");
}

std::vector<QVec> walls(const SurfaceModel& s, const IVec& C, int dmax, const IVec& neg, const IVec& pos,
                        bool check_neg) {
  Rational qmax = wall_qmax(s, C, dmax);
  if (qmax <= 0) return {};
  Lattice L = s.lattice();
  if (check_neg) check_not_on_wall(s, C, neg, pos, qmax);
  check_not_on_wall(s, C, pos, neg, qmax);
  EnumRequest req;
  req.gram = L.gram;
  req.shift = C;
  req.p1 = neg;  // xi.neg < 0 on the surface: lattice A = X.neg > 0
  req.p2 = pos;
  req.r1 = IntRange::at_least(1);
  req.r2 = IntRange::at_most(-1);
  req.qmax = qmax;
  std::vector<QVec> out;
  enumerate(req, [&](const EnumLeaf& leaf) {
    if (leaf.q8 <= 0) return;
    IVec X = leaf.vec();
    QVec xi(X.size());
    for (size_t i = 0; i < X.size(); ++i) {
      xi[i] = Rational(X[i], 2);
      xi[i].canonicalize();
    }
    out.push_back(std::move(xi));
  });
  std::sort(out.begin(), out.end());
  return out;
}

bool proportional(const IVec& a, const IVec& b) {
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = i + 1; j < a.size(); ++j)
      if (a[i] * b[j] != a[j] * b[i]) return false;
  return true;
}

}  // namespace

std::vector<QVec> wall_enum(const SurfaceModel& s, const IVec& C, int dmax, const QVec& H1, const QVec& H2) {
  IVec h1 = scale_to_integers(H1), h2 = scale_to_integers(H2);
  for (const auto& h : {h1, h2})
    if (s.prod(h, h) <= 0 || s.prod(h, s.orientation) <= 0)
      throw std::invalid_argument("period point must lie in the positive cone");
  if (proportional(h1, h2)) return {};
  return walls(s, C, dmax, h1, h2, true);
}

std::vector<QVec> wall_enum_from_cusp(const SurfaceModel& s, const IVec& C, int dmax, const IVec& F, const QVec& H) {
  if (!is_cusp_class(s, F)) throw std::invalid_argument("F is not a cusp class");
  IVec h = scale_to_integers(H);
  if (s.prod(h, h) <= 0 || s.prod(h, s.orientation) <= 0)
    throw std::invalid_argument("period point must lie in the positive cone");
  return walls(s, C, dmax, F, h, false);
}

// ---------------------------------------------------------------- text syntax

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

QVec parse_rational_class(const std::string& text) {
  QVec out;
  for (const auto& tok : split(text, ',')) {
    if (tok.empty()) throw std::invalid_argument("empty entry in class vector: '" + text + "'");
    auto x = tok.find('x');
    std::string val = tok.substr(0, x);
    long count = 1;
    if (x != std::string::npos) {
      std::string c = tok.substr(x + 1);
      if (c.empty() || c.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("bad multiplicity in '" + tok + "'");
      count = std::stol(c);
    }
    Rational v = parse_rational(val);
    for (long i = 0; i < count; ++i) out.push_back(v);
  }
  return out;
}

IVec parse_class(const std::string& text) {
  QVec q = parse_rational_class(text);
  IVec out;
  for (const auto& v : q) {
    if (v.get_den() != 1) throw std::invalid_argument("class vector must be integral: '" + text + "'");
    out.push_back(v.get_num().get_si());
  }
  return out;
}

std::string format_class(const QVec& v) {
  std::ostringstream os;
  for (size_t i = 0; i < v.size();) {
    size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    if (i) os << ',';
    os << rational_str(v[i]);
    if (j - i > 1) os << 'x' << (j - i);
    i = j;
  }
  return os.str();
}

std::string format_class(const IVec& v) { return format_class(to_rational(v)); }

}  // namespace dq
