#pragma once

#include <map>
#include <optional>
#include <vector>

#include "dq/lattice.hpp"
#include "dq/modforms.hpp"

namespace dq {

// Laurent coefficients of 1/(1 - s e^y) for s = +1 or -1: entry n+1 holds the
// coefficient of y^n, n = -1..nmax.
std::vector<Rational> inv_one_minus_exp(int s, int nmax);

// F(tau; u, v) with u = u_lin z, v = v_lin z.
FormalZ kronecker_F(const Cyclo8& u_lin, const Cyclo8& v_lin, const Rational& qorder, int zorder);

// Indefinite theta data, all in lattice conventions.  The theta argument is
// x z / (2 pi i), so each e^{2 pi i xi.x} becomes e^{(xi.x) z}; other arguments are
// obtained with rescale_z.  Series are exact for q-exponents < qorder.
struct ThetaRequest {
  Lattice L;
  IVec c;  // xi runs over L + c/2
  IVec b;  // phase e^{pi i xi.b}
  IVec f, g;
  QVec x;
  Rational qorder;
  int zorder = 0;
};

// Sum over xi.f = 0, f.h <= xi.h < 0 of q^Q(xi) e^{2 pi i xi.(x + b/2)}, times
// 1/(1 - e^{2 pi i f.(x + b/2)}).  h may be any lattice vector with f.h < 0.
FormalZ theta_pole_group(const Lattice& L, const IVec& c, const IVec& b, const IVec& f, const IVec& h,
                         const QVec& x, const Rational& qorder, int zorder);
// The sinh group: sum over xi.f > 0 > xi.g.
FormalZ theta_sinh_group(const ThetaRequest& req);
FormalZ theta_indef(const ThetaRequest& req);

// z^n coefficient multiplied by omega^n (n >= -1).
FormalZ rescale_z(const FormalZ& a, const QSeries& omega);

// phi_{L,c}^{f,g}(tau, x z); req.b is ignored (b = c).
FormalZ phi_fn(const ThetaRequest& req);
// The prefactors of phi applied to a raw theta-type series in place of Theta_{L,c,c}.
FormalZ phi_dress(const Lattice& L, const IVec& c, const QVec& x, const FormalZ& raw, const Rational& qorder,
                  int zorder);

// ---------------------------------------------------------------- surface side

// Omega_C^{X,F,G}(tau, x z): finite sums over the basic classes.
FormalZ omega_fn(const SurfaceModel& S, const IVec& C, const IVec& F, const IVec& G, const QVec& x, int zorder);
FormalZ omega_fn(const SurfaceModel& S, const BasicClassSets& B, const IVec& C, const IVec& F, const IVec& G,
                 const QVec& x, int zorder);
// Leading term O: the part of Omega with W^2 = M, without the q-power.
NumericZ oh_leading(const SurfaceModel& S, const IVec& C, const IVec& F, const IVec& G, const QVec& x, int zorder);
NumericZ oh_leading(const SurfaceModel& S, const BasicClassSets& B, const IVec& C, const IVec& F, const IVec& G,
                    const QVec& x, int zorder);

// A(tau, x z) of the structure theorem, as a FormalZ.
FormalZ structure_prefactor(const SurfaceModel& S, const QVec& x, int64_t trunc, int zorder);

// phi at the cusp -1, built from Theta_{L,w,c}; w a characteristic vector.
FormalZ phi_W_image(const ThetaRequest& req, const IVec& w);

// A polynomial without constant term, p[j] multiplies t^j (p[0] unused and zero).
struct TPoly {
  std::vector<Cyclo8> p;
  int degree() const;
  std::string str(const std::string& var = "t") const;
  friend bool operator==(const TPoly& a, const TPoly& b);
};

struct StructureTerm {
  int n = 0;
  TPoly P;
  UPoly R;
  Cyclo8 a;
};

struct StructureData {
  std::vector<StructureTerm> terms;  // n = -1..zorder
  int64_t m = 0;                     // min w.w over the basic classes (lattice side, = -M)
  int degree_bound = 0;              // (sigma(L) - m)/8
  NumericZ leading;                  // sum a_n z^n
  NumericZ leading_expected;         // closed form of the leading coefficients
};

// Principal parts of A * Omega(x z eta(2tau)^2/eta^4) in y = Utilde - 2, per z-power.
std::map<int, TPoly> structure_principal(const SurfaceModel& S, const BasicClassSets& B, const IVec& C,
                                         const IVec& F, const IVec& G, const QVec& x, int zorder);

// Full decomposition of phi_{L,c}^{f,g}: P_n from the principal parts, R_n from the
// remainder, leading coefficients a_n.  Throws std::logic_error on a residual that
// is not polynomial in U.
StructureData structure_extract(const SurfaceModel& S, const ThetaRequest& req);

// P(1/(U-2)) - eps P(-1/(U+2)) as a q-series.
QSeries structure_singular_part(const TPoly& P, const Cyclo8& eps, int64_t trunc);

}  // namespace dq
