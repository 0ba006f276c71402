#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dq/theta.hpp"

namespace dq {

struct InvariantQuery {
  SurfaceModel S;
  IVec C;
  IVec F;
  std::optional<IVec> G;  // defaults to S.default_G(1)
  QVec x;
  int r = 0;
  int zorder = 8;
  std::optional<Rational> qorder;  // chosen automatically when empty
  bool dual_check = false;         // run both u-extraction methods
};

IVec reference_cusp(const InvariantQuery& q);

// Psi_C^{X,F}(x z, p^r) - Psi_C^{X,G}(x z, p^r) for r = 0..rmax.
std::vector<NumericZ> psi_boundary_range(const InvariantQuery& q, int rmax);
NumericZ psi_boundary_diff(const InvariantQuery& q);
// Rational surfaces: the reference cusp G has vanishing invariants.
std::vector<NumericZ> psi_rational_range(const InvariantQuery& q, int rmax);
NumericZ psi_rational_surface(const InvariantQuery& q);
// s! [z^s] Psi(x z, p^r)
Cyclo8 phi_coeff(const InvariantQuery& q, int s, int r);

// Coeff_{u^{r+1}} of Delta_xi for r = 0..rmax.
std::vector<NumericZ> delta_xi_range(const SurfaceModel& S, const QVec& xi, const QVec& x, int rmax, int zorder);
NumericZ delta_xi(const SurfaceModel& S, const QVec& xi, const QVec& x, int r, int zorder);

// Sum over the walls xi.H1 < 0 < xi.H2, i.e. Phi^{H2} - Phi^{H1}.
std::vector<NumericZ> wallcross_range(const SurfaceModel& S, const IVec& C, const QVec& x, int rmax, int zorder,
                                      const QVec& H1, const QVec& H2);
NumericZ wallcross_sum(const SurfaceModel& S, const IVec& C, const QVec& x, int r, int zorder, const QVec& H1,
                       const QVec& H2);
// Phi^{H} - Phi^{F+}, F+ the chamber at the cusp F on the side of H.
std::vector<NumericZ> wallcross_from_cusp(const SurfaceModel& S, const IVec& C, const QVec& x, int rmax, int zorder,
                                          const IVec& F, const QVec& H);

// Psi^{F+} for the chamber at F on the side of H, from Psi^F and the pole group.
std::vector<NumericZ> psi_cusp_plus(const InvariantQuery& q, const QVec& H, int rmax);

// The two closed forms at the chamber F+ of P1 x P1; C_is_F selects C = F, else C = 0.
NumericZ p1xp1_closed_form(bool C_is_F, const Rational& s, const Rational& t, int r, int zorder);

// Interior invariant at the period point a F + b G (P1 x P1: F = (1,0), G = (0,1);
// blown-up P2: F = H - E1, G = H + E1) evaluated on e^{x z} p^r.
std::vector<NumericZ> interior_invariant_range(const SurfaceModel& S, const IVec& C, const Rational& a,
                                               const Rational& b, const QVec& x, int rmax, int zorder);
NumericZ interior_invariant(const SurfaceModel& S, const IVec& C, const Rational& a, const Rational& b,
                            const QVec& x, int r, int zorder);

// ---------------------------------------------------------------- structure theorem

// +1 when WF > 0 >= WG, -1 when WF <= 0 < WG, else 0.
int epsilon_W(const SurfaceModel& S, const IVec& F, const IVec& G, const IVec& W);

struct ClassRow {
  IVec w;
  int order = 0;
  std::string set;  // "BF", "BG", "BI"
  int epsilon = 0;
};

struct StructureReport {
  int sigma = 0;
  std::optional<int64_t> M;
  int k = -1;
  std::vector<ClassRow> classes;
  std::vector<NumericZ> psi;               // r = 0..R
  std::map<int, TPoly> P_solve, P_expand;  // per z-power
  std::map<int, bool> solve_unique;
  bool simple_type = false;
  bool parts_agree = false;
  bool leading_ok = false;
  NumericZ leading, leading_expected;
  std::vector<std::string> mismatches;
  bool ok() const { return simple_type && parts_agree && leading_ok && mismatches.empty(); }
};

StructureReport structure_theorem(const InvariantQuery& q, int R);

// Principal part in y of A(tau, x z) q^{-W^2/8} e^{W x z eta(2tau)^2/eta^4}, per z-power.
std::map<int, TPoly> class_contribution(const SurfaceModel& S, const IVec& W, const QVec& x, int zorder);

// ---------------------------------------------------------------- blowups

enum class GaussianReading { OverFSquared, OverF };

struct BlowupSeries {
  std::vector<UPoly> B, S;  // index k
};

// Throws std::domain_error when a t-coefficient is not polynomial in U.
BlowupSeries blowup_polys(int max_k, GaussianReading reading = GaussianReading::OverFSquared);

struct BlowupCheck {
  bool ok = true;
  std::vector<std::string> failures;
};

// Compares Psi on the blowup (class x + lambda E) with the closed cosh / sinh forms
// and with the B / S series action, for each lambda.
BlowupCheck blowup_verify(const InvariantQuery& q, const std::vector<Rational>& lambdas, bool series_action = true);

// ---------------------------------------------------------------- Seiberg-Witten dictionary

struct SWReport {
  BasicClassSets sets;
  std::vector<ClassRow> rf;       // R_F = B_F
  std::vector<ClassRow> sw_basic;  // B_I and -B_I
  std::string omega_template;
};

SWReport sw_report(const SurfaceModel& S, const IVec& F);

}  // namespace dq
