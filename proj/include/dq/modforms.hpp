#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "dq/qseries.hpp"
#include "dq/zseries.hpp"

namespace dq {

// Thrown when a q-series is not known far enough for an extraction.
class OrderStarvation : public std::runtime_error {
 public:
  OrderStarvation(const std::string& what, Rational required)
      : std::runtime_error(what), required_(std::move(required)) {}
  // Smallest truncation (in q-units) that would have sufficed.
  const Rational& required() const { return required_; }

 private:
  Rational required_;
};

Rational bernoulli(unsigned n);

// Catalog entries; names as accepted by named_series.
const std::vector<std::string>& catalog_names();
// q-expansion of a catalog entry, known for all exponents < qorder.
QSeries named_series(const std::string& name, const Rational& qorder);
// Same, with the truncation given in 1/48 units.
QSeries named_series_grid(const std::string& name, int64_t trunc);
// G_k, zero for odd k.
QSeries eisenstein(unsigned k, int64_t trunc);

// theta_{mu nu}(tau, x) with 2 pi i x = w; w must have z-valuation >= 1.
FormalZ theta_charz(int mu, int nu, const FormalZ& w, const Rational& qorder, int zorder);

// Coeff_{u^{r+1}} via the residue formula and via rewriting in u; both are returned.
struct CoeffInU {
  Cyclo8 residue;
  Cyclo8 reversion;
};
CoeffInU coeff_in_u_both(const QSeries& F, int r);
// Residue value; throws if the two methods disagree.
Cyclo8 coeff_in_u(const QSeries& F, int r);
// Residue method only.
Cyclo8 coeff_in_u_residue(const QSeries& F, int r);
Cyclo8 coeff_in_u_reversion(const QSeries& F, int r);

struct UPoly {
  std::vector<Cyclo8> c;  // c[k] multiplies U^k
  int degree() const;
  QSeries eval(int64_t trunc) const;
  std::string str(const std::string& var = "U") const;
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c == b.c; }
};
UPoly as_poly_in_U(const QSeries& F);

struct YLaurent {
  std::map<int, Cyclo8> c;  // y^k coefficients, k < trunc
  int trunc = 0;
  Cyclo8 coeff(int k) const;
  // Part with k < 0.
  std::map<int, Cyclo8> principal() const;
};
// F(q) rewritten in y = Utilde - 2; coefficients y^k known for k < yorder.
YLaurent expand_in_y(const QSeries& F, int yorder);
// The q-expansion of y = Utilde - 2 as an exact-to-trunc series.
QSeries y_as_q_series(int64_t trunc);

}  // namespace dq
