#include "dq/zseries.hpp"

#include <sstream>

namespace dq {

FormalZ lift(const NumericZ& a, int64_t trunc) {
  FormalZ r(a.zorder());
  for (const auto& [n, c] : a.terms()) r.set(n, QSeries::constant(c, trunc));
  return r;
}

FormalZ times(const FormalZ& a, const QSeries& s) {
  FormalZ r(a.zorder());
  for (const auto& [n, c] : a.terms()) r.set(n, c * s);
  return r;
}

bool agree(const FormalZ& a, const FormalZ& b) {
  int zo = std::min(a.zorder(), b.zorder());
  for (int n = -1; n <= zo; ++n)
    if (!agree(a.coeff(n), b.coeff(n))) return false;
  return true;
}

std::string str(const NumericZ& a, const std::string& var) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [n, c] : a.terms()) {
    bool simple = c.is_rational();
    bool neg = simple && c[0] < 0;
    std::string cs = neg ? (-c).str() : c.str();
    if (!simple) cs = "(" + cs + ")";
    if (!first) os << (neg ? " - " : " + ");
    else if (neg) os << "-";
    first = false;
    if (n == 0) {
      os << cs;
      continue;
    }
    if (cs != "1") os << cs << "*";
    os << var;
    if (n != 1) os << "^" << (n < 0 ? "(" + std::to_string(n) + ")" : std::to_string(n));
  }
  if (!first) os << " + ";
  os << "O(" << var << "^" << a.zorder() + 1 << ")";
  return os.str();
}

}  // namespace dq
