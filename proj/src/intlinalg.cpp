#include "dq/intlinalg.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dq {

int64_t dot(const IVec& a, const IVec& b) {
  int64_t s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

IVec mat_vec(const IMat& m, const IVec& v) {
  IVec r(m.size(), 0);
  for (size_t i = 0; i < m.size(); ++i) r[i] = dot(m[i], v);
  return r;
}

int64_t bilinear(const IMat& g, const IVec& a, const IVec& b) { return dot(a, mat_vec(g, b)); }

Rational bilinear(const IMat& g, const QVec& a, const QVec& b) {
  Rational s = 0;
  for (size_t i = 0; i < g.size(); ++i) {
    if (a[i] == 0) continue;
    Rational row = 0;
    for (size_t j = 0; j < g.size(); ++j)
      if (g[i][j] != 0 && b[j] != 0) row += Rational(g[i][j]) * b[j];
    s += a[i] * row;
  }
  return s;
}

QVec to_rational(const IVec& v) {
  QVec r;
  r.reserve(v.size());
  for (int64_t x : v) r.emplace_back(Rational(x));
  return r;
}

int64_t gcd_all(const IVec& v) {
  int64_t g = 0;
  for (int64_t x : v) g = std::gcd(g, x < 0 ? -x : x);
  return g;
}

namespace {

// Column op: col_j -= k * col_i on both the row data and U.
void col_sub(IVec& r1, IVec& r2, IMat& U, size_t i, size_t j, int64_t k) {
  if (k == 0) return;
  r1[j] -= k * r1[i];
  r2[j] -= k * r2[i];
  for (auto& row : U) row[j] -= k * row[i];
}

void col_swap(IVec& r1, IVec& r2, IMat& U, size_t i, size_t j) {
  std::swap(r1[i], r1[j]);
  std::swap(r2[i], r2[j]);
  for (auto& row : U) std::swap(row[i], row[j]);
}

// Euclid along `row` over columns from..end, leaving the gcd in column `from`.
void clear_row(IVec& row, IVec& other, IMat& U, size_t from, bool first_is_row) {
  IVec& r1 = first_is_row ? row : other;
  IVec& r2 = first_is_row ? other : row;
  size_t n = row.size();
  for (;;) {
    size_t piv = n;
    for (size_t j = from; j < n; ++j)
      if (row[j] != 0 && (piv == n || std::llabs(row[j]) < std::llabs(row[piv]))) piv = j;
    if (piv == n) return;
    if (piv != from) col_swap(r1, r2, U, from, piv);
    bool done = true;
    for (size_t j = from + 1; j < n; ++j) {
      if (row[j] == 0) continue;
      col_sub(r1, r2, U, from, j, row[j] / row[from]);
      if (row[j] != 0) done = false;
    }
    if (done) return;
  }
}

}  // namespace

TwoRowReduction reduce_two_rows(const IVec& a, const IVec& b) {
  size_t n = a.size();
  TwoRowReduction out;
  out.U.assign(n, IVec(n, 0));
  for (size_t i = 0; i < n; ++i) out.U[i][i] = 1;
  IVec r1 = a, r2 = b;
  clear_row(r1, r2, out.U, 0, true);
  if (n > 1) clear_row(r2, r1, out.U, 1, false);
  out.h00 = r1[0];
  out.h10 = r2[0];
  out.h11 = n > 1 ? r2[1] : 0;
  return out;
}

void lll_reduce(std::vector<IVec>& b, const IMat& g) {
  const size_t n = b.size();
  if (n < 2) return;
  auto gram = [&](size_t i, size_t j) { return static_cast<double>(bilinear(g, b[i], b[j])); };
  std::vector<std::vector<double>> mu(n, std::vector<double>(n, 0.0));
  std::vector<double> bstar(n, 0.0);
  auto gso = [&]() {
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j < i; ++j) {
        double s = gram(i, j);
        for (size_t k = 0; k < j; ++k) s -= mu[j][k] * mu[i][k] * bstar[k];
        mu[i][j] = s / bstar[j];
      }
      double s = gram(i, i);
      for (size_t k = 0; k < i; ++k) s -= mu[i][k] * mu[i][k] * bstar[k];
      bstar[i] = s;
    }
  };
  gso();
  size_t k = 1;
  int guard = 0;
  while (k < n) {
    if (++guard > 100000) throw std::runtime_error("LLL did not terminate");
    for (size_t jj = k; jj-- > 0;) {
      double m = std::nearbyint(mu[k][jj]);
      if (m != 0) {
        auto mi = static_cast<int64_t>(m);
        for (size_t t = 0; t < b[k].size(); ++t) b[k][t] -= mi * b[jj][t];
        gso();
      }
    }
    if (bstar[k] >= (0.99 - mu[k][k - 1] * mu[k][k - 1]) * bstar[k - 1]) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      gso();
      k = std::max<size_t>(k - 1, 1);
    }
  }
}

mpz_class determinant(const IMat& m) {
  size_t n = m.size();
  if (n == 0) return 1;
  std::vector<std::vector<mpz_class>> a(n, std::vector<mpz_class>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) a[i][j] = static_cast<long>(m[i][j]);
  mpz_class prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

int signature(const IMat& gi) {
  size_t n = gi.size();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) a[i][j] = Rational(gi[i][j]);
  int pos = 0, neg = 0;
  std::vector<bool> used(n, false);
  for (size_t step = 0; step < n; ++step) {
    size_t p = n;
    for (size_t i = 0; i < n; ++i)
      if (!used[i] && a[i][i] != 0) {
        p = i;
        break;
      }
    if (p == n) {
      // zero diagonal: replace e_i by e_i + e_j for a nonzero off-diagonal entry
      size_t pi = n, pj = n;
      for (size_t i = 0; i < n && pi == n; ++i)
        for (size_t j = 0; j < n; ++j)
          if (!used[i] && !used[j] && i != j && a[i][j] != 0) {
            pi = i;
            pj = j;
            break;
          }
      if (pi == n) break;  // remaining block is zero
      for (size_t t = 0; t < n; ++t) a[pi][t] += a[pj][t];
      for (size_t t = 0; t < n; ++t) a[t][pi] += a[t][pj];
      p = pi;
    }
    used[p] = true;
    (a[p][p] > 0 ? pos : neg)++;
    for (size_t i = 0; i < n; ++i) {
      if (used[i] || a[i][p] == 0) continue;
      Rational f = a[i][p] / a[p][p];
      for (size_t j = 0; j < n; ++j) a[i][j] -= f * a[p][j];
    }
    for (size_t j = 0; j < n; ++j)
      if (!used[j]) a[p][j] = 0;
    for (size_t i = 0; i < n; ++i)
      if (!used[i]) a[i][p] = 0;
  }
  return pos - neg;
}

IVec solve_mod2(const IMat& am, const IVec& bv) {
  size_t n = am.size();
  std::vector<std::vector<int>> a(n, std::vector<int>(n + 1));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) a[i][j] = static_cast<int>(((am[i][j] % 2) + 2) % 2);
    a[i][n] = static_cast<int>(((bv[i] % 2) + 2) % 2);
  }
  for (size_t c = 0, r = 0; c < n; ++c, ++r) {
    size_t p = r;
    while (p < n && !a[p][c]) ++p;
    if (p == n) throw std::invalid_argument("matrix not invertible mod 2");
    std::swap(a[p], a[r]);
    for (size_t i = 0; i < n; ++i)
      if (i != r && a[i][c])
        for (size_t j = c; j <= n; ++j) a[i][j] ^= a[r][j];
  }
  IVec x(n);
  for (size_t i = 0; i < n; ++i) x[i] = a[i][n];
  return x;
}

}  // namespace dq
