#pragma once

#include <cstdint>
#include <vector>

#include "dq/cyclo8.hpp"

namespace dq {

using IVec = std::vector<int64_t>;
using IMat = std::vector<IVec>;
using QVec = std::vector<Rational>;

int64_t dot(const IVec& a, const IVec& b);
IVec mat_vec(const IMat& m, const IVec& v);
// a^T G b
int64_t bilinear(const IMat& g, const IVec& a, const IVec& b);
Rational bilinear(const IMat& g, const QVec& a, const QVec& b);
QVec to_rational(const IVec& v);

// Column operations on the 2 x r matrix with rows r1, r2: [r1; r2] * U has
// the shape [[h00, 0, ...], [h10, h11, 0, ...]] with U unimodular.
struct TwoRowReduction {
  IMat U;  // r x r, columns are the new basis
  int64_t h00 = 0, h10 = 0, h11 = 0;
};
TwoRowReduction reduce_two_rows(const IVec& r1, const IVec& r2);

// LLL reduction (delta = 0.99) of the vectors in `basis` for the positive definite form G.
void lll_reduce(std::vector<IVec>& basis, const IMat& g);

// Exact determinant (Bareiss).
mpz_class determinant(const IMat& m);
// Number of positive minus number of negative eigenvalues; exact.
int signature(const IMat& g);
// Some solution x of A x = b over GF(2); A must be invertible mod 2.
IVec solve_mod2(const IMat& a, const IVec& b);

int64_t gcd_all(const IVec& v);

}  // namespace dq
