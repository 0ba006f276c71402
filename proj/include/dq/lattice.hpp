#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dq/intlinalg.hpp"

namespace dq {

// Unimodular lattice of type (r-1, 1); x.y = x^T gram y, Q(x) = x.x / 2.
struct Lattice {
  IMat gram;
  IVec f0;  // Q(f0) < 0 selects the positive light cone

  int rank() const { return static_cast<int>(gram.size()); }
  int64_t dot(const IVec& a, const IVec& b) const { return bilinear(gram, a, b); }
  Rational dot(const QVec& a, const QVec& b) const { return bilinear(gram, a, b); }
  Rational q(const QVec& a) const { return dot(a, a) / 2; }
  int signature() const;
  // Throws unless symmetric, unimodular and of type (r-1, 1).
  void validate() const;
};

enum class SurfaceKind { P2Blow, P1xP1, P1xP1Blow, Custom };

struct SurfaceModel {
  SurfaceKind kind = SurfaceKind::P2Blow;
  int n = 0;               // number of blowups
  IMat intersection;       // surface intersection form
  std::vector<std::string> basis;
  IVec orientation;        // class of positive square in the chosen cone component

  int rank() const { return static_cast<int>(intersection.size()); }
  int64_t prod(const IVec& a, const IVec& b) const { return bilinear(intersection, a, b); }
  Rational prod(const QVec& a, const QVec& b) const { return bilinear(intersection, a, b); }
  int sigma() const;  // signature of X
  Lattice lattice() const;
  bool is_characteristic(const IVec& w) const;
  // A fixed characteristic vector (all ones in the p2blow basis).
  IVec characteristic() const;
  // Reference cusp with vanishing invariants: H + E_j for p2blow, G for p1xp1 kinds.
  IVec default_G(int j = 1) const;
  std::string name() const;
};

SurfaceModel make_surface(SurfaceKind kind, int n = 0);
// Gram given directly (for custom surfaces); orientation picked automatically.
SurfaceModel make_custom_surface(const IMat& intersection);
// "p2blow:N", "p1xp1", "p1xp1blow:N", "custom:<file>"
SurfaceModel parse_surface(const std::string& spec);

bool is_cusp_class(const SurfaceModel& s, const IVec& F);

// ---------------------------------------------------------------- enumeration
//
// Vectors xi in L + shift/2 are handled through their doubled coordinates
// X = 2 xi (so X = shift mod 2).  Sign constraints are placed on the integers
// A = X.p1, B = X.p2 (lattice products with p1, p2), which must span a
// hyperbolic plane.

struct IntRange {
  std::optional<int64_t> lo, hi;  // inclusive
  static IntRange all() { return {}; }
  static IntRange exactly(int64_t v) { return {v, v}; }
  static IntRange at_least(int64_t v) { return {v, std::nullopt}; }
  static IntRange at_most(int64_t v) { return {std::nullopt, v}; }
  static IntRange between(int64_t a, int64_t b) { return {a, b}; }
  bool contains(int64_t v) const { return (!lo || v >= *lo) && (!hi || v <= *hi); }
};

struct EnumRequest {
  IMat gram;
  IVec shift;          // X = shift (mod 2)
  IVec p1, p2;         // lattice vectors
  IntRange r1, r2;     // constraints on A = X.p1 and B = X.p2
  Rational qmax;       // Q(xi) = X.X / 8 <= qmax (or < when strict)
  bool strict = false;
  std::vector<IVec> linear;  // extra covectors l; leaf reports l . X (plain dot product)
};

struct EnumLeaf {
  int64_t A = 0, B = 0;
  int64_t q8 = 0;                  // X.X = 8 Q(xi)
  const int64_t* values = nullptr;  // one per EnumRequest::linear
  // X = base + y * step
  const int64_t* base = nullptr;
  const int64_t* step = nullptr;
  int64_t y = 0;
  int rank = 0;
  IVec vec() const;
};

// Visits every X satisfying the request exactly once.
void enumerate(const EnumRequest& req, const std::function<void(const EnumLeaf&)>& visit);
// Sorted list of doubled coordinates.
std::vector<IVec> enumerate_vectors(const EnumRequest& req);

// enum_shifted_vectors for a cusp pair: xi in L + shift/2, Q(xi) <= qmax and the
// given constraints on the half-integers xi.f, xi.g expressed in doubled form.
std::vector<IVec> enum_shifted_vectors(const Lattice& L, const IVec& shift, const Rational& qmax, const IVec& f,
                                       const IVec& g, IntRange twice_xf, IntRange twice_xg);

// ---------------------------------------------------------------- basic classes

struct BasicClass {
  IVec w;
  int order = 0;  // (W^2 - sigma)/8
};

struct BasicClassSets {
  std::vector<BasicClass> BI, BF, BG;
  std::optional<int64_t> M;  // max W^2 over WF >= 0 >= WG; empty when below sigma
  int k() const;             // (M - sigma)/8, or -1 when M is empty
  int sigma = 0;
  // B_F together with -B_I.
  std::vector<BasicClass> bf_and_minus_bi() const;
};

// Def. of the basic classes for the cusp pair (F, G).
BasicClassSets basic_classes(const SurfaceModel& s, const IVec& F, const IVec& G);
// Same, through the reduced search of the rational-surface observations (p2blow with
// F sorted decreasing and nonnegative; G must be H + E1).
BasicClassSets basic_classes_pruned(const SurfaceModel& s, const IVec& F);
// Maximal square over characteristic W with WF >= 0 >= WG, searched downward
// from 0 to sigma in steps of 8.
std::optional<int64_t> max_square(const SurfaceModel& s, const IVec& F, const IVec& G);

// ---------------------------------------------------------------- walls

// Period points as rational vectors on the surface side.
// Classes xi of type (C, d) with xi.H1 < 0 < xi.H2 (surface products), for all d <= dmax.
std::vector<QVec> wall_enum(const SurfaceModel& s, const IVec& C, int dmax, const QVec& H1, const QVec& H2);
// Walls with xi.F < 0 < xi.H where F is a cusp approached from the side of H
// (only -(d+3)/4 <= xi^2 < 0 is listed).
std::vector<QVec> wall_enum_from_cusp(const SurfaceModel& s, const IVec& C, int dmax, const IVec& F, const QVec& H);

// Class-vector text: "4,2x2,1x8" -> (4,2,2,1,...,1).
IVec parse_class(const std::string& text);
QVec parse_rational_class(const std::string& text);
std::string format_class(const IVec& v);
std::string format_class(const QVec& v);

}  // namespace dq
