#include <doctest.h>

#include <algorithm>
#include <functional>
#include <random>

#include "dq/lattice.hpp"

using namespace dq;

namespace {

// all X = shift mod 2 in a box satisfying the request, sorted
std::vector<IVec> box_enumerate(const EnumRequest& req, int box) {
  const int n = static_cast<int>(req.gram.size());
  std::vector<IVec> out;
  IVec X(n);
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      int64_t A = bilinear(req.gram, X, req.p1), B = bilinear(req.gram, X, req.p2);
      if (!req.r1.contains(A) || !req.r2.contains(B)) return;
      Rational q(bilinear(req.gram, X, X), 8);
      q.canonicalize();
      if (req.strict ? q < req.qmax : q <= req.qmax) out.push_back(X);
      return;
    }
    for (int64_t t = -box; t <= box; ++t) {
      if ((t - req.shift[i]) % 2) continue;
      X[i] = t;
      rec(i + 1);
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("surface models") {
  for (int n = 0; n <= 12; ++n) {
    SurfaceModel S = make_surface(SurfaceKind::P2Blow, n);
    CHECK(S.rank() == n + 1);
    CHECK(S.sigma() == 1 - n);
    CHECK(S.is_characteristic(S.characteristic()));
    CHECK_NOTHROW(S.lattice().validate());
  }
  SurfaceModel P = make_surface(SurfaceKind::P1xP1);
  CHECK(P.sigma() == 0);
  CHECK(P.is_characteristic(IVec{0, 0}));
  CHECK(!P.is_characteristic(IVec{1, 0}));
  CHECK(parse_surface("p2blow:4").rank() == 5);
  CHECK(parse_surface("p1xp1").rank() == 2);
  CHECK_THROWS(parse_surface("p2blow:x"));
  CHECK_THROWS(parse_surface("k3"));
}

TEST_CASE("class syntax round-trips") {
  CHECK(parse_class("4,2x2,1x8") == IVec{4, 2, 2, 1, 1, 1, 1, 1, 1, 1, 1});
  CHECK(parse_class("-1,0x3") == IVec{-1, 0, 0, 0});
  for (const char* t : {"4,2x2,1x8", "5,3,1x16", "1,-1", "0x9,1", "3,2,2,1"})
    CHECK(parse_class(format_class(parse_class(t))) == parse_class(t));
  CHECK(format_class(parse_class("4,2,2,1,1")) == "4,2x2,1x2");
  CHECK(parse_rational_class("1/2,0x2,-1/3") == QVec{Rational(1, 2), 0, 0, Rational(-1, 3)});
  CHECK_THROWS(parse_class("1,,2"));
  CHECK_THROWS(parse_class("1x"));
  CHECK_THROWS(parse_class("2x-1"));
}

TEST_CASE("cusp classes") {
  SurfaceModel S = make_surface(SurfaceKind::P2Blow, 9);
  CHECK(is_cusp_class(S, parse_class("3,1x9")));
  CHECK(is_cusp_class(S, S.default_G(1)));
  CHECK(!is_cusp_class(S, parse_class("3,1x8,0")));
  CHECK(!is_cusp_class(S, parse_class("-3,-1x9")));  // other cone component
  CHECK(!is_cusp_class(S, parse_class("6,2x9")));    // not primitive
}

TEST_CASE("enumeration matches a box search") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> bit(0, 1), bound(-4, 4);
  SurfaceModel S = make_surface(SurfaceKind::P2Blow, 2);
  Lattice L = S.lattice();
  for (int t = 0; t < 12; ++t) {
    EnumRequest req;
    req.gram = L.gram;
    req.shift = {bit(rng), bit(rng), bit(rng)};
    req.p1 = {1, 1, 0};
    req.p2 = {1, 0, 1};
    int a = bound(rng), b = bound(rng);
    req.r1 = IntRange::between(std::min(a, b), std::max(a, b));
    req.r2 = t % 2 ? IntRange::at_most(3) : IntRange::between(-4, 2);
    req.qmax = Rational(3, 2);
    req.strict = t % 3 == 0;
    if (t % 2) req.r2 = IntRange::between(-3, 3);
    CHECK(enumerate_vectors(req) == box_enumerate(req, 40));
  }
}

TEST_CASE("walls match a box search") {
  SurfaceModel P = make_surface(SurfaceKind::P1xP1);
  for (const IVec& C : std::vector<IVec>{{1, 0}, {0, 1}, {0, 0}}) {
    QVec H1{2, 7}, H2{7, 3};
    for (int dmax = 0; dmax <= 9; ++dmax) {
      std::vector<QVec> got = wall_enum(P, C, dmax, H1, H2);
      std::vector<QVec> want;
      int64_t c2 = P.prod(C, C);
      for (int64_t X0 = -41; X0 <= 41; ++X0)
        for (int64_t X1 = -41; X1 <= 41; ++X1) {
          if ((X0 - C[0]) % 2 || (X1 - C[1]) % 2) continue;
          IVec X{X0, X1};
          int64_t x2 = P.prod(X, X);  // 4 xi^2
          if (x2 >= 0) continue;
          bool typed = false;  // some d <= dmax with -xi^2 <= (d+3)/4 and d = -c2-3 mod 4
          for (int d = 0; d <= dmax; ++d)
            if ((((d + c2 + 3) % 4) + 4) % 4 == 0 && -x2 <= d + 3) typed = true;
          if (!typed) continue;
          QVec xi{Rational(X0, 2), Rational(X1, 2)};
          for (auto& v : xi) v.canonicalize();
          if (P.prod(xi, H1) < 0 && P.prod(xi, H2) > 0) want.push_back(xi);
        }
      std::sort(want.begin(), want.end());
      CHECK(got == want);
    }
  }
}

TEST_CASE("a period point on a wall is rejected") {
  SurfaceModel P = make_surface(SurfaceKind::P1xP1);
  CHECK_THROWS_WITH_AS(wall_enum(P, IVec{1, 1}, 40, QVec{7, 3}, QVec{2, 14}), doctest::Contains("ambiguous chamber"),
                       std::domain_error);
}

TEST_CASE("basic classes: full and reduced searches agree") {
  for (const char* F : {"3,1x9", "4,2x2,1x8", "4,2,1x12", "5,2x5,1x5"}) {
    IVec f = parse_class(F);
    SurfaceModel S = make_surface(SurfaceKind::P2Blow, static_cast<int>(f.size()) - 1);
    BasicClassSets a = basic_classes(S, f, S.default_G(1)), b = basic_classes_pruned(S, f);
    auto key = [](const std::vector<BasicClass>& v) {
      std::vector<std::pair<IVec, int>> k;
      for (const auto& c : v) k.push_back({c.w, c.order});
      std::sort(k.begin(), k.end());
      return k;
    };
    CHECK(key(a.BF) == key(b.BF));
    CHECK(key(a.BI) == key(b.BI));
    CHECK(a.M == b.M);
    CHECK(a.M == max_square(S, f, S.default_G(1)));
    for (const auto* set : {&a.BF, &a.BI, &a.BG})
      for (const auto& c : *set) {
        CHECK(S.is_characteristic(c.w));
        CHECK(S.prod(c.w, c.w) > S.sigma());
        CHECK(c.order == (S.prod(c.w, c.w) - S.sigma()) / 8);
      }
  }
}

TEST_CASE("order of simple type on a sample of cusp classes") {
  // (F, k): k = (M - sigma)/8, spanning orders 1 to 3
  const std::vector<std::pair<const char*, int>> sample{{"3,1x9", 1},    {"4,2x2,1x8", 1}, {"4,2,1x12", 1},
                                                        {"5,3,1x16", 2}, {"5,2,1x21", 2},  {"5,1x25", 3},
                                                        {"6,3,1x27", 3}};
  for (const auto& [F, k] : sample) {
    IVec f = parse_class(F);
    SurfaceModel S = make_surface(SurfaceKind::P2Blow, static_cast<int>(f.size()) - 1);
    REQUIRE(is_cusp_class(S, f));
    auto M = max_square(S, f, S.default_G(1));
    REQUIRE(M.has_value());
    CHECK((*M - S.sigma()) / 8 == k);
  }
}

TEST_CASE("small surfaces have no basic classes") {
  for (int n = 1; n <= 8; ++n) {
    SurfaceModel S = make_surface(SurfaceKind::P2Blow, n);
    IVec F(n + 1, 0);
    F[0] = 1;
    F[1] = -1;
    BasicClassSets B = basic_classes(S, F, S.default_G(1));
    CHECK(B.BF.empty());
    CHECK(B.BI.empty());
  }
}
