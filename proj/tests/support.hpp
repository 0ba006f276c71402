#pragma once

#include <random>

#include "dq/cyclo8.hpp"

namespace dqtest {

inline dq::Rational random_rational(std::mt19937& rng, int num = 9, int den = 7) {
  std::uniform_int_distribution<int> n(-num, num), d(1, den);
  dq::Rational r(n(rng), d(rng));
  r.canonicalize();
  return r;
}

inline dq::Cyclo8 random_cyclo(std::mt19937& rng) {
  return dq::Cyclo8(random_rational(rng), random_rational(rng), random_rational(rng), random_rational(rng));
}

}  // namespace dqtest
