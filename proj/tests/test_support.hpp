#pragma once

#include <random>

#include "excverify/jordan.hpp"

namespace excv::testing {

inline CycNum random_scalar(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-3, 3);
  std::uniform_int_distribution<int> pick(0, 2);
  int p = pick(rng);
  if (p == 0) return CycNum(d(rng));
  if (p == 1) return CycNum(d(rng)) * CycNum::imag_unit() + CycNum(d(rng), 2);
  return CycNum(d(rng)) * CycNum::zeta(d(rng));
}

inline CycNum random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-4, 4);
  return CycNum(d(rng), 1 + (d(rng) + 4) % 3);
}

inline Octonion random_oct(std::mt19937_64& rng, bool real = false) {
  Octonion o;
  for (auto& x : o.c) x = real ? random_rational(rng) : random_scalar(rng);
  return o;
}

inline JordanElem random_jordan(std::mt19937_64& rng, bool real = false) {
  JordanElem j;
  for (auto& x : j.xi) x = real ? random_rational(rng) : random_scalar(rng);
  for (auto& o : j.x) o = random_oct(rng, real);
  return j;
}

}  // namespace excv::testing
