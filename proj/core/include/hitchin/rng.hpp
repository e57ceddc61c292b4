#pragma once

#include <cstdint>
#include <random>

#include "hitchin/types.hpp"

namespace hitchin {

// Deterministic uniform generator. std::uniform_real_distribution is
// implementation-defined, so uniforms are derived from raw mt19937_64 output
// directly; identical seeds give identical streams on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // [0, 1)
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  Complex complex_uniform(double a, double b) {
    const double re = uniform(a, b);
    const double im = uniform(a, b);
    return {re, im};
  }

  std::uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace hitchin
