#pragma once
#include <cstdint>
#include <random>

#include "core/rational.hpp"

namespace grc {

// All randomized routines draw through this so that runs are reproducible
// from a single seed.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  long uniform(long lo, long hi) {  // inclusive
    return std::uniform_int_distribution<long>(lo, hi)(eng_);
  }

  ZVec int_vec(size_t n, long lo, long hi) {
    ZVec v(n);
    for (auto& x : v) x = uniform(lo, hi);
    return v;
  }

  QVec rat_vec(size_t n, long lo, long hi) {
    QVec v(n);
    for (auto& x : v) x = uniform(lo, hi);
    return v;
  }

  uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace grc
