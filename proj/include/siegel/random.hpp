#pragma once

#include <cstdint>
#include <functional>
#include <random>

#include "siegel/matz.hpp"

namespace siegel {

// Seeded source whose draws do not depend on the standard library's
// distribution implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}
  uint64_t next() { return eng_(); }
  long long uniform(long long lo, long long hi);  // inclusive
  double unit();                                   // [0, 1)
  bool coin() { return (next() >> 63) != 0; }

 private:
  std::mt19937_64 eng_;
};

// symmetric n x n with entries in [-box, box]
IntMatrix random_symmetric(Rng& rng, size_t n, long long box);

// Product of `steps` elementary transvections I + c*e_ij (|c| <= box) and
// sign flips.  Entries (i,j) with restricted(i,j) true only receive
// multiples of `modulus`.
IntMatrix random_unimodular(Rng& rng, size_t n, int steps, long long box = 1,
                            const std::function<bool(size_t, size_t)>& restricted = nullptr,
                            long long modulus = 1);

}  // namespace siegel
