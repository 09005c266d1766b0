#include "siegel/random.hpp"

namespace siegel {

long long Rng::uniform(long long lo, long long hi) {
  uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<long long>(next());
  // rejection keeps the draw exactly uniform
  uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return lo + static_cast<long long>(x % span);
}

double Rng::unit() { return static_cast<double>(next() >> 11) * (1.0 / 9007199254740992.0); }

IntMatrix random_symmetric(Rng& rng, size_t n, long long box) {
  IntMatrix m(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i; j < n; ++j) {
      m(i, j) = zz(rng.uniform(-box, box));
      m(j, i) = m(i, j);
    }
  return m;
}

IntMatrix random_unimodular(Rng& rng, size_t n, int steps, long long box,
                            const std::function<bool(size_t, size_t)>& restricted, long long modulus) {
  IntMatrix e = IntMatrix::identity(n);
  if (n == 0) return e;
  for (int k = 0; k < steps; ++k) {
    if (n == 1 || rng.uniform(0, 4) == 0) {
      size_t i = static_cast<size_t>(rng.uniform(0, static_cast<long long>(n) - 1));
      for (size_t j = 0; j < n; ++j) e(i, j) = -e(i, j);
      continue;
    }
    size_t i = static_cast<size_t>(rng.uniform(0, static_cast<long long>(n) - 1));
    size_t j = static_cast<size_t>(rng.uniform(0, static_cast<long long>(n) - 2));
    if (j >= i) ++j;
    long long c = rng.uniform(-box, box);
    if (restricted && restricted(i, j)) c *= modulus;
    if (c == 0) continue;
    // row_i += c * row_j
    for (size_t t = 0; t < n; ++t) e(i, t) += zz(c) * e(j, t);
  }
  return e;
}

}  // namespace siegel
