#include <doctest.h>

#include <set>
#include <vector>

#include "siegel/counts.hpp"
#include "siegel/matz.hpp"

using namespace siegel;

namespace {

// number of c-dimensional subspaces of F_q^b, counted as distinct reduced
// row echelon forms of full-rank c x b matrices
long long count_subspaces(long long q, int b, int c) {
  if (c > b) return 0;
  if (c == 0) return 1;
  std::set<std::vector<long long>> seen;
  int cells = b * c;
  std::vector<long long> v(cells, 0);
  for (;;) {
    std::vector<std::vector<long long>> m(c, std::vector<long long>(b));
    for (int i = 0; i < cells; ++i) m[i / b][i % b] = v[i];
    // row reduce mod q
    int row = 0;
    for (int col = 0; col < b && row < c; ++col) {
      int p = row;
      while (p < c && m[p][col] == 0) ++p;
      if (p == c) continue;
      std::swap(m[p], m[row]);
      long long inv = inv_mod(m[row][col], q);
      for (auto& x : m[row]) x = x * inv % q;
      for (int i = 0; i < c; ++i)
        if (i != row && m[i][col] != 0) {
          long long f = m[i][col];
          for (int j = 0; j < b; ++j) m[i][j] = mod_ll(m[i][j] - f * m[row][j], q);
        }
      ++row;
    }
    if (row == c) {
      std::vector<long long> flat;
      for (auto& r : m) flat.insert(flat.end(), r.begin(), r.end());
      seen.insert(flat);
    }
    int k = 0;
    while (k < cells) {
      if (++v[k] < q) break;
      v[k] = 0;
      ++k;
    }
    if (k == cells) break;
  }
  return static_cast<long long>(seen.size());
}

}  // namespace

TEST_CASE("mu, delta, beta") {
  CHECK(mu(3, 2, 2) == 16);
  CHECK(delta(3, 2, 2) == 40);
  CHECK(mu(7, 5, 0) == 1);
  CHECK(delta(7, 5, 0) == 1);
  CHECK(mu(5, 1, 1) == 4);
  CHECK(delta(5, 1, 1) == 6);
  CHECK(beta(3, 2, 1) == 4);
  CHECK(beta(5, 3, 2) == 31);
  CHECK(beta(3, 0, 0) == 1);
  CHECK(beta(3, 1, 2) == 0);
  CHECK(beta(3, -1, 0) == 0);
  for (long long q : {2, 3, 5, 7})
    for (long long b = 0; b <= 6; ++b) CHECK(beta(q, b, 0) == 1);
}

TEST_CASE("beta matches subspace enumeration") {
  // c > b/2 follows from duality beta(b,c) = beta(b,b-c)
  for (int b = 0; b <= 4; ++b)
    for (int c = 0; 2 * c <= b; ++c) {
      CHECK(beta(3, b, c) == zz(count_subspaces(3, b, c)));
      CHECK(beta(3, b, b - c) == beta(3, b, c));
    }
  for (int c = 0; c <= 2; ++c) CHECK(beta(5, 2, c) == zz(count_subspaces(5, 2, c)));
}

TEST_CASE("beta recurrence and alternating sum") {
  for (long long q : {3, 5, 7})
    for (long long m = 1; m <= 8; ++m)
      for (long long r = 1; r <= m; ++r) CHECK(beta(q, m, r) == Integer(rational_pow(qq(q), r).get_num() * beta(q, m - 1, r) + beta(q, m - 1, r - 1)));
  for (long long p : {3, 5, 7})
    for (long long j = 0; j <= 5; ++j)
      for (long long r = 0; r <= j; ++r) {
        Integer s = 0;
        for (long long i = 0; i <= j - r; ++i) {
          Integer term = rational_pow(qq(p), i * (i - 1) / 2).get_num() * beta(p, j - r, i);
          s += (i % 2 == 0) ? term : Integer(-term);
        }
        CHECK(s == (r == j ? 1 : 0));
      }
}

TEST_CASE("sym closed forms against brute force") {
  CHECK(sym_closed(3, CharKind::Trivial, 2, 0) == CycNumber(18));
  CHECK(sym_closed(3, CharKind::Quadratic, 2, 0) == CycNumber(-6));
  CHECK(sym_closed(5, CharKind::Quadratic, 1, 0).is_zero());
  CHECK(sym_bruteforce(3, CharKind::Trivial, 0, 0) == CycNumber(1));
  CHECK(sym_bruteforce(3, CharKind::Trivial, 0, 1).is_zero());
  CHECK(sym_psi(3, 1).is_zero());
  CHECK(sym_psi(3, 2) == CycNumber(-6));
  CHECK(sym_psi(5, 2) == CycNumber(20));
  CHECK(sym_bruteforce(5, CharKind::Quadratic, 2, 0) == CycNumber(20));
  for (long long q : {3, 5})
    for (long long b = 0; b <= 4; ++b)
      for (long long c = 0; b + c <= 4; ++c)
        for (CharKind k : {CharKind::Trivial, CharKind::Quadratic}) {
          CAPTURE(q);
          CAPTURE(b);
          CAPTURE(c);
          CHECK(sym_closed(q, k, b, c) == sym_bruteforce(q, k, b, c));
        }
  for (long long q : {7, 11})
    for (long long b = 0; b <= 3; ++b)
      for (long long c = 0; b + c <= 3; ++c)
        for (CharKind k : {CharKind::Trivial, CharKind::Quadratic}) CHECK(sym_closed(q, k, b, c) == sym_bruteforce(q, k, b, c));
  CHECK(sym_closed(5, CharKind::Other, 2, 0).is_zero());
  CHECK(sym_closed(5, CharKind::Trivial, -1, 0).is_zero());
  CHECK_THROWS_AS(sym_bruteforce(5, CharKind::Trivial, 6, 0, 1000), std::length_error);
}

TEST_CASE("twisting by the Legendre symbol swaps the kinds") {
  CHECK(twist_by_legendre(CharKind::Trivial) == CharKind::Quadratic);
  CHECK(twist_by_legendre(CharKind::Quadratic) == CharKind::Trivial);
  CHECK(twist_by_legendre(CharKind::Other) == CharKind::Other);
}
