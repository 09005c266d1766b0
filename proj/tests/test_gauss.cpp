#include <doctest.h>

#include <cmath>
#include <complex>

#include "siegel/gauss.hpp"

using namespace siegel;
using cd = std::complex<double>;

namespace {

// Sum over the box [0, d)^n, d = |det D|, which covers Z^n/Z^nD exactly
// d^n / |det D| times.  Floating point, independent of the SNF code.
cd gauss_box_numeric(const IntMatrix& C, const IntMatrix& D) {
  size_t n = D.rows();
  RatMatrix A = RatMatrix(D).inverse() * RatMatrix(C);
  long long d = Integer(abs(D.det())).get_si();
  std::vector<long long> u(n, 0);
  cd total = 0;
  for (;;) {
    Rational q = 0;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) q += qq(u[i] * u[j]) * A(i, j);
    // e{2 tU U A} = exp(2 pi i U A tU); reduce mod 1 first
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    double frac = Rational(q - Rational(fl)).get_d();
    total += std::polar(1.0, 2 * M_PI * frac);
    size_t k = 0;
    while (k < n) {
      if (++u[k] < d) break;
      u[k] = 0;
      ++k;
    }
    if (k == n) break;
  }
  return total / std::pow(static_cast<double>(d), static_cast<double>(n) - 1.0);
}

}  // namespace

TEST_CASE("small gauss sums") {
  CHECK(gauss_sum(IntMatrix{{1}}, IntMatrix{{4}}) == CycNumber(2) + CycNumber(2) * CycNumber::root_of_unity(4, 1));
  CHECK(gauss_sum(IntMatrix{{1}}, IntMatrix{{9}}) == CycNumber(3));
  CHECK(gauss_sum(IntMatrix(2, 2), IntMatrix::identity(2)) == CycNumber(1));
  for (long long q : {3, 5, 7, 11, 13}) CHECK(gauss_sum(IntMatrix{{1}}, IntMatrix{{q}}) == gauss_g1(q));
  CHECK_THROWS_WITH(gauss_sum(IntMatrix{{1}}, IntMatrix{{0}}), "singular D");
  CHECK_THROWS_AS(gauss_sum(IntMatrix{{2}}, IntMatrix{{4}}), std::invalid_argument);
  CHECK_THROWS_AS(gauss_sum(IntMatrix{{1}}, IntMatrix{{200001}}), std::length_error);
}

TEST_CASE("gauss sums against the box oracle and the direct method") {
  Rng rng(3);
  for (int t = 0; t < 60; ++t) {
    size_t n = static_cast<size_t>(rng.uniform(1, 3));
    auto [C, D] = random_coprime_pair(rng, n, n == 3 ? 12 : 60);
    CAPTURE(C.to_string());
    CAPTURE(D.to_string());
    CycNumber g = gauss_sum(C, D);
    CHECK(g == gauss_sum(C, D, default_gauss_budget(), GaussMethod::Direct));
    CHECK(std::abs(g.approx() - gauss_box_numeric(C, D)) < 1e-7);
    Rational nsq = g.norm_sq_rational();
    CHECK(nsq >= 0);
  }
}

TEST_CASE("theta multiplier") {
  CHECK(theta_multiplier(IntMatrix{{4}}, IntMatrix{{1}}) == CycNumber(1));
  CycNumber m5 = theta_multiplier(IntMatrix{{4}}, IntMatrix{{5}});
  CHECK(m5.conj() * m5 == CycNumber(1));
  CHECK(theta_multiplier(IntMatrix(2, 2), IntMatrix::identity(2)) == CycNumber(1));
  CHECK_THROWS_AS(theta_multiplier(IntMatrix{{2}}, IntMatrix{{1}}), std::invalid_argument);
  Rng rng(9);
  for (int t = 0; t < 30; ++t) {
    size_t n = static_cast<size_t>(rng.uniform(1, 3));
    auto [C, D] = random_coprime_pair(rng, n, 200);
    C = C * zz(4);
    if (!is_coprime_symmetric(C, D)) continue;
    CycNumber m = theta_multiplier(C, D);
    CHECK(m.conj() * m == CycNumber(1));
  }
}

TEST_CASE("unimodular invariance") {
  IntMatrix C{{4, 0}, {0, 4}}, D{{3, 2}, {2, 5}}, E{{1, 1}, {0, 1}};
  CHECK(verify_unimodular_invariance(C, D, IntMatrix::identity(2)).passed());
  CHECK(verify_unimodular_invariance(C, D, E).passed());
  auto bad = verify_unimodular_invariance(C, IntMatrix{{1, 0}, {2, 1}}, E);
  CHECK_FALSE(bad.applicable);
  Rng rng(12);
  for (size_t n = 1; n <= 3; ++n)
    for (int t = 0; t < 5; ++t) {
      auto [C2, D2] = random_coprime_pair(rng, n, 200);
      for (int e = 0; e < 4; ++e) {
        IntMatrix E2 = random_unimodular(rng, n, 5, 2);
        CHECK(verify_unimodular_invariance(C2, D2, E2).passed());
      }
    }
}

TEST_CASE("scaling identity: anchor and random instances") {
  auto anchor = verify_scaling(IntMatrix{{1}}, IntMatrix{{1}}, 3, 1);
  REQUIRE(anchor.applicable);
  CHECK(*anchor.lhs == CycNumber(3));
  CHECK(anchor.passed());
  Rng rng(51);
  int done = 0;
  for (size_t n = 1; n <= 3; ++n)
    for (long long q : {3, 5})
      for (size_t s = 1; s <= n; ++s) {
        auto inst = random_scaling_instance(rng, n, q, s);
        if (!inst) continue;
        auto rep = verify_scaling(inst->M, inst->N, q, s);
        CHECK(rep.applicable);
        CHECK(rep.passed());
        ++done;
      }
  CHECK(done >= 8);
  CHECK_FALSE(verify_scaling(IntMatrix{{3}}, IntMatrix{{1}}, 3, 1).applicable);
}

TEST_CASE("conjugation identity on random instances") {
  Rng rng(52);
  int done = 0;
  for (size_t n = 1; n <= 3; ++n)
    for (long long q : {3, 5})
      for (size_t r = 1; r <= n; ++r) {
        auto inst = random_conjugation_instance(rng, n, q, r);
        if (!inst) continue;
        auto rep = verify_conjugation(inst->M, inst->N, q, r);
        CHECK(rep.applicable);
        CHECK(rep.passed());
        ++done;
      }
  CHECK(done >= 8);
}

TEST_CASE("reduction identity: degree one and random instances") {
  // n = 1, l = 1: M = 3m, N = c with 3 not dividing mc
  for (long long m : {1, 2, 4})
    for (long long c : {1, 2, 5}) {
      if (gcd_ll(3 * m, c) != 1) continue;
      auto rep = verify_reduction(IntMatrix{{3 * m}}, IntMatrix{{c}}, 3, 1);
      REQUIRE(rep.applicable);
      CHECK(rep.passed());
    }
  Rng rng(53);
  int done = 0;
  for (size_t n = 1; n <= 3; ++n)
    for (long long q : {3, 5})
      for (size_t l = 1; l <= n; ++l) {
        auto inst = random_reduction_instance(rng, n, q, l);
        if (!inst) continue;
        auto rep = verify_reduction(inst->M, inst->N, q, l);
        CHECK(rep.applicable);
        CHECK(rep.passed());
        ++done;
      }
  CHECK(done >= 8);
}

TEST_CASE("plus-type sign computation") {
  for (long long N : {3, 5, 15}) {
    auto rep = verify_plus_type_sign(N, 2);
    REQUIRE(rep.applicable);
    CHECK(rep.passed());
  }
  CHECK(*verify_plus_type_sign(15, 2).rhs == CycNumber(29));
  CHECK_FALSE(verify_plus_type_sign(3, 4).applicable);
}
