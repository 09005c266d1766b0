#include "doctest.h"
#include "siegel/hecke.hpp"

using namespace siegel;

namespace {

CycNumber ipow_c(long long q, long long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(e));
  return CycNumber(r);
}

}  // namespace

TEST_CASE("char_pair_eval on diagonal pairs") {
  auto chi = DirichletCharacter::parse(20, "gen^1:4@5");
  // identity coset
  CHECK(char_pair_eval(chi, {qq(16)}, {qq(1)}) == CycNumber(1));
  CHECK(char_pair_eval(chi, {qq(20)}, {qq(1)}) == CycNumber(1));
  // M = (9) is a unit mod 5, so the value is chi_5(9^{-1}) = chi_5(4)
  CHECK(char_pair_eval(chi, {qq(9)}, {qq(1, 9)}) == chi.component_value(5, zz(4)));
  // M = (5 * 4): not a unit mod 5, the N entry is used instead
  CHECK(char_pair_eval(chi, {qq(20)}, {qq(3)}) == chi.component_value(5, zz(3)));
  auto chi4 = DirichletCharacter::parse(12, "quadratic@4");
  CHECK(char_pair_eval(chi4, {qq(0), qq(0)}, {qq(1), qq(3)}) == CycNumber(-1));
  CHECK_THROWS(char_pair_eval(chi, {qq(1)}, {qq(1), qq(1)}));
}

TEST_CASE("context checks") {
  CHECK_THROWS_AS(HalfIntegralContext(1, 8, 3, DirichletCharacter::trivial(12)), std::invalid_argument);
  CHECK_THROWS_AS(HalfIntegralContext(1, 7, 3, DirichletCharacter::trivial(3)), std::invalid_argument);
  CHECK_THROWS_AS(HalfIntegralContext(1, 7, 9, DirichletCharacter::trivial(36)), std::invalid_argument);
  HalfIntegralContext small(1, 7, 3, DirichletCharacter::trivial(12));
  CHECK(!small.convergent());
  CHECK(small.warnings().size() == 1);
  HalfIntegralContext odd(5, 7, 3, DirichletCharacter::parse(12, "quadratic@3"));
  CHECK(odd.convergent());
  CHECK(!odd.even_character());
  MultiplicativePartition sp{{1, 1, 1, 1, 1, 1}};
  CHECK_THROWS_AS(A_coeff(odd, sp, 0, 1, 0, 3), std::domain_error);
}

TEST_CASE("A_j(d,0) agrees with the bad-prime eigenvalue") {
  for (long long N : {3, 5, 15})
    for (const char* cs : {"trivial", "quadratic@3,quadratic@4", "quadratic@5"}) {
      if (N == 3 && std::string(cs) == "quadratic@5") continue;
      if (N == 5 && std::string(cs) != "quadratic@5" && std::string(cs) != "trivial") continue;
      for (size_t n = 1; n <= 3; ++n)
        for (long long k : {7, 9}) {
          HalfIntegralContext ctx(n, k, N, DirichletCharacter::parse(4 * N, cs));
          for (long long q : prime_factors(N))
            for (const auto& s : ctx.partitions()) {
              size_t d = s.slot_of(q);
              MultiplicativePartition sp = remove_prime(s, q);
              for (size_t j = 1; j <= n; ++j) CHECK(A_coeff(ctx, sp, d, j, 0, q) == lambda_bad(ctx, s, j, q));
              CycNumber lam = lambda_bad(ctx, s, n, q);
              long long ld = static_cast<long long>(d);
              CHECK(lam.conj() * lam == ipow_c(q, 2 * ld * (k - ld - 1)));
              CHECK(A_coeff(ctx, sp, d, n, n - d + 1, q).is_zero());
            }
        }
    }
}

TEST_CASE("lambda_bad small cases") {
  HalfIntegralContext ctx(2, 9, 3, DirichletCharacter::trivial(12));
  MultiplicativePartition s0{{3, 1, 1}};
  CHECK(lambda_bad(ctx, s0, 1, 3) == CycNumber(4));   // (9-1)/(3-1)
  CHECK(lambda_bad(ctx, s0, 2, 3) == CycNumber(1));
  CHECK(lambda_bad(ctx, s0, 0, 3) == CycNumber(1));
  MultiplicativePartition s2{{1, 1, 3}};
  CHECK(lambda_bad(ctx, s2, 2, 3) == ipow_c(3, 12));  // d(k-d-1) = 2*6
  CHECK_THROWS_AS(lambda_bad(ctx, s0, 1, 5), std::invalid_argument);
  CHECK_THROWS_AS(lambda_bad(ctx, s0, 3, 3), std::invalid_argument);
}

TEST_CASE("tilde basis and multiplicity one") {
  HalfIntegralContext ctx(2, 9, 15, DirichletCharacter::trivial(60));
  TildeBasis tb = tilde_basis(ctx);
  CHECK(tb.coeff.size() == 9);
  CHECK(tb.unitriangular);
  CHECK(tb.residual_zero.at(3));
  CHECK(tb.residual_zero.at(5));
  for (size_t s = 0; s < 9; ++s)
    for (long long q : {3, 5}) CHECK(tilde_is_eigenvector(ctx, tb, s, q, 2));

  auto rep = multiplicity_one_check(ctx);
  CHECK(rep.separated);
  CHECK(rep.collisions.empty());
  CHECK(rep.vectors.size() == 9);

  HalfIntegralContext c3(1, 7, 3, DirichletCharacter::trivial(12));
  auto r3 = multiplicity_one_check(c3);
  CHECK(r3.separated);
  CHECK(r3.vectors[0][0] == CycNumber(1));
  CHECK(r3.vectors[1][0].conj() * r3.vectors[1][0] == ipow_c(3, 10));
}

TEST_CASE("tilde basis diagonalises every T_j(q^2)") {
  for (auto [N, cs] : std::vector<std::pair<long long, std::string>>{
           {15, "trivial"}, {15, "quadratic@3,quadratic@4"}, {21, "gen^1:6@7,quadratic@4"}})
    for (size_t n = 1; n <= 2; ++n) {
      HalfIntegralContext ctx(n, 9, N, DirichletCharacter::parse(4 * N, cs));
      TildeBasis tb = tilde_basis(ctx);
      CHECK(tb.unitriangular);
      for (size_t s = 0; s < ctx.partitions().size(); ++s) {
        if (tb.vanishing[s]) continue;
        for (long long q : prime_factors(N))
          for (size_t j = 1; j <= n; ++j) {
            CHECK(tilde_is_eigenvector(ctx, tb, s, q, j, BadReading::SignCorrected));
            if (legendre(-1, q) == 1 || j == n) CHECK(tilde_is_eigenvector(ctx, tb, s, q, j));
          }
      }
    }
  // the printed coefficient breaks T_1/T_2 commutation at q = 3
  HalfIntegralContext ctx(2, 9, 15, DirichletCharacter::trivial(60));
  TildeBasis tb = tilde_basis(ctx);
  int failures = 0;
  for (size_t s = 0; s < 9; ++s)
    if (!tilde_is_eigenvector(ctx, tb, s, 3, 1)) ++failures;
  CHECK(failures > 0);
}

TEST_CASE("good-prime eigenvalues") {
  for (long long p : {5, 7, 11})
    for (long long k : {5, 7, 9}) {
      HalfIntegralContext ctx(1, k, 3, DirichletCharacter::trivial(12));
      MultiplicativePartition s{{3, 1}};
      CHECK(lambda_good(ctx, s, 1, p) == ipow_c(p, k - 2) + CycNumber(1));
    }
  HalfIntegralContext c5(1, 5, 3, DirichletCharacter::trivial(12));
  CHECK(lambda_good(c5, MultiplicativePartition{{3, 1}}, 1, 5) == CycNumber(126));
  CHECK_THROWS_AS(lambda_good(c5, MultiplicativePartition{{3, 1}}, 1, 3), std::invalid_argument);
  CHECK_THROWS_AS(lambda_good(c5, MultiplicativePartition{{3, 1}}, 1, 9), std::invalid_argument);
  CHECK(lambda_good(c5, MultiplicativePartition{{3, 1}}, 0, 5) == CycNumber(1));
}

TEST_CASE("closed product against transformed operators") {
  for (const char* cs : {"trivial", "quadratic@11", "gen^1:5@11", "quadratic@4"})
    for (size_t n = 1; n <= 3; ++n)
      for (long long k : {7, 9}) {
        HalfIntegralContext ctx(n, k, 11, DirichletCharacter::parse(44, cs));
        for (long long p : {3, 5, 7})
          for (const auto& s : ctx.partitions())
            for (size_t j = 0; j <= n; ++j)
              CHECK(lambda_prime(ctx, s, j, p, PrimeMode::Closed) == lambda_prime(ctx, s, j, p, PrimeMode::ViaTransform));
      }
  HalfIntegralContext ctx(2, 9, 1, DirichletCharacter::trivial(4));
  MultiplicativePartition s{{1, 1, 1}};
  CHECK(lambda_prime(ctx, s, 0, 3, PrimeMode::Closed) == CycNumber(1));
}

TEST_CASE("integral weight formulas") {
  auto triv = DirichletCharacter::trivial(3);
  MultiplicativePartition s{{3, 1}};
  for (long long p : {5, 7})
    for (long long kp : {4, 6}) {
      CycNumber tp = lambda_integral(IntegralKind::Tp, s, 0, p, kp, triv);
      CHECK(tp == ipow_c(p, kp - 1) + CycNumber(1));
      // degree one: T(p)^2 = T_1(p^2) + (p+1) p^{k'-2}
      CycNumber t1 = lambda_integral(IntegralKind::Tjp2, s, 1, p, kp, triv);
      CHECK(tp * tp == t1 + CycNumber(p + 1) * ipow_c(p, kp - 2));
    }
  CHECK(lambda_integral(IntegralKind::Tq, s, 0, 3, 6, triv) == CycNumber(1));
  MultiplicativePartition s1{{1, 3}};
  CHECK(lambda_integral(IntegralKind::Tq, s1, 0, 3, 6, triv) == ipow_c(3, 5));
  CHECK(lambda_integral(IntegralKind::Tjq2, s1, 1, 3, 6, triv) == ipow_c(3, 10));
  CHECK_THROWS_AS(lambda_integral(IntegralKind::Tp, s, 0, 3, 6, triv), std::invalid_argument);
  CHECK_THROWS_AS(lambda_integral(IntegralKind::Tp, s, 0, 5, 6, DirichletCharacter::trivial(12)),
                  std::invalid_argument);
}

TEST_CASE("degree one Shimura comparison") {
  for (long long N : {3, 5, 15})
    for (long long k : {7, 9})
      for (long long p : {5, 7, 11}) {
        if (N % p == 0) continue;
        std::vector<std::string> specs{"trivial", "quadratic@" + std::to_string(prime_factors(N)[0])};
        if (N == 15) specs.push_back("gen^1:4@5,quadratic@4");
        for (const auto& cs : specs)
          for (const auto& row : shimura_compare(N, k, DirichletCharacter::parse(4 * N, cs), p)) CHECK(row.equal);
      }
  auto rows = shimura_compare(3, 7, DirichletCharacter::trivial(12), 5);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].half_integral == CycNumber(3126));
  CHECK(rows[0].integral == CycNumber(3126));
}
