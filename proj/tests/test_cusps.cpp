#include <set>

#include "doctest.h"
#include "siegel/cusps.hpp"
#include "siegel/random.hpp"

using namespace siegel;

TEST_CASE("multiplicative partitions") {
  auto p = enumerate_partitions(3, 1);
  REQUIRE(p.size() == 2);
  CHECK(p[0].parts == std::vector<long long>{3, 1});
  CHECK(p[1].parts == std::vector<long long>{1, 3});
  CHECK(enumerate_partitions(1, 4).size() == 1);
  auto p15 = enumerate_partitions(15, 2);
  CHECK(p15.size() == 9);
  std::set<std::vector<long long>> distinct;
  for (const auto& x : p15) {
    CHECK(x.product() == 15);
    distinct.insert(x.parts);
  }
  CHECK(distinct.size() == 9);
  CHECK_THROWS_AS(enumerate_partitions(6, 1), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_partitions(9, 1), std::invalid_argument);
}

TEST_CASE("admissible types") {
  auto t1 = enumerate_admissible(1, 1);
  REQUIRE(t1.size() == 3);
  CHECK(t1[0].pattern_string() == "(0,0,+)");
  CHECK(t1[1].pattern_string() == "(0,1,+)");
  CHECK(t1[2].pattern_string() == "(1,0,+)");
  auto t2 = enumerate_admissible(1, 2);
  CHECK(t2.size() == 7);
  int minus = 0;
  for (const auto& t : t2)
    if (!t.eps_plus) {
      ++minus;
      CHECK(t.dprime == 2);
    }
  CHECK(minus == 1);
  CHECK(enumerate_admissible(15, 2).size() == 63);
  CHECK(enumerate_admissible(3, 1).size() == 6);
  for (auto [N, n] : std::vector<std::pair<long long, size_t>>{{1, 1}, {3, 1}, {15, 2}, {3, 3}, {105, 2}, {1, 4}})
    CHECK(enumerate_admissible(N, n).size() == static_cast<size_t>(admissible_count(N, n)));
}

TEST_CASE("build_M_sigma congruences and examples") {
  for (size_t n = 1; n <= 3; ++n) {
    AdmissibleType zero{{std::vector<long long>(n + 1, 1)}, 0, 0, true};
    CHECK(build_M_sigma(zero).is_zero());
  }
  AdmissibleType a{{{1, 3}}, 0, 0, true};
  IntMatrix M = build_M_sigma(a);
  CHECK(M == IntMatrix{{4}});
  AdmissibleType h{{{1, 1, 1}}, 0, 2, false};
  CHECK(build_M_sigma(h).mod(Integer(4)) == IntMatrix{{0, 2}, {2, 0}});
  for (auto [N, n] : std::vector<std::pair<long long, size_t>>{{3, 1}, {15, 2}, {3, 3}})
    for (const auto& t : enumerate_admissible(N, n)) {
      IntMatrix m = build_M_sigma(t);
      CHECK(satisfies_sigma_congruences(m, t));
      // direct reduction oracle for the diagonal of each prime slot
      for (long long q : prime_factors(N)) CHECK(rank_mod_p(m, q) == static_cast<int>(t.partition.slot_of(q)));
      if (t.d == 0 && t.dprime == 0) {
        CHECK(m.is_diagonal());
        CHECK(m.mod(Integer(4)).is_zero());
      }
    }
}

TEST_CASE("classify inverts build and is congruence invariant") {
  Rng rng(17);
  for (auto [N, n] : std::vector<std::pair<long long, size_t>>{{3, 1}, {15, 2}, {3, 3}})
    for (const auto& t : enumerate_admissible(N, n)) {
      IntMatrix m = build_M_sigma(t);
      CHECK(classify_cusp(m, N) == t);
      for (int k = 0; k < 20; ++k) {
        IntMatrix E = random_unimodular(rng, n, 4, 2);
        CHECK(classify_cusp(E * m * E.transpose(), N) == t);
      }
    }
  auto z = classify_cusp(IntMatrix(2, 2), 15);
  CHECK(z.partition.parts == std::vector<long long>{15, 1, 1});
  CHECK(z.pattern_string() == "(0,0,+)");
}

TEST_CASE("vanishing status") {
  DirichletCharacter triv = DirichletCharacter::trivial(60);
  AdmissibleType plus{{{15, 1}}, 0, 1, true};
  auto s = vanishing_status(plus, DirichletCharacter::trivial(60));
  CHECK(s.value == Vanishing::Zero);
  CHECK(s.reason == "plus-type");

  AdmissibleType mid{{{1, 15, 1}}, 0, 0, true};
  DirichletCharacter quad3 = DirichletCharacter::parse(60, "quadratic@3");
  CHECK(vanishing_status(mid, quad3).value == Vanishing::Nonvanishing);
  DirichletCharacter ord4 = DirichletCharacter::parse(60, "gen^1:4@5");
  auto z = vanishing_status(mid, ord4);
  CHECK(z.value == Vanishing::Zero);
  CHECK(z.reason == "character-condition");
  // end slots impose no condition
  AdmissibleType end{{{5, 1, 3}}, 0, 0, true};
  CHECK(vanishing_status(end, ord4).value == Vanishing::Nonvanishing);
  CHECK(vanishing_status(AdmissibleType{{{1, 1, 15}}, 0, 2, false}, triv).value == Vanishing::Undetermined);
  CHECK(vanishing_status(AdmissibleType{{{1, 1, 15}}, 1, 0, true}, triv).value == Vanishing::Undetermined);
  CHECK_THROWS_AS(vanishing_status(mid, DirichletCharacter::trivial(12)), std::invalid_argument);
}
