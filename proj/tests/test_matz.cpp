#include <doctest.h>

#include <set>

#include "siegel/matz.hpp"
#include "siegel/random.hpp"

using namespace siegel;

namespace {

IntMatrix random_matrix(Rng& rng, size_t r, size_t c, long long box) {
  IntMatrix m(r, c);
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < c; ++j) m(i, j) = zz(rng.uniform(-box, box));
  return m;
}

// symmetric square class of a mod q: 0, 1 (square) or -1
int square_class(const Integer& a, long long q) { return legendre(a, q); }

Integer det_mod_diag(const std::vector<long long>& d) {
  Integer r = 1;
  for (long long x : d) r *= zz(x);
  return r;
}

}  // namespace

TEST_CASE("rank mod p") {
  CHECK(rank_mod_p(IntMatrix::identity(3), 5) == 3);
  CHECK(rank_mod_p(IntMatrix{{3, 0}, {0, 1}}, 3) == 1);
  CHECK(rank_mod_p(IntMatrix{{2, 4}, {1, 2}}, 3) == 1);
  CHECK(rank_mod_p(IntMatrix{{2, 4, 1}, {1, 2, 0}}, 3) == 2);
  CHECK(rank_mod_p(IntMatrix(2, 3), 7) == 0);
}

TEST_CASE("determinant") {
  CHECK(IntMatrix{{2, 1}, {7, 4}}.det() == 1);
  CHECK(IntMatrix{{0, 1, 2}, {1, 0, 3}, {4, -3, 8}}.det() == -2);
  CHECK(IntMatrix{{0, 0}, {1, 1}}.det() == 0);
}

TEST_CASE("smith normal form") {
  SmithForm a = smith_normal_form(IntMatrix::diagonal({zz(2), zz(3)}));
  CHECK(a.S == IntMatrix::diagonal({zz(1), zz(6)}));
  CHECK(smith_normal_form(IntMatrix::identity(3)).S == IntMatrix::identity(3));
  SmithForm b = smith_normal_form(IntMatrix{{0, 1}, {1, 0}});
  CHECK(b.S == IntMatrix::identity(2));
  Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    size_t r = static_cast<size_t>(rng.uniform(1, 4)), c = static_cast<size_t>(rng.uniform(1, 5));
    IntMatrix m = random_matrix(rng, r, c, 9);
    SmithForm sf = smith_normal_form(m);
    CHECK(sf.U * m * sf.V == sf.S);
    CHECK(abs(sf.U.det()) == 1);
    CHECK(abs(sf.V.det()) == 1);
    CHECK(sf.V * sf.V_inv == IntMatrix::identity(c));
    CHECK(sf.S.is_diagonal());
    size_t k = std::min(r, c);
    for (size_t i = 0; i + 1 < k; ++i) {
      CHECK(sf.S(i, i) >= 0);
      if (sf.S(i, i) != 0)
        CHECK(mpz_divisible_p(sf.S(i + 1, i + 1).get_mpz_t(), sf.S(i, i).get_mpz_t()));
      else
        CHECK(sf.S(i + 1, i + 1) == 0);
    }
    if (r == c) CHECK(abs(m.det()) == abs(sf.S.det()));
  }
}

TEST_CASE("coset representatives") {
  auto one = coset_reps(IntMatrix{{3}});
  std::set<long long> vals;
  for (auto& v : one) vals.insert(mpz_class(((v[0] % 3) + 3) % 3).get_si());
  CHECK(one.size() == 3);
  CHECK(vals == std::set<long long>{0, 1, 2});
  CHECK(coset_reps(IntMatrix::identity(2)).size() == 1);
  CHECK_THROWS_WITH(coset_reps(IntMatrix{{1, 2}, {2, 4}}), "singular D");

  Rng rng(17);
  std::vector<IntMatrix> Ds{IntMatrix::diagonal({zz(2), zz(2)})};
  for (int t = 0; t < 12; ++t) {
    size_t n = static_cast<size_t>(rng.uniform(1, 3));
    IntMatrix D = random_matrix(rng, n, n, 4);
    if (D.det() != 0 && abs(D.det()) <= 60) Ds.push_back(D);
  }
  for (const auto& D : Ds) {
    auto reps = coset_reps(D);
    CHECK(Integer(static_cast<long>(reps.size())) == abs(D.det()));
    for (size_t a = 0; a < reps.size(); ++a)
      for (size_t b = a + 1; b < reps.size(); ++b) {
        std::vector<Integer> diff(reps[a].size());
        for (size_t i = 0; i < diff.size(); ++i) diff[i] = reps[a][i] - reps[b][i];
        CHECK_FALSE(in_row_lattice(diff, D));
      }
  }
}

TEST_CASE("coprime symmetric pairs") {
  CHECK(is_coprime_symmetric(IntMatrix(2, 2), IntMatrix::identity(2)));
  CHECK_FALSE(is_coprime_symmetric(IntMatrix::diagonal({zz(2), zz(2)}), IntMatrix::diagonal({zz(2), zz(2)})));
  CHECK_FALSE(is_coprime_symmetric(IntMatrix{{4, 0}, {0, 4}}, IntMatrix{{1, 0}, {2, 1}}));  // C tD not symmetric
  CHECK(is_coprime_symmetric(IntMatrix{{4, 0}, {0, 4}}, IntMatrix{{3, 2}, {2, 5}}));
}

TEST_CASE("jordan_mod4") {
  CHECK(jordan_mod4(IntMatrix::diagonal({zz(1), zz(1), zz(0)})) == Jordan2Data{2, 0, true});
  CHECK(jordan_mod4(IntMatrix{{1, 0, 0}, {0, 0, 2}, {0, 2, 0}}) == Jordan2Data{1, 2, false});
  CHECK(jordan_mod4(IntMatrix::diagonal({zz(2), zz(2)})) == Jordan2Data{0, 2, true});
  CHECK(jordan_mod4(IntMatrix::diagonal({zz(4), zz(8)})) == Jordan2Data{0, 0, true});
  CHECK(jordan_mod4(IntMatrix{{0, 1}, {1, 0}}) == Jordan2Data{2, 0, true});
  CHECK_THROWS_AS(jordan_mod4(IntMatrix{{0, 1}, {2, 0}}), std::invalid_argument);

  Rng rng(23);
  std::vector<IntMatrix> bases{IntMatrix::diagonal({zz(1), zz(2), zz(0)}), IntMatrix{{3, 0, 0}, {0, 0, 2}, {0, 2, 0}},
                               IntMatrix::diagonal({zz(2), zz(6), zz(4)}), IntMatrix{{0, 2, 0}, {2, 0, 0}, {0, 0, 4}},
                               IntMatrix::diagonal({zz(1), zz(5), zz(3)})};
  for (const auto& M : bases) {
    Jordan2Data ref = jordan_mod4(M);
    CHECK(ref.d + ref.dprime <= 3);
    if (!ref.eps_plus) CHECK((ref.dprime > 0 && ref.dprime % 2 == 0));
    for (int t = 0; t < 20; ++t) {
      IntMatrix E = random_unimodular(rng, 3, 6, 2);
      CHECK(jordan_mod4(E * M * E.transpose()) == ref);
    }
  }
}

TEST_CASE("diagonalize symmetric mod q") {
  auto r = diagonalize_sym_mod_q(IntMatrix{{0, 1}, {1, 0}}, 3);
  Integer det = det_mod_diag(r.diag);
  CHECK(square_class(det, 3) == square_class(zz(-1), 3));
  auto d = diagonalize_sym_mod_q(IntMatrix::diagonal({zz(2), zz(3), zz(1)}), 5);
  CHECK(d.G == IntMatrix::identity(3));

  Rng rng(31);
  for (long long q : {3, 5, 7}) {
    for (int t = 0; t < 50; ++t) {
      size_t n = static_cast<size_t>(rng.uniform(1, 4));
      IntMatrix A = random_symmetric(rng, n, 6);
      auto res = diagonalize_sym_mod_q(A, q);
      IntMatrix prod = (res.G * A * res.G.transpose()).mod(zz(q));
      CHECK(prod.is_diagonal());
      for (size_t i = 0; i < n; ++i) CHECK(prod(i, i) == zz(res.diag[i]));
      CHECK(rank_mod_p(res.G, q) == static_cast<int>(n));
      CHECK(rank_mod_p(prod, q) == rank_mod_p(A, q));
      // square class of the determinant survives (G A tG has det det(G)^2 det A)
      CHECK(square_class(det_mod_diag(res.diag), q) == square_class(A.det(), q));
    }
  }
}

TEST_CASE("rational inverse and unimodular helpers") {
  IntMatrix E{{2, 1}, {7, 4}};
  CHECK(is_unimodular(E));
  CHECK(E * inverse_unimodular(E) == IntMatrix::identity(2));
  CHECK_THROWS(inverse_unimodular(IntMatrix{{2, 0}, {0, 1}}));
  RatMatrix inv = RatMatrix(IntMatrix{{2, 0}, {0, 4}}).inverse();
  CHECK(inv(1, 1) == Rational(1, 4));
}
