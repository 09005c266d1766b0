#include <cmath>
#include <numbers>

#include "doctest.h"
#include "siegel/theta.hpp"

using namespace siegel;

namespace {

CMatrix scalar_tau(cd z) {
  CMatrix t(1, 1);
  t(0, 0) = z;
  return t;
}

}  // namespace

TEST_CASE("theta at i and in degree two") {
  // theta(i/2) = pi^{1/4} / Gamma(3/4), theta(i) = sqrt(2 + sqrt 2)/2 times that
  double ref = std::pow(std::numbers::pi, 0.25) / std::tgamma(0.75);
  CHECK(std::abs(theta_numeric(scalar_tau(cd(0, 0.5))) - ref) < 1e-12);
  cd t1 = theta_numeric(scalar_tau(cd(0, 1)));
  CHECK(std::abs(t1 - ref * std::sqrt(2 + std::sqrt(2.0)) / 2) < 1e-12);
  CHECK(std::abs(theta_numeric(scalar_tau(cd(0, 40))) - 1.0) < 1e-12);
  cd t2 = theta_numeric(sample_tau(2, 0));
  CHECK(std::abs(t2 - t1 * t1) < 1e-12);
  cd t3 = theta_numeric(sample_tau(3, 0));
  CHECK(std::abs(t3 - t1 * t1 * t1) < 1e-12);
  CHECK_THROWS_AS(theta_numeric(scalar_tau(cd(1, -1))), std::invalid_argument);
}

TEST_CASE("S_{C,D} branch tracking") {
  CMatrix tau = scalar_tau(cd(0, 1));
  CHECK(std::abs(s_cd_numeric(IntMatrix{{0}}, IntMatrix{{1}}, tau) - 1.0) < 1e-14);
  // 4i+1 stays in the right half plane along the path, so principal branch
  cd s = s_cd_numeric(IntMatrix{{4}}, IntMatrix{{1}}, tau);
  CHECK(std::abs(s - std::sqrt(cd(1, 4))) < 1e-12);
  // negative det D starts on i R_+
  cd s2 = s_cd_numeric(IntMatrix{{4}}, IntMatrix{{-3}}, scalar_tau(cd(0, 1e-6)));
  CHECK(std::abs(s2 - cd(0, std::sqrt(3.0))) < 1e-4);

  Rng rng(3);
  for (size_t n = 1; n <= 2; ++n)
    for (int t = 0; t < 10; ++t) {
      IntMatrix g = random_gamma0_4(rng, n, 4);
      CHECK(is_symplectic(g));
      IntMatrix C = g.block(n, 0, n, n), D = g.block(n, n, n, n);
      CMatrix tau2 = sample_tau(n, 0.3);
      cd v = s_cd_numeric(C, D, tau2);
      cd d = (to_complex(C) * tau2 + to_complex(D)).determinant();
      CHECK(std::abs(v * v - d) < 1e-10 * (1 + std::abs(d)));
    }
}

TEST_CASE("transformation formula numerically") {
  IntMatrix g{{1, 0}, {4, 1}};
  auto rep = verify_transformation(g, scalar_tau(cd(0, 1)));
  CHECK(rep.rel_error < 1e-10);
  auto id = verify_transformation(IntMatrix::identity(4), sample_tau(2, 0));
  CHECK(std::abs(id.lhs - 1.0) < 1e-12);
  CHECK(std::abs(id.rhs - 1.0) < 1e-12);

  Rng rng(5);
  for (size_t n = 1; n <= 2; ++n)
    for (int t = 0; t < 12; ++t) {
      IntMatrix h = random_gamma0_4(rng, n, 5);
      for (double eps : {0.0, 0.3}) {
        auto r = verify_transformation(h, sample_tau(n, eps));
        INFO(h.to_string());
        CHECK(r.rel_error < 1e-8);
      }
    }
  CHECK_THROWS_AS(verify_transformation(IntMatrix{{1, 0}, {2, 1}}, scalar_tau(cd(0, 1))), std::invalid_argument);
}

TEST_CASE("translation law and rotation invariance of S") {
  Rng rng(9);
  for (size_t n = 1; n <= 2; ++n)
    for (int t = 0; t < 6; ++t) {
      IntMatrix g = random_gamma0_4(rng, n, 4);
      IntMatrix Y = random_symmetric(rng, n, 2);
      auto rep = verify_translation_law(g, Y, sample_tau(n, 0.3));
      CHECK(rep.passed());
      IntMatrix E = random_unimodular(rng, n, 3);
      if (E.det() != 1) E = IntMatrix::diagonal(std::vector<Integer>(n, Integer(-1))) * E;
      if (E.det() != 1) continue;
      IntMatrix C = g.block(n, 0, n, n), D = g.block(n, n, n, n);
      CHECK(rotation_error(C, D, E, sample_tau(n, 0.3)) < 1e-10);
    }
}
