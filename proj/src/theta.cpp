#include "siegel/theta.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace siegel {

namespace {

constexpr double kPi = std::numbers::pi;

void require_square_tau(const CMatrix& tau) {
  if (tau.rows() != tau.cols() || tau.rows() == 0) throw std::invalid_argument("tau must be square");
  if ((tau - tau.transpose()).norm() > 1e-12 * (1 + tau.norm())) throw std::invalid_argument("tau must be symmetric");
}

double min_imag_eigenvalue(const CMatrix& tau) {
  Eigen::MatrixXd y = tau.imag();
  y = (y + y.transpose()) / 2;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(y, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

cd det_of(const IntMatrix& C, const IntMatrix& D, const CMatrix& tau) {
  CMatrix m = to_complex(C) * tau + to_complex(D);
  return m.determinant();
}

// sign of s chosen nearest to ref
cd nearest_root(cd f, cd ref) {
  cd s = std::sqrt(f);
  return std::abs(s - ref) <= std::abs(-s - ref) ? s : -s;
}

}  // namespace

CMatrix to_complex(const IntMatrix& m) {
  CMatrix r(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) r(i, j) = cd(m(i, j).get_d(), 0);
  return r;
}

CMatrix sample_tau(size_t n, double eps) {
  CMatrix t = CMatrix::Zero(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) t(i, j) = i == j ? cd(0, 1) : eps * cd(1, 1);
  return t;
}

cd theta_numeric(const CMatrix& tau, const ThetaContext& ctx) {
  require_square_tau(tau);
  const int n = static_cast<int>(tau.rows());
  if (n > 3) throw std::invalid_argument("theta_numeric: degree above 3");
  double lam = min_imag_eigenvalue(tau);
  if (!(lam > 0)) throw std::invalid_argument("theta_numeric: imaginary part not positive definite");
  int R = ctx.radius;
  if (R <= 0) {
    // exp(-2 pi lam |U|^2) below the bound outside the box, with slack
    // for the number of boundary points
    double need = std::log(1.0 / ctx.tail_bound) + 3.0 * n;
    R = static_cast<int>(std::ceil(std::sqrt(need / (2 * kPi * lam)))) + 1;
  }
  if (R > ctx.max_radius) throw std::length_error("theta_numeric: truncation radius " + std::to_string(R) + " too large");

  std::vector<int> u(n, -R);
  cd sum = 0;
  for (;;) {
    cd qf = 0;
    for (int i = 0; i < n; ++i) {
      qf += static_cast<double>(u[i]) * static_cast<double>(u[i]) * tau(i, i);
      for (int j = i + 1; j < n; ++j) qf += 2.0 * static_cast<double>(u[i]) * static_cast<double>(u[j]) * tau(i, j);
    }
    sum += std::exp(cd(0, 2 * kPi) * qf);
    int k = 0;
    while (k < n) {
      if (++u[k] <= R) break;
      u[k] = -R;
      ++k;
    }
    if (k == n) break;
  }
  return sum;
}

cd s_cd_numeric(const IntMatrix& C, const IntMatrix& D, const CMatrix& tau) {
  require_square_tau(tau);
  const size_t n = tau.rows();
  if (C.rows() != n || D.rows() != n || !C.is_square() || !D.is_square())
    throw std::invalid_argument("s_cd_numeric: size mismatch");
  if (min_imag_eigenvalue(tau) <= 0) throw std::invalid_argument("s_cd_numeric: tau not in the upper half space");
  Integer det = D.det();
  if (det == 0) throw std::invalid_argument("s_cd_numeric: singular D");
  double ad = std::sqrt(std::abs(det.get_d()));
  cd ref = det > 0 ? cd(ad, 0) : cd(0, ad);

  const double lam0 = 1e-9;
  CMatrix start = CMatrix::Identity(n, n) * cd(0, lam0);
  CMatrix dir = tau - start;
  cd s = nearest_root(det_of(C, D, start), ref);
  double t = 0, dt = 1.0 / 64;
  while (t < 1) {
    double step = std::min(dt, 1 - t);
    for (;;) {
      cd next = nearest_root(det_of(C, D, start + (t + step) * dir), s);
      if (std::abs(std::arg(next / s)) < kPi / 8) {
        s = next;
        t += step;
        dt = std::min(2 * step, 1.0 / 16);
        break;
      }
      step /= 2;
      if (step < 1e-12) throw std::runtime_error("s_cd_numeric: branch tracking failed");
    }
  }
  return s;
}

bool is_symplectic(const IntMatrix& g) {
  if (!g.is_square() || g.rows() % 2 != 0) return false;
  size_t n = g.rows() / 2;
  IntMatrix J(2 * n, 2 * n);
  for (size_t i = 0; i < n; ++i) {
    J(i, n + i) = 1;
    J(n + i, i) = -1;
  }
  return g * J * g.transpose() == J;
}

CMatrix act(const IntMatrix& g, const CMatrix& tau) {
  size_t n = g.rows() / 2;
  CMatrix A = to_complex(g.block(0, 0, n, n)), B = to_complex(g.block(0, n, n, n));
  CMatrix C = to_complex(g.block(n, 0, n, n)), D = to_complex(g.block(n, n, n, n));
  CMatrix num = A * tau + B, den = C * tau + D;
  CMatrix r = den.transpose().partialPivLu().solve(num.transpose()).transpose();
  return (r + r.transpose()) / 2.0;
}

IntMatrix sp_translation(const IntMatrix& Y) {
  size_t n = Y.rows();
  IntMatrix g = IntMatrix::identity(2 * n);
  g.set_block(0, n, Y);
  return g;
}

IntMatrix sp_lower(const IntMatrix& Y) {
  size_t n = Y.rows();
  IntMatrix g = IntMatrix::identity(2 * n);
  g.set_block(n, 0, Y);
  return g;
}

IntMatrix sp_rotation(const IntMatrix& A) {
  size_t n = A.rows();
  IntMatrix g(2 * n, 2 * n);
  g.set_block(0, 0, A);
  g.set_block(n, n, inverse_unimodular(A).transpose());
  return g;
}

IntMatrix random_gamma0_4(Rng& rng, size_t n, int steps, long long max_det) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    IntMatrix g = IntMatrix::identity(2 * n);
    for (int k = 0; k < steps; ++k) {
      switch (rng.uniform(0, 2)) {
        case 0: g = g * sp_translation(random_symmetric(rng, n, 1)); break;
        case 1: g = g * sp_lower(random_symmetric(rng, n, 1) * Integer(4)); break;
        default: g = g * sp_rotation(random_unimodular(rng, n, 2)); break;
      }
    }
    IntMatrix C = g.block(n, 0, n, n), D = g.block(n, n, n, n);
    if (steps > 0 && C.is_zero()) continue;
    Integer det = D.det();
    if (Integer(abs(det)) > zz(max_det)) continue;
    bool small = true;
    for (size_t i = 0; i < 2 * n; ++i)
      for (size_t j = 0; j < 2 * n; ++j)
        if (Integer(abs(g(i, j))) > 60) small = false;
    if (small) return g;
  }
  throw std::runtime_error("random_gamma0_4: no element found");
}

TransformationReport verify_transformation(const IntMatrix& gamma, const CMatrix& tau, const ThetaContext& ctx) {
  if (!is_symplectic(gamma)) throw std::invalid_argument("verify_transformation: not symplectic");
  size_t n = gamma.rows() / 2;
  if (static_cast<size_t>(tau.rows()) != n) throw std::invalid_argument("verify_transformation: degree mismatch");
  IntMatrix C = gamma.block(n, 0, n, n), D = gamma.block(n, n, n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (!mpz_divisible_ui_p(C(i, j).get_mpz_t(), 4)) throw std::invalid_argument("verify_transformation: not in Gamma_0(4)");
  TransformationReport rep;
  rep.gamma = gamma;
  rep.lhs = theta_numeric(act(gamma, tau), ctx) / theta_numeric(tau, ctx);
  rep.rhs = theta_multiplier(C, D).approx() * s_cd_numeric(C, D, tau);
  rep.rel_error = std::abs(rep.lhs - rep.rhs) / std::abs(rep.rhs);
  return rep;
}

TranslationReport verify_translation_law(const IntMatrix& gamma, const IntMatrix& Y, const CMatrix& tau,
                                 const ThetaContext& ctx) {
  if (!is_symplectic(gamma)) throw std::invalid_argument("verify_translation_law: not symplectic");
  if (!Y.is_symmetric()) throw std::invalid_argument("verify_translation_law: Y not symmetric");
  size_t n = gamma.rows() / 2;
  IntMatrix C = gamma.block(n, 0, n, n), D = gamma.block(n, n, n, n);
  IntMatrix D2 = D + C * Y;
  CMatrix shifted = tau + to_complex(Y);
  TranslationReport rep;
  rep.lhs = theta_multiplier(C, D2).approx() * s_cd_numeric(C, D2, tau);
  rep.rhs = theta_multiplier(C, D).approx() * s_cd_numeric(C, D, shifted);
  rep.rel_error = std::abs(rep.lhs - rep.rhs) / std::abs(rep.rhs);
  cd t0 = theta_numeric(tau, ctx), t1 = theta_numeric(shifted, ctx);
  rep.theta_error = std::abs(t0 - t1) / std::abs(t0);
  return rep;
}

double rotation_error(const IntMatrix& C, const IntMatrix& D, const IntMatrix& E, const CMatrix& tau) {
  if (E.det() != 1) throw std::invalid_argument("rotation_error: E must lie in SL_n(Z)");
  return std::abs(s_cd_numeric(C, D, tau) - s_cd_numeric(E * C, E * D, tau));
}

}  // namespace siegel
