#pragma once

#include <complex>
#include <string>

#include <Eigen/Dense>

#include "siegel/gauss.hpp"
#include "siegel/matz.hpp"
#include "siegel/random.hpp"

namespace siegel {

using cd = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

struct ThetaContext {
  int radius = 0;            // 0: chosen from the smallest eigenvalue of Im tau
  double tail_bound = 1e-15;
  int max_radius = 400;
};

// theta(tau) = sum over U in Z^{1,n} of exp(2 pi i U tau tU), n <= 3
cd theta_numeric(const CMatrix& tau, const ThetaContext& ctx = {});

// branch of sqrt det(C tau + D) continuous from sqrt(det D) at i0+ I
cd s_cd_numeric(const IntMatrix& C, const IntMatrix& D, const CMatrix& tau);

bool is_symplectic(const IntMatrix& g);
CMatrix act(const IntMatrix& g, const CMatrix& tau);  // (A tau + B)(C tau + D)^{-1}

// elementary elements of Gamma_0(4)
IntMatrix sp_translation(const IntMatrix& Y);   // [[I,Y],[0,I]]
IntMatrix sp_lower(const IntMatrix& Y);         // [[I,0],[Y,I]]
IntMatrix sp_rotation(const IntMatrix& A);      // [[A,0],[0,tA^{-1}]]

// word in translations, lower moves with 4 | Y, and rotations; det D
// bounded by max_det so the multiplier stays cheap
IntMatrix random_gamma0_4(Rng& rng, size_t n, int steps, long long max_det = 500);

struct TransformationReport {
  IntMatrix gamma;
  cd lhs, rhs;  // theta(gamma tau)/theta(tau) and multiplier * S
  double rel_error = 0;
  bool passed(double tol = 1e-8) const { return rel_error < tol; }
};
TransformationReport verify_transformation(const IntMatrix& gamma, const CMatrix& tau, const ThetaContext& ctx = {});

// translation law: multiplier(C,D+CY) S_{C,D+CY}(tau) against
// multiplier(C,D) S_{C,D}(tau+Y); also theta(tau+Y) = theta(tau)
struct TranslationReport {
  cd lhs, rhs;
  double rel_error = 0, theta_error = 0;
  bool passed(double tol = 1e-8) const { return rel_error < tol && theta_error < tol; }
};
TranslationReport verify_translation_law(const IntMatrix& gamma, const IntMatrix& Y, const CMatrix& tau,
                                 const ThetaContext& ctx = {});

// S_{C,D}(tau) = S_{EC,ED}(tau), E in SL_n(Z); returns |difference|
double rotation_error(const IntMatrix& C, const IntMatrix& D, const IntMatrix& E, const CMatrix& tau);

CMatrix to_complex(const IntMatrix& m);
// i*I plus eps times the all-offdiagonal perturbation
CMatrix sample_tau(size_t n, double eps);

}  // namespace siegel
