#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "siegel/matz.hpp"
#include "siegel/random.hpp"
#include "siegel/ring.hpp"

namespace siegel {

// Coset budget for brute-force Gauss sums: SIEGEL_GAUSS_BUDGET or 1e5.
uint64_t default_gauss_budget();

enum class GaussMethod {
  Local,   // product of the p-primary parts, each summed at level p^f
  Direct,  // all |det D| representatives at the level of the largest invariant factor
};

// G_C(D) = sum over U in Z^{1,n}/Z^{1,n}D of e{2 tU U D^{-1} C}
CycNumber gauss_sum(const IntMatrix& C, const IntMatrix& D, uint64_t budget = default_gauss_budget(),
                    GaussMethod method = GaussMethod::Local);

// conj(G_C(D)) / sqrt(det D), sqrt taken in R_+ or i R_+; needs 4 | C
CycNumber theta_multiplier(const IntMatrix& C, const IntMatrix& D, uint64_t budget = default_gauss_budget());

// X_r = diag(q I_r, I_{n-r}) and friends, as rational diagonals
RatMatrix x_r(size_t n, size_t r, long long q);
RatMatrix x_0r(size_t n, size_t r, long long q);  // diag(I_{n-r}, q^{-1} I_r)

struct VerifyReport {
  std::string identity;
  bool applicable = true;
  std::string reason;  // failing precondition when not applicable
  std::vector<std::pair<std::string, IntMatrix>> instance;
  std::vector<std::pair<std::string, long long>> parameters;
  std::optional<CycNumber> lhs, rhs;
  // additional claims checked alongside lhs == rhs
  std::vector<std::pair<std::string, bool>> claims;
  bool equal = false;

  bool passed() const;
};

VerifyReport verify_unimodular_invariance(const IntMatrix& C, const IntMatrix& D, const IntMatrix& E,
                            uint64_t budget = default_gauss_budget());
VerifyReport verify_scaling(const IntMatrix& M, const IntMatrix& N, long long q, size_t s,
                           uint64_t budget = default_gauss_budget());
VerifyReport verify_conjugation(const IntMatrix& M, const IntMatrix& N, long long q, size_t r,
                           uint64_t budget = default_gauss_budget());
VerifyReport verify_reduction(const IntMatrix& M, const IntMatrix& N, long long q, size_t l,
                           uint64_t budget = default_gauss_budget());
VerifyReport verify_plus_type_sign(long long N, long long m, uint64_t budget = default_gauss_budget());

// Random valid instances.  Each starts from a base pair satisfying the
// block conditions and applies symplectic moves that keep them; the
// verify_* preconditions are then checked anyway.
struct PairInstance {
  IntMatrix M, N;
  long long q = 0;
  size_t param = 0;  // s, r or l
};
std::optional<PairInstance> random_scaling_instance(Rng& rng, size_t n, long long q, size_t s,
                                                   uint64_t budget = default_gauss_budget(), int attempts = 200);
std::optional<PairInstance> random_conjugation_instance(Rng& rng, size_t n, long long q, size_t r,
                                                   uint64_t budget = default_gauss_budget(), int attempts = 200);
std::optional<PairInstance> random_reduction_instance(Rng& rng, size_t n, long long q, size_t l,
                                                   uint64_t budget = default_gauss_budget(), int attempts = 200);
// coprime symmetric pair with det D != 0 and |det D| <= max_det
std::pair<IntMatrix, IntMatrix> random_coprime_pair(Rng& rng, size_t n, long long max_det, long long step_box = 2);

}  // namespace siegel
