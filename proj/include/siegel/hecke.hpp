#pragma once

#include <map>
#include <string>
#include <vector>

#include "siegel/character.hpp"
#include "siegel/counts.hpp"
#include "siegel/cusps.hpp"
#include "siegel/ring.hpp"

namespace siegel {

// Degree n, weight k/2, level 4N, character chi mod 4N.
class HalfIntegralContext {
 public:
  HalfIntegralContext(size_t n, long long k, long long N, DirichletCharacter chi);

  size_t n() const { return n_; }
  long long k() const { return k_; }
  long long N() const { return N_; }
  const DirichletCharacter& chi() const { return chi_; }
  bool even_character() const { return chi_.parity() == 1; }
  bool convergent() const { return 2 * static_cast<long long>(n_) > k_ + 1; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  const std::vector<MultiplicativePartition>& partitions() const { return partitions_; }
  size_t partition_index(const MultiplicativePartition& p) const;

 private:
  size_t n_;
  long long k_, N_;
  DirichletCharacter chi_;
  std::vector<std::string> warnings_;
  std::vector<MultiplicativePartition> partitions_;
};

CharKind char_kind(const DirichletCharacter& chi, long long q);

// Character of a diagonal pair with rational entries: for each odd
// prime component q' the indices with M_ii a unit mod q' form M_1, and the
// value is chi_q'(prod M_ii^{-1} over M_1 times prod N_ii off M_1); the
// component at 4 gives chi_4(det N).
CycNumber char_pair_eval(const DirichletCharacter& chi, const std::vector<Rational>& Mdiag,
                         const std::vector<Rational>& Ndiag);

// sigma_d: sigma' (partition of N/q) with q inserted at slot d
MultiplicativePartition insert_prime(const MultiplicativePartition& sigma_prime, long long q, size_t d);
MultiplicativePartition remove_prime(const MultiplicativePartition& sigma, long long q);

// Plain: the coefficient without extra signs.  SignCorrected: each
// summand also carries (-1/q)^{d_8}; without it T_j(q^2) and T_n(q^2)
// fail to commute for q = 3 (mod 4).  The two agree whenever j = n.
enum class BadReading { Plain, SignCorrected };

// coefficient of E_{sigma_{d+t}} in E_{sigma_d} | T_j(q^2)
CycNumber A_coeff(const HalfIntegralContext& ctx, const MultiplicativePartition& sigma_prime, size_t d, size_t j,
                  size_t t, long long q, BadReading reading = BadReading::Plain);
// T_j(q^2)-eigenvalue of the tilde basis element for sigma
CycNumber lambda_bad(const HalfIntegralContext& ctx, const MultiplicativePartition& sigma, size_t j, long long q);

// Matrix of T_j(q^2) on the E_alpha (rows: E_alpha | T = sum_beta m[alpha][beta] E_beta),
// with columns of vanishing E_beta replaced by zeros
std::vector<std::vector<CycNumber>> bad_operator_matrix(const HalfIntegralContext& ctx, long long q, size_t j,
                                                        BadReading reading = BadReading::Plain);

struct TildeBasis {
  // coeff[sigma][alpha] = a_{sigma,alpha}(N), indexed like ctx.partitions()
  std::vector<std::vector<CycNumber>> coeff;
  std::vector<bool> vanishing;  // E_sigma = 0
  // per prime q: max over the per-q triangular systems of "residual is zero"
  std::map<long long, bool> residual_zero;
  bool unitriangular = true;  // a_{sigma,sigma}=1 and a_{sigma,alpha}=0 unless alpha >= sigma
};
TildeBasis tilde_basis(const HalfIntegralContext& ctx);
// alpha >= sigma (Q): rank_q of alpha at least that of sigma for every q | Q
bool partition_geq(const MultiplicativePartition& alpha, const MultiplicativePartition& sigma, long long Q);

// tilde E_sigma | T_j(q^2) == lambda_bad * tilde E_sigma, through the full operator matrix
bool tilde_is_eigenvector(const HalfIntegralContext& ctx, const TildeBasis& basis, size_t sigma, long long q, size_t j,
                          BadReading reading = BadReading::Plain);

struct MultiplicityOneReport {
  std::vector<std::vector<CycNumber>> vectors;  // per partition, lambda_{sigma;n}(q^2) over q | N
  std::vector<long long> primes;
  std::vector<bool> vanishing;
  bool separated = true;
  std::vector<std::pair<size_t, size_t>> collisions;
};
MultiplicityOneReport multiplicity_one_check(const HalfIntegralContext& ctx);

CycNumber lambda_good(const HalfIntegralContext& ctx, const MultiplicativePartition& sigma, size_t j, long long p);

enum class PrimeMode { Closed, ViaTransform };
CycNumber lambda_prime(const HalfIntegralContext& ctx, const MultiplicativePartition& sigma, size_t j, long long p,
                       PrimeMode mode);

enum class IntegralKind { Tq, Tjq2, Tp, Tjp2 };
// Integral weight k', character chi' mod N.  index is d for Tq (ignored:
// the slot of q in sigma is used), j for Tjq2 / Tjp2, unused for Tp.
CycNumber lambda_integral(IntegralKind kind, const MultiplicativePartition& sigma, size_t index, long long prime,
                          long long k_prime, const DirichletCharacter& chi_prime);

struct ShimuraRow {
  MultiplicativePartition sigma;
  CycNumber half_integral, integral;
  bool equal = false;
};
std::vector<ShimuraRow> shimura_compare(long long N, long long k, const DirichletCharacter& chi, long long p);

}  // namespace siegel
