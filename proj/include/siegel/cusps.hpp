#pragma once

#include <string>
#include <vector>

#include "siegel/character.hpp"
#include "siegel/matz.hpp"

namespace siegel {

// (N_0, ..., N_n): pairwise coprime, product N
struct MultiplicativePartition {
  std::vector<long long> parts;

  size_t degree() const { return parts.size() - 1; }
  long long product() const;
  size_t slot_of(long long q) const;  // index s with q | N_s
  std::string to_string() const;
  bool operator==(const MultiplicativePartition&) const = default;
};

struct AdmissibleType {
  MultiplicativePartition partition;
  int d = 0, dprime = 0;
  bool eps_plus = true;

  size_t degree() const { return partition.degree(); }
  std::string pattern_string() const;  // "(d,d',+)"
  std::string to_string() const;
  bool operator==(const AdmissibleType&) const = default;
};

enum class Vanishing { Zero, Nonvanishing, Undetermined };

struct VanishingStatus {
  Vanishing value = Vanishing::Undetermined;
  std::string reason;  // "character-condition" or "plus-type" for Zero
  std::string note;
  std::string to_string() const;
};

void require_odd_squarefree(long long N);

// (n+1)^{omega(N)} partitions; prime-to-slot assignments read as base n+1
// digits with the smallest prime most significant
std::vector<MultiplicativePartition> enumerate_partitions(long long N, size_t n);
std::vector<AdmissibleType> enumerate_admissible(long long N, size_t n);
// (n+1)^omega * sum over d + d' <= n of (2 if d' even and positive else 1)
long long admissible_count(long long N, size_t n);

IntMatrix build_M_sigma(const AdmissibleType& sigma);
AdmissibleType classify_cusp(const IntMatrix& M, long long N);
// every congruence build_M_sigma promises, checked by reduction
bool satisfies_sigma_congruences(const IntMatrix& M, const AdmissibleType& sigma);

VanishingStatus vanishing_status(const AdmissibleType& sigma, const DirichletCharacter& chi);

}  // namespace siegel
