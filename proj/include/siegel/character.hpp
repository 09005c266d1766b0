#pragma once

#include <string>
#include <vector>

#include "siegel/ring.hpp"

namespace siegel {

// chi_m(g_m) = zeta_order^exponent, g_m the fixed generator of (Z/m)^x
// (3 for m = 4, the least primitive root for an odd prime m).
struct CharComponent {
  long long modulus = 1;
  long long order = 1;
  long long exponent = 0;

  bool is_trivial() const { return order == 1; }
  bool square_is_trivial() const { return order <= 2; }
};

// Character modulo M = 4^a * N (a in {0,1}, N odd squarefree), stored as
// one component per prime-power factor.
class DirichletCharacter {
 public:
  DirichletCharacter();  // the trivial character mod 1
  DirichletCharacter(long long modulus, std::vector<CharComponent> comps);

  static DirichletCharacter trivial(long long modulus);
  // "quadratic@3,gen^1:4@5,trivial@4"; empty or "trivial" means trivial
  static DirichletCharacter parse(long long modulus, const std::string& spec);

  long long modulus() const { return modulus_; }
  const std::vector<CharComponent>& components() const { return comps_; }
  bool has_component(long long m) const;
  const CharComponent& component(long long m) const;

  CycNumber operator()(const Integer& a) const { return eval(a); }
  CycNumber eval(const Integer& a) const;
  CycNumber eval(long long a) const { return eval(zz(a)); }
  // chi(a)^e for a unit a; e may be negative
  CycNumber eval_power(const Integer& a, long long e) const;
  CycNumber component_value(long long m, const Integer& a) const;

  // product of the components whose moduli divide m
  DirichletCharacter restrict_to(long long m) const;
  DirichletCharacter squared() const { return power(2); }
  DirichletCharacter power(long long e) const;
  DirichletCharacter conj() const { return power(-1); }

  int parity() const;  // chi(-1)
  bool is_trivial() const;
  std::string spec() const;

 private:
  long long modulus_;
  std::vector<CharComponent> comps_;
};

// discrete logarithm of a unit a modulo m (m = 4 or an odd prime) w.r.t. the fixed generator
long long component_log(long long m, long long a);
long long component_generator(long long m);

}  // namespace siegel
