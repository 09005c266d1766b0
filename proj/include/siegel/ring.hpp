#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace siegel {

using Integer = mpz_class;
using Rational = mpq_class;

// gmpxx has no long long constructors
inline Integer zz(long long v) { return Integer(static_cast<long>(v)); }
inline Rational qq(long long v) { return Rational(static_cast<long>(v)); }
inline Rational qq(long long n, long long d) {
  Rational r(static_cast<long>(n), static_cast<long>(d));
  r.canonicalize();
  return r;
}

// ---------------------------------------------------------------------------
// elementary number theory on machine integers

long long gcd_ll(long long a, long long b);
long long lcm_ll(long long a, long long b);
long long mod_ll(long long a, long long m);  // result in [0, m)
long long pow_mod(long long base, long long e, long long m);
long long inv_mod(long long a, long long m);  // throws if not invertible
bool is_prime(long long n);
std::vector<std::pair<long long, int>> factorize(long long n);  // n >= 1
std::vector<long long> prime_factors(long long n);
bool is_squarefree(long long n);
long long euler_phi(long long n);
long long primitive_root(long long p);  // odd prime p

int legendre(const Integer& a, long long q);
int legendre(long long a, long long q);

// a^e for rational a and any integer e (a != 0 when e < 0)
Rational rational_pow(const Rational& a, long long e);

// ---------------------------------------------------------------------------

// Element of Q(zeta_L), stored as coefficients in the power basis of
// Q[x]/(Phi_L).  Values of different levels may be mixed freely; the
// result lives at the lcm level (and is shrunk back when possible).
class CycNumber {
 public:
  CycNumber();
  CycNumber(long long v);  // NOLINT(google-explicit-constructor)
  explicit CycNumber(const Integer& v);
  explicit CycNumber(const Rational& v);

  static CycNumber root_of_unity(long long L, long long a);
  // sum_a counts[a] * zeta_L^a, counts.size() == L
  static CycNumber from_exponent_counts(long long L, const std::vector<long long>& counts);
  static CycNumber from_coeffs(long long L, std::vector<Rational> coeffs);

  long long level() const { return level_; }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_rational() const { return level_ == 1; }
  Rational rational_value() const;  // throws unless rational

  CycNumber lifted(long long L) const;  // level() must divide L
  CycNumber conj() const;
  CycNumber inverse() const;
  CycNumber pow(long long e) const;
  Rational norm_sq_rational() const;  // conj(x)*x, throws if not rational

  std::complex<double> approx() const;
  std::string to_string() const;

  CycNumber operator-() const;
  CycNumber& operator+=(const CycNumber& o);
  CycNumber& operator-=(const CycNumber& o);
  CycNumber& operator*=(const CycNumber& o);
  CycNumber& operator/=(const CycNumber& o);

  friend CycNumber operator+(CycNumber a, const CycNumber& b) { return a += b; }
  friend CycNumber operator-(CycNumber a, const CycNumber& b) { return a -= b; }
  friend CycNumber operator*(CycNumber a, const CycNumber& b) { return a *= b; }
  friend CycNumber operator/(CycNumber a, const CycNumber& b) { return a /= b; }
  friend bool operator==(const CycNumber& a, const CycNumber& b);
  friend bool operator!=(const CycNumber& a, const CycNumber& b) { return !(a == b); }

 private:
  CycNumber(long long L, std::vector<Rational> c, bool normalize_now);
  void normalize();

  long long level_;
  std::vector<Rational> c_;
};

// L-th cyclotomic polynomial, ascending coefficients (degree phi(L))
const std::vector<long long>& cyclotomic_polynomial(long long L);

// ---------------------------------------------------------------------------

// classical Gauss sum sum_{u mod q} zeta_q^{u^2}, by direct summation
CycNumber gauss_g1(long long q);
// exact positive square root of an odd prime
CycNumber sqrt_prime(long long q);
// sqrt of a nonzero integer in R_+ or i*R_+
CycNumber sqrt_integer(const Integer& n);
// q^{e/2} for a prime q (2 allowed) and any integer e
CycNumber prime_power_half(long long q, long long twice_exponent);

long long gauss_prime_bound();

}  // namespace siegel
