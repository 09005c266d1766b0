#include "siegel/ring.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace siegel {

long long gcd_ll(long long a, long long b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    long long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

long long lcm_ll(long long a, long long b) {
  if (a == 0 || b == 0) return 0;
  return a / gcd_ll(a, b) * b;
}

long long mod_ll(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

long long pow_mod(long long base, long long e, long long m) {
  if (m == 1) return 0;
  unsigned __int128 result = 1;
  unsigned __int128 b = static_cast<unsigned long long>(mod_ll(base, m));
  while (e > 0) {
    if (e & 1) result = result * b % static_cast<unsigned long long>(m);
    b = b * b % static_cast<unsigned long long>(m);
    e >>= 1;
  }
  return static_cast<long long>(result);
}

long long inv_mod(long long a, long long m) {
  long long old_r = mod_ll(a, m), cur_r = m;
  long long old_s = 1, cur_s = 0;
  while (cur_r != 0) {
    long long qt = old_r / cur_r;
    long long t = old_r - qt * cur_r;
    old_r = cur_r;
    cur_r = t;
    t = old_s - qt * cur_s;
    old_s = cur_s;
    cur_s = t;
  }
  if (old_r != 1) throw std::invalid_argument("inv_mod: not invertible");
  return mod_ll(old_s, m);
}

bool is_prime(long long n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (long long d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::pair<long long, int>> factorize(long long n) {
  if (n < 1) throw std::invalid_argument("factorize: n must be positive");
  std::vector<std::pair<long long, int>> out;
  for (long long p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<long long> prime_factors(long long n) {
  std::vector<long long> out;
  for (auto& [p, e] : factorize(n)) out.push_back(p);
  return out;
}

bool is_squarefree(long long n) {
  if (n < 1) return false;
  for (auto& [p, e] : factorize(n))
    if (e > 1) return false;
  return true;
}

long long euler_phi(long long n) {
  long long r = n;
  for (auto& [p, e] : factorize(n)) r = r / p * (p - 1);
  return r;
}

long long primitive_root(long long p) {
  if (!is_prime(p) || p == 2) throw std::invalid_argument("primitive_root: odd prime required");
  auto fs = prime_factors(p - 1);
  for (long long g = 2; g < p; ++g) {
    bool ok = true;
    for (long long f : fs)
      if (pow_mod(g, (p - 1) / f, p) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  throw std::logic_error("primitive_root: none found");
}

int legendre(long long a, long long q) {
  if (q < 3 || !is_prime(q)) throw std::invalid_argument("legendre: odd prime required");
  long long r = mod_ll(a, q);
  if (r == 0) return 0;
  return pow_mod(r, (q - 1) / 2, q) == 1 ? 1 : -1;
}

int legendre(const Integer& a, long long q) {
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(q));
  return legendre(r.get_si(), q);
}

Rational rational_pow(const Rational& a, long long e) {
  if (e < 0) {
    if (a == 0) throw std::domain_error("rational_pow: zero to negative power");
    Rational inv = 1 / a;
    return rational_pow(inv, -e);
  }
  Rational result = 1, b = a;
  while (e > 0) {
    if (e & 1) result *= b;
    b *= b;
    e >>= 1;
  }
  return result;
}

// ---------------------------------------------------------------------------
// cyclotomic data

namespace {

struct CycloData {
  long long L = 1;
  long long phi = 1;
  std::vector<long long> poly;                        // Phi_L, ascending, monic
  std::vector<std::pair<long long, long long>> tail;  // (k, coeff) for k < phi, nonzero
};

// exact division of p by a monic polynomial d
std::vector<__int128> exact_div(const std::vector<__int128>& p, const std::vector<__int128>& d) {
  std::vector<__int128> r = p;
  long long dd = static_cast<long long>(d.size()) - 1;
  std::vector<__int128> q(p.size() - dd, 0);
  for (long long i = static_cast<long long>(p.size()) - 1; i >= dd; --i) {
    __int128 c = r[i];
    q[i - dd] = c;
    if (c != 0)
      for (long long k = 0; k <= dd; ++k) r[i - dd + k] -= c * d[k];
  }
  return q;
}

std::vector<__int128> substitute_power(const std::vector<__int128>& p, long long e) {
  std::vector<__int128> r((p.size() - 1) * e + 1, 0);
  for (size_t i = 0; i < p.size(); ++i) r[i * e] = p[i];
  return r;
}

std::vector<long long> compute_cyclotomic(long long L) {
  // Phi_{mp}(x) = Phi_m(x^p) / Phi_m(x) for p not dividing m; Phi_L(x) = Phi_rad(L)(x^{L/rad(L)})
  std::vector<__int128> p{-1, 1};
  long long rad = 1;
  for (long long q : prime_factors(L)) {
    p = exact_div(substitute_power(p, q), p);
    rad *= q;
  }
  p = substitute_power(p, L / rad);
  std::vector<long long> out(p.size());
  for (size_t i = 0; i < p.size(); ++i) out[i] = static_cast<long long>(p[i]);
  return out;
}

std::mutex g_cyclo_mutex;
std::map<long long, std::unique_ptr<CycloData>> g_cyclo;

const CycloData& cyclo(long long L) {
  if (L < 1) throw std::invalid_argument("cyclotomic level must be positive");
  std::lock_guard<std::mutex> lock(g_cyclo_mutex);
  auto it = g_cyclo.find(L);
  if (it != g_cyclo.end()) return *it->second;
  auto data = std::make_unique<CycloData>();
  data->L = L;
  data->poly = compute_cyclotomic(L);
  data->phi = static_cast<long long>(data->poly.size()) - 1;
  for (long long k = 0; k < data->phi; ++k)
    if (data->poly[k] != 0) data->tail.emplace_back(k, data->poly[k]);
  auto& ref = *data;
  g_cyclo.emplace(L, std::move(data));
  return ref;
}

template <typename T>
void reduce_in_place(std::vector<T>& v, const CycloData& cd) {
  for (long long i = static_cast<long long>(v.size()) - 1; i >= cd.phi; --i) {
    if (v[i] == 0) continue;
    T c = v[i];
    v[i] = 0;
    long long base = i - cd.phi;
    for (auto& [k, a] : cd.tail) v[base + k] -= c * a;
  }
  v.resize(cd.phi);
}

void reduce_integer(std::vector<Integer>& v, const CycloData& cd) {
  for (long long i = static_cast<long long>(v.size()) - 1; i >= cd.phi; --i) {
    if (sgn(v[i]) == 0) continue;
    long long base = i - cd.phi;
    for (auto& [k, t] : cd.tail) {
      if (t > 0)
        mpz_submul_ui(v[base + k].get_mpz_t(), v[i].get_mpz_t(), static_cast<unsigned long>(t));
      else
        mpz_addmul_ui(v[base + k].get_mpz_t(), v[i].get_mpz_t(), static_cast<unsigned long>(-t));
    }
    v[i] = 0;
  }
  v.resize(cd.phi);
}

std::vector<Integer> integer_numerators(const std::vector<Rational>& c, Integer& den) {
  den = 1;
  for (const auto& x : c)
    if (sgn(x) != 0) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  std::vector<Integer> out(c.size());
  for (size_t i = 0; i < c.size(); ++i) {
    if (sgn(c[i]) == 0) continue;
    Integer f;
    mpz_divexact(f.get_mpz_t(), den.get_mpz_t(), c[i].get_den_mpz_t());
    out[i] = c[i].get_num() * f;
  }
  return out;
}

std::vector<Rational> over_denominator(const std::vector<Integer>& v, const Integer& den) {
  std::vector<Rational> out(v.size(), Rational(0));
  for (size_t i = 0; i < v.size(); ++i) {
    if (sgn(v[i]) == 0) continue;
    out[i] = Rational(v[i], den);
    out[i].canonicalize();
  }
  return out;
}

void reduce_rational(std::vector<Rational>& v, const CycloData& cd) {
  Integer den;
  std::vector<Integer> w = integer_numerators(v, den);
  reduce_integer(w, cd);
  v = over_denominator(w, den);
}

// zeta_{2m}^i = (-1)^i zeta_m^{i(m+1)/2}, m odd
std::pair<long long, int> half_level_monomial(long long m, long long i) {
  long long e = mod_ll(static_cast<long long>((static_cast<__int128>(i) * ((m + 1) / 2)) % m), m);
  return {e, (i % 2 == 0) ? 1 : -1};
}

// dense vector indexed by exponent mod L; rewrites L = 2 mod 4 to L/2
std::pair<long long, std::vector<Rational>> from_dense(long long L, std::vector<Rational> v) {
  if (L % 4 == 2) {
    long long m = L / 2;
    std::vector<Rational> w(m, Rational(0));
    for (long long i = 0; i < L; ++i) {
      if (sgn(v[i]) == 0) continue;
      auto [e, s] = half_level_monomial(m, i);
      if (s > 0)
        w[e] += v[i];
      else
        w[e] -= v[i];
    }
    L = m;
    v.swap(w);
  }
  reduce_rational(v, cyclo(L));
  return {L, std::move(v)};
}

}  // namespace

const std::vector<long long>& cyclotomic_polynomial(long long L) { return cyclo(L).poly; }

// ---------------------------------------------------------------------------

CycNumber::CycNumber() : level_(1), c_{Rational(0)} {}
CycNumber::CycNumber(long long v) : level_(1), c_{qq(v)} {}
CycNumber::CycNumber(const Integer& v) : level_(1), c_{Rational(v)} {}
CycNumber::CycNumber(const Rational& v) : level_(1), c_{v} {}

CycNumber::CycNumber(long long L, std::vector<Rational> c, bool normalize_now)
    : level_(L), c_(std::move(c)) {
  if (normalize_now) normalize();
}

CycNumber CycNumber::root_of_unity(long long L, long long a) {
  if (L < 1) throw std::invalid_argument("root_of_unity: L must be positive");
  std::vector<Rational> v(L, Rational(0));
  v[mod_ll(a, L)] = 1;
  auto [L2, w] = from_dense(L, std::move(v));
  return CycNumber(L2, std::move(w), true);
}

CycNumber CycNumber::from_exponent_counts(long long L, const std::vector<long long>& counts) {
  if (L < 1 || static_cast<long long>(counts.size()) != L)
    throw std::invalid_argument("from_exponent_counts: counts must have length L");
  std::vector<__int128> v(counts.begin(), counts.end());
  long long level = L;
  if (L % 4 == 2) {
    long long m = L / 2;
    std::vector<__int128> w(m, 0);
    for (long long i = 0; i < L; ++i) {
      if (v[i] == 0) continue;
      auto [e, s] = half_level_monomial(m, i);
      w[e] += s * v[i];
    }
    v.swap(w);
    level = m;
  }
  const CycloData& cd = cyclo(level);
  reduce_in_place(v, cd);
  std::vector<Rational> c(cd.phi);
  for (long long i = 0; i < cd.phi; ++i) {
    __int128 x = v[i];
    bool neg = x < 0;
    unsigned __int128 ux = neg ? -static_cast<unsigned __int128>(x) : static_cast<unsigned __int128>(x);
    Integer z = static_cast<unsigned long>(ux >> 64);
    z <<= 64;
    z += static_cast<unsigned long>(static_cast<unsigned long long>(ux));
    c[i] = neg ? Rational(-z) : Rational(z);
  }
  return CycNumber(level, std::move(c), true);
}

CycNumber CycNumber::from_coeffs(long long L, std::vector<Rational> coeffs) {
  if (L < 1 || L % 4 == 2) throw std::invalid_argument("from_coeffs: level must be positive and not 2 mod 4");
  const CycloData& cd = cyclo(L);
  if (static_cast<long long>(coeffs.size()) != cd.phi)
    throw std::invalid_argument("from_coeffs: expected phi(L) coefficients");
  for (auto& x : coeffs) x.canonicalize();
  return CycNumber(L, std::move(coeffs), true);
}

bool CycNumber::is_zero() const {
  for (const auto& x : c_)
    if (sgn(x) != 0) return false;
  return true;
}

Rational CycNumber::rational_value() const {
  if (level_ != 1) throw std::domain_error("CycNumber is not rational");
  return c_[0];
}

void CycNumber::normalize() {
  for (;;) {
    if (level_ == 1) return;
    bool only_const = true;
    for (size_t k = 1; k < c_.size(); ++k)
      if (sgn(c_[k]) != 0) {
        only_const = false;
        break;
      }
    if (only_const) {
      Rational v = c_[0];
      level_ = 1;
      c_.assign(1, v);
      return;
    }
    bool changed = false;
    for (auto& [p, e] : factorize(level_)) {
      if (e < 2) continue;
      bool support_ok = true;
      for (size_t k = 0; k < c_.size(); ++k)
        if (sgn(c_[k]) != 0 && k % p != 0) {
          support_ok = false;
          break;
        }
      if (!support_ok) continue;
      long long L2 = level_ / p;
      std::vector<Rational> w((c_.size() + p - 1) / p, Rational(0));
      for (size_t k = 0; k < c_.size(); k += p) w[k / p] = c_[k];
      if (L2 % 4 == 2) {
        std::vector<Rational> dense(L2, Rational(0));
        for (size_t k = 0; k < w.size(); ++k) dense[k] = w[k];
        auto [L3, v3] = from_dense(L2, std::move(dense));
        level_ = L3;
        c_ = std::move(v3);
      } else {
        level_ = L2;
        c_ = std::move(w);
      }
      changed = true;
      break;
    }
    if (!changed) return;
  }
}

CycNumber CycNumber::lifted(long long L) const {
  if (L % level_ != 0) throw std::invalid_argument("lifted: level must divide target");
  if (L % 4 == 2) throw std::invalid_argument("lifted: target level 2 mod 4 not used");
  if (L == level_) return *this;
  long long step = L / level_;
  std::vector<Rational> v(L, Rational(0));
  for (size_t k = 0; k < c_.size(); ++k) v[k * step] = c_[k];
  reduce_rational(v, cyclo(L));
  return CycNumber(L, std::move(v), false);
}

CycNumber CycNumber::conj() const {
  if (level_ == 1) return *this;
  std::vector<Rational> v(level_, Rational(0));
  for (size_t k = 0; k < c_.size(); ++k) v[mod_ll(-static_cast<long long>(k), level_)] = c_[k];
  reduce_rational(v, cyclo(level_));
  return CycNumber(level_, std::move(v), true);
}

namespace {

using Poly = std::vector<Rational>;

void trim(Poly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

// a = q*b + r
void poly_divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
  r = a;
  trim(r);
  q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, Rational(0));
  Rational lead = b.back();
  while (!r.empty() && r.size() >= b.size()) {
    size_t shift = r.size() - b.size();
    Rational f = r.back() / lead;
    q[shift] = f;
    for (size_t i = 0; i < b.size(); ++i) r[shift + i] -= f * b[i];
    trim(r);
  }
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

Poly poly_sub(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), Rational(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

}  // namespace

CycNumber CycNumber::inverse() const {
  if (is_zero()) throw std::domain_error("CycNumber::inverse of zero");
  if (level_ == 1) return CycNumber(Rational(1) / c_[0]);
  const CycloData& cd = cyclo(level_);
  // extended Euclid: s*a + t*Phi = g (constant)
  Poly r0;
  for (long long x : cd.poly) r0.push_back(qq(x));
  Poly r1 = c_;
  trim(r1);
  Poly s0{}, s1{Rational(1)};
  while (r1.size() > 1) {
    Poly q, r;
    poly_divmod(r0, r1, q, r);
    Poly s2 = poly_sub(s0, poly_mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r1.empty()) throw std::logic_error("CycNumber::inverse: non-unit");
  Rational g = r1[0];
  Poly inv = s1;
  for (auto& x : inv) x /= g;
  std::vector<Rational> v(std::max<size_t>(inv.size(), cd.phi), Rational(0));
  for (size_t i = 0; i < inv.size(); ++i) v[i] = inv[i];
  reduce_rational(v, cd);
  return CycNumber(level_, std::move(v), true);
}

CycNumber CycNumber::pow(long long e) const {
  if (e < 0) return inverse().pow(-e);
  CycNumber result(1), b = *this;
  while (e > 0) {
    if (e & 1) result *= b;
    e >>= 1;
    if (e > 0) b *= b;
  }
  return result;
}

Rational CycNumber::norm_sq_rational() const { return (conj() * *this).rational_value(); }

std::complex<double> CycNumber::approx() const {
  long double re = 0, im = 0;
  const long double two_pi = 6.283185307179586476925286766559L;
  for (size_t k = 0; k < c_.size(); ++k) {
    if (sgn(c_[k]) == 0) continue;
    long double x = c_[k].get_d();
    long double ang = two_pi * static_cast<long double>(k) / static_cast<long double>(level_);
    re += x * std::cos(ang);
    im += x * std::sin(ang);
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

std::string CycNumber::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (size_t k = 0; k < c_.size(); ++k) {
    if (sgn(c_[k]) == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << c_[k].get_str();
    if (k > 0) os << "*z" << level_ << "^" << k;
  }
  if (first) os << "0";
  return os.str();
}

CycNumber CycNumber::operator-() const {
  CycNumber r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

namespace {
void align(CycNumber& a, CycNumber& b) {
  if (a.level() == b.level()) return;
  long long L = lcm_ll(a.level(), b.level());
  a = a.lifted(L);
  b = b.lifted(L);
}
}  // namespace

CycNumber& CycNumber::operator+=(const CycNumber& o) {
  CycNumber b = o;
  align(*this, b);
  for (size_t k = 0; k < c_.size(); ++k) c_[k] += b.c_[k];
  normalize();
  return *this;
}

CycNumber& CycNumber::operator-=(const CycNumber& o) {
  CycNumber b = o;
  align(*this, b);
  for (size_t k = 0; k < c_.size(); ++k) c_[k] -= b.c_[k];
  normalize();
  return *this;
}

CycNumber& CycNumber::operator*=(const CycNumber& o) {
  if (o.level_ == 1) {
    for (auto& x : c_) x *= o.c_[0];
    normalize();
    return *this;
  }
  if (level_ == 1) {
    Rational s = c_[0];
    *this = o;
    for (auto& x : c_) x *= s;
    normalize();
    return *this;
  }
  CycNumber b = o;
  align(*this, b);
  const CycloData& cd = cyclo(level_);
  // work with integer numerators over a common denominator
  Integer da, db;
  std::vector<Integer> a = integer_numerators(c_, da), bb = integer_numerators(b.c_, db);
  std::vector<Integer> prod(2 * a.size() - 1, Integer(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (size_t j = 0; j < bb.size(); ++j) {
      if (sgn(bb[j]) == 0) continue;
      mpz_addmul(prod[i + j].get_mpz_t(), a[i].get_mpz_t(), bb[j].get_mpz_t());
    }
  }
  reduce_integer(prod, cd);
  c_ = over_denominator(prod, da * db);
  normalize();
  return *this;
}

CycNumber& CycNumber::operator/=(const CycNumber& o) { return *this *= o.inverse(); }

bool operator==(const CycNumber& a, const CycNumber& b) {
  if (a.level_ == b.level_) {
    for (size_t k = 0; k < a.c_.size(); ++k)
      if (a.c_[k] != b.c_[k]) return false;
    return true;
  }
  return (a - b).is_zero();
}

// ---------------------------------------------------------------------------

long long gauss_prime_bound() {
  static const long long bound = [] {
    const char* env = std::getenv("SIEGEL_GAUSS_PRIME_BOUND");
    if (env != nullptr) {
      long long v = std::atoll(env);
      if (v > 2) return v;
    }
    return 1000000LL;
  }();
  return bound;
}

CycNumber gauss_g1(long long q) {
  if (q < 3 || q % 2 == 0 || !is_prime(q)) throw std::invalid_argument("gauss_g1: q must be an odd prime");
  if (q > gauss_prime_bound()) throw std::invalid_argument("gauss_g1: q exceeds configured bound");
  std::vector<long long> counts(q, 0);
  for (long long u = 0; u < q; ++u) ++counts[u * u % q];
  return CycNumber::from_exponent_counts(q, counts);
}

CycNumber sqrt_prime(long long q) {
  CycNumber g = gauss_g1(q);
  if (q % 4 == 1) return g;
  return g * CycNumber::root_of_unity(4, 3);
}

namespace {
CycNumber sqrt2() { return CycNumber::root_of_unity(8, 1) + CycNumber::root_of_unity(8, 7); }
}  // namespace

CycNumber prime_power_half(long long q, long long twice_exponent) {
  long long b = mod_ll(twice_exponent, 2);
  long long a = (twice_exponent - b) / 2;
  CycNumber r(rational_pow(qq(q), a));
  if (b == 1) r *= (q == 2 ? sqrt2() : sqrt_prime(q));
  return r;
}

CycNumber sqrt_integer(const Integer& n) {
  if (n == 0) throw std::invalid_argument("sqrt_integer: zero");
  Integer a = abs(n);
  if (!a.fits_slong_p()) throw std::invalid_argument("sqrt_integer: value too large");
  CycNumber r(1);
  for (auto& [p, e] : factorize(a.get_si())) r *= prime_power_half(p, e);
  if (n < 0) r *= CycNumber::root_of_unity(4, 1);
  return r;
}

}  // namespace siegel
