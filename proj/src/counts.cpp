#include "siegel/counts.hpp"

#include <stdexcept>
#include <vector>

namespace siegel {

namespace {

Integer ipow(long long q, long long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(e));
  return r;
}

void require_odd_prime(long long q, const char* who) {
  if (q % 2 == 0 || !is_prime(q)) throw std::invalid_argument(std::string(who) + ": q must be an odd prime");
}

// determinant mod q of a small dense matrix (destroys a)
long long det_mod(std::vector<long long>& a, size_t n, long long q) {
  long long det = 1;
  for (size_t k = 0; k < n; ++k) {
    size_t p = k;
    while (p < n && a[p * n + k] == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      for (size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[p * n + j]);
      det = q - det;
    }
    long long piv = a[k * n + k];
    det = det * piv % q;
    long long inv = inv_mod(piv, q);
    for (size_t i = k + 1; i < n; ++i) {
      long long f = a[i * n + k] * inv % q;
      if (f == 0) continue;
      for (size_t j = k; j < n; ++j) a[i * n + j] = mod_ll(a[i * n + j] - f * a[k * n + j], q);
    }
  }
  return det % q;
}

}  // namespace

CharKind twist_by_legendre(CharKind k) {
  switch (k) {
    case CharKind::Trivial: return CharKind::Quadratic;
    case CharKind::Quadratic: return CharKind::Trivial;
    default: return CharKind::Other;
  }
}

const char* to_string(CharKind k) {
  switch (k) {
    case CharKind::Trivial: return "trivial";
    case CharKind::Quadratic: return "quadratic";
    default: return "other";
  }
}

Integer mu(long long q, long long b, long long c) {
  if (c < 0) return 0;
  Integer r = 1;
  for (long long i = 0; i < c; ++i) r *= ipow(q, b - i) - 1;
  return r;
}

Integer delta(long long q, long long b, long long c) {
  if (c < 0) return 0;
  Integer r = 1;
  for (long long i = 0; i < c; ++i) r *= ipow(q, b - i) + 1;
  return r;
}

Integer beta(long long q, long long b, long long c) {
  if (b < 0 || c < 0 || b < c) return 0;
  Integer num = mu(q, b, c), den = mu(q, c, c);
  Integer r;
  mpz_divexact(r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return r;
}

CycNumber sym_closed(long long q, CharKind chi, long long b, long long c) {
  require_odd_prime(q, "sym_closed");
  if (b < 0 || c < 0) return CycNumber(0);
  if (b == 0 && c == 0) return CycNumber(1);
  if (chi == CharKind::Other) return CycNumber(0);
  long long r = b + c, m = r / 2;
  if (m - c < 0) return CycNumber(0);
  Rational base(mu(q, b, b));
  base /= Rational(mu(q, m - c, m - c) * delta(q, m - c, m - c));
  if (r % 2 == 0) {
    if (chi == CharKind::Trivial) return CycNumber(base * Rational(ipow(q, m * m + m - c)));
    long long eps = legendre(-1, q);
    Rational v = base * Rational(ipow(q, m * m));
    if (eps == -1 && m % 2 == 1) v = -v;
    return CycNumber(v);
  }
  if (chi == CharKind::Trivial) return CycNumber(base * Rational(ipow(q, m * m + m)));
  return CycNumber(0);
}

CycNumber sym_bruteforce(long long q, CharKind chi, long long b, long long c, uint64_t budget) {
  require_odd_prime(q, "sym_bruteforce");
  if (b < 0 || c < 0) throw std::invalid_argument("sym_bruteforce: negative size");
  if (b == 0 && c == 0) return CycNumber(1);
  size_t n = static_cast<size_t>(b + c);
  // free entries: upper triangle of mu, then nu
  std::vector<std::pair<size_t, size_t>> slots;
  for (long long i = 0; i < b; ++i)
    for (long long j = i; j < b; ++j) slots.emplace_back(i, j);
  for (long long i = 0; i < b; ++i)
    for (long long j = b; j < b + c; ++j) slots.emplace_back(i, j);
  long double terms = 1;
  for (size_t k = 0; k < slots.size(); ++k) terms *= static_cast<long double>(q);
  if (terms > static_cast<long double>(budget))
    throw std::length_error("sym_bruteforce: enumeration exceeds budget");

  std::vector<long long> digits(slots.size(), 0), mat(n * n, 0), work(n * n);
  std::vector<long long> by_det(q, 0);
  for (;;) {
    std::fill(mat.begin(), mat.end(), 0);
    for (size_t k = 0; k < slots.size(); ++k) {
      mat[slots[k].first * n + slots[k].second] = digits[k];
      mat[slots[k].second * n + slots[k].first] = digits[k];
    }
    work = mat;
    ++by_det[det_mod(work, n, q)];
    size_t k = 0;
    while (k < digits.size()) {
      if (++digits[k] < q) break;
      digits[k] = 0;
      ++k;
    }
    if (k == digits.size()) break;
  }
  if (chi == CharKind::Other)
    throw std::invalid_argument("sym_bruteforce: character kind must be trivial or quadratic");
  Integer total = 0;
  for (long long a = 1; a < q; ++a) total += zz(by_det[a] * (chi == CharKind::Trivial ? 1 : legendre(a, q)));
  return CycNumber(total);
}

CycNumber sym_psi(long long p, long long l) { return sym_closed(p, CharKind::Quadratic, l, 0); }

}  // namespace siegel
