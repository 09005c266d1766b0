#include "siegel/hecke.hpp"

#include <stdexcept>

namespace siegel {

namespace {

CycNumber qpow(long long q, long long e) { return CycNumber(rational_pow(qq(q), e)); }

Integer ipow(long long q, long long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(e));
  return r;
}

CycNumber beta_c(long long q, long long b, long long c) { return CycNumber(beta(q, b, c)); }

long long ll(size_t v) { return static_cast<long long>(v); }

long long rational_residue(const Rational& x, long long m) {
  Integer num, den;
  mpz_fdiv_r_ui(num.get_mpz_t(), x.get_num_mpz_t(), static_cast<unsigned long>(m));
  mpz_fdiv_r_ui(den.get_mpz_t(), x.get_den_mpz_t(), static_cast<unsigned long>(m));
  if (gcd_ll(den.get_si(), m) != 1) throw std::invalid_argument("char_pair_eval: denominator not a unit");
  return mod_ll(num.get_si() * inv_mod(den.get_si(), m), m);
}

// chi restricted to the primes of m, at p^e (e may be negative)
CycNumber chi_part(const DirichletCharacter& chi, long long m, long long p, long long e) {
  return chi.restrict_to(m).eval_power(zz(p), e);
}

void require_prime_of_level(const HalfIntegralContext& ctx, long long q) {
  if (!is_prime(q) || q == 2 || ctx.N() % q != 0)
    throw std::invalid_argument("q = " + std::to_string(q) + " must be a prime dividing N = " + std::to_string(ctx.N()));
}

void require_good_prime(long long N, long long p) {
  if (p == 2 || !is_prime(p) || N % p == 0)
    throw std::invalid_argument("p = " + std::to_string(p) + " must be an odd prime not dividing N = " + std::to_string(N));
}

void require_partition(const HalfIntegralContext& ctx, const MultiplicativePartition& s) {
  if (s.degree() != ctx.n() || s.product() != ctx.N())
    throw std::invalid_argument("partition " + s.to_string() + " does not match the context");
}

std::vector<Rational> sigma_diagonal(const MultiplicativePartition& sigma) {
  IntMatrix M = build_M_sigma(AdmissibleType{sigma, 0, 0, true});
  std::vector<Rational> d;
  for (size_t i = 0; i < M.rows(); ++i) d.emplace_back(M(i, i));
  return d;
}

bool vanishes(const MultiplicativePartition& sigma, const DirichletCharacter& chi) {
  return vanishing_status(AdmissibleType{sigma, 0, 0, true}, chi).value == Vanishing::Zero;
}

CycNumber epsilon_pow(long long p, long long e) { return CycNumber(legendre(-1, p) == -1 && e % 2 != 0 ? -1 : 1); }

}  // namespace

HalfIntegralContext::HalfIntegralContext(size_t n, long long k, long long N, DirichletCharacter chi)
    : n_(n), k_(k), N_(N), chi_(std::move(chi)) {
  if (n < 1) throw std::invalid_argument("degree must be positive");
  if (k < 1 || k % 2 == 0) throw std::invalid_argument("weight numerator k must be odd and positive");
  require_odd_squarefree(N);
  if (chi_.modulus() != 4 * N)
    throw std::invalid_argument("character modulus " + std::to_string(chi_.modulus()) + " is not 4N = " +
                                std::to_string(4 * N));
  if (!convergent())
    warnings_.push_back("n <= (k+1)/2: the series need not converge, eigenvalue formulas are evaluated formally");
  if (!even_character()) warnings_.push_back("chi(-1) = -1: bad-prime formulas require an even character");
  partitions_ = enumerate_partitions(N, n);
}

size_t HalfIntegralContext::partition_index(const MultiplicativePartition& p) const {
  for (size_t i = 0; i < partitions_.size(); ++i)
    if (partitions_[i] == p) return i;
  throw std::invalid_argument("unknown partition " + p.to_string());
}

CharKind char_kind(const DirichletCharacter& chi, long long q) {
  const CharComponent& c = chi.component(q);
  if (c.order == 1) return CharKind::Trivial;
  if (c.order == 2) return CharKind::Quadratic;
  return CharKind::Other;
}

CycNumber char_pair_eval(const DirichletCharacter& chi, const std::vector<Rational>& Mdiag,
                         const std::vector<Rational>& Ndiag) {
  if (Mdiag.size() != Ndiag.size()) throw std::invalid_argument("char_pair_eval: size mismatch");
  CycNumber v(1);
  for (const auto& c : chi.components()) {
    if (c.is_trivial()) continue;
    long long m = c.modulus;
    if (m == 4) {
      Rational det = 1;
      for (const auto& x : Ndiag) det *= x;
      v *= chi.component_value(4, zz(rational_residue(det, 4)));
      continue;
    }
    Rational x = 1;
    for (size_t i = 0; i < Mdiag.size(); ++i) {
      bool unit = Mdiag[i] != 0 && rational_residue(Mdiag[i], m) != 0;
      if (unit)
        x /= Mdiag[i];
      else
        x *= Ndiag[i];
    }
    v *= chi.component_value(m, zz(rational_residue(x, m)));
  }
  return v;
}

MultiplicativePartition insert_prime(const MultiplicativePartition& sigma_prime, long long q, size_t d) {
  if (d >= sigma_prime.parts.size()) throw std::invalid_argument("insert_prime: slot out of range");
  MultiplicativePartition s = sigma_prime;
  s.parts[d] *= q;
  return s;
}

MultiplicativePartition remove_prime(const MultiplicativePartition& sigma, long long q) {
  MultiplicativePartition s = sigma;
  s.parts[s.slot_of(q)] /= q;
  return s;
}

CycNumber A_coeff(const HalfIntegralContext& ctx, const MultiplicativePartition& sigma_prime, size_t d, size_t j,
                  size_t t, long long q, BadReading reading) {
  require_prime_of_level(ctx, q);
  const size_t n = ctx.n();
  if (sigma_prime.degree() != n || sigma_prime.product() * q != ctx.N())
    throw std::invalid_argument("A_coeff: sigma' must be a partition of N/q");
  if (!ctx.even_character()) throw std::domain_error("A_coeff: requires chi(-1) = 1");
  if (d > n || j > n) throw std::invalid_argument("A_coeff: index out of range");
  if (t > n - d) return CycNumber(0);
  if (j == 0) return CycNumber(t == 0 ? 1 : 0);

  const long long k = ctx.k();
  const long long ln = ll(n), ld = ll(d), lj = ll(j), lt = ll(t);
  std::vector<Rational> m = sigma_diagonal(insert_prime(sigma_prime, q, d));
  DirichletCharacter chi_rest = ctx.chi().restrict_to(ctx.N() / q);
  CharKind kind = char_kind(ctx.chi(), q), kind_twisted = twist_by_legendre(kind);
  CycNumber g1 = gauss_g1(q);
  const int eps = legendre(-1, q);

  CycNumber sum(0);
  for (long long s = 0; s <= lj; ++s)
    for (long long d5 = 0; d5 <= lj - s; ++d5)
      for (long long d8 = 0; d8 <= d5; ++d8) {
        Integer b = beta(q, ld, s) * beta(q, lt, d5) * beta(q, ln - ld - lt, lj - s + d8 - lt) * beta(q, lt - d5, d8);
        if (b == 0) continue;
        long long d7 = lt - d5 - d8;
        if (d7 < 0) continue;
        CycNumber sym7 = sym_closed(q, kind, d7, 0), sym58 = sym_closed(q, kind_twisted, d5, d8);
        if (sym7.is_zero() || sym58.is_zero()) continue;
        long long e = d5 - d8;
        long long two_a = (k - 2 * ld) * (2 * s + e) + 2 * s * (s - d8 - lj - 1) + 2 * d8 * (lj - d5) -
                          d5 * (d5 + 1) + d8 * (d8 + 1);
        long long two_x = two_a - k * e;  // q^{a_j} q^{-k e/2}
        if (two_x % 2 != 0) throw std::logic_error("A_coeff: odd exponent");
        long long r = lj - s - d5 + d8;
        std::vector<Rational> Md(n), Nd(n);
        for (long long i = 0; i < ln; ++i) {
          Rational x = i < s ? qq(q) : (i >= ln - r ? qq(1, q) : qq(1));
          Rational xj = i < lj ? qq(q) : qq(1);
          Md[i] = m[i] / x * xj;
          Nd[i] = 1 / (x * xj);
        }
        CycNumber term = qpow(q, two_x / 2) * char_pair_eval(chi_rest, Md, Nd).conj() * CycNumber(b) * sym7 * sym58 *
                         g1.pow(k * e);
        if (reading == BadReading::SignCorrected && d8 % 2 == 1 && eps == -1) term = -term;
        sum += term;
      }
  return qpow(q, (lj - lt) * ld - lt * (lt + 1) / 2) * beta_c(q, ld + lt, lt) * sum;
}

CycNumber lambda_bad(const HalfIntegralContext& ctx, const MultiplicativePartition& sigma, size_t j, long long q) {
  require_prime_of_level(ctx, q);
  require_partition(ctx, sigma);
  if (j > ctx.n()) throw std::invalid_argument("lambda_bad: j > n");
  if (j == 0) return CycNumber(1);
  const long long n = ll(ctx.n()), k = ctx.k(), lj = ll(j);
  const long long d = ll(sigma.slot_of(q));
  long long n0 = sigma.parts[0] / gcd_ll(q, sigma.parts[0]);
  long long nn = sigma.parts[n] / gcd_ll(q, sigma.parts[n]);
  CycNumber sum(0);
  for (long long s = 0; s <= lj; ++s) {
    Integer b = beta(q, d, s) * beta(q, n - d, lj - s);
    if (b == 0) continue;
    sum += qpow(q, lj * d + s * (k - 2 * d + s - lj - 1)) * chi_part(ctx.chi(), n0, q, 2 * s) *
           chi_part(ctx.chi(), nn, q, 2 * (lj - s)) * CycNumber(b);
  }
  return sum;
}

std::vector<std::vector<CycNumber>> bad_operator_matrix(const HalfIntegralContext& ctx, long long q, size_t j,
                                                        BadReading reading) {
  const auto& parts = ctx.partitions();
  size_t P = parts.size();
  std::vector<std::vector<CycNumber>> m(P, std::vector<CycNumber>(P, CycNumber(0)));
  std::vector<bool> zero(P);
  for (size_t i = 0; i < P; ++i) zero[i] = vanishes(parts[i], ctx.chi());
  for (size_t a = 0; a < P; ++a) {
    if (zero[a]) continue;
    MultiplicativePartition sp = remove_prime(parts[a], q);
    size_t d = parts[a].slot_of(q);
    for (size_t t = 0; d + t <= ctx.n(); ++t) {
      size_t b = ctx.partition_index(insert_prime(sp, q, d + t));
      if (zero[b]) continue;
      m[a][b] = A_coeff(ctx, sp, d, j, t, q, reading);
    }
  }
  return m;
}

bool partition_geq(const MultiplicativePartition& alpha, const MultiplicativePartition& sigma, long long Q) {
  for (long long q : prime_factors(Q))
    if (alpha.slot_of(q) < sigma.slot_of(q)) return false;
  return true;
}

TildeBasis tilde_basis(const HalfIntegralContext& ctx) {
  const auto& parts = ctx.partitions();
  const size_t P = parts.size(), n = ctx.n();
  TildeBasis out;
  out.vanishing.resize(P);
  for (size_t i = 0; i < P; ++i) out.vanishing[i] = vanishes(parts[i], ctx.chi());

  // per prime: local[q][rho][e] = a_{rho, rho with q moved to slot e}(q)
  std::map<long long, std::vector<std::vector<CycNumber>>> local;
  for (long long q : prime_factors(ctx.N())) {
    auto& loc = local[q];
    loc.assign(P, std::vector<CycNumber>(n + 1, CycNumber(0)));
    bool residual_ok = true;
    for (size_t rho = 0; rho < P; ++rho) {
      if (out.vanishing[rho]) continue;
      MultiplicativePartition sp = remove_prime(parts[rho], q);
      size_t d0 = parts[rho].slot_of(q);
      // T[d][e] = A_n(d, e-d), zero rows/columns for vanishing E
      std::vector<std::vector<CycNumber>> T(n + 1, std::vector<CycNumber>(n + 1, CycNumber(0)));
      std::vector<bool> zero(n + 1);
      for (size_t d = 0; d <= n; ++d) zero[d] = vanishes(insert_prime(sp, q, d), ctx.chi());
      for (size_t d = d0; d <= n; ++d) {
        if (zero[d]) continue;
        for (size_t e = d; e <= n; ++e)
          if (!zero[e]) T[d][e] = A_coeff(ctx, sp, d, n, e - d, q);
      }
      CycNumber lam = T[d0][d0];
      std::vector<CycNumber> a(n + 1, CycNumber(0));
      a[d0] = CycNumber(1);
      for (size_t e = d0 + 1; e <= n; ++e) {
        CycNumber rhs(0);
        for (size_t d = d0; d < e; ++d) rhs += a[d] * T[d][e];
        CycNumber gap = lam - T[e][e];
        if (gap.is_zero()) {
          if (!rhs.is_zero()) throw std::runtime_error("tilde_basis: degenerate spectrum");
          continue;
        }
        a[e] = rhs / gap;
      }
      for (size_t e = d0; e <= n; ++e) {
        CycNumber r(0);
        for (size_t d = d0; d <= e; ++d) r += a[d] * T[d][e];
        if (r != lam * a[e]) residual_ok = false;
      }
      loc[rho] = a;
    }
    out.residual_zero[q] = residual_ok;
  }

  out.coeff.assign(P, std::vector<CycNumber>(P, CycNumber(0)));
  for (size_t s = 0; s < P; ++s) {
    if (out.vanishing[s]) continue;
    for (size_t a = 0; a < P; ++a) {
      if (!partition_geq(parts[a], parts[s], ctx.N())) continue;
      CycNumber c(1);
      for (const auto& [q, loc] : local) {
        size_t rho = ctx.partition_index(insert_prime(remove_prime(parts[a], q), q, parts[s].slot_of(q)));
        c *= loc[rho][parts[a].slot_of(q)];
        if (c.is_zero()) break;
      }
      out.coeff[s][a] = c;
    }
  }
  for (size_t s = 0; s < P; ++s) {
    if (out.vanishing[s]) continue;
    if (out.coeff[s][s] != CycNumber(1)) out.unitriangular = false;
    for (size_t a = 0; a < P; ++a)
      if (!partition_geq(parts[a], parts[s], ctx.N()) && !out.coeff[s][a].is_zero()) out.unitriangular = false;
  }
  return out;
}

bool tilde_is_eigenvector(const HalfIntegralContext& ctx, const TildeBasis& basis, size_t sigma, long long q,
                          size_t j, BadReading reading) {
  auto m = bad_operator_matrix(ctx, q, j, reading);
  const auto& v = basis.coeff.at(sigma);
  CycNumber lam = lambda_bad(ctx, ctx.partitions()[sigma], j, q);
  for (size_t b = 0; b < v.size(); ++b) {
    CycNumber w(0);
    for (size_t a = 0; a < v.size(); ++a)
      if (!v[a].is_zero() && !m[a][b].is_zero()) w += v[a] * m[a][b];
    if (w != lam * v[b]) return false;
  }
  return true;
}

MultiplicityOneReport multiplicity_one_check(const HalfIntegralContext& ctx) {
  MultiplicityOneReport rep;
  rep.primes = prime_factors(ctx.N());
  const auto& parts = ctx.partitions();
  for (const auto& s : parts) {
    rep.vanishing.push_back(vanishes(s, ctx.chi()));
    std::vector<CycNumber> v;
    for (long long q : rep.primes) v.push_back(lambda_bad(ctx, s, ctx.n(), q));
    rep.vectors.push_back(v);
  }
  for (size_t a = 0; a < parts.size(); ++a)
    for (size_t b = a + 1; b < parts.size(); ++b) {
      if (rep.vanishing[a] || rep.vanishing[b]) continue;
      bool same = true;
      for (size_t i = 0; i < rep.primes.size(); ++i)
        if (rep.vectors[a][i] != rep.vectors[b][i]) same = false;
      if (same) {
        rep.separated = false;
        rep.collisions.emplace_back(a, b);
      }
    }
  return rep;
}

CycNumber lambda_good(const HalfIntegralContext& ctx, const MultiplicativePartition& sigma, size_t j, long long p) {
  require_good_prime(ctx.N(), p);
  require_partition(ctx, sigma);
  if (j > ctx.n()) throw std::invalid_argument("lambda_good: j > n");
  if (j == 0) return CycNumber(1);
  const long long n = ll(ctx.n()), k = ctx.k(), lj = ll(j);
  const long long nn = sigma.parts[n];
  CycNumber sum(0);
  for (long long r = 0; r <= lj; ++r)
    for (long long s = 0; r + s <= lj; ++s) {
      long long m = lj - r - s;
      CycNumber sv = sym_psi(p, m);
      if (sv.is_zero()) continue;
      if (m % 2 != 0) throw std::logic_error("lambda_good: odd sym size survived");
      // (G_1(p)/sqrt p)^m = ((-1/p))^{m/2}; j-r+s has the parity of m
      long long two_e = k * (lj - r + s) - 2 * (lj - r) * (n + 1);
      sum += qpow(p, two_e / 2) * ctx.chi().eval_power(zz(p), lj - r + s) * chi_part(ctx.chi(), nn, p, 2 * (r - s)) *
             CycNumber(Integer(beta(p, lj, r) * beta(p, lj - r, s))) * epsilon_pow(p, m / 2) * sv;
    }
  return beta_c(p, n, lj) * sum;
}

CycNumber lambda_prime(const HalfIntegralContext& ctx, const MultiplicativePartition& sigma, size_t j, long long p,
                       PrimeMode mode) {
  require_good_prime(ctx.N(), p);
  require_partition(ctx, sigma);
  if (j > ctx.n()) throw std::invalid_argument("lambda_prime: j > n");
  const long long n = ll(ctx.n()), k = ctx.k(), lj = ll(j);
  const long long nn = sigma.parts[n];
  const long long h = (k + 1) / 2;
  const DirichletCharacter& chi = ctx.chi();
  if (mode == PrimeMode::Closed) {
    // chi'(p^s) = chi(p^s) eps^{s(k+1)/2}
    CycNumber chi_p1 = chi.eval_power(zz(p), 1) * epsilon_pow(p, h);
    CycNumber phi = chi_p1 * chi_part(chi, nn, p, -2);
    CycNumber prod(1);
    for (long long i = 1; i <= lj; ++i) prod *= phi * qpow(p, h - i) + CycNumber(1);
    long long two_e = lj * (k - 2 * n - 1) + lj * (lj - 1);
    return beta_c(p, n, lj) * qpow(p, two_e / 2) * chi.eval_power(zz(p), lj) * epsilon_pow(p, h * lj) * prod;
  }
  std::vector<CycNumber> lam(lj + 1);
  for (long long l = 0; l <= lj; ++l) lam[l] = lambda_good(ctx, sigma, static_cast<size_t>(l), p);
  auto tilde = [&](long long m) {
    CycNumber v(0);
    for (long long l = 0; l <= m; ++l)
      v += chi.eval_power(zz(p), m - l) * epsilon_pow(p, h * (m - l)) * qpow(p, (m - l) * (k - 2 * n - 1) / 2) *
           beta_c(p, n - l, m - l) * lam[l];
    return v;
  };
  CycNumber v(0);
  for (long long i = 0; i <= lj; ++i) {
    CycNumber term = qpow(p, i * (i - 1) / 2) * beta_c(p, n - lj + i, i) * chi_part(chi, nn, p, 2 * i) * tilde(lj - i);
    v += (i % 2 == 0) ? term : -term;
  }
  return v;
}

CycNumber lambda_integral(IntegralKind kind, const MultiplicativePartition& sigma, size_t index, long long prime,
                          long long k_prime, const DirichletCharacter& chi_prime) {
  const long long N = sigma.product();
  require_odd_squarefree(N);
  if (chi_prime.modulus() != N)
    throw std::invalid_argument("integral weight character must have modulus N = " + std::to_string(N));
  const long long n = ll(sigma.degree());
  switch (kind) {
    case IntegralKind::Tq: {
      long long q = prime;
      if (!is_prime(q) || N % q != 0) throw std::invalid_argument("Tq: q must divide N");
      long long d = ll(sigma.slot_of(q));
      std::vector<Rational> m = sigma_diagonal(sigma), Md(n), Nd(n);
      for (long long i = 0; i < n; ++i) {
        Rational x = i < d ? qq(q) : qq(1);
        Md[i] = qq(1, q) * x * m[i];
        Nd[i] = x;
      }
      return qpow(q, k_prime * d - d * (d + 1) / 2) * char_pair_eval(chi_prime.restrict_to(N / q), Md, Nd);
    }
    case IntegralKind::Tjq2: {
      long long q = prime, j = ll(index);
      if (!is_prime(q) || N % q != 0) throw std::invalid_argument("Tjq2: q must divide N");
      if (j > n) throw std::invalid_argument("Tjq2: j > n");
      long long d = ll(sigma.slot_of(q));
      long long n0 = sigma.parts[0] / gcd_ll(q, sigma.parts[0]);
      long long nn = sigma.parts[n] / gcd_ll(q, sigma.parts[n]);
      CycNumber sum(0);
      for (long long s = 0; s <= j; ++s) {
        Integer b = beta(q, d, s) * beta(q, n - d, j - s);
        if (b == 0) continue;
        sum += qpow(q, j * d + s * (2 * k_prime - 2 * d + s - j - 1)) * chi_part(chi_prime, n0, q, 2 * s) *
               chi_part(chi_prime, nn, q, 2 * (j - s)) * CycNumber(b);
      }
      return sum;
    }
    case IntegralKind::Tp: {
      long long p = prime;
      require_good_prime(N, p);
      CycNumber lead(1);
      for (long long d = 1; d <= n; ++d) lead *= chi_part(chi_prime, sigma.parts[d], p, d);
      CycNumber phi = chi_prime.eval_power(zz(p), 1) * chi_part(chi_prime, sigma.parts[n], p, 2).conj();
      CycNumber prod(1);
      for (long long i = 1; i <= n; ++i) prod *= phi * qpow(p, k_prime - i) + CycNumber(1);
      return lead * prod;
    }
    case IntegralKind::Tjp2: {
      long long p = prime, j = ll(index);
      require_good_prime(N, p);
      if (j > n) throw std::invalid_argument("Tjp2: j > n");
      CycNumber sum(0);
      for (long long r = 0; r <= j; ++r)
        for (long long s = 0; r + s <= j; ++s)
          sum += qpow(p, k_prime * (j - r + s) - (j - r) * (n + 1)) * chi_prime.eval_power(zz(p), j - r + s) *
                 chi_part(chi_prime, sigma.parts[n], p, 2 * (r - s)) *
                 CycNumber(Integer(beta(p, j, r) * beta(p, j - r, s))) * sym_closed(p, CharKind::Trivial, j - r - s, 0);
      return beta_c(p, n, j) * sum;
    }
  }
  throw std::logic_error("lambda_integral: unknown kind");
}

std::vector<ShimuraRow> shimura_compare(long long N, long long k, const DirichletCharacter& chi, long long p) {
  HalfIntegralContext ctx(1, k, N, chi);
  DirichletCharacter chi_int = chi.squared().restrict_to(N);
  std::vector<ShimuraRow> rows;
  for (const auto& s : ctx.partitions()) {
    ShimuraRow r{s, lambda_good(ctx, s, 1, p), lambda_integral(IntegralKind::Tp, s, 0, p, k - 1, chi_int)};
    r.equal = r.half_integral == r.integral;
    rows.push_back(r);
  }
  return rows;
}

}  // namespace siegel
