#include "siegel/gauss.hpp"

#include <climits>
#include <cstdlib>
#include <stdexcept>

namespace siegel {

uint64_t default_gauss_budget() {
  if (const char* env = std::getenv("SIEGEL_GAUSS_BUDGET")) {
    try {
      long long v = std::stoll(env);
      if (v > 0) return static_cast<uint64_t>(v);
    } catch (const std::exception&) {
    }
  }
  return 100000;
}

namespace {

long long to_ll_mod(const Integer& x, long long m) {
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(m));
  return r.get_si();
}

struct QuadModule {
  std::vector<long long> s;  // invariant factors of D
  long long L = 1;           // largest invariant factor
  std::vector<std::vector<long long>> B;  // Gram matrix mod L in the SNF basis
};

QuadModule quadratic_module(const IntMatrix& C, const IntMatrix& D) {
  size_t n = D.rows();
  SmithForm sf = smith_normal_form(D);
  QuadModule qm;
  for (size_t i = 0; i < n; ++i) qm.s.push_back(sf.S(i, i).get_si());
  qm.L = qm.s.back();
  // L * W D^{-1} C tW = diag(L/s_i) U C tW with W = V^{-1}
  IntMatrix G = sf.U * C * sf.V_inv.transpose();
  qm.B.assign(n, std::vector<long long>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) qm.B[i][j] = to_ll_mod(G(i, j) * zz(qm.L / qm.s[i]), qm.L);
  return qm;
}

void check_pair(const IntMatrix& C, const IntMatrix& D, uint64_t budget) {
  if (!C.is_square() || !D.is_square() || C.rows() != D.rows())
    throw std::invalid_argument("gauss_sum: C and D must be square of equal size");
  Integer det = D.det();
  if (det == 0) throw std::invalid_argument("singular D");
  if (!is_coprime_symmetric(C, D)) throw std::invalid_argument("gauss_sum: (C D) is not a coprime symmetric pair");
  if (Integer(abs(det)) > zz(static_cast<long long>(budget)))
    throw std::length_error("gauss_sum: |det D| = " + Integer(abs(det)).get_str() + " exceeds enumeration budget " +
                            std::to_string(budget));
}

// sum over t in prod [0, bound_i) of zeta_level^{Q(t)}, Q(t) = t B' tt mod modulus,
// exponent = Q / (modulus / level)
CycNumber enumerate(const std::vector<std::vector<long long>>& Bp, const std::vector<long long>& bound, long long modulus,
                    long long level) {
  size_t n = bound.size();
  long long shrink = modulus / level;
  std::vector<long long> counts(level, 0), t(n, 0);
  for (;;) {
    __int128 q = 0;
    for (size_t i = 0; i < n; ++i) {
      if (t[i] == 0) continue;
      __int128 row = static_cast<__int128>(Bp[i][i]) * t[i];
      for (size_t j = i + 1; j < n; ++j) row += static_cast<__int128>(2 * Bp[i][j]) * t[j];
      q += (row % modulus) * t[i];
      q %= modulus;
    }
    long long qm = static_cast<long long>(q % modulus);
    if (qm < 0) qm += modulus;
    if (qm % shrink != 0) throw std::logic_error("gauss_sum: local form value off its level");
    ++counts[qm / shrink];
    size_t k = 0;
    while (k < n) {
      if (++t[k] < bound[k]) break;
      t[k] = 0;
      ++k;
    }
    if (k == n) break;
  }
  return CycNumber::from_exponent_counts(level, counts);
}

}  // namespace

CycNumber gauss_sum(const IntMatrix& C, const IntMatrix& D, uint64_t budget, GaussMethod method) {
  check_pair(C, D, budget);
  size_t n = D.rows();
  if (n == 0) return CycNumber(1);
  QuadModule qm = quadratic_module(C, D);
  if (method == GaussMethod::Direct) return enumerate(qm.B, qm.s, qm.L, qm.L);

  CycNumber total(1);
  for (auto [p, f] : factorize(qm.L)) {
    long long pf = 1;
    for (int i = 0; i < f; ++i) pf *= p;
    std::vector<long long> bound(n), step(n);
    for (size_t i = 0; i < n; ++i) {
      long long pe = 1, s = qm.s[i];
      while (s % p == 0) {
        s /= p;
        pe *= p;
      }
      bound[i] = pe;
      step[i] = qm.s[i] / pe;
    }
    std::vector<std::vector<long long>> Bp(n, std::vector<long long>(n));
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        __int128 v = static_cast<__int128>(qm.B[i][j]) * (step[i] % qm.L) % qm.L;
        v = v * (step[j] % qm.L) % qm.L;
        Bp[i][j] = static_cast<long long>(v);
      }
    total *= enumerate(Bp, bound, qm.L, pf);
  }
  return total;
}

CycNumber theta_multiplier(const IntMatrix& C, const IntMatrix& D, uint64_t budget) {
  if (!C.mod(4).is_zero()) throw std::invalid_argument("theta_multiplier: C must be divisible by 4");
  CycNumber g = gauss_sum(C, D, budget);
  return g.conj() / sqrt_integer(D.det());
}

RatMatrix x_r(size_t n, size_t r, long long q) {
  if (r > n) throw std::invalid_argument("x_r: r > n");
  std::vector<Rational> d(n, Rational(1));
  for (size_t i = 0; i < r; ++i) d[i] = qq(q);
  return RatMatrix::diagonal(d);
}

RatMatrix x_0r(size_t n, size_t r, long long q) {
  if (r > n) throw std::invalid_argument("x_0r: r > n");
  std::vector<Rational> d(n, Rational(1));
  for (size_t i = n - r; i < n; ++i) d[i] = qq(1, q);
  return RatMatrix::diagonal(d);
}

bool VerifyReport::passed() const {
  if (!applicable || !equal) return false;
  for (const auto& c : claims)
    if (!c.second) return false;
  return true;
}

// ---------------------------------------------------------------------------

namespace {

bool within_budget(const Integer& det, uint64_t budget) {
  return det != 0 && Integer(abs(det)) <= zz(static_cast<long long>(budget));
}

void require_odd_prime(long long q) {
  if (q % 2 == 0 || !is_prime(q)) throw std::invalid_argument("q must be an odd prime");
}

std::string pair_problem(const std::string& name, const IntMatrix& M, const IntMatrix& N, uint64_t budget) {
  if (!M.is_square() || !N.is_square() || M.rows() != N.rows()) return name + ": shapes differ";
  if (!is_coprime_symmetric(M, N)) return name + ": not a coprime symmetric pair";
  Integer det = N.det();
  if (det == 0) return name + ": singular second matrix";
  if (!within_budget(det, budget)) return name + ": |det| exceeds budget";
  return "";
}

// (P M Q, P N R) as integer matrices, or nullopt when not integral
std::optional<std::pair<IntMatrix, IntMatrix>> transform(const IntMatrix& M, const IntMatrix& N, const RatMatrix& P,
                                                         const RatMatrix& Q, const RatMatrix& R) {
  RatMatrix m2 = P * RatMatrix(M) * Q, n2 = P * RatMatrix(N) * R;
  if (!m2.is_integral() || !n2.is_integral()) return std::nullopt;
  return std::make_pair(m2.to_int(), n2.to_int());
}

bool block_divisible(const IntMatrix& A, size_t r0, size_t c0, size_t nr, size_t nc, long long q) {
  return A.block(r0, c0, nr, nc).mod(zz(q)).is_zero();
}

std::string scaling_problem(const IntMatrix& M, const IntMatrix& N, long long q, size_t s, uint64_t budget,
                           std::pair<IntMatrix, IntMatrix>* out) {
  size_t n = M.rows();
  if (s > n) return "s > n";
  if (auto p = pair_problem("(M N)", M, N, budget); !p.empty()) return p;
  RatMatrix X = x_r(n, s, q);
  auto t = transform(M, N, X, X.inverse(), X);
  if (!t) return "(X_s M X_s^{-1}, X_s N X_s) not integral";
  if (auto p = pair_problem("(X_s M X_s^{-1}, X_s N X_s)", t->first, t->second, budget); !p.empty()) return p;
  if (out) *out = *t;
  return "";
}

std::string conjugation_problem(const IntMatrix& M, const IntMatrix& N, long long q, size_t r, uint64_t budget,
                           std::pair<IntMatrix, IntMatrix>* out) {
  size_t n = M.rows();
  if (r > n) return "r > n";
  if (auto p = pair_problem("(M N)", M, N, budget); !p.empty()) return p;
  RatMatrix X0 = x_0r(n, r, q), Xr = x_r(n, r, q);
  auto t = transform(M, N, X0, Xr.inverse(), Xr);
  if (!t) return "(X_{0,r} M X_r^{-1}, X_{0,r} N X_r) not integral";
  if (auto p = pair_problem("(X_{0,r} M X_r^{-1}, X_{0,r} N X_r)", t->first, t->second, budget); !p.empty()) return p;
  if (out) *out = *t;
  return "";
}

struct ReductionBlocks {
  IntMatrix B2, B3, C2, C3;
};

std::string reduction_problem(const IntMatrix& M, const IntMatrix& N, long long q, size_t l, uint64_t budget,
                           ReductionBlocks* blocks) {
  size_t n = M.rows();
  if (l == 0 || l > n) return "l must satisfy 1 <= l <= n";
  if (auto p = pair_problem("(M N)", M, N, budget); !p.empty()) return p;
  size_t top = n - l;
  // rows (n-l, l), columns (l, n-l)
  if (!block_divisible(M, 0, 0, top, l, q)) return "M upper-left block not divisible by q";
  if (!block_divisible(M, top, 0, l, l, q)) return "M lower-left block not divisible by q";
  if (!block_divisible(M, top, l, l, top, q)) return "M lower-right block not divisible by q";
  if (!block_divisible(N, top, l, l, top, q)) return "N lower-right block not divisible by q";
  ReductionBlocks b;
  b.B3 = (RatMatrix(M.block(top, 0, l, l)) * qq(1, q)).to_int();
  b.C3 = N.block(top, 0, l, l);
  b.B2 = M.block(0, l, top, top);
  b.C2 = N.block(0, l, top, top);
  if (rank_mod_p(b.B3, q) != static_cast<int>(l)) return "B_3 not invertible mod q";
  if (rank_mod_p(b.C3, q) != static_cast<int>(l)) return "C_3 not invertible mod q";
  RatMatrix Xl = x_r(n, l, q);
  auto t = transform(M, N, RatMatrix::identity(n), Xl.inverse(), Xl);
  if (!t) return "(M X_l^{-1}, N X_l) not integral";
  if (!within_budget(t->second.det(), budget)) return "|det N X_l| exceeds budget";
  if (blocks) *blocks = b;
  return "";
}

}  // namespace

VerifyReport verify_unimodular_invariance(const IntMatrix& C, const IntMatrix& D, const IntMatrix& E, uint64_t budget) {
  VerifyReport rep;
  rep.identity = "unimodular-invariance";
  rep.instance = {{"C", C}, {"D", D}, {"E", E}};
  if (!E.is_square() || E.rows() != C.rows() || !is_unimodular(E)) {
    rep.applicable = false;
    rep.reason = "E is not in GL_n(Z)";
    return rep;
  }
  if (auto p = pair_problem("(C D)", C, D, budget); !p.empty()) {
    rep.applicable = false;
    rep.reason = p;
    return rep;
  }
  CycNumber base = gauss_sum(C, D, budget);
  CycNumber left = gauss_sum(E * C, E * D, budget);
  CycNumber right = gauss_sum(C * E, D * inverse_unimodular(E).transpose(), budget);
  rep.lhs = base;
  rep.rhs = left;
  rep.equal = base == left;
  rep.claims = {{"G_{EC}(ED) == G_C(D)", base == left}, {"G_{CE}(D tE^{-1}) == G_C(D)", base == right}};
  return rep;
}

VerifyReport verify_scaling(const IntMatrix& M, const IntMatrix& N, long long q, size_t s, uint64_t budget) {
  require_odd_prime(q);
  VerifyReport rep;
  rep.identity = "scaling";
  rep.instance = {{"M", M}, {"N", N}};
  rep.parameters = {{"q", q}, {"s", static_cast<long long>(s)}};
  std::pair<IntMatrix, IntMatrix> t;
  if (auto p = scaling_problem(M, N, q, s, budget, &t); !p.empty()) {
    rep.applicable = false;
    rep.reason = p;
    return rep;
  }
  rep.instance.emplace_back("X_s M X_s^{-1}", t.first);
  rep.instance.emplace_back("X_s N X_s", t.second);
  rep.lhs = gauss_sum(t.first, t.second, budget);
  rep.rhs = CycNumber(rational_pow(qq(q), static_cast<long long>(s))) * gauss_sum(M, N, budget);
  rep.equal = *rep.lhs == *rep.rhs;
  return rep;
}

VerifyReport verify_conjugation(const IntMatrix& M, const IntMatrix& N, long long q, size_t r, uint64_t budget) {
  require_odd_prime(q);
  VerifyReport rep;
  rep.identity = "conjugation";
  rep.instance = {{"M", M}, {"N", N}};
  rep.parameters = {{"q", q}, {"r", static_cast<long long>(r)}};
  std::pair<IntMatrix, IntMatrix> t;
  if (auto p = conjugation_problem(M, N, q, r, budget, &t); !p.empty()) {
    rep.applicable = false;
    rep.reason = p;
    return rep;
  }
  rep.instance.emplace_back("X_{0,r} M X_r^{-1}", t.first);
  rep.instance.emplace_back("X_{0,r} N X_r", t.second);
  rep.lhs = gauss_sum(t.first, t.second, budget);
  rep.rhs = gauss_sum(M, N, budget);
  rep.equal = *rep.lhs == *rep.rhs;
  return rep;
}

VerifyReport verify_reduction(const IntMatrix& M, const IntMatrix& N, long long q, size_t l, uint64_t budget) {
  require_odd_prime(q);
  VerifyReport rep;
  rep.identity = "reduction";
  rep.instance = {{"M", M}, {"N", N}};
  rep.parameters = {{"q", q}, {"l", static_cast<long long>(l)}};
  ReductionBlocks b;
  if (auto p = reduction_problem(M, N, q, l, budget, &b); !p.empty()) {
    rep.applicable = false;
    rep.reason = p;
    return rep;
  }
  size_t n = M.rows();
  RatMatrix Xl = x_r(n, l, q);
  IntMatrix M2 = (RatMatrix(M) * Xl.inverse()).to_int(), N2 = (RatMatrix(N) * Xl).to_int();
  rep.instance.emplace_back("M X_l^{-1}", M2);
  rep.instance.emplace_back("N X_l", N2);
  bool rank_claim = n == l || rank_mod_p(b.B2.hcat(b.C2), q) == static_cast<int>(n - l);
  bool pair_claim = is_coprime_symmetric(M2, N2);
  rep.claims = {{"rank_q(B_2 C_2) == n - l", rank_claim}, {"(M X_l^{-1}, N X_l) coprime symmetric", pair_claim}};
  if (!pair_claim) return rep;
  rep.lhs = gauss_sum(M2, N2, budget);
  int leg = legendre(b.B3.det() * b.C3.det(), q);
  rep.rhs = CycNumber(leg) * gauss_g1(q).pow(static_cast<long long>(l)) * gauss_sum(M, N, budget);
  rep.equal = *rep.lhs == *rep.rhs;
  return rep;
}

VerifyReport verify_plus_type_sign(long long N, long long m, uint64_t budget) {
  VerifyReport rep;
  rep.identity = "plus-type-sign";
  rep.parameters = {{"N", N}, {"m", m}};
  if (N < 1 || N % 2 == 0) {
    rep.applicable = false;
    rep.reason = "N must be odd and positive";
    return rep;
  }
  if (mod_ll(m, 4) != 2) {
    rep.applicable = false;
    rep.reason = "m must be 2 mod 4";
    return rep;
  }
  IntMatrix C{{2 * N * m}}, D{{2 * N - 1}};
  rep.instance = {{"C", C}, {"D", D}};
  if (auto p = pair_problem("(C D)", C, D, budget); !p.empty()) {
    rep.applicable = false;
    rep.reason = p;
    return rep;
  }
  CycNumber g = gauss_sum(C, D, budget);
  CycNumber gneg = gauss_sum(IntMatrix{{-2 * N * m}}, IntMatrix{{1 - 2 * N}}, budget);
  CycNumber sq = g.conj() * g.conj();
  rep.lhs = sq;
  rep.rhs = CycNumber(2 * N - 1);
  rep.equal = sq == *rep.rhs;
  CycNumber zeta_sq = gneg.conj() * gneg.conj() / CycNumber(1 - 2 * N);
  rep.claims = {{"G_{-2Nm}(1-2N) == G_{2Nm}(2N-1)", gneg == g}, {"zeta^2 == -1", zeta_sq == CycNumber(-1)}};
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

struct MoveRules {
  std::function<long long(size_t, size_t)> l_divisor;  // L(Y): Y_ij must be a multiple of this
  std::function<bool(size_t, size_t)> r_restricted;    // R(A): entries needing a multiple of q
  std::function<bool(size_t, size_t)> e_restricted;    // left E: same
  long long q = 1;
};

IntMatrix random_sym_with_divisors(Rng& rng, size_t n, long long box, const std::function<long long(size_t, size_t)>& div) {
  IntMatrix y(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i; j < n; ++j) {
      long long v = rng.uniform(-box, box) * (div ? div(i, j) : 1);
      y(i, j) = zz(v);
      y(j, i) = y(i, j);
    }
  return y;
}

void random_move(Rng& rng, IntMatrix& M, IntMatrix& N, const MoveRules& rules, int kind) {
  size_t n = M.rows();
  switch (kind) {
    case 0:  // (M, MY + N)
      N = M * random_sym_with_divisors(rng, n, 1, nullptr) + N;
      break;
    case 1:  // (M + NY, N)
      M = M + N * random_sym_with_divisors(rng, n, 1, rules.l_divisor);
      break;
    case 2: {  // (MA, N tA^{-1})
      IntMatrix A = random_unimodular(rng, n, 3, 1, rules.r_restricted, rules.q);
      M = M * A;
      N = N * inverse_unimodular(A).transpose();
      break;
    }
    default: {  // (EM, EN)
      IntMatrix E = random_unimodular(rng, n, 3, 1, rules.e_restricted, rules.q);
      M = E * M;
      N = E * N;
      break;
    }
  }
}

long long max_abs_entry(const IntMatrix& A) {
  Integer m = 0;
  for (size_t i = 0; i < A.rows(); ++i)
    for (size_t j = 0; j < A.cols(); ++j)
      if (abs(A(i, j)) > m) m = abs(A(i, j));
  return m.fits_slong_p() ? m.get_si() : LLONG_MAX;
}

const Integer kInstanceDetCap = 2000;

template <typename Check>
std::optional<PairInstance> generate(Rng& rng, const IntMatrix& M0, const IntMatrix& N0, const MoveRules& rules,
                                     int attempts, long long q, size_t param, Check check) {
  for (int a = 0; a < attempts; ++a) {
    IntMatrix M = M0, N = N0;
    int moves = static_cast<int>(rng.uniform(2, 6));
    random_move(rng, M, N, rules, 0);
    for (int k = 0; k < moves; ++k) random_move(rng, M, N, rules, static_cast<int>(rng.uniform(0, 3)));
    if (max_abs_entry(M) > 60 || max_abs_entry(N) > 60) continue;
    // nontrivial but moderate |det N| keeps the field levels small
    Integer det = abs(N.det());
    if (det < 2 || det > kInstanceDetCap) continue;
    if (!check(M, N)) continue;
    return PairInstance{M, N, q, param};
  }
  return std::nullopt;
}

}  // namespace

std::optional<PairInstance> random_scaling_instance(Rng& rng, size_t n, long long q, size_t s, uint64_t budget,
                                                   int attempts) {
  require_odd_prime(q);
  attempts *= 10;
  if (s > n) throw std::invalid_argument("random_scaling_instance: s > n");
  std::vector<Integer> dm(n, 0), dn(n, 0);
  for (size_t i = 0; i < n; ++i) (i < s ? dm : dn)[i] = 1;
  MoveRules rules;
  rules.q = q;
  rules.l_divisor = [=](size_t i, size_t j) { return (i < s ? q : 1) * (j < s ? q : 1); };
  rules.r_restricted = [=](size_t i, size_t j) { return i >= s && j < s; };
  rules.e_restricted = rules.r_restricted;
  return generate(rng, IntMatrix::diagonal(dm), IntMatrix::diagonal(dn), rules, attempts, q, s,
                  [&](const IntMatrix& M, const IntMatrix& N) { return scaling_problem(M, N, q, s, budget, nullptr).empty(); });
}

std::optional<PairInstance> random_conjugation_instance(Rng& rng, size_t n, long long q, size_t r, uint64_t budget,
                                                   int attempts) {
  require_odd_prime(q);
  attempts *= 10;
  if (r > n) throw std::invalid_argument("random_conjugation_instance: r > n");
  IntMatrix N0(n, n);
  // rows (n-r, r), columns (r, n-r): [[0, I], [I, 0]]
  for (size_t i = 0; i < n - r; ++i) N0(i, r + i) = 1;
  for (size_t i = 0; i < r; ++i) N0(n - r + i, i) = 1;
  MoveRules rules;
  rules.q = q;
  rules.l_divisor = [=](size_t i, size_t j) { return (i < r ? q : 1) * (j < r ? q : 1); };
  rules.r_restricted = [=](size_t i, size_t j) { return i >= r && j < r; };
  rules.e_restricted = [=](size_t i, size_t j) { return i >= n - r && j < n - r; };
  return generate(rng, IntMatrix(n, n), N0, rules, attempts, q, r,
                  [&](const IntMatrix& M, const IntMatrix& N) { return conjugation_problem(M, N, q, r, budget, nullptr).empty(); });
}

std::optional<PairInstance> random_reduction_instance(Rng& rng, size_t n, long long q, size_t l, uint64_t budget,
                                                   int attempts) {
  require_odd_prime(q);
  if (l == 0 || l > n) throw std::invalid_argument("random_reduction_instance: need 1 <= l <= n");
  for (int a = 0; a < attempts; ++a) {
    IntMatrix M0(n, n), N0(n, n);
    for (size_t i = 0; i < l; ++i) {
      long long u = rng.uniform(1, q - 1) * (rng.coin() ? 1 : -1);
      M0(n - l + i, i) = zz(q * u);
    }
    for (size_t i = 0; i < n - l; ++i) N0(i, l + i) = 1;
    for (size_t i = 0; i < l; ++i) N0(n - l + i, i) = 1;
    MoveRules rules;
    rules.q = q;
    rules.l_divisor = [=](size_t i, size_t j) { return (i < l || j < l) ? q : 1; };
    rules.r_restricted = [=](size_t i, size_t j) { return i >= l && j < l; };
    rules.e_restricted = [=](size_t i, size_t j) { return i >= n - l && j < n - l; };
    auto inst = generate(rng, M0, N0, rules, 50, q, l, [&](const IntMatrix& M, const IntMatrix& N) {
      return reduction_problem(M, N, q, l, budget, nullptr).empty();
    });
    if (inst) return inst;
  }
  return std::nullopt;
}

std::pair<IntMatrix, IntMatrix> random_coprime_pair(Rng& rng, size_t n, long long max_det, long long step_box) {
  MoveRules rules;
  for (int a = 0; a < 10000; ++a) {
    IntMatrix C(n, n), D = IntMatrix::identity(n);
    int moves = static_cast<int>(rng.uniform(2, 5));
    for (int k = 0; k < moves; ++k) {
      int kind = static_cast<int>(rng.uniform(0, 3));
      if (kind == 0) {
        D = C * random_sym_with_divisors(rng, n, step_box, nullptr) + D;
      } else if (kind == 1) {
        C = C + D * random_sym_with_divisors(rng, n, step_box, nullptr);
      } else {
        random_move(rng, C, D, rules, kind);
      }
    }
    if (C.is_zero()) continue;
    Integer det = D.det();
    if (det == 0 || Integer(abs(det)) > zz(max_det)) continue;
    if (max_abs_entry(C) > 100 || max_abs_entry(D) > 100) continue;
    return {C, D};
  }
  throw std::runtime_error("random_coprime_pair: no pair found");
}

}  // namespace siegel
