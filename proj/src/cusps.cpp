#include "siegel/cusps.hpp"

#include <sstream>
#include <stdexcept>

namespace siegel {

namespace {

long long ipow_ll(long long b, size_t e) {
  long long r = 1;
  for (size_t i = 0; i < e; ++i) r *= b;
  return r;
}

// the mod-4 pattern I_d + 2 V + 0, V = I_{d'} or hyperbolic planes
long long pattern_mod4(const AdmissibleType& s, size_t i, size_t j) {
  size_t d = s.d, dp = s.dprime;
  if (i < d || j < d) return (i == j && i < d) ? 1 : 0;
  if (i >= d + dp || j >= d + dp) return 0;
  if (s.eps_plus) return i == j ? 2 : 0;
  size_t a = i - d, b = j - d;
  return (a / 2 == b / 2 && a != b) ? 2 : 0;
}

long long pattern_mod_q(const AdmissibleType& s, long long q, size_t i, size_t j) {
  size_t slot = s.partition.slot_of(q);
  return (i == j && i < slot) ? 1 : 0;
}

}  // namespace

long long MultiplicativePartition::product() const {
  long long p = 1;
  for (long long x : parts) p *= x;
  return p;
}

size_t MultiplicativePartition::slot_of(long long q) const {
  for (size_t s = 0; s < parts.size(); ++s)
    if (parts[s] % q == 0) return s;
  throw std::invalid_argument("prime " + std::to_string(q) + " does not divide the partition");
}

std::string MultiplicativePartition::to_string() const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < parts.size(); ++i) os << (i ? "," : "") << parts[i];
  os << ")";
  return os.str();
}

std::string AdmissibleType::pattern_string() const {
  std::ostringstream os;
  os << "(" << d << "," << dprime << "," << (eps_plus ? "+" : "-") << ")";
  return os.str();
}

std::string AdmissibleType::to_string() const { return partition.to_string() + " " + pattern_string(); }

std::string VanishingStatus::to_string() const {
  switch (value) {
    case Vanishing::Zero: return "Zero(" + reason + ")";
    case Vanishing::Nonvanishing: return "Nonvanishing";
    default: return "Undetermined";
  }
}

void require_odd_squarefree(long long N) {
  if (N < 1 || N % 2 == 0 || !is_squarefree(N))
    throw std::invalid_argument("N must be odd and squarefree, got " + std::to_string(N));
}

std::vector<MultiplicativePartition> enumerate_partitions(long long N, size_t n) {
  require_odd_squarefree(N);
  std::vector<long long> primes = prime_factors(N);
  size_t w = primes.size();
  long long total = ipow_ll(static_cast<long long>(n + 1), w);
  std::vector<MultiplicativePartition> out;
  out.reserve(total);
  for (long long code = 0; code < total; ++code) {
    MultiplicativePartition p;
    p.parts.assign(n + 1, 1);
    long long c = code;
    for (size_t k = w; k-- > 0;) {
      p.parts[c % (n + 1)] *= primes[k];
      c /= static_cast<long long>(n + 1);
    }
    out.push_back(p);
  }
  return out;
}

std::vector<AdmissibleType> enumerate_admissible(long long N, size_t n) {
  std::vector<AdmissibleType> out;
  for (const auto& p : enumerate_partitions(N, n))
    for (size_t d = 0; d <= n; ++d)
      for (size_t dp = 0; d + dp <= n; ++dp) {
        out.push_back({p, static_cast<int>(d), static_cast<int>(dp), true});
        if (dp > 0 && dp % 2 == 0) out.push_back({p, static_cast<int>(d), static_cast<int>(dp), false});
      }
  return out;
}

long long admissible_count(long long N, size_t n) {
  require_odd_squarefree(N);
  long long per = 0;
  for (size_t d = 0; d <= n; ++d)
    for (size_t dp = 0; d + dp <= n; ++dp) per += (dp > 0 && dp % 2 == 0) ? 2 : 1;
  return ipow_ll(static_cast<long long>(n + 1), prime_factors(N).size()) * per;
}

IntMatrix build_M_sigma(const AdmissibleType& sigma) {
  size_t n = sigma.degree();
  long long N = sigma.partition.product();
  require_odd_squarefree(N);
  std::vector<long long> primes = prime_factors(N);
  long long mod = 4 * N;
  IntMatrix M(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      // CRT: x = r4 mod 4, x = r_q mod q
      long long x = pattern_mod4(sigma, i, j), m = 4;
      for (long long q : primes) {
        long long r = pattern_mod_q(sigma, q, i, j);
        long long t = mod_ll((r - x) * inv_mod(m % q, q), q);
        x += m * t;
        m *= q;
      }
      M(i, j) = zz(mod_ll(x, mod));
    }
  return M;
}

bool satisfies_sigma_congruences(const IntMatrix& M, const AdmissibleType& sigma) {
  size_t n = sigma.degree();
  if (M.rows() != n || !M.is_square() || !M.is_symmetric()) return false;
  IntMatrix m4 = M.mod(Integer(4));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (m4(i, j) != zz(pattern_mod4(sigma, i, j))) return false;
  for (long long q : prime_factors(sigma.partition.product())) {
    IntMatrix mq = M.mod(zz(q));
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        if (mq(i, j) != zz(pattern_mod_q(sigma, q, i, j))) return false;
  }
  return true;
}

AdmissibleType classify_cusp(const IntMatrix& M, long long N) {
  require_odd_squarefree(N);
  if (!M.is_square() || !M.is_symmetric()) throw std::invalid_argument("classify_cusp: M must be symmetric");
  size_t n = M.rows();
  AdmissibleType t;
  t.partition.parts.assign(n + 1, 1);
  for (long long q : prime_factors(N)) t.partition.parts[rank_mod_p(M, q)] *= q;
  Jordan2Data j = jordan_mod4(M);
  t.d = j.d;
  t.dprime = j.dprime;
  t.eps_plus = j.eps_plus;
  return t;
}

VanishingStatus vanishing_status(const AdmissibleType& sigma, const DirichletCharacter& chi) {
  long long N = sigma.partition.product();
  if (chi.modulus() != 4 * N)
    throw std::invalid_argument("vanishing_status: character modulus " + std::to_string(chi.modulus()) +
                                " is not 4N = " + std::to_string(4 * N));
  VanishingStatus st;
  if (sigma.dprime > 0 && sigma.eps_plus) {
    st.value = Vanishing::Zero;
    st.reason = "plus-type";
    return st;
  }
  if (sigma.d == 0 && sigma.dprime == 0) {
    size_t n = sigma.degree();
    for (size_t s = 1; s < n; ++s)
      for (long long q : prime_factors(sigma.partition.parts[s]))
        if (!chi.component(q).square_is_trivial()) {
          st.value = Vanishing::Zero;
          st.reason = "character-condition";
          st.note = "chi_" + std::to_string(q) + "^2 nontrivial";
          return st;
        }
    st.value = Vanishing::Nonvanishing;
    st.note = "assumes the character condition is sufficient";
    return st;
  }
  st.note = sigma.eps_plus ? "d > 0 with d' = 0 is not settled" : "eps = - is not settled";
  return st;
}

}  // namespace siegel
