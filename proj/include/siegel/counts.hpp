#pragma once

#include <cstdint>

#include "siegel/ring.hpp"

namespace siegel {

// Local character component at q entering sym_q^chi.  Components whose
// square is nontrivial give sym = 0 and are represented by Other.
enum class CharKind { Trivial, Quadratic, Other };

// chi'_q = chi_q * (./q)
CharKind twist_by_legendre(CharKind k);
const char* to_string(CharKind k);

Integer mu(long long q, long long b, long long c);
Integer delta(long long q, long long b, long long c);
// number of c-dimensional subspaces of F_q^b; 0 for b < c or negative arguments
Integer beta(long long q, long long b, long long c);

CycNumber sym_closed(long long q, CharKind chi, long long b, long long c);
// exhaustive sum over the bordered symmetric matrices; throws when the
// number of terms exceeds budget
CycNumber sym_bruteforce(long long q, CharKind chi, long long b, long long c, uint64_t budget = 100000000);
inline CycNumber sym(long long q, CharKind chi, long long b) { return sym_closed(q, chi, b, 0); }
CycNumber sym_psi(long long p, long long l);

}  // namespace siegel
