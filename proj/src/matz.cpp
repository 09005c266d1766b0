#include "siegel/matz.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace siegel {

IntMatrix::IntMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, Integer(0)) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("IntMatrix: ragged initializer");
    for (long long v : r) a_.emplace_back(static_cast<long>(v));
  }
}

IntMatrix IntMatrix::identity(size_t n) {
  IntMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::diagonal(const std::vector<Integer>& d) {
  IntMatrix m(d.size(), d.size());
  for (size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

bool IntMatrix::is_symmetric() const {
  if (!is_square()) return false;
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

bool IntMatrix::is_diagonal() const {
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j)
      if (i != j && (*this)(i, j) != 0) return false;
  return true;
}

bool IntMatrix::is_zero() const {
  for (const auto& x : a_)
    if (x != 0) return false;
  return true;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::block(size_t r0, size_t c0, size_t nr, size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("IntMatrix::block");
  IntMatrix b(nr, nc);
  for (size_t i = 0; i < nr; ++i)
    for (size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

void IntMatrix::set_block(size_t r0, size_t c0, const IntMatrix& b) {
  if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) throw std::out_of_range("IntMatrix::set_block");
  for (size_t i = 0; i < b.rows(); ++i)
    for (size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

IntMatrix IntMatrix::hcat(const IntMatrix& b) const {
  if (rows_ != b.rows_) throw std::invalid_argument("hcat: row mismatch");
  IntMatrix r(rows_, cols_ + b.cols_);
  r.set_block(0, 0, *this);
  r.set_block(0, cols_, b);
  return r;
}

IntMatrix IntMatrix::mod(const Integer& m) const {
  IntMatrix r(rows_, cols_);
  for (size_t k = 0; k < a_.size(); ++k) mpz_fdiv_r(r.a_[k].get_mpz_t(), a_[k].get_mpz_t(), m.get_mpz_t());
  return r;
}

Integer IntMatrix::det() const {
  if (!is_square()) throw std::invalid_argument("det: matrix not square");
  size_t n = rows_;
  if (n == 0) return 1;
  IntMatrix a = *this;
  Integer prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) {
        Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

IntMatrix IntMatrix::operator+(const IntMatrix& b) const {
  if (rows_ != b.rows_ || cols_ != b.cols_) throw std::invalid_argument("matrix add: shape mismatch");
  IntMatrix r = *this;
  for (size_t k = 0; k < a_.size(); ++k) r.a_[k] += b.a_[k];
  return r;
}

IntMatrix IntMatrix::operator-(const IntMatrix& b) const {
  if (rows_ != b.rows_ || cols_ != b.cols_) throw std::invalid_argument("matrix sub: shape mismatch");
  IntMatrix r = *this;
  for (size_t k = 0; k < a_.size(); ++k) r.a_[k] -= b.a_[k];
  return r;
}

IntMatrix IntMatrix::operator*(const IntMatrix& b) const {
  if (cols_ != b.rows_) throw std::invalid_argument("matrix mul: shape mismatch");
  IntMatrix r(rows_, b.cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t k = 0; k < cols_; ++k) {
      const Integer& x = (*this)(i, k);
      if (x == 0) continue;
      for (size_t j = 0; j < b.cols_; ++j) r(i, j) += x * b(k, j);
    }
  return r;
}

IntMatrix IntMatrix::operator*(const Integer& s) const {
  IntMatrix r = *this;
  for (auto& x : r.a_) x *= s;
  return r;
}

bool IntMatrix::operator==(const IntMatrix& b) const {
  return rows_ == b.rows_ && cols_ == b.cols_ && a_ == b.a_;
}

std::vector<std::vector<std::string>> IntMatrix::to_strings() const {
  std::vector<std::vector<std::string>> out(rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) out[i].push_back((*this)(i, j).get_str());
  return out;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < rows_; ++i) {
    os << (i ? ",[" : "[");
    for (size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j).get_str();
    os << "]";
  }
  os << "]";
  return os.str();
}

// ---------------------------------------------------------------------------

RatMatrix::RatMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, Rational(0)) {}

RatMatrix::RatMatrix(const IntMatrix& m) : RatMatrix(m.rows(), m.cols()) {
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) (*this)(i, j) = Rational(m(i, j));
}

RatMatrix RatMatrix::diagonal(const std::vector<Rational>& d) {
  RatMatrix m(d.size(), d.size());
  for (size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

RatMatrix RatMatrix::identity(size_t n) {
  RatMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatMatrix RatMatrix::operator*(const RatMatrix& b) const {
  if (cols_ != b.rows_) throw std::invalid_argument("RatMatrix mul: shape mismatch");
  RatMatrix r(rows_, b.cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t k = 0; k < cols_; ++k) {
      const Rational& x = (*this)(i, k);
      if (sgn(x) == 0) continue;
      for (size_t j = 0; j < b.cols_; ++j) r(i, j) += x * b(k, j);
    }
  return r;
}

RatMatrix RatMatrix::operator*(const Rational& s) const {
  RatMatrix r = *this;
  for (auto& x : r.a_) x *= s;
  return r;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool RatMatrix::is_integral() const {
  for (const auto& x : a_)
    if (x.get_den() != 1) return false;
  return true;
}

bool RatMatrix::is_diagonal() const {
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j)
      if (i != j && sgn((*this)(i, j)) != 0) return false;
  return true;
}

IntMatrix RatMatrix::to_int() const {
  if (!is_integral()) throw std::domain_error("RatMatrix::to_int: non-integral entry");
  IntMatrix m(rows_, cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).get_num();
  return m;
}

RatMatrix RatMatrix::inverse() const {
  if (rows_ != cols_) throw std::invalid_argument("inverse: matrix not square");
  size_t n = rows_;
  RatMatrix a = *this, inv = identity(n);
  for (size_t k = 0; k < n; ++k) {
    size_t p = k;
    while (p < n && sgn(a(p, k)) == 0) ++p;
    if (p == n) throw std::domain_error("inverse: singular matrix");
    if (p != k)
      for (size_t j = 0; j < n; ++j) {
        std::swap(a(k, j), a(p, j));
        std::swap(inv(k, j), inv(p, j));
      }
    Rational piv = a(k, k);
    for (size_t j = 0; j < n; ++j) {
      a(k, j) /= piv;
      inv(k, j) /= piv;
    }
    for (size_t i = 0; i < n; ++i) {
      if (i == k || sgn(a(i, k)) == 0) continue;
      Rational f = a(i, k);
      for (size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

// ---------------------------------------------------------------------------

int rank_mod_p(const IntMatrix& m, long long p) {
  if (!is_prime(p)) throw std::invalid_argument("rank_mod_p: p must be prime");
  size_t R = m.rows(), C = m.cols();
  std::vector<std::vector<long long>> a(R, std::vector<long long>(C));
  for (size_t i = 0; i < R; ++i)
    for (size_t j = 0; j < C; ++j) {
      Integer r;
      mpz_fdiv_r_ui(r.get_mpz_t(), m(i, j).get_mpz_t(), static_cast<unsigned long>(p));
      a[i][j] = r.get_si();
    }
  int rank = 0;
  for (size_t c = 0; c < C && static_cast<size_t>(rank) < R; ++c) {
    size_t piv = rank;
    while (piv < R && a[piv][c] == 0) ++piv;
    if (piv == R) continue;
    std::swap(a[piv], a[rank]);
    long long inv = inv_mod(a[rank][c], p);
    for (size_t i = 0; i < R; ++i) {
      if (i == static_cast<size_t>(rank) || a[i][c] == 0) continue;
      long long f = a[i][c] * inv % p;
      for (size_t j = c; j < C; ++j) a[i][j] = mod_ll(a[i][j] - f * a[rank][j], p);
    }
    ++rank;
  }
  return rank;
}

SmithForm smith_normal_form(const IntMatrix& m) {
  size_t R = m.rows(), C = m.cols();
  IntMatrix A = m, U = IntMatrix::identity(R), V = IntMatrix::identity(C), Vi = IntMatrix::identity(C);
  auto swap_rows = [&](size_t i, size_t j) {
    for (size_t c = 0; c < C; ++c) std::swap(A(i, c), A(j, c));
    for (size_t c = 0; c < R; ++c) std::swap(U(i, c), U(j, c));
  };
  auto swap_cols = [&](size_t i, size_t j) {
    for (size_t r = 0; r < R; ++r) std::swap(A(r, i), A(r, j));
    for (size_t r = 0; r < C; ++r) std::swap(V(r, i), V(r, j));
    for (size_t c = 0; c < C; ++c) std::swap(Vi(i, c), Vi(j, c));
  };
  // row_i += f * row_j
  auto add_row = [&](size_t i, size_t j, const Integer& f) {
    for (size_t c = 0; c < C; ++c) A(i, c) += f * A(j, c);
    for (size_t c = 0; c < R; ++c) U(i, c) += f * U(j, c);
  };
  // col_i += f * col_j; inverse gets row_j -= f * row_i
  auto add_col = [&](size_t i, size_t j, const Integer& f) {
    for (size_t r = 0; r < R; ++r) A(r, i) += f * A(r, j);
    for (size_t r = 0; r < C; ++r) V(r, i) += f * V(r, j);
    for (size_t c = 0; c < C; ++c) Vi(j, c) -= f * Vi(i, c);
  };

  size_t t_max = std::min(R, C);
  for (size_t t = 0; t < t_max; ++t) {
    for (;;) {
      // smallest nonzero entry of the trailing block
      bool found = false;
      size_t bi = t, bj = t;
      Integer best;
      for (size_t i = t; i < R; ++i)
        for (size_t j = t; j < C; ++j) {
          if (A(i, j) == 0) continue;
          Integer v = abs(A(i, j));
          if (!found || v < best) {
            best = v;
            bi = i;
            bj = j;
            found = true;
          }
        }
      if (!found) {
        t = t_max;
        break;
      }
      if (bi != t) swap_rows(bi, t);
      if (bj != t) swap_cols(bj, t);
      bool clean = true;
      for (size_t i = t + 1; i < R; ++i) {
        if (A(i, t) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), A(i, t).get_mpz_t(), A(t, t).get_mpz_t());
        add_row(i, t, -q);
        if (A(i, t) != 0) clean = false;
      }
      for (size_t j = t + 1; j < C; ++j) {
        if (A(t, j) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), A(t, j).get_mpz_t(), A(t, t).get_mpz_t());
        add_col(j, t, -q);
        if (A(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      bool divides = true;
      for (size_t i = t + 1; i < R && divides; ++i)
        for (size_t j = t + 1; j < C; ++j)
          if (!mpz_divisible_p(A(i, j).get_mpz_t(), A(t, t).get_mpz_t())) {
            add_row(t, i, Integer(1));
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (t < t_max && A(t, t) < 0) {
      for (size_t c = 0; c < C; ++c) A(t, c) = -A(t, c);
      for (size_t c = 0; c < R; ++c) U(t, c) = -U(t, c);
    }
  }
  return SmithForm{U, A, V, Vi};
}

std::vector<Integer> invariant_factors(const IntMatrix& m) {
  SmithForm sf = smith_normal_form(m);
  std::vector<Integer> out;
  for (size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) out.push_back(sf.S(i, i));
  return out;
}

bool in_row_lattice(const std::vector<Integer>& x, const IntMatrix& D) {
  if (x.size() != D.rows()) throw std::invalid_argument("in_row_lattice: size mismatch");
  RatMatrix row(1, x.size());
  for (size_t i = 0; i < x.size(); ++i) row(0, i) = Rational(x[i]);
  RatMatrix y = row * RatMatrix(D).inverse();
  return y.is_integral();
}

void for_each_coset_rep(const IntMatrix& D, const std::function<void(const std::vector<Integer>&)>& f,
                        uint64_t budget) {
  if (!D.is_square()) throw std::invalid_argument("coset_reps: D must be square");
  Integer det = D.det();
  if (det == 0) throw std::invalid_argument("singular D");
  if (abs(det) > Integer(static_cast<unsigned long>(budget)))
    throw std::length_error("coset_reps: |det D| = " + Integer(abs(det)).get_str() + " exceeds budget");
  size_t n = D.rows();
  SmithForm sf = smith_normal_form(D);
  std::vector<long long> s(n);
  for (size_t i = 0; i < n; ++i) s[i] = sf.S(i, i).get_si();
  std::vector<long long> v(n, 0);
  std::vector<Integer> x(n);
  for (;;) {
    for (size_t j = 0; j < n; ++j) {
      x[j] = 0;
      for (size_t i = 0; i < n; ++i)
        if (v[i] != 0) x[j] += sf.V_inv(i, j) * zz(v[i]);
    }
    f(x);
    size_t k = 0;
    while (k < n) {
      if (++v[k] < s[k]) break;
      v[k] = 0;
      ++k;
    }
    if (k == n) break;
  }
}

std::vector<std::vector<Integer>> coset_reps(const IntMatrix& D, uint64_t budget) {
  std::vector<std::vector<Integer>> out;
  for_each_coset_rep(D, [&](const std::vector<Integer>& x) { out.push_back(x); }, budget);
  return out;
}

bool is_coprime_symmetric(const IntMatrix& C, const IntMatrix& D) {
  if (!C.is_square() || !D.is_square() || C.rows() != D.rows())
    throw std::invalid_argument("is_coprime_symmetric: C and D must be square of equal size");
  if (C * D.transpose() != D * C.transpose()) return false;
  for (const auto& s : invariant_factors(C.hcat(D)))
    if (s != 1) return false;
  return true;
}

// ---------------------------------------------------------------------------

Jordan2Data jordan_mod4(const IntMatrix& M) {
  if (!M.is_symmetric()) throw std::invalid_argument("jordan_mod4: matrix must be symmetric");
  const long long P = 8;
  size_t n = M.rows();
  std::vector<std::vector<long long>> a(n, std::vector<long long>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      Integer r;
      mpz_fdiv_r_ui(r.get_mpz_t(), M(i, j).get_mpz_t(), P);
      a[i][j] = r.get_si();
    }
  std::vector<bool> used(n, false);
  // congruence: row_i -= c*row_k and col_i -= c*col_k
  auto sub = [&](size_t i, size_t k, long long c) {
    c = mod_ll(c, P);
    if (c == 0) return;
    for (size_t j = 0; j < n; ++j) a[i][j] = mod_ll(a[i][j] - c * a[k][j], P);
    for (size_t j = 0; j < n; ++j) a[j][i] = mod_ll(a[j][i] - c * a[j][k], P);
  };
  Jordan2Data out;
  for (;;) {
    size_t piv = n;
    for (size_t i = 0; i < n; ++i)
      if (!used[i] && a[i][i] % 2 == 1) {
        piv = i;
        break;
      }
    if (piv < n) {
      used[piv] = true;
      long long inv = inv_mod(a[piv][piv], P);
      for (size_t i = 0; i < n; ++i)
        if (!used[i]) sub(i, piv, a[i][piv] * inv);
      ++out.d;
      continue;
    }
    size_t pi = n, pj = n;
    for (size_t i = 0; i < n && pi == n; ++i)
      for (size_t j = i + 1; j < n; ++j)
        if (!used[i] && !used[j] && a[i][j] % 2 == 1) {
          pi = i;
          pj = j;
          break;
        }
    if (pi == n) break;
    used[pi] = used[pj] = true;
    // 2x2 block [[x,y],[y,z]] with odd determinant; eliminate the rest against it
    long long x = a[pi][pi], y = a[pi][pj], z = a[pj][pj];
    long long dinv = inv_mod(mod_ll(x * z - y * y, P), P);
    for (size_t i = 0; i < n; ++i) {
      if (used[i]) continue;
      long long u = a[i][pi], w = a[i][pj];
      // (c1, c2) = (u, w) * [[x,y],[y,z]]^{-1}
      long long c1 = mod_ll((u * z - w * y) % P * dinv, P);
      long long c2 = mod_ll((w * x - u * y) % P * dinv, P);
      sub(i, pi, c1);
      sub(i, pj, c2);
    }
    out.d += 2;
  }
  // remaining block is even; halve it and look at it mod 2
  std::vector<size_t> rest;
  for (size_t i = 0; i < n; ++i)
    if (!used[i]) rest.push_back(i);
  IntMatrix half(rest.size(), rest.size());
  bool odd_diag = false;
  for (size_t i = 0; i < rest.size(); ++i)
    for (size_t j = 0; j < rest.size(); ++j) {
      long long v = a[rest[i]][rest[j]];
      if (v % 2 != 0) throw std::logic_error("jordan_mod4: residual block not even");
      half(i, j) = zz((v / 2) % 2);
      if (i == j && (v / 2) % 2 == 1) odd_diag = true;
    }
  out.dprime = rest.empty() ? 0 : rank_mod_p(half, 2);
  out.eps_plus = out.dprime == 0 || odd_diag;
  return out;
}

SymDiagonalization diagonalize_sym_mod_q(const IntMatrix& A, long long q) {
  if (!A.is_symmetric()) throw std::invalid_argument("diagonalize_sym_mod_q: matrix must be symmetric");
  if (q % 2 == 0 || !is_prime(q)) throw std::invalid_argument("diagonalize_sym_mod_q: q must be an odd prime");
  size_t n = A.rows();
  std::vector<std::vector<long long>> a(n, std::vector<long long>(n)), g(n, std::vector<long long>(n, 0));
  for (size_t i = 0; i < n; ++i) {
    g[i][i] = 1;
    for (size_t j = 0; j < n; ++j) {
      Integer r;
      mpz_fdiv_r_ui(r.get_mpz_t(), A(i, j).get_mpz_t(), static_cast<unsigned long>(q));
      a[i][j] = r.get_si();
    }
  }
  auto swap_idx = [&](size_t i, size_t j) {
    std::swap(a[i], a[j]);
    for (size_t k = 0; k < n; ++k) std::swap(a[k][i], a[k][j]);
    std::swap(g[i], g[j]);
  };
  // row_i += c*row_j, col_i += c*col_j
  auto add = [&](size_t i, size_t j, long long c) {
    c = mod_ll(c, q);
    if (c == 0) return;
    for (size_t k = 0; k < n; ++k) a[i][k] = (a[i][k] + c * a[j][k]) % q;
    for (size_t k = 0; k < n; ++k) a[k][i] = (a[k][i] + c * a[k][j]) % q;
    for (size_t k = 0; k < n; ++k) g[i][k] = (g[i][k] + c * g[j][k]) % q;
  };
  for (size_t k = 0; k < n; ++k) {
    if (a[k][k] == 0) {
      size_t p = k + 1;
      while (p < n && a[p][p] == 0) ++p;
      if (p < n) {
        swap_idx(k, p);
      } else {
        size_t pi = n, pj = n;
        for (size_t i = k; i < n && pi == n; ++i)
          for (size_t j = i + 1; j < n; ++j)
            if (a[i][j] != 0) {
              pi = i;
              pj = j;
              break;
            }
        if (pi == n) break;
        add(pi, pj, 1);  // new diagonal entry 2*a_ij != 0
        if (pi != k) swap_idx(pi, k);
      }
    }
    long long inv = inv_mod(a[k][k], q);
    for (size_t i = k + 1; i < n; ++i)
      if (a[i][k] != 0) add(i, k, -a[i][k] * inv % q);
  }
  SymDiagonalization out;
  out.G = IntMatrix(n, n);
  for (size_t i = 0; i < n; ++i) {
    out.diag.push_back(a[i][i]);
    for (size_t j = 0; j < n; ++j) out.G(i, j) = static_cast<long>(g[i][j]);
  }
  return out;
}

bool is_unimodular(const IntMatrix& m) { return m.is_square() && abs(m.det()) == 1; }

IntMatrix inverse_unimodular(const IntMatrix& m) {
  if (!is_unimodular(m)) throw std::invalid_argument("inverse_unimodular: matrix not unimodular");
  return RatMatrix(m).inverse().to_int();
}

}  // namespace siegel
