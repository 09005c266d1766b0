#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

#include "siegel/ring.hpp"

namespace siegel {

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(size_t rows, size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);

  static IntMatrix identity(size_t n);
  static IntMatrix zero(size_t rows, size_t cols) { return IntMatrix(rows, cols); }
  static IntMatrix diagonal(const std::vector<Integer>& d);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool is_symmetric() const;
  bool is_diagonal() const;
  bool is_zero() const;

  Integer& operator()(size_t i, size_t j) { return a_[i * cols_ + j]; }
  const Integer& operator()(size_t i, size_t j) const { return a_[i * cols_ + j]; }

  IntMatrix transpose() const;
  IntMatrix block(size_t r0, size_t c0, size_t nr, size_t nc) const;
  void set_block(size_t r0, size_t c0, const IntMatrix& b);
  IntMatrix hcat(const IntMatrix& b) const;
  IntMatrix mod(const Integer& m) const;  // entries in [0, m)

  Integer det() const;  // fraction-free Bareiss

  IntMatrix operator+(const IntMatrix& b) const;
  IntMatrix operator-(const IntMatrix& b) const;
  IntMatrix operator*(const IntMatrix& b) const;
  IntMatrix operator*(const Integer& s) const;
  bool operator==(const IntMatrix& b) const;
  bool operator!=(const IntMatrix& b) const { return !(*this == b); }

  std::vector<std::vector<std::string>> to_strings() const;
  std::string to_string() const;

 private:
  size_t rows_ = 0, cols_ = 0;
  std::vector<Integer> a_;
};

// Matrices with rational entries (diagonal pairs, X-matrix products).
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(size_t rows, size_t cols);
  explicit RatMatrix(const IntMatrix& m);
  static RatMatrix diagonal(const std::vector<Rational>& d);
  static RatMatrix identity(size_t n);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  Rational& operator()(size_t i, size_t j) { return a_[i * cols_ + j]; }
  const Rational& operator()(size_t i, size_t j) const { return a_[i * cols_ + j]; }

  RatMatrix operator*(const RatMatrix& b) const;
  RatMatrix operator*(const Rational& s) const;
  RatMatrix transpose() const;
  bool is_integral() const;
  bool is_diagonal() const;
  IntMatrix to_int() const;  // throws unless integral
  RatMatrix inverse() const;  // throws if singular

 private:
  size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> a_;
};

int rank_mod_p(const IntMatrix& m, long long p);

struct SmithForm {
  IntMatrix U, S, V, V_inv;  // U*M*V = S
};
SmithForm smith_normal_form(const IntMatrix& m);
std::vector<Integer> invariant_factors(const IntMatrix& m);  // diagonal of S

// true iff x is in the row lattice Z^{1,n} D (D nonsingular)
bool in_row_lattice(const std::vector<Integer>& x, const IntMatrix& D);

// Representatives of Z^{1,n}/Z^{1,n}D.  The callback variant avoids
// materialising the list.
void for_each_coset_rep(const IntMatrix& D, const std::function<void(const std::vector<Integer>&)>& f,
                        uint64_t budget = 100000);
std::vector<std::vector<Integer>> coset_reps(const IntMatrix& D, uint64_t budget = 100000);

bool is_coprime_symmetric(const IntMatrix& C, const IntMatrix& D);

struct Jordan2Data {
  int d = 0;
  int dprime = 0;
  bool eps_plus = true;
  bool operator==(const Jordan2Data& o) const = default;
};
Jordan2Data jordan_mod4(const IntMatrix& M);

struct SymDiagonalization {
  IntMatrix G;               // entries mod q
  std::vector<long long> diag;  // G*A*tG mod q
};
SymDiagonalization diagonalize_sym_mod_q(const IntMatrix& A, long long q);

bool is_unimodular(const IntMatrix& m);
IntMatrix inverse_unimodular(const IntMatrix& m);

}  // namespace siegel
