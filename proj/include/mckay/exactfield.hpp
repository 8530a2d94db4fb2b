#pragma once

// Exact arithmetic in Q and in cyclotomic fields Q(zeta_m), plus exact
// linear algebra over them.
//
// An element of Q(zeta_m) is stored in the power basis 1, z, ..., z^(phi(m)-1)
// of Q[x]/(Phi_m(x)).  This is a normal form, so equality and the zero test
// are exact coefficient comparisons.  Binary operations on elements of
// different conductors work in Q(zeta_lcm).

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "mckay/error.hpp"

namespace mckay {

using Rational = mpq_class;
using Integer = mpz_class;

int euler_phi(int m);

/// Integer coefficients of the m-th cyclotomic polynomial, constant term first.
const std::vector<Integer>& cyclotomic_polynomial(int m);

class Cyclo {
 public:
  Cyclo() : conductor_(1), coeffs_(1) {}
  Cyclo(long value) : conductor_(1), coeffs_{Rational(value)} {}  // NOLINT
  Cyclo(const Rational& value) : conductor_(1), coeffs_{value} {}  // NOLINT
  Cyclo(int conductor, std::vector<Rational> coeffs);

  /// zeta_m^k, reduced.  Negative k allowed.
  static Cyclo zeta(int m, long k = 1);
  static Cyclo zero(int m);
  static Cyclo one(int m);

  int conductor() const noexcept { return conductor_; }
  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }

  bool is_zero() const noexcept;
  bool is_one() const noexcept;
  bool is_rational() const noexcept;
  /// Throws NotDivisible when the element is not rational.
  Rational rational_value() const;

  /// Same element written over Q(zeta_m2); requires conductor() | m2.
  Cyclo embed(int m2) const;
  /// The same element over Q(zeta_m) when it lies in that subfield.
  std::optional<Cyclo> restrict_to(int m) const;
  /// Smallest conductor dividing conductor() over which the element lives.
  Cyclo minimized() const;

  /// Galois automorphism zeta -> zeta^t, gcd(t, m) = 1.
  Cyclo galois(long t) const;
  Cyclo conj() const { return galois(static_cast<long>(conductor_) - 1); }
  Cyclo inverse() const;

  Cyclo operator-() const;
  Cyclo& operator+=(const Cyclo& other);
  Cyclo& operator-=(const Cyclo& other);
  Cyclo& operator*=(const Cyclo& other);
  Cyclo& operator/=(const Cyclo& other);

  friend Cyclo operator+(Cyclo a, const Cyclo& b) { return a += b; }
  friend Cyclo operator-(Cyclo a, const Cyclo& b) { return a -= b; }
  friend Cyclo operator*(const Cyclo& a, const Cyclo& b);
  friend Cyclo operator/(Cyclo a, const Cyclo& b) { return a /= b; }
  friend bool operator==(const Cyclo& a, const Cyclo& b);
  friend bool operator!=(const Cyclo& a, const Cyclo& b) { return !(a == b); }

  /// Sum of coefficient bit lengths; drives pivot choice in elimination.
  std::size_t description_size() const;

  /// Text form "q*z^k + ..." with increasing k; "0" for zero.
  std::string to_string() const;
  /// Parses the text form.  Exponents are reduced modulo m; plain rationals,
  /// "z", and binary minus are accepted.
  static Cyclo parse(std::string_view text, int conductor);

 private:
  int conductor_;
  std::vector<Rational> coeffs_;
};

enum class ArithOp { add, sub, mul, div };
Cyclo field_arith(const Cyclo& a, const Cyclo& b, ArithOp op);

using CycloVector = std::vector<Cyclo>;

class CycloMatrix {
 public:
  CycloMatrix() = default;
  CycloMatrix(std::size_t rows, std::size_t cols, int conductor = 1);
  CycloMatrix(std::size_t rows, std::size_t cols, std::vector<Cyclo> entries);

  static CycloMatrix identity(std::size_t n, int conductor = 1);
  static CycloMatrix from_integers(std::size_t rows, std::size_t cols,
                                   const std::vector<long>& values);
  static CycloMatrix column(const CycloVector& v);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  int conductor() const noexcept { return conductor_; }
  const std::vector<Cyclo>& entries() const noexcept { return entries_; }

  const Cyclo& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }
  void set(std::size_t r, std::size_t c, const Cyclo& value);
  void add_to(std::size_t r, std::size_t c, const Cyclo& value);

  CycloMatrix embed(int m2) const;
  CycloMatrix transpose() const;
  CycloVector column_vector(std::size_t c) const;
  /// Row-major flattening.
  CycloVector flatten() const { return entries_; }

  bool is_zero() const;
  bool is_identity() const;
  bool is_scalar() const;
  Cyclo trace() const;

  CycloMatrix operator-() const;
  friend CycloMatrix operator+(const CycloMatrix& a, const CycloMatrix& b);
  friend CycloMatrix operator-(const CycloMatrix& a, const CycloMatrix& b);
  friend CycloMatrix operator*(const CycloMatrix& a, const CycloMatrix& b);
  friend CycloMatrix operator*(const Cyclo& s, const CycloMatrix& a);
  friend bool operator==(const CycloMatrix& a, const CycloMatrix& b);
  friend bool operator!=(const CycloMatrix& a, const CycloMatrix& b) { return !(a == b); }

  /// Entries serialized row-major; identical only for identical matrices of
  /// the same conductor.
  std::string canonical_key() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  int conductor_ = 1;
  std::vector<Cyclo> entries_;
};

CycloMatrix kron(const CycloMatrix& a, const CycloMatrix& b);
CycloMatrix hstack(const std::vector<CycloMatrix>& blocks);
CycloMatrix vstack(const std::vector<CycloMatrix>& blocks);

struct EchelonForm {
  CycloMatrix reduced;               // reduced row echelon form
  std::vector<std::size_t> pivots;   // pivot column of each nonzero row
  bool odd_permutation = false;      // parity of row swaps used
};

EchelonForm rref(const CycloMatrix& m);
std::size_t rank(const CycloMatrix& m);
Cyclo det(const CycloMatrix& m);
/// Basis of the right null space {x : m x = 0}, in reduced echelon form.
std::vector<CycloVector> kernel_basis(const CycloMatrix& m);
/// A particular solution x of a x = b (b may have several columns).
std::optional<CycloMatrix> solve(const CycloMatrix& a, const CycloMatrix& b);
CycloMatrix inverse(const CycloMatrix& m);

/// Square root of a rational element, written in a cyclotomic field through
/// Gauss sums; nullopt for irrational input.
std::optional<Cyclo> rational_square_root(const Cyclo& value);
/// Reduced echelon basis of the row span of the given vectors.
std::vector<CycloVector> echelon_basis(const std::vector<CycloVector>& vectors);

using SparseVector = std::vector<std::pair<std::size_t, Cyclo>>;

/// Incremental row reduction over sparse rows; rank of large sparse
/// systems without materializing dense matrices.
class SparseEchelon {
 public:
  /// Reduces v against the stored rows; stores it when independent.
  /// Returns true when v was independent.
  bool insert(const SparseVector& v);
  /// True when v lies in the span of the stored rows.
  bool contains(const SparseVector& v) const;
  std::size_t rank() const noexcept { return pivot_rows_.size(); }

 private:
  // Leading column of the reduced remainder, or nullopt when v reduces to 0.
  std::optional<std::size_t> reduce(const SparseVector& v, SparseVector* remainder) const;
  std::map<std::size_t, SparseVector> pivot_rows_;  // leading entry normalized to 1
};

}  // namespace mckay
