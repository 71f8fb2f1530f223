// Exact scalars (Q and F_p) and dense/sparse exact linear algebra.
#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace jtower {

class Scalar;

/// Ground field: the rationals or a prime field F_p.
class Field {
 public:
  enum class Kind { rational, prime };

  static Field rational() { return Field(0); }
  /// Throws std::invalid_argument unless p is prime.
  static Field prime(std::uint64_t p);

  Kind kind() const { return modulus_ == 0 ? Kind::rational : Kind::prime; }
  std::uint64_t modulus() const { return modulus_; }
  std::uint64_t characteristic() const { return modulus_; }

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(long long n) const;
  Scalar from_ratio(long long num, long long den) const;
  /// Parses "p/q", "p" (optionally signed). Prime-field inputs are reduced.
  Scalar parse(std::string_view text) const;

  std::string describe() const;

  bool operator==(const Field&) const = default;

 private:
  explicit Field(std::uint64_t p) : modulus_(p) {}
  std::uint64_t modulus_;
};

/// Exact field element. Rationals are kept in lowest terms with positive
/// denominator; prime-field elements as least non-negative residues.
///
/// A scalar built without a modulus behaves as a rational; combining it with a
/// prime-field scalar reinterprets it in that field.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long long n, std::uint64_t modulus = 0);
  Scalar(const mpq_class& v, std::uint64_t modulus);

  std::uint64_t modulus() const { return modulus_; }
  bool is_zero() const { return modulus_ ? r_ == 0 : sgn(q_) == 0; }
  bool is_one() const { return modulus_ ? r_ == 1 : q_ == 1; }
  /// Rational value (the residue itself for prime fields).
  mpq_class value() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  Scalar operator-() const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// Throws std::domain_error on zero.
  Scalar inverse() const;

  /// "p/q" (q omitted when 1) for rationals, the residue for F_p.
  std::string to_string() const;

  /// this -= a * b and this += a * b.
  void submul(const Scalar& a, const Scalar& b);
  void addmul(const Scalar& a, const Scalar& b);

 private:
  void promote(std::uint64_t modulus);
  std::uint64_t residue_in(std::uint64_t modulus) const;

  mpq_class q_{0};
  std::uint64_t r_ = 0;
  std::uint64_t modulus_ = 0;
};

using Vec = std::vector<Scalar>;

Vec zero_vector(const Field& f, std::size_t n);
Vec unit_vector(const Field& f, std::size_t n, std::size_t i);
bool is_zero(const Vec& v);
Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator*(const Scalar& s, const Vec& v);
/// y += s * x
void axpy(Vec& y, const Scalar& s, const Vec& x);
Scalar dot(const Vec& a, const Vec& b);
std::vector<std::string> to_strings(const Vec& v);

/// Dense row-major matrix over a Field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(Field f, std::size_t rows, std::size_t cols);

  static Matrix identity(const Field& f, std::size_t n);
  static Matrix from_rows(const Field& f, std::size_t cols, const std::vector<Vec>& rows);
  static Matrix from_columns(const Field& f, std::size_t rows, const std::vector<Vec>& cols);

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vec row(std::size_t r) const;
  Vec column(std::size_t c) const;
  void set_column(std::size_t c, const Vec& v);
  void set_row(std::size_t r, const Vec& v);

  /// Matrix-vector product; v.size() must equal cols().
  Vec apply(const Vec& v) const;
  Matrix transpose() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Scalar& s, const Matrix& m);
  friend bool operator==(const Matrix& a, const Matrix& b);
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  bool is_zero() const;
  std::vector<std::vector<std::string>> to_strings() const;

 private:
  Field field_ = Field::rational();
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

using LinMap = Matrix;

/// Reduced row-echelon form with pivot columns, pivoting on the first
/// nonzero entry in row-major scan order.
struct Echelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;
};

Echelon rref(Matrix m);
std::size_t rank(const Matrix& m);
/// Canonical kernel basis read off the reduced form (one vector per free column).
std::vector<Vec> kernel(const Matrix& m);

struct Solution {
  Vec particular;
  std::vector<Vec> kernel;
};

/// Solves a x = b. Returns std::nullopt when inconsistent; throws
/// std::invalid_argument on dimension mismatch.
std::optional<Solution> solve(const Matrix& a, const Vec& b);
/// Particular solution X of a X = b (free variables set to zero).
std::optional<Matrix> solve_columns(const Matrix& a, const Matrix& b);
/// std::nullopt when singular; throws on non-square input.
std::optional<Matrix> invert(const Matrix& a);

/// Sparse semi-echelon basis of a growing subspace of k^n. Each stored row
/// has its highest-index nonzero entry normalized to 1 (its pivot), so
/// reduce() leaves coordinates only on non-pivot columns.
class SparseEchelon {
 public:
  using Entries = std::map<std::uint32_t, Scalar>;

  SparseEchelon(Field f, std::size_t n);

  /// Adds v to the span; returns true if the rank grew.
  bool insert(Entries v);
  /// Fully reduces v modulo the span.
  Entries reduce(Entries v) const;
  /// Back-substitutes so every stored row is supported on its pivot and
  /// non-pivot columns only; reduce() is then a single pass.
  void finalize();
  /// Stored row whose pivot is column c (requires is_pivot(c)).
  const std::vector<std::pair<std::uint32_t, Scalar>>& pivot_row(std::size_t c) const {
    return rows_[static_cast<std::size_t>(pivot_row_[c])];
  }

  std::size_t ambient_dim() const { return pivot_row_.size(); }
  std::size_t rank() const { return rows_.size(); }
  bool is_pivot(std::size_t c) const { return pivot_row_[c] >= 0; }

 private:
  void eliminate(Entries& v, bool stop_at_free) const;

  Field field_;
  std::vector<std::vector<std::pair<std::uint32_t, Scalar>>> rows_;
  std::vector<std::int64_t> pivot_row_;
};

}  // namespace jtower
