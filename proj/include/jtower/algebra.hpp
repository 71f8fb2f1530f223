// Finite-dimensional associative algebras given by structure constants,
// subspaces with canonical bases, and the constructions built on them.
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jtower/exact_linear.hpp"

namespace jtower {

struct StructureConstant {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;
  Scalar c;
};

/// e_i e_j = sum_k c[i][j][k] e_k, stored sparsely per (i, j).
class Algebra {
 public:
  using Terms = std::vector<std::pair<std::uint32_t, Scalar>>;

  Algebra() = default;
  Algebra(Field f, std::size_t dim, Vec unit, const std::vector<StructureConstant>& constants);

  /// Builds the table from a callback returning e_i e_j in coordinates.
  static Algebra from_products(Field f, std::size_t dim, Vec unit,
                               const std::function<Vec(std::size_t, std::size_t)>& product);

  const Field& field() const { return field_; }
  std::size_t dim() const { return dim_; }
  const Vec& unit() const { return unit_; }
  Vec zero() const { return zero_vector(field_, dim_); }
  Vec basis(std::size_t i) const { return unit_vector(field_, dim_, i); }

  const Terms& terms(std::size_t i, std::size_t j) const { return table_[i * dim_ + j]; }
  Vec basis_product(std::size_t i, std::size_t j) const;
  Vec multiply(const Vec& a, const Vec& b) const;
  /// Left-to-right product of all factors.
  Vec product(std::initializer_list<std::reference_wrapper<const Vec>> factors) const;

  /// Matrix of x -> a x.
  Matrix left_multiplication(const Vec& a) const;
  /// Matrix of x -> x a.
  Matrix right_multiplication(const Vec& a) const;

  /// Nonzero constants ordered by (i, j, k).
  std::vector<StructureConstant> structure_constants() const;

  bool is_unit(const Vec& v) const { return v == unit_; }

 private:
  Field field_ = Field::rational();
  std::size_t dim_ = 0;
  Vec unit_;
  std::vector<Terms> table_;
};

/// Result of the associativity / unit check.
struct AlgebraCheck {
  bool ok = true;
  std::string failure;                 // "associativity" or "unit", empty when ok
  std::vector<std::size_t> witness;    // offending basis indices
  Vec lhs, rhs;
};

AlgebraCheck verify_algebra(const Algebra& alg);

/// Linear subspace of k^n with a fixed basis. Bases built by span() are the
/// nonzero rows of the reduced row-echelon form of the spanning set.
class Subspace {
 public:
  Subspace() = default;

  static Subspace span(const Field& f, std::size_t ambient, const std::vector<Vec>& vectors);
  /// Keeps the given (ordered) basis; throws std::invalid_argument if dependent.
  static Subspace from_basis(const Field& f, std::size_t ambient, std::vector<Vec> basis);
  /// Basis = columns of the matrix.
  static Subspace from_columns(const Matrix& embedding);
  static Subspace whole(const Field& f, std::size_t n);

  const Field& field() const { return field_; }
  std::size_t dim() const { return basis_.size(); }
  std::size_t ambient_dim() const { return ambient_; }
  const std::vector<Vec>& basis() const { return basis_; }
  const Vec& vector(std::size_t i) const { return basis_[i]; }

  /// ambient x dim matrix whose columns are the basis vectors.
  Matrix embedding() const;
  /// Coordinates of v, or std::nullopt if v is not in the subspace.
  std::optional<Vec> coordinates(const Vec& v) const;
  /// Like coordinates() but throws std::domain_error with `what` on failure.
  Vec coordinates_or_throw(const Vec& v, const std::string& what) const;
  Vec combine(const Vec& coords) const;
  bool contains(const Vec& v) const { return coordinates(v).has_value(); }
  bool contains(const Subspace& other) const;
  bool same_space(const Subspace& other) const { return dim() == other.dim() && contains(other); }

 private:
  void prepare();

  Field field_ = Field::rational();
  std::size_t ambient_ = 0;
  std::vector<Vec> basis_;
  std::vector<std::size_t> pivots_;
  Matrix pivot_inverse_;  // inverse of the dim x dim block on pivot columns
};

/// Checks closure under products and membership of the unit.
bool is_unital_subalgebra(const Algebra& alg, const Subspace& s);

/// Algebra structure on the subspace's basis. Throws if not a unital subalgebra.
Algebra induced_algebra(const Algebra& alg, const Subspace& s);

/// A small set of elements of s generating it as a unital algebra.
std::vector<Vec> algebra_generators(const Algebra& alg, const Subspace& s);

/// {x : xs = sx for all s in S}. Throws std::invalid_argument if S is not a
/// unital subalgebra.
Subspace centralizer(const Algebra& alg, const Subspace& s);

/// Center of the algebra.
Subspace center(const Algebra& alg);

/// Quotient X (x)_N Y of X (x)_k Y by span{xn (x) y - x (x) ny}. The actions
/// of a generating set of N are given as right-action matrices on X and
/// left-action matrices on Y. Flat index of e_i (x) e_j is i * dim Y + j.
/// Quotient basis elements are the pure tensors at the non-pivot flat indices.
class TensorQuotient {
 public:
  TensorQuotient() = default;
  TensorQuotient(Field f, std::size_t dim_x, std::size_t dim_y, const std::vector<Matrix>& right_on_x,
                 const std::vector<Matrix>& left_on_y);

  /// X = Y = alg, N given by a subspace.
  static TensorQuotient over_subalgebra(const Algebra& alg, const Subspace& n);

  std::size_t dim() const { return basis_flat_.size(); }
  std::size_t dim_x() const { return dim_x_; }
  std::size_t dim_y() const { return dim_y_; }
  std::size_t flat_dim() const { return dim_x_ * dim_y_; }
  /// The quotient basis element q corresponds to e_first (x) e_second.
  std::pair<std::size_t, std::size_t> basis_pair(std::size_t q) const;

  /// Flat coordinates (size dim_x*dim_y) to quotient coordinates.
  Vec project(const Vec& flat) const;
  /// Image of e_i (x) e_j.
  Vec project_basis(std::size_t i, std::size_t j) const;
  /// Image of x (x) y.
  Vec project_pure(const Vec& x, const Vec& y) const;
  /// Representative in flat coordinates supported on the quotient basis.
  Vec section(const Vec& coords) const;
  /// Relation generators (sparse flat coordinates), as used to build the quotient.
  const std::vector<SparseEchelon::Entries>& relations() const { return relations_; }

 private:
  Field field_ = Field::rational();
  std::size_t dim_x_ = 0;
  std::size_t dim_y_ = 0;
  std::vector<std::size_t> basis_flat_;
  std::vector<std::int64_t> flat_to_basis_;
  // Image of each pivot flat index: sparse quotient coordinates.
  std::vector<std::vector<std::pair<std::uint32_t, Scalar>>> pivot_images_;
  std::vector<SparseEchelon::Entries> relations_;
};

/// Outer product coordinates of x (x) y in k^{dx * dy}.
Vec tensor_flat(const Vec& x, const Vec& y);

/// Algebra of endomorphisms of V commuting with the right action of the
/// given generator matrices. Basis elements are dim V x dim V matrices
/// (column convention: f(v) = F v); product is composition.
struct EndomorphismAlgebra {
  Algebra algebra;
  std::vector<Matrix> basis;  // matrices of the basis elements
  Subspace flat;              // the basis, flattened row-major

  /// Coordinates of a matrix in `basis`; std::nullopt if not N-linear.
  std::optional<Vec> coordinates(const Matrix& f) const;
  Matrix matrix(const Vec& coords) const;
};

/// Throws std::invalid_argument if the generator matrices are not square of size dim.
EndomorphismAlgebra endomorphism_algebra(const Field& f, std::size_t dim, const std::vector<Matrix>& right_action);
/// Right module over n given by the matrices of v -> v e_i for each basis
/// element e_i of n. Throws std::invalid_argument if the module axioms fail.
EndomorphismAlgebra endomorphism_algebra(const Algebra& n, const std::vector<Matrix>& action);

struct MorphismCheck {
  bool multiplicative = true;
  bool unital = true;
  bool injective = false;
  bool surjective = false;
  std::vector<std::size_t> witness;  // basis pair breaking multiplicativity
  bool is_homomorphism() const { return multiplicative && unital; }
  bool is_isomorphism() const { return is_homomorphism() && injective && surjective; }
};

/// f: A -> B given as a dim B x dim A matrix.
MorphismCheck check_morphism(const Matrix& f, const Algebra& a, const Algebra& b);

}  // namespace jtower
