// Frobenius systems on an algebra extension N in M: conditional
// expectations, dual bases, index, hypothesis flags, Nakayama automorphism,
// composition, and separability elements of simple field extensions.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "jtower/algebra.hpp"
#include "jtower/report.hpp"

namespace jtower {

/// Thrown when data does not define a Frobenius system (no dual bases,
/// non-unique Nakayama map, ...).
class FrobeniusError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class IndexKind { scalar, non_scalar, zero };

std::string to_string(IndexKind k);

struct Flags {
  bool split = false;
  bool separable = false;
  bool strongly_separable = false;
  bool irreducible = false;
  bool normalized = false;
};

using Pairs = std::vector<std::pair<Vec, Vec>>;

struct FrobeniusSystem {
  Algebra M;
  Subspace N;          // unital subalgebra of M
  Matrix E;            // dim N x dim M, values in N coordinates
  Matrix E_ambient;    // dim M x dim M, values as elements of M
  Matrix tensor;       // t = sum_ij tensor(i, j) e_i (x) e_j
  Pairs pairs;         // (x_i, y_i) with t = sum x_i (x) y_i
  Vec index;           // sum x_i y_i
  IndexKind index_kind = IndexKind::non_scalar;
  std::optional<Scalar> lambda_inverse;
  Subspace centralizer;  // C_M(N)
  Flags flags;

  Vec expect(const Vec& m) const { return E_ambient.apply(m); }
  /// lambda = (lambda^{-1})^{-1}; throws FrobeniusError unless the index is a nonzero scalar.
  Scalar lambda() const;
};

/// Unital-subalgebra and algebra-table checks on the input ("input.*").
Report validate_extension(const Algebra& M, const Subspace& N);

/// E(n m) = n E(m), E(m n) = E(m) n for all basis n in N, m in M, and
/// E(1) = 1 (the latter only when require_unit). Check ids start with prefix.
Report verify_conditional_expectation(const Algebra& M, const Subspace& N, const Matrix& E,
                                      const std::string& prefix = "frobenius.conditional_expectation",
                                      bool require_unit = true);

/// m -> E(m) as an element of M.
Matrix ambient_expectation(const Subspace& N, const Matrix& E);

struct DualBasesSolution {
  Matrix tensor;                // canonical representative (supported on the quotient basis)
  std::size_t kernel_dim = 0;   // dimension of the homogeneous solution space
  bool unique_in_quotient = false;
};

/// Solves both dual-basis equations for t in M (x)_N M as one linear
/// system. std::nullopt when inconsistent (E is not Frobenius).
std::optional<DualBasesSolution> solve_dual_bases(const Algebra& M, const Subspace& N, const Matrix& E);

struct DualBasisCheck {
  bool ok = true;
  std::string equation;  // "left" (sum E(m x) y = m) or "right" (sum x E(y m) = m)
  std::size_t witness = 0;
  Vec lhs, rhs;
};

/// Checks both dual-basis equations on every basis element of X, with
/// expectation given as a dim X x dim X matrix with values in X.
DualBasisCheck check_dual_bases(const Algebra& X, const Matrix& expectation, const Pairs& pairs);

Matrix pairs_to_tensor(const Field& f, std::size_t dim, const Pairs& pairs);
Pairs tensor_to_pairs(const Matrix& tensor);

/// Builds the system, solving for dual bases when no tensor is supplied.
/// Throws FrobeniusError if E admits no dual bases or a supplied tensor fails.
FrobeniusSystem make_system(Algebra M, Subspace N, Matrix E, std::optional<Matrix> tensor = std::nullopt);
/// Same with explicit (x_i, y_i); the pairs are verified.
FrobeniusSystem make_system_from_pairs(Algebra M, Subspace N, Matrix E, Pairs pairs);

/// Hypothesis flags, decided by solvability over C_M(N).
Flags classify(const FrobeniusSystem& sys);

/// Dual-basis equations, centrality of the index, E(1) commuting with N.
Report verify_frobenius_system(const FrobeniusSystem& sys, const std::string& prefix = "frobenius");

/// Rescales E by mu^{-1} and x_i by mu where E(1) = mu 1. Throws
/// FrobeniusError when E(1) is zero or not a scalar.
FrobeniusSystem normalize(const FrobeniusSystem& sys);

/// Unique q on scope with phi(q(c) m) = phi(m c) for every basis m of X,
/// where phi is any linear map out of X. Returned in scope coordinates.
/// Throws FrobeniusError when q does not exist or is not unique.
Matrix nakayama(const Algebra& X, const Matrix& phi, const Subspace& scope);
/// Nakayama map of E on C_M(N).
Matrix nakayama(const FrobeniusSystem& sys);
/// q(cc') = q(c)q(c'), q(1) = 1, q bijective on the scope.
bool is_scope_automorphism(const Algebra& X, const Subspace& scope, const Matrix& q);

struct Composite {
  FrobeniusSystem system;
  Report report;
};

/// Composes R/M (outer) with M/N (inner). The basis of inner.M must be the
/// basis of outer.N in order. Dual bases are {z_j x_i}, {y_i w_j}.
Composite compose(const FrobeniusSystem& outer, const FrobeniusSystem& inner);

struct SeparabilityElement {
  Algebra extension;  // k[x]/(p) on the basis 1, a, ..., a^{n-1}
  Matrix tensor;      // e = sum tensor(i, j) a^i (x) a^j
  bool multiplies_to_one = false;
  bool commutes = false;
};

/// p = x^n - sum_{i<n} c_i x^i. Throws FrobeniusError when p'(a) is not
/// invertible in k[x]/(p), std::invalid_argument when c is empty.
SeparabilityElement separability_element_field(const Field& f, const std::vector<Scalar>& c);

}  // namespace jtower
