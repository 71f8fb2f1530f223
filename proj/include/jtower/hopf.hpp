// Duality pairing between the second centralizers and the Hopf structure
// it induces: comultiplication, counit and antipode with axiom checks.
#pragma once

#include <optional>
#include <string>

#include "jtower/depth_two.hpp"

namespace jtower {

/// Finite-dimensional Hopf algebra on a basis of `algebra`. Coordinates on
/// H (x) H are flat with index i dim H + j.
struct HopfStructure {
  Algebra algebra;
  Matrix delta;               // dim^2 x dim
  Vec epsilon;                // epsilon(h_i) = epsilon[i]
  std::optional<Matrix> S;    // dim x dim; absent when skipped
  Report report;

  std::size_t dim() const { return algebra.dim(); }
  Vec coproduct(const Vec& h) const { return delta.apply(h); }
  Scalar counit(const Vec& h) const { return dot(epsilon, h); }
  bool valid() const { return S.has_value() && report.ok() && !report.empty(); }
};

/// <a_i, b_j> = P(i, j) with A = C_{M_1}(N) and B = C_{M_2}(M).
struct PairingData {
  Algebra A, B;         // induced on the bases of the centralizers
  Subspace A_basis;     // in M_1
  Subspace A_in_M2;     // same basis pushed into M_2
  Subspace B_basis;     // in M_2
  Matrix P, P_inv;
  Matrix dual_B;        // column j: B coordinates of b^j with <a_i, b^j> = delta_ij
  Matrix phi;           // b -> E_{M_1}(e_2 e_1 b), dim A x dim B
  bool phi_bijective = false;
  Report report;
};

/// Thrown when a Hopf-level precondition is not met.
struct HopfError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Pairing on a tower with irreducible base and depth 2. Throws HopfError otherwise.
PairingData compute_pairing(const TowerData& t, const DepthTwoData& d);

/// Delta_H(h) = sum_ij <k_i k_j, h> h^i (x) h^j and epsilon_H(h) = <1, h> where
/// Q(i, j) = <k_i, h_j>. Throws HopfError if Q is singular.
HopfStructure coalgebra_from_pairing(const Algebra& K, const Algebra& H, const Matrix& Q);

/// Solves S(h_(1)) h_(2) = epsilon(h) 1 for S; std::nullopt if no solution.
std::optional<Matrix> solve_antipode(const HopfStructure& h);

/// S = Phi^{-1} Psi with Phi(b) = E_{M_1}(e_2 e_1 b), Psi(b) = E_{M_1}(b e_1 e_2).
Matrix tower_antipode(const TowerData& t, const PairingData& p);

/// Every Hopf axiom on all basis tuples; ids are prefix + ".coassociative" etc.
Report verify_hopf_axioms(const HopfStructure& h, const std::string& prefix = "hopf.axioms");

/// Hopf structure on K dual to H via Q(i, j) = <k_i, h_j>: Delta_K is the
/// transpose of the multiplication of H, S_K the transpose of S_H.
HopfStructure dualize(const Algebra& K, const HopfStructure& H, const Matrix& Q,
                      const std::string& prefix = "hopf.dual.axioms");

enum class AntipodeMode { supplied, derive, skip };

/// Hopf structure on B from abstract algebras A, B and pairing matrix P,
/// without a tower.
HopfStructure bialgebra_from_abstract_pairing(const Algebra& A, const Algebra& B, const Matrix& P,
                                              AntipodeMode mode = AntipodeMode::derive,
                                              std::optional<Matrix> S = std::nullopt);

/// Basis of left integrals {t : h t = epsilon(h) t}.
Subspace left_integrals(const HopfStructure& h);

struct Reconstruction {
  PairingData pairing;
  HopfStructure B;  // on the basis of B
  HopfStructure A;  // dual, on the basis of A
  std::optional<Matrix> q_B;
  Report report;
};

/// Full reconstruction on an irreducible depth-2 tower, with the tower
/// identities (exchange relation, action identities, integrals). Throws
/// HopfError when the pairing preconditions fail.
Reconstruction reconstruct(const TowerData& t, const DepthTwoData& d);

/// Dimension, structure constants, Delta, epsilon, S and integrals.
nlohmann::json hopf_dump(const HopfStructure& h, const std::string& name,
                         const std::optional<Matrix>& pairing = std::nullopt);

}  // namespace jtower
