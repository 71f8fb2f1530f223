// Module-algebra actions of the reconstructed Hopf algebras, smash products,
// cleft data and Galois-map bijectivity.
#pragma once

#include <optional>
#include <string>

#include "jtower/hopf.hpp"

namespace jtower {

/// Left action of H on X: act[i] is the matrix of h_i |> (-).
struct ModuleAlgebraAction {
  HopfStructure H;
  Algebra X;
  std::vector<Matrix> act;

  Vec apply(const Vec& h, const Vec& x) const;
};

struct GaloisError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Unit, associativity, h |> (x y) = (h_(1) |> x)(h_(2) |> y) and h |> 1 = epsilon(h) 1.
Report verify_module_algebra(const ModuleAlgebraAction& a, const std::string& id = "galois.module_algebra");

/// h |> (-) for h = epsilon(h) id.
ModuleAlgebraAction trivial_action(const HopfStructure& H, const Algebra& X);

/// {x : h |> x = epsilon(h) x for all h}.
Subspace invariants(const ModuleAlgebraAction& a);

/// X # H on the basis x_i # h_j (index i dim H + j).
Algebra smash_product(const ModuleAlgebraAction& a);

/// Associativity and unit of the smash product; id "galois.smash".
Report verify_smash_product(const Algebra& smash, const std::string& id = "galois.smash");

/// x # b -> x b as M_1 # B -> M_2 ("galois.smash_theta") and its restriction
/// A # B -> C ("galois.smash_AB").
Report verify_smash_iso_theta(const TowerData& t, const DepthTwoData& d, const PairingData& p,
                              const ModuleAlgebraAction& b_on_m1);

/// Beta: X (x)_N X -> X (x) H*, x (x) x' -> sum_j x (h_j |> x') (x) h^j in the dual basis of H*.
Report galois_map(const ModuleAlgebraAction& a, const Subspace& N, const std::string& id = "galois.galois_map");

/// Dual bases (x_i, y_i) for E = t |> (-) and the integral t, for the inverse g -> sum_i g(x_i) t y_i.
struct PsiInverseData {
  Pairs pairs;
  Vec t;
};

/// Psi: X # H -> End(X_N), x # h -> x (h |> -); ids "galois.psi" and "galois.psi.inverse".
Report psi_map(const Algebra& smash, const ModuleAlgebraAction& a, const Subspace& N,
               const std::optional<PsiInverseData>& inverse = std::nullopt);

/// b |> x = lambda^{-1} E_{M_1}(b x e_2) on M_1.
ModuleAlgebraAction action_B_on_M1(const TowerData& t, const Reconstruction& rec);

/// a |> m = a_(1) m S(a_(2)) computed in M_1; throws GaloisError if a value leaves M.
ModuleAlgebraAction action_A_on_M(const TowerData& t, const Reconstruction& rec);

/// Comodule property of A in M_1, convolution inverse, trivial cocycle and M # A = M_1.
Report cleft_data(const TowerData& t, const Reconstruction& rec, const ModuleAlgebraAction& b_on_m1,
                  const ModuleAlgebraAction& a_on_m);

struct GaloisData {
  std::optional<ModuleAlgebraAction> action_B, action_A;
  Report report;
};

/// Every action, smash and Galois check on a reconstructed tower.
GaloisData analyze_galois(const TowerData& t, const DepthTwoData& d, const Reconstruction& rec);

}  // namespace jtower
