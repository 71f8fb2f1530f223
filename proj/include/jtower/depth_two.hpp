// Second centralizers, the depth-2 decision, and the structure of C.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jtower/tower.hpp"

namespace jtower {

enum class DepthFailure { none, dimension_obstruction, gram_singular, system_inconsistent };

std::string to_string(DepthFailure f);

/// {z_i}, {w_i} in S with sum_i E(x z_i) w_i = x on X and E(w_i z_j) = delta_ij 1.
struct OrthogonalDualBases {
  bool found = false;
  DepthFailure failure = DepthFailure::none;
  std::string reason;
  std::string method;  // "gram", "search" or "resolve"
  std::size_t trials = 0;
  std::vector<Vec> z, w;  // elements of X
};

/// Data for one level: upper algebra X, the image Y of the lower algebra,
/// the conditional expectation X -> Y as a dim X x dim X matrix with values
/// in X, and the candidate subspace S (A or B).
struct LevelProblem {
  const Algebra* X = nullptr;
  const Subspace* Y = nullptr;
  const Matrix* E = nullptr;
  const Subspace* S = nullptr;
  bool irreducible = false;  // C_M(N) = k at this level
};

/// Decides the orthogonal dual-bases condition. With an irreducible base
/// z is the basis of S and w comes from the inverse Gram matrix; otherwise
/// w is searched (seeded) among tuples making (m_j) -> sum m_j w_j bijective.
OrthogonalDualBases find_orthogonal_dual_bases(const LevelProblem& p, std::uint64_t seed = 1);

/// Independent solver: fixes random z in S and solves the full linear system
/// (both dual-basis and orthogonality equations) for w.
OrthogonalDualBases resolve_orthogonal_dual_bases(const LevelProblem& p, std::uint64_t seed = 2);

/// Checks both dual-basis equations and orthogonality for a witness.
bool verify_orthogonal_dual_bases(const LevelProblem& p, const OrthogonalDualBases& d, std::string* failure = nullptr);

struct DepthTwoData {
  Subspace base_centralizer;  // C_M(N) in M
  Subspace A;                 // C_{M_1}(N) in M_1
  Subspace B;                 // C_{M_2}(M) in M_2
  Subspace C;                 // C_{M_2}(N) in M_2
  Subspace A_in_M2;           // A pushed into M_2
  OrthogonalDualBases level1, level2;
  bool irreducible = false;
  bool depth_two = false;
  bool F_faithful = false;
  std::optional<Matrix> E_B;  // dim B x dim C
  std::optional<Matrix> E_A;  // dim A x dim C
  Report report;

  std::size_t n() const { return B.dim(); }
};

/// Runs every depth-2 stage on a built tower. Checks that need an
/// irreducible base or depth 2 are reported as skipped with the reason.
DepthTwoData analyze_depth_two(const TowerData& t);

}  // namespace jtower
