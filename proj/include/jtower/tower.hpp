// Basic construction and the Jones tower N in M in M_1 in M_2.
#pragma once

#include <string>

#include "jtower/frobenius.hpp"

namespace jtower {

/// One step of the tower: M_{k+1} = M_k (x)_{M_{k-1}} M_k with
/// E-multiplication, built from a normalized system for M_k over M_{k-1}.
struct TowerLevel {
  Algebra algebra;
  TensorQuotient quotient;  // basis of the algebra = quotient basis
  Matrix inclusion;         // dim M_{k+1} x dim M_k, m -> m 1
  Vec e;                    // Jones idempotent 1 (x) 1
  Matrix expectation;       // dim M_k x dim M_{k+1}, lambda mu
  Scalar lambda_inverse;
  FrobeniusSystem system;   // M_{k+1} over the image of M_k
  Report report;

  std::size_t dim() const { return algebra.dim(); }
  Vec include(const Vec& m) const { return inclusion.apply(m); }
  Vec expect(const Vec& x) const { return expectation.apply(x); }
  Scalar lambda() const { return lambda_inverse.inverse(); }
};

/// Builds M_1 from sys and verifies its basic properties under ids
/// "<prefix>.*" (prefix "tower.l1" or "tower.l2"). Throws FrobeniusError
/// when E is not normalized or the index is not a nonzero scalar, or when
/// the constructed expectation admits no dual bases.
TowerLevel basic_construction(const FrobeniusSystem& sys, const std::string& prefix = "tower.l1");

/// f -> sum_i f(x_i) (x) y_i, End(M_N) -> M_1, and its inverse
/// m (x) n -> lambda_m E lambda_n, checked as algebra isomorphisms.
Report endo_ring_iso(const FrobeniusSystem& sys, const TowerLevel& level, const std::string& prefix);

struct TowerData {
  FrobeniusSystem base;
  TowerLevel l1;
  TowerLevel l2;
  Vec e1;           // e_1 pushed into M_2
  Vec e2;           // e_2 in M_2
  Matrix m1_to_m2;  // dim M_2 x dim M_1
  Matrix m_to_m2;   // dim M_2 x dim M
  Matrix F;         // E_M o E_{M_1}: M_2 -> M, dim M x dim M_2
  Report report;

  const Algebra& M() const { return base.M; }
  const Algebra& M1() const { return l1.algebra; }
  const Algebra& M2() const { return l2.algebra; }
  Scalar lambda() const { return l1.lambda(); }
  Scalar lambda_inverse() const { return l1.lambda_inverse; }
  /// E_{M_1}: M_2 -> M_1 in M_1 coordinates.
  Vec E_M1(const Vec& y) const { return l2.expect(y); }
  /// E_M: M_1 -> M in M coordinates.
  Vec E_M(const Vec& x) const { return l1.expect(x); }
  /// E_{M_1} viewed inside M_2.
  Vec E_M1_in_M2(const Vec& y) const { return m1_to_m2.apply(l2.expect(y)); }
};

struct TowerOptions {
  bool endomorphism_ring = true;
  bool triple_tensor = true;
};

/// Two steps of the basic construction plus the cross-level identities:
/// braid-like relations, Markov values of F, Pimsner-Popa identities and
/// the identification M_2 = M (x)_N M (x)_N M.
TowerData build_tower(const FrobeniusSystem& sys, const TowerOptions& options = {});

/// Per-level dimension, structure constants, Jones idempotent and
/// conditional expectation.
nlohmann::json tower_dump(const TowerData& t);

}  // namespace jtower
