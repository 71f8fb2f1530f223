// Group Hopf algebras with normalized integrals, module-algebra models and
// the Frobenius systems they induce.
#pragma once

#include <optional>
#include <string>

#include "jtower/examples.hpp"
#include "jtower/galois.hpp"

namespace jtower {

struct ModelError : std::domain_error {
  using std::domain_error::domain_error;
};

/// k[G] and k^G with t = |G|^{-1} sum g in k[G] and f = |G| delta_e in k^G.
struct GroupHopf {
  Group group;
  HopfStructure kG, kG_dual;
  Vec t;  // in k[G]
  Vec f;  // in k^G, also the functional f(g) = f[g] on k[G]
  Report report;
};

/// Throws ModelError when char k divides |G|.
GroupHopf group_hopf(const Group& g, const Field& f);

/// g |> (a + b sqrt d) = a - b sqrt d on k[x]/(x^2 - d) for the generator of Z/2.
ModuleAlgebraAction conjugation_action(const GroupHopf& h, const Scalar& d);

/// (g |> phi)(x) = phi(x g) on k^G.
ModuleAlgebraAction translation_action(const GroupHopf& h);

struct ModelBundle {
  GroupHopf hopf;
  ModuleAlgebraAction action;
  Subspace N;               // invariants
  FrobeniusSystem system;   // E = t |> (-)
  Algebra smash;            // X # H
  Report report;
};

/// E = t |> (-), dual bases solved from the Frobenius equations, index f(1),
/// and Psi: X # H -> End(X_N) with its inverse. Throws ModelError when the
/// invariants differ from `expected_N` or no dual bases exist.
ModelBundle galois_frobenius_system(const GroupHopf& h, const ModuleAlgebraAction& act,
                                    const std::optional<Subspace>& expected_N = std::nullopt);

}  // namespace jtower
