// Finite groups, group and function algebras, and the catalog of named
// example extensions with expected outcomes.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "jtower/algebra.hpp"
#include "jtower/report.hpp"

namespace jtower {

/// Finite group by multiplication table; element 0 need not be the identity.
struct Group {
  std::vector<std::vector<std::size_t>> table;  // table[g][h] = gh
  std::vector<std::string> names;
  std::size_t identity = 0;
  std::vector<std::size_t> inverse;

  std::size_t order() const { return table.size(); }
  std::size_t mul(std::size_t g, std::size_t h) const { return table[g][h]; }
  /// Index of the element with the given name; throws std::invalid_argument.
  std::size_t find(const std::string& name) const;
};

/// Verifies the group axioms; throws std::invalid_argument on failure.
Group make_group(std::vector<std::vector<std::size_t>> table, std::vector<std::string> names);
/// Z/n with elements 0..n-1 under addition.
Group cyclic_group(std::size_t n);
/// S_3 with elements e, (123), (132), (12), (13), (23).
Group symmetric_group3();
/// "Z/n" (or "Zn") and "S3".
Group group_by_name(const std::string& name);

/// k[G] on the basis of group elements.
Algebra group_algebra(const Field& f, const Group& g);
/// k^G on the basis of delta functions.
Algebra function_algebra(const Field& f, const Group& g);

/// k[x]/(x^2 - d) on the basis 1, x.
Algebra quadratic_algebra(const Field& f, const Scalar& d);

/// Extension N in M with optional E and dual-bases tensor.
struct ExtensionInput {
  std::string name;
  Algebra M;
  Subspace N;
  std::optional<Matrix> E;           // dim N x dim M
  std::optional<Matrix> dual_bases;  // dim M x dim M
};

struct Example {
  ExtensionInput ext;
  nlohmann::json expected;  // sidecar: dims, flags, expected check statuses
};

/// Names accepted by generate_example.
const std::vector<std::string>& example_names();

/// Builds a catalog example. Parameters (all optional):
///   field: "Q" or "F_p"; group, subgroup: for group-pair; d: for quadratic-field;
///   n: for function-algebra. Throws std::invalid_argument for unknown names or
///   bad parameters.
Example generate_example(const std::string& name, const nlohmann::json& params = nlohmann::json::object());

/// Field from "Q", "F_p" or "Fp".
Field parse_field(const std::string& text);

}  // namespace jtower
