// JSON file formats: extensions, abstract pairings and expected-outcome sidecars.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "jtower/examples.hpp"
#include "jtower/hopf.hpp"

namespace jtower {

/// Malformed or inconsistent input file.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

nlohmann::json algebra_to_json(const Algebra& a);
Algebra algebra_from_json(const Field& f, const nlohmann::json& j);

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Field& f, const nlohmann::json& j, std::size_t rows, std::size_t cols,
                        const std::string& what);

/// Format "jtower-extension/1".
nlohmann::json extension_to_json(const ExtensionInput& ext);
ExtensionInput extension_from_json(const nlohmann::json& j);

/// Abstract pairing file, format "jtower-pairing/1".
struct PairingInput {
  std::string name;
  Algebra A, B;
  Matrix P;
  AntipodeMode mode = AntipodeMode::derive;
  std::optional<Matrix> S;
};

nlohmann::json pairing_to_json(const PairingInput& p);
PairingInput pairing_from_json(const nlohmann::json& j);

/// Reads and parses a JSON file; throws InputError.
nlohmann::json read_json_file(const std::string& path);

/// 64-bit FNV-1a of the text, as 16 hex digits.
std::string fnv1a_hex(const std::string& text);

}  // namespace jtower
