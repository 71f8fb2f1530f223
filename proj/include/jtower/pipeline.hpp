// The full verification pipeline on one extension: Frobenius system, tower,
// depth 2, Hopf reconstruction and Galois checks, with hypothesis gating,
// a verdict and deterministic report rendering.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "jtower/depth_two.hpp"
#include "jtower/galois.hpp"
#include "jtower/hopf.hpp"
#include "jtower/io.hpp"
#include "jtower/tower.hpp"

namespace jtower {

enum class Stage { frobenius, tower, depth2, hopf, galois };

struct PipelineOptions {
  Stage through = Stage::galois;
  int levels = 2;            // 1 stops after M_1
  std::string check_filter;  // id prefix kept in the rendered report
};

struct PipelineResult {
  std::string name;
  std::string digest;  // FNV-1a of the canonical input
  std::string field;
  bool input_valid = true;
  std::string input_error;
  Flags flags;
  bool flags_known = false;
  std::optional<bool> depth_two;
  Report report;
  nlohmann::json dims = nlohmann::json::object();

  std::optional<FrobeniusSystem> system;
  std::optional<TowerLevel> level1;  // only with levels = 1
  std::optional<TowerData> tower;
  std::optional<DepthTwoData> depth2;
  std::optional<Reconstruction> reconstruction;

  /// 0: no kept check failed; 1: some failed; 2: invalid input.
  int exit_code(const std::string& filter = {}) const;
};

/// Check ids emitted by the Hopf and Galois stages on a tower; they are
/// skipped as a block when the stages are gated off.
const std::vector<std::string>& gated_stage_ids();

PipelineResult run_pipeline(const ExtensionInput& ext, const PipelineOptions& options = {});

/// Format "jtower-report/1"; no timing, so identical inputs give identical bytes.
nlohmann::json report_json(const PipelineResult& r, const std::string& filter = {});
std::string report_text(const PipelineResult& r, const std::string& filter = {});

/// Abstract pairing (A, B, P): bialgebra, antipode and axioms for B and A.
struct PairingResult {
  std::string name;
  std::string digest;
  std::optional<HopfStructure> B, A;  // B from the pairing, A its dual
  Matrix P;
  Report report;
};

PairingResult run_pairing_check(const PairingInput& in);
nlohmann::json pairing_report_json(const PairingResult& r, const std::string& filter = {});
std::string pairing_report_text(const PairingResult& r, const std::string& filter = {});

}  // namespace jtower
