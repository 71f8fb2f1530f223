// Check results, reports and the anchor registry.
#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jtower/exact_linear.hpp"

namespace jtower {

enum class Status { pass, fail, skipped };

std::string to_string(Status s);

struct CheckResult {
  std::string id;
  std::string anchor;
  Status status = Status::pass;
  std::string reason;
  nlohmann::json witness;
  double seconds = 0.0;
};

class Report {
 public:
  CheckResult& add(std::string id, Status status, std::string reason = {}, nlohmann::json witness = nullptr);
  CheckResult& pass(std::string id, nlohmann::json witness = nullptr);
  CheckResult& fail(std::string id, std::string reason, nlohmann::json witness = nullptr);
  CheckResult& skip(std::string id, std::string reason);
  CheckResult& check(std::string id, bool ok, std::string reason_if_failed, nlohmann::json witness = nullptr);
  void append(const Report& other);

  const std::vector<CheckResult>& results() const { return results_; }
  const CheckResult* find(std::string_view id) const;
  std::optional<Status> status(std::string_view id) const;
  bool passed(std::string_view id) const { return status(id) == Status::pass; }
  std::size_t count(Status s) const;
  /// No failures (skips allowed).
  bool ok() const { return count(Status::fail) == 0; }
  bool empty() const { return results_.empty(); }

  nlohmann::json to_json(bool with_timing = false) const;

 private:
  std::vector<CheckResult> results_;
};

/// Statement each check certifies, looked up by the longest registered
/// prefix of the id. Throws std::out_of_range for unregistered ids.
const std::string& anchor_for(std::string_view id);

/// Every registered (prefix, anchor) pair, in registration order.
const std::vector<std::pair<std::string, std::string>>& anchor_registry();

nlohmann::json to_json(const Vec& v);
nlohmann::json to_json(const Matrix& m);

}  // namespace jtower
