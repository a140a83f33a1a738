#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ejakit/algebra.hpp"

namespace ejakit {

/// Outcome of one randomized verification run.
struct CheckReport {
  std::string check_id;
  AlgebraSpec spec = AlgebraSpec::trivial();
  int trials = 0;
  int failures = 0;
  double worst_residual = 0.0;
  std::uint64_t seed = 0;
  /// Serialized inputs of (at most a few) failing trials.
  std::vector<nlohmann::json> exemplars;
  /// Check-specific extra data (thresholds, skipped counts, ...).
  nlohmann::json details = nlohmann::json::object();

  bool passed() const { return failures == 0; }
  const char* verdict() const { return passed() ? "pass" : "fail"; }
};

/// Accumulates trial outcomes into a CheckReport.
class CheckRecorder {
 public:
  static constexpr size_t kMaxExemplars = 3;

  CheckRecorder(std::string check_id, AlgebraSpec spec, std::uint64_t seed, double threshold);

  /// A trial fails when the residual exceeds the threshold or is not finite.
  /// `exemplar` is only invoked for failing trials.
  bool record(double residual, const std::function<nlohmann::json()>& exemplar = {});
  /// Same, against a trial-specific threshold.
  bool record(double residual, double threshold, const std::function<nlohmann::json()>& exemplar = {});
  /// Trial whose pass/fail decision was made by the caller; `residual` only
  /// feeds worst_residual.
  bool record_outcome(double residual, bool ok, const std::function<nlohmann::json()>& exemplar = {});
  /// Pass/fail trial without a numeric residual.
  bool record_bool(bool ok, const std::function<nlohmann::json()>& exemplar = {});
  /// A trial whose random instance was rejected before testing (counted in
  /// details.skipped, not in trials).
  void skip() { ++skipped_; }

  nlohmann::json& details() { return report_.details; }
  double threshold() const { return threshold_; }
  CheckReport finish();

 private:
  void fail(const std::function<nlohmann::json()>& exemplar);

  CheckReport report_;
  double threshold_;
  int skipped_ = 0;
};

}  // namespace ejakit
