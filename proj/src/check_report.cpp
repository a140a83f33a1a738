#include "ejakit/check_report.hpp"

#include <cmath>

namespace ejakit {

CheckRecorder::CheckRecorder(std::string check_id, AlgebraSpec spec, std::uint64_t seed, double threshold)
    : threshold_(threshold) {
  report_.check_id = std::move(check_id);
  report_.spec = std::move(spec);
  report_.seed = seed;
  report_.details["threshold"] = threshold;
}

bool CheckRecorder::record(double residual, const std::function<nlohmann::json()>& exemplar) {
  return record(residual, threshold_, exemplar);
}

bool CheckRecorder::record(double residual, double threshold, const std::function<nlohmann::json()>& exemplar) {
  return record_outcome(residual, std::isfinite(residual) && residual <= threshold, exemplar);
}

bool CheckRecorder::record_outcome(double residual, bool ok, const std::function<nlohmann::json()>& exemplar) {
  ++report_.trials;
  if (!std::isfinite(residual)) {
    report_.worst_residual = INFINITY;
  } else if (residual > report_.worst_residual) {
    report_.worst_residual = residual;
  }
  if (!ok) fail(exemplar);
  return ok;
}

bool CheckRecorder::record_bool(bool ok, const std::function<nlohmann::json()>& exemplar) {
  ++report_.trials;
  if (!ok) fail(exemplar);
  return ok;
}

void CheckRecorder::fail(const std::function<nlohmann::json()>& exemplar) {
  ++report_.failures;
  if (report_.exemplars.size() < kMaxExemplars) {
    nlohmann::json ex = exemplar ? exemplar() : nlohmann::json::object();
    ex["trial"] = report_.trials - 1;
    report_.exemplars.push_back(std::move(ex));
  }
}

CheckReport CheckRecorder::finish() {
  if (skipped_ > 0) report_.details["skipped"] = skipped_;
  return report_;
}

}  // namespace ejakit
