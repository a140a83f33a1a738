#include "ejakit/tolerance.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <string>

#include "ejakit/errors.hpp"

namespace ejakit {

namespace {

void override_from(const char* name, double& slot) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return;
  char* end = nullptr;
  errno = 0;
  const double value = std::strtod(raw, &end);
  if (errno != 0 || end == raw || *end != '\0' || !std::isfinite(value) || value <= 0.0) {
    throw ValidationError(std::string(name) + " must be a positive number, got '" + raw + "'");
  }
  slot = value;
}

}  // namespace

void ToleranceConfig::validate() const {
  for (double v : {eig, pos, op, sharp}) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ValidationError("tolerances must be finite and strictly positive");
    }
  }
}

ToleranceConfig ToleranceConfig::from_environment() {
  ToleranceConfig tol;
  override_from("EJAKIT_TOL_EIG", tol.eig);
  override_from("EJAKIT_TOL_POS", tol.pos);
  override_from("EJAKIT_TOL_OP", tol.op);
  override_from("EJAKIT_TOL_SHARP", tol.sharp);
  return tol;
}

}  // namespace ejakit
