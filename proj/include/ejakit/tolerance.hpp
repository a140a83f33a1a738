#pragma once

namespace ejakit {

/// Numerical thresholds shared by every module.
///
/// `eig` clusters eigenvalues, `pos` is the slack allowed below zero in
/// positivity tests, `op` bounds residuals of operator/element identities and
/// `sharp` is the distance of a spectrum from {0, 1} still considered sharp.
struct ToleranceConfig {
  double eig = 1e-8;
  double pos = 1e-9;
  double op = 1e-9;
  double sharp = 1e-7;

  /// Throws ValidationError unless every threshold is strictly positive.
  void validate() const;

  /// Defaults overridden by EJAKIT_TOL_EIG, EJAKIT_TOL_POS, EJAKIT_TOL_OP and
  /// EJAKIT_TOL_SHARP when they are set.
  static ToleranceConfig from_environment();

  bool operator==(const ToleranceConfig&) const = default;
};

}  // namespace ejakit
