#pragma once

#include <cstdint>

#include "ejakit/check_report.hpp"
#include "ejakit/effects.hpp"

namespace ejakit {

/// Per-step record of the peeling loop.
struct PeelStep {
  double value;
  Element projection;
  /// <ceil(residual), accumulated floors> after this step.
  double orthogonality_defect;
};

struct PeelResult {
  SpectralDecomposition decomposition;
  std::vector<PeelStep> steps;
};

/// Diagonalizes an effect using only floor, order_norm and linear
/// arithmetic: repeatedly take lambda = ||r||, p = floor(r / lambda) and
/// r -= lambda p until lambda < tol.eig.
///
/// Throws ValidationError for non-effects and InternalError when the loop
/// needs more than rank + 1 steps.
SpectralDecomposition peel_diagonalize(const Element& v, const ToleranceConfig& tol = {});
PeelResult peel_diagonalize_traced(const Element& v, const ToleranceConfig& tol = {});

/// Decomposition of an arbitrary element with signed eigenvalues, plus its
/// Jordan decomposition a = positive - negative with orthogonal parts.
struct SignedDecomposition {
  SpectralDecomposition decomposition;
  Element positive;
  Element negative;
};

/// Shifts a by n 1 with n = ceil(||a||), rescales into [0, 1], peels and
/// shifts back. Eigenvalues within tol.eig of zero are dropped.
SignedDecomposition diagonalize_general(const Element& a, const ToleranceConfig& tol = {});

/// Runs the peeling path and the eigensolver path on v and compares them
/// (cluster count, eigenvalues within tol.eig, projections within tol.sharp),
/// then peels the reconstruction again and compares once more.
CheckReport check_uniqueness(const Element& v, std::uint64_t seed, const ToleranceConfig& tol = {});

}  // namespace ejakit
