#pragma once

#include <cstdint>
#include <functional>

#include "ejakit/check_report.hpp"
#include "ejakit/effects.hpp"

namespace ejakit {

/// Positive sub-unital map A -> B in the effect-transformer convention.
///
/// The stored matrix is f#: coords(B) -> coords(A), so it has shape
/// source.dim() x target.dim(). Effects of B pull back to effects of A and
/// states of A push forward (through the transpose) to states of B.
class PsuMap {
 public:
  /// Throws StructuralError when the matrix shape does not match the systems.
  /// `validated` is false for maps (such as adjoints) whose positivity and
  /// sub-unitality have not been established.
  PsuMap(AlgebraSpec source, AlgebraSpec target, Eigen::MatrixXd matrix, bool validated = true);

  static PsuMap identity(const AlgebraSpec& spec);
  static PsuMap zero(const AlgebraSpec& source, const AlgebraSpec& target);
  /// Matrix of a linear effect transformer given on elements of `target`.
  static PsuMap from_linear(const AlgebraSpec& source, const AlgebraSpec& target,
                            const std::function<Element(const Element&)>& heisenberg, bool validated = true);

  const AlgebraSpec& source() const { return source_; }
  const AlgebraSpec& target() const { return target_; }
  const Eigen::MatrixXd& matrix() const { return matrix_; }
  bool validated() const { return validated_; }

 private:
  AlgebraSpec source_;
  AlgebraSpec target_;
  Eigen::MatrixXd matrix_;
  bool validated_;
};

/// g o f for f: A -> B and g: B -> C; the matrix is f# g#.
PsuMap compose(const PsuMap& g, const PsuMap& f);

/// f#(q) for an effect (or any element) q of the target.
Element apply(const PsuMap& f, const Element& q);
/// Pushes a state of the source forward to a state of the target.
State apply_state(const PsuMap& f, const State& omega);

/// Inner-product adjoint with source and target swapped; never validated.
PsuMap adjoint(const PsuMap& f);

/// im(f) = ceil((f#)^T 1), a sharp effect of the target.
Element image(const PsuMap& f, const ToleranceConfig& tol = {});

/// ||f#(1) - 1|| <= tol.op.
bool is_unital(const PsuMap& f, const ToleranceConfig& tol = {});
/// f#(1) <= 1.
bool is_subunital(const PsuMap& f, const ToleranceConfig& tol = {});
/// im(f) = 1.
bool is_faithful(const PsuMap& f, const ToleranceConfig& tol = {});

/// Largest coordinate difference between two maps of the same type.
double map_distance(const PsuMap& f, const PsuMap& g);

/// Samples random atoms p of the target and reports the worst amount by which
/// f#(p) falls below zero.
CheckReport positivity_check(const PsuMap& f, int trials, std::uint64_t seed, const ToleranceConfig& tol = {});

}  // namespace ejakit
