#pragma once

#include <string>
#include <vector>

namespace ejakit {

enum class FactorType { real, complex, quaternion, spin };

/// One simple summand of a Euclidean Jordan algebra.
///
/// Matrix kinds are the self-adjoint n x n matrices over R, C or H; `size`
/// is n. Spin(k) is R^k + R with `size` = k >= 2.
struct FactorKind {
  FactorType type = FactorType::real;
  int size = 1;

  static FactorKind real(int n) { return {FactorType::real, n}; }
  static FactorKind complex(int n) { return {FactorType::complex, n}; }
  static FactorKind quaternion(int n) { return {FactorType::quaternion, n}; }
  static FactorKind spin(int k) { return {FactorType::spin, k}; }

  int dim() const;
  int rank() const;
  bool is_matrix() const { return type != FactorType::spin; }
  // Side length of the complex matrix that stores a block; quaternion entries
  // occupy 2x2 complex blocks.
  int matrix_size() const { return type == FactorType::quaternion ? 2 * size : size; }

  std::string name() const;

  bool operator==(const FactorKind&) const = default;
};

/// Direct sum of simple factors. Factor order is part of the identity.
class AlgebraSpec {
 public:
  /// Throws ValidationError on an empty list or an invalid factor.
  explicit AlgebraSpec(std::vector<FactorKind> factors);

  /// The zero algebra: no factors, dimension 0. Only arises as the corner of
  /// the zero effect and is never accepted from user input.
  static AlgebraSpec null_system();

  /// A single RealMatrix(1) factor; its effects are the scalars [0, 1].
  static AlgebraSpec trivial();

  const std::vector<FactorKind>& factors() const { return factors_; }
  int num_factors() const { return static_cast<int>(factors_.size()); }
  const FactorKind& factor(int i) const { return factors_.at(static_cast<size_t>(i)); }
  int offset(int i) const { return offsets_.at(static_cast<size_t>(i)); }
  int dim() const { return dim_; }
  int rank() const { return rank_; }
  bool is_null() const { return factors_.empty(); }

  std::string name() const;

  bool operator==(const AlgebraSpec& other) const { return factors_ == other.factors_; }

 private:
  AlgebraSpec() = default;
  void index();

  std::vector<FactorKind> factors_;
  std::vector<int> offsets_;
  int dim_ = 0;
  int rank_ = 0;
};

/// Throws StructuralError naming `what` when the two specs differ.
void require_same_spec(const AlgebraSpec& a, const AlgebraSpec& b, const char* what);

}  // namespace ejakit
