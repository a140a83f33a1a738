#pragma once

#include <Eigen/Dense>

#include "ejakit/algebra.hpp"

namespace ejakit {

/// A vector in the self-adjoint part of an algebra.
///
/// Coordinates are taken in a fixed basis that is orthonormal for the
/// atom-normalized trace form, so the inner product of two elements is the
/// dot product of their coordinate vectors and the adjoint of a linear map
/// is its transpose.
///
/// Per matrix factor the basis is E_ii, followed for every i < j by the
/// symmetrized units (e E_ij + conj(e) E_ji) / sqrt(2) with e running over
/// 1 (real), 1, i (complex) or 1, i, j, k (quaternion). A Spin(k) factor
/// uses (e_i, 0) / sqrt(2) and (0, 1) / sqrt(2).
class Element {
 public:
  Element(AlgebraSpec spec, Eigen::VectorXd coords);

  static Element zero(const AlgebraSpec& spec);
  static Element unit(const AlgebraSpec& spec);
  /// Unit of the i-th simple factor (a central projection).
  static Element factor_unit(const AlgebraSpec& spec, int factor);

  const AlgebraSpec& spec() const { return spec_; }
  const Eigen::VectorXd& coords() const { return coords_; }
  Eigen::VectorXd& coords() { return coords_; }
  int dim() const { return spec_.dim(); }

  /// Coordinates of one factor block.
  Eigen::VectorXd block(int factor) const;

  Element& operator+=(const Element& other);
  Element& operator-=(const Element& other);
  Element& operator*=(double s);

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(double s, Element a) { return a *= s; }
  friend Element operator*(Element a, double s) { return a *= s; }
  friend Element operator-(Element a) { return a *= -1.0; }

  /// Euclidean norm of the coordinates, i.e. sqrt<a, a>.
  double norm() const { return coords_.norm(); }

 private:
  AlgebraSpec spec_;
  Eigen::VectorXd coords_;
};

/// Distance ||a - b|| in the inner-product norm.
double distance(const Element& a, const Element& b);

// ---------------------------------------------------------------------------
// Block views. Matrix factors are exposed as Hermitian complex matrices; real
// factors have zero imaginary part and quaternionic factors use the complex
// embedding where entry (i, j) = a + b j is the 2x2 block [[a, b], [-conj b, conj a]].

struct SpinBlock {
  Eigen::VectorXd v;
  double t = 0.0;
};

Eigen::MatrixXcd factor_matrix(const Element& a, int factor);
SpinBlock spin_block(const Element& a, int factor);

/// Coordinates of a Hermitian matrix for the given matrix factor kind. The
/// matrix is symmetrized (and projected onto quaternionic form) first.
Eigen::VectorXd matrix_to_coords(const FactorKind& kind, const Eigen::MatrixXcd& m);
Eigen::MatrixXcd coords_to_matrix(const FactorKind& kind, const Eigen::Ref<const Eigen::VectorXd>& c);

Eigen::VectorXd spin_to_coords(const SpinBlock& s);
SpinBlock coords_to_spin(const Eigen::Ref<const Eigen::VectorXd>& c);

/// Largest deviation of `m` from being Hermitian (and, for quaternionic
/// factors, from the 2x2 block structure).
double structure_defect(const FactorKind& kind, const Eigen::MatrixXcd& m);

/// Antiunitary J on interleaved quaternionic column vectors:
/// (x_i, y_i) -> (-conj y_i, conj x_i). It commutes with every embedded
/// quaternionic matrix.
Eigen::VectorXcd quaternion_partner(const Eigen::VectorXcd& v);

}  // namespace ejakit
