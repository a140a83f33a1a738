#pragma once

#include <functional>
#include <vector>

#include "ejakit/element.hpp"
#include "ejakit/tolerance.hpp"

namespace ejakit {

/// a * b, computed factorwise: (AB + BA) / 2 on matrix factors and
/// (v, t) * (w, s) = (s v + t w, t s + <v, w>) on spin factors.
Element jordan_product(const Element& a, const Element& b);

/// Trace form normalized so that every atom has unit norm.
double inner_product(const Element& a, const Element& b);

/// U_a(x) = 2 a * (a * x) - (a * a) * x. On matrix factors this is a x a.
Element quadratic_rep(const Element& a, const Element& x);

/// Eigen-data of a single simple factor block.
///
/// `values` has one entry per atom (factor rank many), sorted descending.
/// For matrix factors `vectors` holds the matching unit eigenvectors as
/// columns; quaternionic factors store each atom as the column pair
/// (v, J v). For spin factors `direction` is the unit vector u of the atoms
/// (u, 1) / 2 and (-u, 1) / 2.
struct FactorFrame {
  FactorKind kind;
  Eigen::VectorXd values;
  Eigen::MatrixXcd vectors;
  Eigen::VectorXd direction;

  int size() const { return static_cast<int>(values.size()); }
  /// Coordinates (within the factor block) of the c-th atom.
  Eigen::VectorXd atom_coords(int c) const;
  /// Columns spanning the c-th atom's range (one column, or two for H).
  Eigen::MatrixXcd atom_columns(int c) const;
};

FactorFrame factor_frame(const Element& a, int factor);

/// Spectrum resolved into orthogonal atoms: a = sum values[i] atoms[i].
/// There are exactly rank many entries, sorted by decreasing value.
struct AtomicSpectrum {
  std::vector<double> values;
  std::vector<Element> atoms;
  std::vector<int> factors;

  size_t size() const { return values.size(); }
};

AtomicSpectrum atomic_spectrum(const Element& a);

/// Eigenvalues with multiplicity (rank many), descending.
std::vector<double> eigenvalues(const Element& a);

/// Strictly decreasing eigenvalues with pairwise orthogonal sharp projections.
/// `atoms[i]` resolves `projections[i]` into orthogonal atoms.
struct SpectralDecomposition {
  std::vector<double> values;
  std::vector<Element> projections;
  std::vector<std::vector<Element>> atoms;

  size_t size() const { return values.size(); }
  bool empty() const { return values.empty(); }
  /// sum values[i] projections[i] (the zero element of `spec` when empty).
  Element reconstruct(const AlgebraSpec& spec) const;
};

/// Eigenvalues closer than tol.eig are merged into one cluster (single
/// linkage after sorting) and their projections summed. Clusters at zero are
/// kept, so the projections always sum to the unit.
SpectralDecomposition spectral_decompose(const Element& a, const ToleranceConfig& tol = {});

double min_eigenvalue(const Element& a);
double max_eigenvalue(const Element& a);

/// Order-unit norm inf{r > 0 : -r 1 <= a <= r 1} = max |eigenvalue|.
double order_norm(const Element& a);
bool is_positive(const Element& a, const ToleranceConfig& tol = {});
bool is_effect(const Element& a, const ToleranceConfig& tol = {});

/// Functional calculus: sum f(lambda_i) p_i over the atomic spectrum.
Element spectral_function(const Element& a, const std::function<double(double)>& f);

/// Sum of the atoms whose eigenvalue exceeds `threshold`.
Element spectral_projection_above(const Element& a, double threshold);

/// Square root of an effect; eigenvalues are clamped to [0, 1] first and
/// those at or below 1e-13 count as exact zeros.
Element effect_sqrt(const Element& q);

/// Throws ValidationError when any coordinate is not finite.
void require_finite(const Element& a, const char* what);

}  // namespace ejakit
