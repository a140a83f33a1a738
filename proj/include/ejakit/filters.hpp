#pragma once

#include <optional>

#include "ejakit/psu_map.hpp"

namespace ejakit {

/// The subalgebra {x : U_p(x) = x} cut out by a sharp effect p.
///
/// `embedding` has orthonormal columns: it maps corner coordinates to ambient
/// coordinates, and its transpose is U_p followed by restriction.
struct Corner {
  AlgebraSpec ambient;
  AlgebraSpec spec;
  Eigen::MatrixXd embedding;
  Element projection;
};

/// Rank-k projections inside a matrix factor give a size-k factor of the same
/// kind; a spin factor contributes itself (p covers it) or a trivial factor
/// (p meets it in one atom). p = 0 yields the null system.
Corner corner_spec(const Element& p, const ToleranceConfig& tol = {});

/// Matrix of x -> U_a(x).
Eigen::MatrixXd quadratic_rep_matrix(const Element& a);

/// pi_q : {A|q} -> A, the corner map of floor(q). Unital, with pi#(1) = pi#(q).
PsuMap compression_for(const Element& q, const ToleranceConfig& tol = {});
/// xi_q : A -> A_q, b -> U_sqrt(q)(b) on the corner of ceil(q); xi#(1) = q.
PsuMap filter_for(const Element& q, const ToleranceConfig& tol = {});
/// asrt_p : A -> A, x -> U_p(x), for sharp p.
PsuMap assert_map(const Element& p, const ToleranceConfig& tol = {});

/// A map together with evidence that it is a compression after a filter.
struct PureWitness {
  Element filter_effect;        // effect of the source that the filter is for
  AlgebraSpec mid_spec;         // system between filter and compression
  Element compression_projection;  // sharp effect of the target
};

struct PureMap {
  PsuMap map;
  PureWitness witness;
};

/// Result of splitting a map h : A -> B as pi_s o theta o xi_q.
///
/// q = 1 o h, s = im(h), and theta# : corner(s) -> corner(ceil q) is the
/// mediating linear map. h is pure exactly when theta is a Jordan isomorphism.
struct Refactorization {
  Element filter_effect;
  Element image;
  Eigen::MatrixXd theta;
  AlgebraSpec filter_corner;
  AlgebraSpec compression_corner;
  /// ||xi# theta# pi# - h#||.
  double recompose_residual = 0.0;
  /// Failure of theta to be a unital Jordan isomorphism (inf when the two
  /// corners have different dimensions).
  double isomorphism_defect = 0.0;

  double residual() const { return std::max(recompose_residual, isomorphism_defect); }
};

Refactorization refactor(const PsuMap& h, const ToleranceConfig& tol = {});

/// Unit and Jordan-product defect of a linear map between two systems
/// (matrix of shape target.dim() x source.dim(), element direction).
double jordan_isomorphism_defect(const AlgebraSpec& from, const AlgebraSpec& to, const Eigen::MatrixXd& m);

/// asrt_p o xi_q : A -> A_q for a sharp effect p of A_q. Its witness records
/// the composite filter effect xi_q#(p), the corner of p in A_q and p.
PureMap make_pure(const Element& q, const Element& p_inside, const ToleranceConfig& tol = {});

/// Wraps h as a pure map when refactor(h) succeeds within tol.op scale;
/// throws ValidationError otherwise.
PureMap as_pure(const PsuMap& h, const ToleranceConfig& tol = {});

/// Adjoint of a pure map, re-factored into a witness.
PureMap dagger(const PureMap& f, const ToleranceConfig& tol = {});

/// The witness recomposes to the map within tolerance.
bool is_pure_consistent(const PureMap& f, const ToleranceConfig& tol = {});

/// Tolerance used for refactorization residuals, which involve a
/// pseudo-inverse and so scale with conditioning.
double refactor_threshold(const ToleranceConfig& tol);

}  // namespace ejakit
