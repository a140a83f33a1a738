#pragma once

#include <variant>
#include <vector>

#include "ejakit/jordan.hpp"

namespace ejakit {

// Effects are Elements whose spectrum lies in [0, 1]; functions taking an
// effect validate that precondition with the caller's tolerances.

/// Throws ValidationError (mentioning `what`) unless `q` is an effect.
void require_effect(const Element& q, const ToleranceConfig& tol, const char* what);
/// Throws ValidationError unless `p` is sharp.
void require_sharp(const Element& p, const ToleranceConfig& tol, const char* what);

/// Outcome of a partial sum that would leave the unit interval.
struct NotSummable {
  double max_eigenvalue = 0.0;
};

using EffectSum = std::variant<Element, NotSummable>;

/// p + q when it is still below the unit (up to tol.pos).
EffectSum effect_add(const Element& p, const Element& q, const ToleranceConfig& tol = {});

/// q^perp = 1 - q.
Element complement(const Element& q);

/// a <= b in the positive cone, i.e. b - a is positive.
bool leq(const Element& a, const Element& b, const ToleranceConfig& tol = {});

/// Sum of the atoms of q with eigenvalue >= 1 - tol.sharp.
Element floor(const Element& q, const ToleranceConfig& tol = {});
/// Support projection: the atoms of q with eigenvalue >= tol.sharp. Also
/// used for positive elements that are not effects.
Element ceiling(const Element& q, const ToleranceConfig& tol = {});

bool is_sharp(const Element& q, const ToleranceConfig& tol = {});
bool is_atomic(const Element& q, const ToleranceConfig& tol = {});
/// Number of atoms in a sharp effect (eigenvalues at 1).
int sharp_rank(const Element& p, const ToleranceConfig& tol = {});

/// Ceilings are orthogonal: <ceil p, ceil q> <= tol.op.
bool orthogonal(const Element& p, const Element& q, const ToleranceConfig& tol = {});

/// Orthogonal atoms summing to the sharp effect p.
std::vector<Element> atomic_refinement(const Element& p, const ToleranceConfig& tol = {});

/// Least sharp effect above both, computed as ceil(p + q).
Element sharp_join(const Element& p, const Element& q, const ToleranceConfig& tol = {});
/// Greatest sharp effect below both, computed as (p^perp v q^perp)^perp.
Element sharp_meet(const Element& p, const Element& q, const ToleranceConfig& tol = {});

/// A (sub-normalized) state, stored through its density w: omega(x) = <w, x>.
struct State {
  Element density;

  /// omega(1) = <w, 1>.
  double total() const;
  bool is_unital(const ToleranceConfig& tol = {}) const;
};

/// Throws ValidationError unless w is positive with <w, 1> <= 1.
State make_state(Element density, const ToleranceConfig& tol = {});

double evaluate(const Element& q, const State& omega);

/// The unique unital state with omega_p(p) = 1. Its density is p itself
/// because every atom has <p, 1> = 1.
State pure_state_of_atom(const Element& p, const ToleranceConfig& tol = {});

/// omega_p(q) for atoms p and q.
double transition_probability(const Element& p, const Element& q, const ToleranceConfig& tol = {});

/// omega is pure when its density is a multiple of an atom.
bool is_pure_state(const State& omega, const ToleranceConfig& tol = {});

struct WeightedState {
  double weight;
  State state;
};

/// Convex decomposition of a unital state into pure states on orthogonal
/// atoms; weights below tol.pos are dropped.
std::vector<WeightedState> state_decompose(const State& omega, const ToleranceConfig& tol = {});

}  // namespace ejakit
