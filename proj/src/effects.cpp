#include "ejakit/effects.hpp"

#include <cmath>

#include "ejakit/errors.hpp"

namespace ejakit {

void require_effect(const Element& q, const ToleranceConfig& tol, const char* what) {
  require_finite(q, what);
  if (!is_effect(q, tol)) throw ValidationError(std::string(what) + ": spectrum is not contained in [0, 1]");
}

void require_sharp(const Element& p, const ToleranceConfig& tol, const char* what) {
  require_finite(p, what);
  if (!is_sharp(p, tol)) throw ValidationError(std::string(what) + ": effect is not sharp");
}

EffectSum effect_add(const Element& p, const Element& q, const ToleranceConfig& tol) {
  require_same_spec(p.spec(), q.spec(), "effect_add");
  Element sum = p + q;
  const double top = max_eigenvalue(sum);
  if (top > 1.0 + tol.pos) return NotSummable{top};
  return sum;
}

Element complement(const Element& q) { return Element::unit(q.spec()) - q; }

bool leq(const Element& a, const Element& b, const ToleranceConfig& tol) { return is_positive(b - a, tol); }

Element floor(const Element& q, const ToleranceConfig& tol) {
  const AtomicSpectrum s = atomic_spectrum(q);
  Element out = Element::zero(q.spec());
  for (size_t i = 0; i < s.size(); ++i)
    if (s.values[i] >= 1.0 - tol.sharp) out += s.atoms[i];
  return out;
}

Element ceiling(const Element& q, const ToleranceConfig& tol) {
  const AtomicSpectrum s = atomic_spectrum(q);
  Element out = Element::zero(q.spec());
  for (size_t i = 0; i < s.size(); ++i)
    if (s.values[i] >= tol.sharp) out += s.atoms[i];
  return out;
}

bool is_sharp(const Element& q, const ToleranceConfig& tol) {
  for (double v : eigenvalues(q)) {
    if (std::abs(v) > tol.sharp && std::abs(v - 1.0) > tol.sharp) return false;
  }
  return true;
}

int sharp_rank(const Element& p, const ToleranceConfig& tol) {
  int count = 0;
  for (double v : eigenvalues(p))
    if (std::abs(v - 1.0) <= tol.sharp) ++count;
  return count;
}

bool is_atomic(const Element& q, const ToleranceConfig& tol) { return is_sharp(q, tol) && sharp_rank(q, tol) == 1; }

bool orthogonal(const Element& p, const Element& q, const ToleranceConfig& tol) {
  require_same_spec(p.spec(), q.spec(), "orthogonal");
  return inner_product(ceiling(p, tol), ceiling(q, tol)) <= tol.op;
}

std::vector<Element> atomic_refinement(const Element& p, const ToleranceConfig& tol) {
  require_sharp(p, tol, "atomic_refinement");
  const AtomicSpectrum s = atomic_spectrum(p);
  std::vector<Element> out;
  for (size_t i = 0; i < s.size(); ++i)
    if (s.values[i] >= 0.5) out.push_back(s.atoms[i]);
  return out;
}

Element sharp_join(const Element& p, const Element& q, const ToleranceConfig& tol) {
  require_same_spec(p.spec(), q.spec(), "sharp_join");
  return ceiling(p + q, tol);
}

Element sharp_meet(const Element& p, const Element& q, const ToleranceConfig& tol) {
  return complement(sharp_join(complement(p), complement(q), tol));
}

double State::total() const { return inner_product(density, Element::unit(density.spec())); }

bool State::is_unital(const ToleranceConfig& tol) const { return std::abs(total() - 1.0) <= tol.op; }

State make_state(Element density, const ToleranceConfig& tol) {
  require_finite(density, "make_state");
  if (!is_positive(density, tol)) throw ValidationError("state density must be positive");
  State s{std::move(density)};
  if (s.total() > 1.0 + tol.op) throw ValidationError("state density has total weight above 1");
  return s;
}

double evaluate(const Element& q, const State& omega) { return inner_product(omega.density, q); }

State pure_state_of_atom(const Element& p, const ToleranceConfig& tol) {
  if (!is_atomic(p, tol)) throw ValidationError("pure_state_of_atom: effect is not an atom");
  return State{p};
}

double transition_probability(const Element& p, const Element& q, const ToleranceConfig& tol) {
  require_same_spec(p.spec(), q.spec(), "transition_probability");
  if (!is_atomic(q, tol)) throw ValidationError("transition_probability: second effect is not an atom");
  return evaluate(q, pure_state_of_atom(p, tol));
}

bool is_pure_state(const State& omega, const ToleranceConfig& tol) {
  const auto ev = eigenvalues(omega.density);
  int support = 0;
  for (double v : ev)
    if (v > tol.pos) ++support;
  return support == 1;
}

std::vector<WeightedState> state_decompose(const State& omega, const ToleranceConfig& tol) {
  if (!omega.is_unital(tol)) throw ValidationError("state_decompose: state is not unital");
  const AtomicSpectrum s = atomic_spectrum(omega.density);
  std::vector<WeightedState> out;
  for (size_t i = 0; i < s.size(); ++i)
    if (s.values[i] > tol.pos) out.push_back({s.values[i], State{s.atoms[i]}});
  return out;
}

}  // namespace ejakit
