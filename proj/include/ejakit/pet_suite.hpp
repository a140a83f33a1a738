#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ejakit/filters.hpp"
#include "ejakit/random.hpp"

namespace ejakit {

// Randomized verification of the pure-effect-theory axioms and their
// consequences on concrete algebras. Every check draws trial t from
// Rng::derived(seed, t, stable_hash(check_id)), so reports depend only on
// (check, spec, seed, trials, tolerances).

/// Zero tests inside biconditionals ("q o f = 0", "asrt_p o f = f") decide
/// with this absolute threshold on the order norm or largest coordinate.
inline constexpr double kDecisionThreshold = 1e-8;

enum class CheckGroup { axiom, proposition, scalar, composite };

struct CheckInfo {
  std::string id;
  CheckGroup group;
  /// Plain statement of what the check asserts.
  std::string statement;
};

/// Every check the suites can emit, in emission order.
const std::vector<CheckInfo>& check_catalog();

/// One report per axiom: filters and compressions exist with their
/// universal properties, pure maps form a dagger category, images exist,
/// complements of sharp effects are sharp, adjoints of sharp compressions
/// are filters, sharp compressions are isometries.
std::vector<CheckReport> run_axiom_suite(const AlgebraSpec& spec, std::uint64_t seed, int trials,
                                         const ToleranceConfig& tol = {});
/// One report per derived property (the proposition entries of check_catalog).
std::vector<CheckReport> run_proposition_suite(const AlgebraSpec& spec, std::uint64_t seed, int trials,
                                               const ToleranceConfig& tol = {});
/// Runs a single axiom or proposition check; throws ValidationError for an
/// unknown id or an id of another group.
CheckReport run_check(const std::string& id, const AlgebraSpec& spec, std::uint64_t seed, int trials,
                      const ToleranceConfig& tol = {});

/// Scalars of the trivial system compose by multiplication, are fixed by the
/// dagger and their effects behave as [0, 1].
CheckReport run_scalar_checks(std::uint64_t seed, int trials = 100, const ToleranceConfig& tol = {});

/// Composite laws on fixed real and complex pairs, the complex/real
/// exclusion for ranks 2..4 and the classification scan (max rank 8,
/// power 4).
std::vector<CheckReport> run_composite_suite(std::uint64_t seed, int trials, const ToleranceConfig& tol = {});

/// {Real, Complex, Quaternion} x n = 1..4, Spin(k) for k = 2..6 and two
/// mixed direct sums.
std::vector<AlgebraSpec> default_grid();

/// Axiom and proposition suites over every grid system, then the scalar and
/// composite checks.
std::vector<CheckReport> run_grid(std::uint64_t seed, int trials, const ToleranceConfig& tol = {});

/// P6 with a caller-supplied compression constructor (negative controls).
CheckReport check_sharp_isometry(const AlgebraSpec& spec, std::uint64_t seed, int trials, const ToleranceConfig& tol,
                                 const std::function<PsuMap(const Element&)>& compression);

// ---------------------------------------------------------------------------
// Instance generators shared by the checks and the CLI.

/// An element built from a random frame with known spectral data. Equal
/// values are merged, so `values` is strictly decreasing.
struct PlantedElement {
  Element element;
  std::vector<double> values;
  std::vector<Element> projections;
};

/// Eigenvalues 0 or 1 with probability 0.2 each, otherwise uniform in
/// [0.05, 0.95] on a 1/1024 grid; neighbouring atoms repeat a value with
/// probability 0.15. Distinct eigenvalues are therefore at least 1/1024
/// apart and floors and ceilings are never borderline.
PlantedElement planted_effect(const AlgebraSpec& spec, Rng& rng);
/// Signed version for general elements: values on a 1/1024 grid in [-3, 3].
PlantedElement planted_element(const AlgebraSpec& spec, Rng& rng);

Element gapped_effect(const AlgebraSpec& spec, Rng& rng);
/// Eigenvalues 0 with probability 0.25, otherwise in [0.1, 1]; never zero.
Element filter_effect(const AlgebraSpec& spec, Rng& rng);
/// Density with weights 0 (probability 0.3) or in [0.05, 1], normalized.
State random_unital_state(const AlgebraSpec& spec, Rng& rng);
/// Sub-projection of the sharp effect u, of random rank >= min_rank.
Element random_subprojection(const Element& u, Rng& rng, int min_rank = 0, const ToleranceConfig& tol = {});

/// Random positive sub-unital map source -> target:
/// f#(x) = sum_i c_i <w_i, x> e_i with low-rank positive w_i and effects e_i,
/// plus a multiple of U_a when source == target, scaled to be sub-unital.
PsuMap random_psu(const AlgebraSpec& source, const AlgebraSpec& target, Rng& rng);

/// The effect q as a map A -> I.
PsuMap effect_as_map(const Element& q);
/// The state with density w as a map I -> A.
PsuMap state_as_map(const Element& w);

}  // namespace ejakit
