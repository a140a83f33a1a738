#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "ejakit/element.hpp"

namespace ejakit {

/// Seeded generator. Normals use Box-Muller over the 64-bit Mersenne twister
/// so streams are reproducible across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream for (master seed, stream index, salt).
  static Rng derived(std::uint64_t master, std::uint64_t stream, std::uint64_t salt = 0);

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi);
  double normal();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Stable 64-bit hash (FNV-1a) used to salt per-check streams.
std::uint64_t stable_hash(std::string_view text);

enum class SampleProfile { gaussian, effect, state };

/// gaussian: i.i.d. standard normal coordinates. effect: see random_effect.
/// state: a positive element of unit trace with full support.
Element random_element(const AlgebraSpec& spec, Rng& rng, SampleProfile profile = SampleProfile::gaussian);
/// Gaussian sample mapped affinely so its spectrum spans exactly [0, 1]. A
/// sample with a single eigenvalue becomes a uniform multiple of the unit.
Element random_effect(const AlgebraSpec& spec, Rng& rng);
/// Projection of the requested rank; throws ValidationError when
/// rank_target is negative or exceeds spec.rank().
Element random_sharp(const AlgebraSpec& spec, Rng& rng, int rank_target);
/// Projection of uniformly random rank in [0, spec.rank()].
Element random_sharp(const AlgebraSpec& spec, Rng& rng);
/// Rank-one projection in a uniformly chosen factor, Haar distributed.
Element random_atom(const AlgebraSpec& spec, Rng& rng);
/// Haar-random atom inside the given factor.
Element random_atom_in_factor(const AlgebraSpec& spec, int factor, Rng& rng);
/// A complete family of orthogonal atoms (rank many, summing to the unit).
std::vector<Element> random_frame(const AlgebraSpec& spec, Rng& rng);

Element random_element(const AlgebraSpec& spec, std::uint64_t seed, SampleProfile profile = SampleProfile::gaussian);
Element random_effect(const AlgebraSpec& spec, std::uint64_t seed);
Element random_sharp(const AlgebraSpec& spec, std::uint64_t seed, int rank_target);
Element random_atom(const AlgebraSpec& spec, std::uint64_t seed);

}  // namespace ejakit
